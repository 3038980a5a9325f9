#include <doctest.h>

#include "ehaudit/hierarchy.hpp"
#include "ehaudit/mutation.hpp"
#include "ehaudit/report.hpp"

using namespace ehaudit;

namespace {

std::vector<EhRegionMap> example_maps() {
    std::string src = read_text_file(std::string(EHAUDIT_TEST_DIR) +
                                     "/fixtures/fig_sample/src/main/java/io/sample/Example.java");
    return {extract_eh_regions(src, "Example.java")};
}

} // namespace

TEST_CASE("semantic hierarchy links the example fixture's types to Throwable") {
    auto h = build_semantic_hierarchy(example_maps());
    CHECK(h.parent_of("FileNotFoundException") == std::string("IOException"));
    CHECK(h.parent_of("IOException") == std::string("Exception"));
    CHECK(h.parent_of("IllegalArgumentException") == std::string("RuntimeException"));
    CHECK(h.parent_of("RuntimeException") == std::string("Exception"));
    CHECK(h.parent_of("Exception") == std::string("Throwable"));
    CHECK(h.derives_from("FileNotFoundException", "Throwable"));
    CHECK(h.roots.count("Throwable"));
}

TEST_CASE("project-declared exception subclasses join the hierarchy") {
    std::string src = "package p;\nimport java.io.IOException;\n"
                      "class MyEx extends IOException {}\n"
                      "class Deeper extends MyEx {}\n"
                      "class NotAnException extends Thread {}\n"
                      "class User { void f() throws MyEx {} }\n";
    auto maps = std::vector<EhRegionMap>{extract_eh_regions(src, "M.java")};
    auto h = build_semantic_hierarchy(maps);
    CHECK(h.parent_of("MyEx") == std::string("IOException"));
    CHECK(h.parent_of("Deeper") == std::string("MyEx"));
    CHECK(h.derives_from("Deeper", "Exception"));
    CHECK_FALSE(h.known("NotAnException"));
}

TEST_CASE("project with zero exception mentions yields only builtin roots") {
    std::string src = "class Quiet { void f() { } }";
    auto maps = std::vector<EhRegionMap>{extract_eh_regions(src, "Q.java")};
    auto h = build_semantic_hierarchy(maps);
    CHECK(h.edges.empty());
    CHECK(h.roots == std::set<std::string>{"Throwable"});
    CHECK(h.warnings.empty());
}

TEST_CASE("unresolved external exception types become opaque roots with warnings") {
    std::string src = "class C { void f() { try { g(); } catch (VendorException e) { } } "
                      "void g(){} }";
    auto maps = std::vector<EhRegionMap>{extract_eh_regions(src, "C.java")};
    auto h = build_semantic_hierarchy(maps);
    CHECK(h.roots.count("VendorException"));
    CHECK_FALSE(h.parent_of("VendorException").has_value());
    REQUIRE(h.warnings.size() == 1);
    CHECK(h.warnings[0].find("VendorException") != std::string::npos);
}

TEST_CASE("unchecked classification follows RuntimeException and Error lineage") {
    std::string src = "class C { void f() throws java.io.IOException, NumberFormatException, "
                      "StackOverflowError { } }";
    auto maps = std::vector<EhRegionMap>{extract_eh_regions(src, "C.java")};
    auto h = build_semantic_hierarchy(maps);
    CHECK(h.is_unchecked("NumberFormatException"));
    CHECK(h.is_unchecked("StackOverflowError"));
    CHECK_FALSE(h.is_unchecked("IOException"));
    CHECK_FALSE(h.is_unchecked("CompletelyUnknownType"));
}

TEST_CASE("invoking hierarchy for the example fixture") {
    auto maps = example_maps();
    CallIndex index(maps);
    std::vector<std::string> warnings;
    auto iehs = build_invoking_hierarchy(maps[0].try_blocks[0], index, &warnings);

    REQUIRE(iehs.size() == 1);
    CHECK(iehs[0].root == "FileNotFoundException");
    CHECK(iehs[0].children ==
          std::set<std::string>{"IllegalArgumentException", "IOException"});
    // FileReader and close are JDK calls: unresolved, recorded, never fatal
    CHECK(!warnings.empty());
}

TEST_CASE("invoking hierarchy: no calls and no throws means no children") {
    std::string src = "class C { void f() { try { int x = 1; } catch (Exception e) { } } }";
    auto maps = std::vector<EhRegionMap>{extract_eh_regions(src, "C.java")};
    CallIndex index(maps);
    auto iehs = build_invoking_hierarchy(maps[0].try_blocks[0], index, nullptr);
    REQUIRE(iehs.size() == 1);
    CHECK(iehs[0].children.empty());
}

TEST_CASE("invoking hierarchy: callee exception equal to the root is excluded") {
    std::string src = "class C {\n"
                      "  void f() { try { g(); } catch (java.io.IOException e) { } }\n"
                      "  void g() throws java.io.IOException { }\n"
                      "}\n";
    auto maps = std::vector<EhRegionMap>{extract_eh_regions(src, "C.java")};
    CallIndex index(maps);
    auto iehs = build_invoking_hierarchy(maps[0].try_blocks[0], index, nullptr);
    REQUIRE(iehs.size() == 1);
    CHECK(iehs[0].root == "IOException");
    CHECK(iehs[0].children.empty());
}

TEST_CASE("one entry per catch clause; multi-catch excludes all declared types") {
    std::string src =
        "class C {\n"
        "  void f() {\n"
        "    try { g(); } catch (IllegalStateException a) { } catch (RuntimeException b) { }\n"
        "    try { g(); } catch (IllegalStateException | IllegalArgumentException m) { }\n"
        "  }\n"
        "  void g() throws IllegalStateException, IllegalArgumentException { }\n"
        "}\n";
    auto maps = std::vector<EhRegionMap>{extract_eh_regions(src, "C.java")};
    CallIndex index(maps);

    auto two_clause = build_invoking_hierarchy(maps[0].try_blocks[0], index, nullptr);
    REQUIRE(two_clause.size() == 2);
    CHECK(two_clause[0].root == "IllegalStateException");
    CHECK(two_clause[0].children == std::set<std::string>{"IllegalArgumentException"});
    CHECK(two_clause[1].root == "RuntimeException");
    CHECK(two_clause[1].children ==
          std::set<std::string>{"IllegalStateException", "IllegalArgumentException"});

    auto multi = build_invoking_hierarchy(maps[0].try_blocks[1], index, nullptr);
    REQUIRE(multi.size() == 1);
    CHECK(multi[0].declared_types ==
          std::vector<std::string>{"IllegalStateException", "IllegalArgumentException"});
    CHECK(multi[0].children.empty());
}

TEST_CASE("call resolution is by simple name and arity") {
    std::string src = "class C {\n"
                      "  void f() { try { g(1); } catch (Exception e) { } }\n"
                      "  void g() throws java.io.IOException { }\n"
                      "  void g(int n) throws InterruptedException { }\n"
                      "}\n";
    auto maps = std::vector<EhRegionMap>{extract_eh_regions(src, "C.java")};
    CallIndex index(maps);
    auto iehs = build_invoking_hierarchy(maps[0].try_blocks[0], index, nullptr);
    CHECK(iehs[0].children == std::set<std::string>{"InterruptedException"});
}

TEST_CASE("build_hierarchies composes semantic and invoking views") {
    auto maps = example_maps();
    auto h = build_hierarchies(maps);
    REQUIRE(h.invoking.count("Example.java"));
    REQUIRE(h.invoking.at("Example.java").size() == 1);
    CHECK(h.invoking.at("Example.java")[0][0].children.size() == 2);
    CHECK(h.semantic.derives_from("FileNotFoundException", "Exception"));
}
