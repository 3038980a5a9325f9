#include <doctest.h>

#include "ehaudit/mutation.hpp"
#include "ehaudit/report.hpp"
#include "support/fixture_gen.hpp"

#include <cstdlib>
#include <map>
#include <random>

using namespace ehaudit;

namespace {

std::string fixture_path(const std::string& rel) {
    return std::string(EHAUDIT_TEST_DIR) + "/fixtures/" + rel;
}

struct LoadedProject {
    std::map<std::string, std::string> sources;
    std::vector<EhRegionMap> maps;
    ProjectHierarchies hierarchies;
};

LoadedProject load(std::initializer_list<std::string> files) {
    LoadedProject p;
    for (const auto& f : files) {
        std::string text =
            read_text_file(fixture_path("fig_sample/src/main/java/io/sample/" + f));
        p.sources[f] = text;
        p.maps.push_back(extract_eh_regions(text, f));
    }
    p.hierarchies = build_hierarchies(p.maps);
    return p;
}

std::set<MutationOperator> all_ops() {
    return {all_operators().begin(), all_operators().end()};
}

// golden comparison; set EHAUDIT_UPDATE_GOLDEN=1 to refresh after review
void check_golden(const std::string& name, const std::string& actual) {
    std::string path = fixture_path("golden/" + name);
    if (std::getenv("EHAUDIT_UPDATE_GOLDEN")) {
        write_text_atomic(path, actual);
        return;
    }
    std::string expected = read_text_file(path);
    CHECK_MESSAGE(actual == expected, "golden mismatch for ", name, "\n--- actual ---\n",
                  actual);
}

std::vector<MutationSite> sites_of(const LoadedProject& p, MutationOperator op) {
    auto sites = find_eligible_sites(p.maps, p.hierarchies, {op});
    return sites;
}

} // namespace

TEST_CASE("site enumeration on the example fixture matches the expected census") {
    auto p = load({"Example.java"});
    auto sites = find_eligible_sites(p.maps, p.hierarchies, all_ops());

    std::map<MutationOperator, int> census;
    for (const auto& s : sites) census[s.op] += 1;
    CHECK(census[MutationOperator::CBD] == 1);
    CHECK(census[MutationOperator::CRE] == 1);
    CHECK(census[MutationOperator::CBI] == 1);
    CHECK(census[MutationOperator::FBD] == 0);
    CHECK(census[MutationOperator::TSD] == 2);
    CHECK(census[MutationOperator::CBR] == 2); // IllegalArgumentException, IOException
    CHECK(census[MutationOperator::PTL] == 1);

    std::set<std::string> cbr_variants;
    for (const auto& s : sites)
        if (s.op == MutationOperator::CBR) cbr_variants.insert(s.variant_key);
    CHECK(cbr_variants == std::set<std::string>{"IllegalArgumentException", "IOException"});
}

TEST_CASE("operator subset filters the site list") {
    auto p = load({"Example.java"});
    auto only_tsd = find_eligible_sites(p.maps, p.hierarchies, {MutationOperator::TSD});
    CHECK(only_tsd.size() == 2);
    for (const auto& s : only_tsd) CHECK(s.op == MutationOperator::TSD);
}

TEST_CASE("golden transformations on the example fixture") {
    auto p = load({"Example.java"});
    const std::string& src = p.sources.at("Example.java");

    auto generate_one = [&](MutationOperator op, const std::string& variant = "") {
        for (const auto& s : sites_of(p, op))
            if (variant.empty() || s.variant_key == variant)
                return generate_mutant(s, src, p.hierarchies);
        FAIL("no site for operator");
        return Mutant{};
    };

    SUBCASE("CRE rethrows the parameter and repairs the throws clause") {
        Mutant m = generate_one(MutationOperator::CRE);
        check_golden("example_cre.java", apply_edits(src, m.edits));
    }
    SUBCASE("CBI appends a concealing handler") {
        Mutant m = generate_one(MutationOperator::CBI);
        check_golden("example_cbi.java", apply_edits(src, m.edits));
    }
    SUBCASE("CBD unwraps the lone try") {
        Mutant m = generate_one(MutationOperator::CBD);
        check_golden("example_cbd.java", apply_edits(src, m.edits));
    }
    SUBCASE("TSD deletes exactly one throw statement") {
        auto sites = sites_of(p, MutationOperator::TSD);
        REQUIRE(sites.size() == 2);
        Mutant first = generate_mutant(sites[0], src, p.hierarchies);
        check_golden("example_tsd1.java", apply_edits(src, first.edits));
        Mutant second = generate_mutant(sites[1], src, p.hierarchies);
        check_golden("example_tsd2.java", apply_edits(src, second.edits));
    }
    SUBCASE("CBR swaps the declared type for each invoking-hierarchy child") {
        Mutant io = generate_one(MutationOperator::CBR, "IOException");
        check_golden("example_cbr_ioexception.java", apply_edits(src, io.edits));
        Mutant iae = generate_one(MutationOperator::CBR, "IllegalArgumentException");
        check_golden("example_cbr_illegalargument.java", apply_edits(src, iae.edits));
    }
    SUBCASE("PTL moves the trailing statement into the try body") {
        Mutant m = generate_one(MutationOperator::PTL);
        check_golden("example_ptl.java", apply_edits(src, m.edits));
    }
}

TEST_CASE("FBD golden on the companion fixture with a finally block") {
    auto p = load({"Cleanup.java"});
    const std::string& src = p.sources.at("Cleanup.java");
    auto sites = sites_of(p, MutationOperator::FBD);
    REQUIRE(sites.size() == 1);
    Mutant m = generate_mutant(sites[0], src, p.hierarchies);
    check_golden("cleanup_fbd.java", apply_edits(src, m.edits));
}

TEST_CASE("every generated mutant applies, reverts byte-identically, and reparses") {
    auto p = load({"Example.java", "Cleanup.java"});
    auto sites = find_eligible_sites(p.maps, p.hierarchies, all_ops());
    CHECK(!sites.empty());
    for (const auto& site : sites) {
        const std::string& src = p.sources.at(site.file_id);
        Mutant m = generate_mutant(site, src, p.hierarchies);
        std::string mutated = apply_edits(src, m.edits);
        CHECK(mutated != src);
        CHECK(revert_edits(mutated, m.edits) == src);
        CHECK_NOTHROW(extract_eh_regions(mutated, site.file_id));
    }
}

TEST_CASE("mutant ids are stable, unique, and reproducible") {
    auto p = load({"Example.java", "Cleanup.java"});
    auto sites = find_eligible_sites(p.maps, p.hierarchies, all_ops());
    std::vector<std::string> ids1, ids2;
    for (const auto& s : sites) ids1.push_back(stable_site_hash(s));
    for (const auto& s : find_eligible_sites(p.maps, p.hierarchies, all_ops()))
        ids2.push_back(stable_site_hash(s));
    CHECK(ids1 == ids2);
    std::set<std::string> unique(ids1.begin(), ids1.end());
    CHECK(unique.size() == ids1.size());
}

TEST_CASE("locality: edits stay within the documented region of each operator") {
    auto p = load({"Example.java", "Cleanup.java"});
    auto sites = find_eligible_sites(p.maps, p.hierarchies, all_ops());
    for (const auto& site : sites) {
        const std::string& src = p.sources.at(site.file_id);
        Mutant m = generate_mutant(site, src, p.hierarchies);
        EhRegionMap map = extract_eh_regions(src, site.file_id);

        std::size_t lo = std::string::npos, hi = 0;
        for (const auto& e : m.edits) {
            lo = std::min(lo, e.begin);
            hi = std::max(hi, e.begin + e.original.size());
        }

        std::size_t expected_lo = site.anchor.begin_offset;
        std::size_t expected_hi = site.anchor.end_offset;
        const TryBlockInfo* tb =
            site.try_index >= 0 ? &map.try_blocks[site.try_index] : nullptr;
        switch (site.op) {
            case MutationOperator::CBD:
            case MutationOperator::FBD:
                // unwrapping may touch the owning try delimiters
                expected_lo = tb->statement_span.begin_offset;
                expected_hi = tb->statement_span.end_offset;
                break;
            case MutationOperator::CRE:
                // the documented throws-clause repair may precede the clause
                if (tb->enclosing_method_index >= 0)
                    expected_lo = map.methods[tb->enclosing_method_index]
                                      .signature_span.begin_offset;
                break;
            case MutationOperator::CBI:
                expected_hi = tb->statement_span.end_offset + 1;
                break;
            case MutationOperator::PTL:
                expected_hi = tb->trailing_use_run->end_offset;
                break;
            default: break;
        }
        CAPTURE(to_string(site.op));
        CHECK(lo >= expected_lo);
        CHECK(hi <= expected_hi);
    }
}

TEST_CASE("count laws hold on randomized fixtures") {
    std::mt19937 rng(43);
    for (int round = 0; round < 100; ++round) {
        auto fx = testsupport::generate_fixture(rng);
        std::vector<EhRegionMap> maps = {extract_eh_regions(fx.source, "G.java")};
        auto h = build_hierarchies(maps);
        auto cbd = find_eligible_sites(maps, h, {MutationOperator::CBD});
        auto tsd = find_eligible_sites(maps, h, {MutationOperator::TSD});
        auto fbd = find_eligible_sites(maps, h, {MutationOperator::FBD});
        CHECK(static_cast<int>(cbd.size()) == fx.catch_count);
        CHECK(static_cast<int>(tsd.size()) == fx.throw_count);
        CHECK(static_cast<int>(fbd.size()) == fx.finally_count);
    }
}

TEST_CASE("generated mutants on random fixtures apply, revert, and reparse") {
    std::mt19937 rng(47);
    for (int round = 0; round < 25; ++round) {
        auto fx = testsupport::generate_fixture(rng);
        std::vector<EhRegionMap> maps = {extract_eh_regions(fx.source, "G.java")};
        auto h = build_hierarchies(maps);
        for (const auto& site : find_eligible_sites(maps, h, all_ops())) {
            Mutant m;
            try {
                m = generate_mutant(site, fx.source, h);
            } catch (const GenerationSkipped&) {
                continue;
            }
            std::string mutated = apply_edits(fx.source, m.edits);
            CHECK(revert_edits(mutated, m.edits) == fx.source);
            CHECK_NOTHROW(extract_eh_regions(mutated, "G.java"));
        }
    }
}

TEST_CASE("NotApplicable when the snapshot changed under the site") {
    auto p = load({"Example.java"});
    const std::string& src = p.sources.at("Example.java");
    auto sites = find_eligible_sites(p.maps, p.hierarchies, all_ops());
    std::string drifted = "// drifted\n" + src;
    int failures = 0;
    for (const auto& s : sites) {
        try {
            generate_mutant(s, drifted, p.hierarchies);
        } catch (const NotApplicable&) {
            ++failures;
        }
    }
    CHECK(failures == static_cast<int>(sites.size()));
}

TEST_CASE("CBI picks Throwable when Exception is caught, and skips caught Throwable") {
    std::string src = "class C {\n"
                      "  void a() { try { p(); } catch (Exception e) { } }\n"
                      "  void b() { try { p(); } catch (Throwable t) { } }\n"
                      "  void p() {}\n"
                      "}\n";
    std::vector<EhRegionMap> maps = {extract_eh_regions(src, "C.java")};
    auto h = build_hierarchies(maps);
    auto sites = find_eligible_sites(maps, h, {MutationOperator::CBI});
    REQUIRE(sites.size() == 1); // the Throwable try is ineligible
    Mutant m = generate_mutant(sites[0], src, h);
    std::string mutated = apply_edits(src, m.edits);
    CHECK(mutated.find("catch (Throwable ex) { }") != std::string::npos);
}

TEST_CASE("CBI avoids shadowing an existing handler parameter name") {
    std::string src = "class C { void a() { int ex = 1; try { p(ex); } "
                      "catch (RuntimeException e) { } } void p(int x) {} }";
    std::vector<EhRegionMap> maps = {extract_eh_regions(src, "C.java")};
    auto h = build_hierarchies(maps);
    auto sites = find_eligible_sites(maps, h, {MutationOperator::CBI});
    REQUIRE(sites.size() == 1);
    std::string mutated = apply_edits(src, generate_mutant(sites[0], src, h).edits);
    CHECK(mutated.find("catch (Exception ex1) { }") != std::string::npos);
}

TEST_CASE("CBD keeps the try when other clauses, a finally, or resources remain") {
    std::string two_catches =
        "class C { void f() { try { g(); } catch (RuntimeException a) { } "
        "catch (Exception b) { } } void g(){} }";
    std::vector<EhRegionMap> maps = {extract_eh_regions(two_catches, "C.java")};
    auto h = build_hierarchies(maps);
    auto sites = find_eligible_sites(maps, h, {MutationOperator::CBD});
    REQUIRE(sites.size() == 2);
    std::string mutated = apply_edits(two_catches, generate_mutant(sites[0], two_catches, h).edits);
    CHECK(mutated.find("try {") != std::string::npos);
    CHECK(mutated.find("catch (RuntimeException a)") == std::string::npos);
    CHECK(mutated.find("catch (Exception b)") != std::string::npos);

    std::string with_finally = "class C { void f() { try { g(); } catch (Exception e) { } "
                               "finally { h(); } } void g(){} void h(){} }";
    maps = {extract_eh_regions(with_finally, "C.java")};
    h = build_hierarchies(maps);
    sites = find_eligible_sites(maps, h, {MutationOperator::CBD});
    REQUIRE(sites.size() == 1);
    mutated = apply_edits(with_finally, generate_mutant(sites[0], with_finally, h).edits);
    CHECK(mutated.find("try {") != std::string::npos);
    CHECK(mutated.find("finally") != std::string::npos);

    std::string with_resources =
        "class C { void f() throws Exception { try (AutoCloseable r = o()) { g(); } "
        "catch (RuntimeException e) { } } AutoCloseable o() { return null; } void g(){} }";
    maps = {extract_eh_regions(with_resources, "C.java")};
    h = build_hierarchies(maps);
    sites = find_eligible_sites(maps, h, {MutationOperator::CBD});
    REQUIRE(sites.size() == 1);
    mutated = apply_edits(with_resources, generate_mutant(sites[0], with_resources, h).edits);
    CHECK(mutated.find("try (") != std::string::npos);
    CHECK(mutated.find("catch") == std::string::npos);
}

TEST_CASE("CRE signature repair covers only uncovered checked types") {
    // already covered by a declared supertype: no signature edit
    std::string covered = "class C {\n"
                          "  void f() throws java.io.IOException {\n"
                          "    try { g(); } catch (java.io.FileNotFoundException e) { }\n"
                          "  }\n  void g() throws java.io.FileNotFoundException {}\n}\n";
    std::vector<EhRegionMap> maps = {extract_eh_regions(covered, "C.java")};
    auto h = build_hierarchies(maps);
    auto sites = find_eligible_sites(maps, h, {MutationOperator::CRE});
    REQUIRE(sites.size() == 1);
    Mutant m = generate_mutant(sites[0], covered, h);
    CHECK(m.edits.size() == 1); // only the rethrow insertion

    // unchecked catch type: no signature edit either
    std::string unchecked = "class C { void f() { try { g(); } catch (RuntimeException e) { } }"
                            " void g(){} }";
    maps = {extract_eh_regions(unchecked, "C.java")};
    h = build_hierarchies(maps);
    sites = find_eligible_sites(maps, h, {MutationOperator::CRE});
    REQUIRE(sites.size() == 1);
    m = generate_mutant(sites[0], unchecked, h);
    CHECK(m.edits.size() == 1);

    // existing throws clause gains the missing type
    std::string extend = "class C {\n"
                         "  void f() throws InterruptedException {\n"
                         "    try { g(); } catch (java.io.IOException e) { }\n"
                         "  }\n  void g() throws java.io.IOException {}\n}\n";
    maps = {extract_eh_regions(extend, "C.java")};
    h = build_hierarchies(maps);
    sites = find_eligible_sites(maps, h, {MutationOperator::CRE});
    REQUIRE(sites.size() == 1);
    m = generate_mutant(sites[0], extend, h);
    REQUIRE(m.edits.size() == 2);
    std::string mutated = apply_edits(extend, m.edits);
    CHECK(mutated.find("throws InterruptedException, java.io.IOException") !=
          std::string::npos);
    CHECK(mutated.find("throw e; }") != std::string::npos);
}

TEST_CASE("CBR multi-catch mutates one member per variant") {
    std::string src = "class C {\n"
                      "  void f() { try { g(); } catch (IllegalStateException | "
                      "IllegalArgumentException m) { } }\n"
                      "  void g() throws IllegalStateException, IllegalArgumentException, "
                      "NumberFormatException { }\n"
                      "}\n";
    std::vector<EhRegionMap> maps = {extract_eh_regions(src, "C.java")};
    auto h = build_hierarchies(maps);
    auto sites = find_eligible_sites(maps, h, {MutationOperator::CBR});
    // one child (NumberFormatException) x two declared members
    REQUIRE(sites.size() == 2);
    std::set<std::string> variants;
    for (const auto& s : sites) variants.insert(s.variant_key);
    CHECK(variants == std::set<std::string>{
                          "IllegalStateException->NumberFormatException",
                          "IllegalArgumentException->NumberFormatException"});
    for (const auto& s : sites) {
        std::string mutated = apply_edits(src, generate_mutant(s, src, h).edits);
        bool replaced = mutated.find("NumberFormatException |") != std::string::npos ||
                        mutated.find("| NumberFormatException") != std::string::npos;
        CHECK(replaced);
    }
}

TEST_CASE("unified diff shows a single compact hunk") {
    std::string before = "a\nb\nc\nd\ne\nf\ng\n";
    std::string after = "a\nb\nc\nX\ne\nf\ng\n";
    std::string diff = unified_diff(before, after, "T.java");
    CHECK(diff.find("--- a/T.java") == 0);
    CHECK(diff.find("@@ -1,7 +1,7 @@") != std::string::npos);
    CHECK(diff.find("-d\n") != std::string::npos);
    CHECK(diff.find("+X\n") != std::string::npos);
    CHECK(unified_diff(before, before, "T.java") == "--- a/T.java\n+++ b/T.java\n");
}
