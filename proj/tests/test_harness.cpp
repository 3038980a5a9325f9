#include <doctest.h>

#include "ehaudit/harness.hpp"
#include "ehaudit/report.hpp"

#include <filesystem>
#include <fstream>
#include <map>

using namespace ehaudit;
namespace fs = std::filesystem;

namespace {

const char* kUnitJava = R"(package app;

public class Unit {
    public int run(boolean explode) {
        int status = 0;
        try {
            if (explode) {
                throw new IllegalStateException("boom");
            }
            status = 1;
        } catch (IllegalStateException ex) {
            status = 2;
        }
        return status;
    }
}
)";

// compile gate: the fixture's only catch handler must still exist
const char* kCompileSh = R"(#!/bin/sh
grep -q 'catch (' src/main/java/app/Unit.java || { echo "missing handler: unreported checked flow" ; exit 1; }
exit 0
)";

// two emulated unit tests, each a hand-derived consequence of the source:
//  - testThrowPresent fails when the guarded throw was deleted
//  - testNoRethrow fails when the handler rethrows
const char* kTestSh = R"(#!/bin/sh
mkdir -p test-reports
SRC=src/main/java/app/Unit.java
fail1=0; fail2=0
grep -q 'throw new IllegalStateException' "$SRC" || fail1=1
grep -q 'throw ex;' "$SRC" && fail2=1
failures=$((fail1+fail2))
{
echo '<?xml version="1.0" encoding="UTF-8"?>'
echo "<testsuite name=\"app.UnitTest\" tests=\"2\" failures=\"$failures\" errors=\"0\">"
if [ $fail1 -eq 1 ]; then
  echo '  <testcase classname="app.UnitTest" name="testThrowPresent"><failure message="expected exception not raised"/></testcase>'
else
  echo '  <testcase classname="app.UnitTest" name="testThrowPresent"/>'
fi
if [ $fail2 -eq 1 ]; then
  echo '  <testcase classname="app.UnitTest" name="testNoRethrow"><failure message="handler propagated"/></testcase>'
else
  echo '  <testcase classname="app.UnitTest" name="testNoRethrow"/>'
fi
echo '</testsuite>'
} > test-reports/TEST-app.UnitTest.xml
[ "$failures" -eq 0 ] || exit 1
exit 0
)";

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("ehaudit_" + tag + "_" +
                                            std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& content) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << content;
}

fs::path make_project(const fs::path& root) {
    write_file(root / "src/main/java/app/Unit.java", kUnitJava);
    write_file(root / "tool/compile.sh", kCompileSh);
    write_file(root / "tool/test.sh", kTestSh);
    return root;
}

BuildConfig config_for(const fs::path& root) {
    BuildConfig bc;
    bc.project_root = root;
    bc.build_tool = BuildTool::custom;
    bc.compile_command = "sh tool/compile.sh";
    bc.test_command = "sh tool/test.sh";
    bc.test_report_dirs = {"test-reports"};
    bc.timeout_multiplier = 3.0;
    bc.baseline_duration = 0.2;
    return bc;
}

std::vector<Mutant> project_mutants(const fs::path& root) {
    std::string src = read_text_file(root / "src/main/java/app/Unit.java");
    std::vector<EhRegionMap> maps = {extract_eh_regions(src, "src/main/java/app/Unit.java")};
    auto h = build_hierarchies(maps);
    std::set<MutationOperator> ops(all_operators().begin(), all_operators().end());
    std::vector<Mutant> mutants;
    for (const auto& site : find_eligible_sites(maps, h, ops)) {
        try {
            mutants.push_back(generate_mutant(site, src, h));
        } catch (const GenerationSkipped&) {
        }
    }
    return mutants;
}

std::map<std::string, MutationOperator> by_id(const std::vector<Mutant>& mutants) {
    std::map<std::string, MutationOperator> m;
    for (const auto& x : mutants) m[x.mutant_id] = x.site.op;
    return m;
}

} // namespace

TEST_CASE("verify_baseline: green suite") {
    TempDir tmp("baseline_green");
    auto root = make_project(tmp.path);
    BaselineResult r = verify_baseline(config_for(root));
    CHECK(r.passing);
    CHECK(r.test_count == 2);
    CHECK(r.failing_tests.empty());
    CHECK(r.duration > 0.0);
}

TEST_CASE("verify_baseline: failing test reported by name") {
    TempDir tmp("baseline_red");
    auto root = make_project(tmp.path);
    // sabotage the source so the first emulated test fails
    std::string src = read_text_file(root / "src/main/java/app/Unit.java");
    src.erase(src.find("throw new IllegalStateException(\"boom\");"), 41);
    write_file(root / "src/main/java/app/Unit.java", src);

    BaselineResult r = verify_baseline(config_for(root));
    CHECK_FALSE(r.passing);
    REQUIRE(r.failing_tests.size() == 1);
    CHECK(r.failing_tests[0] == "app.UnitTest.testThrowPresent");
}

TEST_CASE("verify_baseline: compile breakage is a BuildFailure, not a test failure") {
    TempDir tmp("baseline_compile");
    auto root = make_project(tmp.path);
    BuildConfig bc = config_for(root);
    bc.compile_command = "exit 3";
    CHECK_THROWS_AS(verify_baseline(bc), BuildFailure);

    bc = config_for(root);
    bc.test_command = "exit 9"; // dies before producing any report
    CHECK_THROWS_AS(verify_baseline(bc), BuildFailure);
}

TEST_CASE("evaluate_mutant: verdicts for each operator on the scripted project") {
    TempDir tmp("evaluate");
    auto root = make_project(tmp.path);
    BuildConfig bc = config_for(root);
    auto mutants = project_mutants(root);
    REQUIRE(mutants.size() >= 4);

    std::string pristine = read_text_file(root / "src/main/java/app/Unit.java");
    std::map<MutationOperator, VerdictStatus> expected = {
        {MutationOperator::TSD, VerdictStatus::KILLED},    // deleted throw trips test 1
        {MutationOperator::CBD, VerdictStatus::STILLBORN}, // handler gone: compile gate
        {MutationOperator::CRE, VerdictStatus::KILLED},    // rethrow trips test 2
        {MutationOperator::CBI, VerdictStatus::ALIVE},
        {MutationOperator::PTL, VerdictStatus::ALIVE},
    };

    for (const auto& m : mutants) {
        CAPTURE(to_string(m.site.op));
        MutantVerdict v = evaluate_mutant(bc, m, root);
        auto it = expected.find(m.site.op);
        REQUIRE(it != expected.end());
        CHECK(v.status == it->second);
        if (m.site.op == MutationOperator::TSD) {
            REQUIRE(v.failing_tests.size() == 1);
            CHECK(v.failing_tests[0] == "app.UnitTest.testThrowPresent");
        }
        // the workspace file is restored after every evaluation
        CHECK(read_text_file(root / "src/main/java/app/Unit.java") == pristine);
    }
}

TEST_CASE("evaluate_mutant: runaway test run becomes TIMEOUT") {
    TempDir tmp("timeout");
    fs::path root = tmp.path;
    write_file(root / "marker.java", "// fast-path\nclass M {}\n");
    write_file(root / "tool/test.sh",
               "#!/bin/sh\nmkdir -p test-reports\n"
               "grep -q 'fast-path' marker.java || sleep 30\n"
               "printf '<testsuite name=\"t\" tests=\"1\" failures=\"0\"/>' "
               "> test-reports/TEST-t.xml\n");
    BuildConfig bc;
    bc.project_root = root;
    bc.build_tool = BuildTool::custom;
    bc.test_command = "sh tool/test.sh";
    bc.test_report_dirs = {"test-reports"};
    bc.timeout_multiplier = 5.0;
    bc.baseline_duration = 0.1; // timeout floor of one second applies

    Mutant m;
    m.mutant_id = "manual-timeout";
    m.site.file_id = "marker.java";
    m.edits.push_back(TextEdit{0, "// fast-path\n", ""});

    MutantVerdict v = evaluate_mutant(bc, m, root);
    CHECK(v.status == VerdictStatus::TIMEOUT);
    CHECK(v.wall_time < 10.0);
}

TEST_CASE("run_campaign: tallies conserve and the journal resumes") {
    TempDir tmp("campaign");
    auto project = make_project(tmp.path / "proj");
    TempDir out("campaign_out");
    BuildConfig bc = config_for(project);

    auto mutants = project_mutants(project);
    auto ops = by_id(mutants);

    CampaignOptions opts;
    opts.jobs = 2;
    opts.journal_path = out.path / "verdicts.jsonl";
    opts.work_dir = out.path / "work";

    CampaignResult full = run_campaign(bc, mutants, opts);
    REQUIRE(full.verdicts.size() == mutants.size());
    CHECK(full.infrastructure_failures.empty());
    CHECK_FALSE(full.interrupted);

    long tallied = 0;
    for (const auto& [op, t] : full.tallies)
        tallied += t.killed + t.live + t.stillborn + t.timeout;
    CHECK(tallied == static_cast<long>(mutants.size()));

    // pristine project is untouched by the campaign
    CHECK(read_text_file(project / "src/main/java/app/Unit.java") == kUnitJava);

    // a partial journal resumes to the same final state as the full run
    fs::path journal2 = out.path / "resume.jsonl";
    {
        std::ofstream j(journal2);
        j << verdict_to_json(full.verdicts[0]) << "\n";
        j << verdict_to_json(full.verdicts[1]) << "\n";
    }
    CampaignOptions resume = opts;
    resume.journal_path = journal2;
    CampaignResult resumed = run_campaign(bc, mutants, resume);
    REQUIRE(resumed.verdicts.size() == full.verdicts.size());
    for (std::size_t i = 0; i < full.verdicts.size(); ++i) {
        CHECK(resumed.verdicts[i].mutant_id == full.verdicts[i].mutant_id);
        CHECK(resumed.verdicts[i].status == full.verdicts[i].status);
        CHECK(resumed.verdicts[i].failing_tests == full.verdicts[i].failing_tests);
    }

    // determinism: rerunning from scratch reproduces every verdict
    CampaignOptions fresh = opts;
    fresh.journal_path = out.path / "fresh.jsonl";
    CampaignResult again = run_campaign(bc, mutants, fresh);
    for (std::size_t i = 0; i < full.verdicts.size(); ++i)
        CHECK(again.verdicts[i].status == full.verdicts[i].status);

    // expected per-operator outcomes
    for (const auto& v : full.verdicts) {
        switch (ops.at(v.mutant_id)) {
            case MutationOperator::TSD: CHECK(v.status == VerdictStatus::KILLED); break;
            case MutationOperator::CBD: CHECK(v.status == VerdictStatus::STILLBORN); break;
            case MutationOperator::CRE: CHECK(v.status == VerdictStatus::KILLED); break;
            default: CHECK(v.status == VerdictStatus::ALIVE); break;
        }
    }
}

TEST_CASE("run_campaign: empty mutant list exits clean") {
    TempDir tmp("campaign_empty");
    auto project = make_project(tmp.path / "proj");
    CampaignOptions opts;
    opts.jobs = 1;
    opts.work_dir = tmp.path / "work";
    opts.journal_path = tmp.path / "verdicts.jsonl";
    CampaignResult r = run_campaign(config_for(project), {}, opts);
    CHECK(r.verdicts.empty());
    CHECK_FALSE(r.interrupted);
}

TEST_CASE("verdict journal lines round-trip") {
    MutantVerdict v;
    v.mutant_id = "abc123";
    v.status = VerdictStatus::KILLED;
    v.failing_tests = {"a.B.c", "d.E.f"};
    v.wall_time = 1.25;
    MutantVerdict back = verdict_from_json(verdict_to_json(v));
    CHECK(back.mutant_id == v.mutant_id);
    CHECK(back.status == v.status);
    CHECK(back.failing_tests == v.failing_tests);
    CHECK(back.wall_time == doctest::Approx(v.wall_time));

    CHECK_THROWS(verdict_from_json("{\"mutant_id\":\"x\",\"status\":\"NONSENSE\"}"));
}

TEST_CASE("failing_tests nonempty implies KILLED across the scripted campaign") {
    TempDir tmp("invariant");
    auto project = make_project(tmp.path / "proj");
    CampaignOptions opts;
    opts.jobs = 1;
    opts.work_dir = tmp.path / "work";
    auto mutants = project_mutants(project);
    CampaignResult r = run_campaign(config_for(project), mutants, opts);
    for (const auto& v : r.verdicts)
        if (!v.failing_tests.empty()) CHECK(v.status == VerdictStatus::KILLED);
}
