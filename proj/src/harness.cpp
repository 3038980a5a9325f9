#include "ehaudit/harness.hpp"

#include "ehaudit/subprocess.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <csignal>
#include <fstream>
#include <omp.h>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
namespace pt = boost::property_tree;
using nlohmann::json;

namespace ehaudit {

const char* to_string(BuildTool t) {
    switch (t) {
        case BuildTool::maven: return "maven";
        case BuildTool::gradle: return "gradle";
        case BuildTool::custom: return "custom";
    }
    return "?";
}

const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::KILLED: return "KILLED";
        case VerdictStatus::ALIVE: return "ALIVE";
        case VerdictStatus::STILLBORN: return "STILLBORN";
        case VerdictStatus::TIMEOUT: return "TIMEOUT";
    }
    return "?";
}

std::string BuildConfig::effective_compile_command() const {
    if (!compile_command.empty()) return compile_command;
    switch (build_tool) {
        case BuildTool::maven: return "mvn -q -B test-compile";
        case BuildTool::gradle: return "./gradlew -q testClasses";
        case BuildTool::custom: return "";
    }
    return "";
}

std::string BuildConfig::effective_test_command() const {
    if (!test_command.empty()) return test_command;
    switch (build_tool) {
        case BuildTool::maven: return "mvn -q -B test";
        case BuildTool::gradle: return "./gradlew -q test";
        case BuildTool::custom: return "";
    }
    return "";
}

std::vector<fs::path> BuildConfig::effective_report_dirs() const {
    if (!test_report_dirs.empty())
        return {test_report_dirs.begin(), test_report_dirs.end()};
    switch (build_tool) {
        case BuildTool::maven:
            return {"target/surefire-reports", "target/failsafe-reports"};
        case BuildTool::gradle: return {"build/test-results/test"};
        case BuildTool::custom: return {"test-reports"};
    }
    return {};
}

namespace {

struct TestRunSummary {
    int tests = 0;
    std::vector<std::string> failing; // classname.name
    bool any_reports = false;
};

void parse_junit_file(const fs::path& file, TestRunSummary& out) {
    pt::ptree tree;
    try {
        std::ifstream in(file);
        pt::read_xml(in, tree);
    } catch (...) {
        return; // not a result file
    }
    auto handle_suite = [&](const pt::ptree& suite) {
        out.any_reports = true;
        out.tests += suite.get<int>("<xmlattr>.tests", 0);
        for (const auto& [tag, tc] : suite) {
            if (tag != "testcase") continue;
            bool failed = false;
            for (const auto& [ctag, child] : tc) {
                (void)child;
                if (ctag == "failure" || ctag == "error") failed = true;
            }
            if (failed) {
                std::string cls = tc.get<std::string>("<xmlattr>.classname", "");
                std::string name = tc.get<std::string>("<xmlattr>.name", "");
                out.failing.push_back(cls.empty() ? name : cls + "." + name);
            }
        }
    };
    if (auto suite = tree.get_child_optional("testsuite")) handle_suite(*suite);
    if (auto suites = tree.get_child_optional("testsuites"))
        for (const auto& [tag, suite] : *suites)
            if (tag == "testsuite") handle_suite(suite);
}

TestRunSummary collect_test_results(const BuildConfig& config, const fs::path& root) {
    TestRunSummary out;
    for (const auto& rel : config.effective_report_dirs()) {
        fs::path dir = root / rel;
        if (!fs::exists(dir)) continue;
        std::vector<fs::path> files;
        for (const auto& entry : fs::recursive_directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".xml")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) parse_junit_file(f, out);
    }
    std::sort(out.failing.begin(), out.failing.end());
    out.failing.erase(std::unique(out.failing.begin(), out.failing.end()), out.failing.end());
    return out;
}

void clear_test_results(const BuildConfig& config, const fs::path& root) {
    for (const auto& rel : config.effective_report_dirs()) {
        fs::path dir = root / rel;
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
}

volatile std::sig_atomic_t g_interrupted = 0;
void sigint_handler(int) { g_interrupted = 1; }

} // namespace

BaselineResult verify_baseline(const BuildConfig& config) {
    const fs::path root = config.project_root;
    if (!fs::exists(root)) throw BuildFailure("project root does not exist", "");

    clear_test_results(config, root);
    std::string compile = config.effective_compile_command();
    if (!compile.empty()) {
        RunResult rc = run_shell(compile, root.string());
        if (rc.exit_code != 0)
            throw BuildFailure("compile command failed with exit " +
                                   std::to_string(rc.exit_code),
                               rc.output);
    }

    RunResult rt = run_shell(config.effective_test_command(), root.string());
    TestRunSummary summary = collect_test_results(config, root);

    if (!summary.any_reports && rt.exit_code != 0)
        throw BuildFailure("test command failed before producing results (exit " +
                               std::to_string(rt.exit_code) + ")",
                           rt.output);

    BaselineResult result;
    result.duration = rt.seconds;
    result.test_count = summary.tests;
    result.failing_tests = summary.failing;
    result.passing = summary.failing.empty() && rt.exit_code == 0;
    return result;
}

namespace {

class FileRestorer {
public:
    FileRestorer(fs::path path, std::string pristine)
        : path_(std::move(path)), pristine_(std::move(pristine)) {}
    ~FileRestorer() {
        std::ofstream out(path_, std::ios::binary | std::ios::trunc);
        out << pristine_;
    }

private:
    fs::path path_;
    std::string pristine_;
};

} // namespace

MutantVerdict evaluate_mutant(const BuildConfig& config, const Mutant& mutant,
                              const fs::path& workspace) {
    MutantVerdict verdict;
    verdict.mutant_id = mutant.mutant_id;

    fs::path target = workspace / mutant.site.file_id;
    std::ifstream in(target, std::ios::binary);
    if (!in) throw InfrastructureError("cannot open " + target.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    in.close();
    std::string pristine = buf.str();

    std::string mutated = apply_edits(pristine, mutant.edits);
    FileRestorer restore(target, pristine);
    {
        std::ofstream out(target, std::ios::binary | std::ios::trunc);
        if (!out) throw InfrastructureError("cannot write " + target.string());
        out << mutated;
    }

    BuildConfig local = config;
    local.project_root = workspace;
    clear_test_results(local, workspace);

    double start_clock = omp_get_wtime();
    double timeout = std::max(config.timeout_multiplier * config.baseline_duration, 1.0);

    std::string compile = local.effective_compile_command();
    if (!compile.empty()) {
        RunResult rc = run_shell(compile, workspace.string(), timeout);
        if (rc.timed_out) {
            verdict.status = VerdictStatus::TIMEOUT;
            verdict.wall_time = omp_get_wtime() - start_clock;
            return verdict;
        }
        if (rc.exit_code != 0) {
            verdict.status = VerdictStatus::STILLBORN;
            verdict.wall_time = omp_get_wtime() - start_clock;
            return verdict;
        }
    }

    RunResult rt = run_shell(local.effective_test_command(), workspace.string(), timeout);
    verdict.wall_time = omp_get_wtime() - start_clock;
    if (rt.timed_out) {
        verdict.status = VerdictStatus::TIMEOUT;
        return verdict;
    }
    TestRunSummary summary = collect_test_results(local, workspace);
    if (!summary.any_reports && rt.exit_code != 0) {
        // the test phase broke without producing results: a compile-stage
        // failure that slipped past the compile command counts as stillborn
        verdict.status = VerdictStatus::STILLBORN;
        return verdict;
    }
    if (!summary.failing.empty() || rt.exit_code != 0) {
        verdict.status = VerdictStatus::KILLED;
        verdict.failing_tests = summary.failing;
        return verdict;
    }
    verdict.status = VerdictStatus::ALIVE;
    return verdict;
}

void copy_tree(const fs::path& from, const fs::path& to) {
    fs::create_directories(to);
    fs::copy(from, to,
             fs::copy_options::recursive | fs::copy_options::overwrite_existing |
                 fs::copy_options::copy_symlinks);
}

std::string verdict_to_json(const MutantVerdict& v) {
    json j;
    j["mutant_id"] = v.mutant_id;
    j["status"] = to_string(v.status);
    j["failing_tests"] = v.failing_tests;
    j["wall_time"] = v.wall_time;
    return j.dump();
}

MutantVerdict verdict_from_json(const std::string& line) {
    json j = json::parse(line);
    MutantVerdict v;
    v.mutant_id = j.at("mutant_id").get<std::string>();
    std::string status = j.at("status").get<std::string>();
    if (status == "KILLED") v.status = VerdictStatus::KILLED;
    else if (status == "ALIVE") v.status = VerdictStatus::ALIVE;
    else if (status == "STILLBORN") v.status = VerdictStatus::STILLBORN;
    else if (status == "TIMEOUT") v.status = VerdictStatus::TIMEOUT;
    else throw std::runtime_error("unknown verdict status: " + status);
    v.failing_tests = j.value("failing_tests", std::vector<std::string>{});
    v.wall_time = j.value("wall_time", 0.0);
    return v;
}

CampaignResult run_campaign(const BuildConfig& config, const std::vector<Mutant>& mutants,
                            const CampaignOptions& options) {
    CampaignResult result;

    // resume: verdicts already in the journal are kept as-is
    std::map<std::string, MutantVerdict> done;
    if (!options.journal_path.empty() && fs::exists(options.journal_path)) {
        std::ifstream in(options.journal_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            MutantVerdict v = verdict_from_json(line);
            done[v.mutant_id] = std::move(v);
        }
    }

    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < mutants.size(); ++i)
        if (!done.count(mutants[i].mutant_id)) pending.push_back(i);

    int jobs = std::max(1, options.jobs);
    std::vector<fs::path> workspaces;
    for (int w = 0; w < jobs; ++w) {
        fs::path ws = options.work_dir / ("worker" + std::to_string(w));
        if (!pending.empty()) {
            fs::remove_all(ws);
            copy_tree(config.project_root, ws);
        }
        workspaces.push_back(ws);
    }

    std::ofstream journal;
    if (!options.journal_path.empty()) {
        fs::create_directories(options.journal_path.parent_path());
        journal.open(options.journal_path, std::ios::app);
    }

    auto previous_handler = std::signal(SIGINT, sigint_handler);
    g_interrupted = 0;

    const int npending = static_cast<int>(pending.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (int pi = 0; pi < npending; ++pi) {
        if (g_interrupted) continue;
        const Mutant& m = mutants[pending[static_cast<std::size_t>(pi)]];
        const fs::path& ws = workspaces[static_cast<std::size_t>(omp_get_thread_num())];

        MutantVerdict verdict;
        bool infra_failed = false;
        std::string infra_message;
        for (int attempt = 0; attempt < 2; ++attempt) {
            try {
                verdict = evaluate_mutant(config, m, ws);
                infra_failed = false;
                break;
            } catch (const InfrastructureError& e) {
                infra_failed = true;
                infra_message = e.what();
            }
        }

#pragma omp critical(ehaudit_campaign_journal)
        {
            if (infra_failed) {
                result.infrastructure_failures.emplace_back(m.mutant_id, infra_message);
            } else {
                done[m.mutant_id] = verdict;
                if (journal.is_open()) {
                    journal << verdict_to_json(verdict) << "\n";
                    journal.flush();
                }
            }
        }
    }

    std::signal(SIGINT, previous_handler);
    result.interrupted = g_interrupted != 0;

    for (const auto& m : mutants) {
        auto it = done.find(m.mutant_id);
        if (it == done.end()) continue; // interrupted or infrastructure failure
        result.verdicts.push_back(it->second);
        OperatorTally& tally = result.tallies[to_string(m.site.op)];
        switch (it->second.status) {
            case VerdictStatus::KILLED: ++tally.killed; break;
            case VerdictStatus::ALIVE: ++tally.live; break;
            case VerdictStatus::STILLBORN: ++tally.stillborn; break;
            case VerdictStatus::TIMEOUT: ++tally.timeout; break;
        }
    }

    // deterministic journal: rewrite in manifest order once complete
    if (journal.is_open()) {
        journal.close();
        if (!result.interrupted && result.infrastructure_failures.empty()) {
            fs::path tmp = options.journal_path;
            tmp += ".tmp";
            {
                std::ofstream out(tmp, std::ios::trunc);
                for (const auto& v : result.verdicts) out << verdict_to_json(v) << "\n";
            }
            fs::rename(tmp, options.journal_path);
        }
    }

    for (int w = 0; w < jobs; ++w) {
        std::error_code ec;
        fs::remove_all(workspaces[static_cast<std::size_t>(w)], ec);
    }
    return result;
}

} // namespace ehaudit
