#pragma once

#include "ehaudit/mutation.hpp"

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehaudit {

enum class BuildTool { maven, gradle, custom };

const char* to_string(BuildTool t);

struct BuildConfig {
    std::filesystem::path project_root;
    BuildTool build_tool = BuildTool::maven;
    std::string compile_command; // empty selects the tool default
    std::string test_command;
    double timeout_multiplier = 3.0; // of the measured baseline duration
    double baseline_duration = 0.0;  // filled by verify_baseline
    std::vector<std::string> test_report_dirs; // relative; empty selects defaults

    std::string effective_compile_command() const;
    std::string effective_test_command() const;
    std::vector<std::filesystem::path> effective_report_dirs() const;
};

struct BuildFailure : std::runtime_error {
    std::string output;
    BuildFailure(const std::string& msg, std::string out)
        : std::runtime_error(msg), output(std::move(out)) {}
};

struct InfrastructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BaselineResult {
    bool passing = false;
    double duration = 0.0;
    int test_count = 0;
    std::vector<std::string> failing_tests;
};

/// Runs the project's own test suite in place and parses the JUnit-format
/// result files. BuildFailure when the build breaks before producing any
/// test results.
BaselineResult verify_baseline(const BuildConfig& config);

enum class VerdictStatus { KILLED, ALIVE, STILLBORN, TIMEOUT };
const char* to_string(VerdictStatus s);

struct MutantVerdict {
    std::string mutant_id;
    VerdictStatus status = VerdictStatus::ALIVE;
    std::vector<std::string> failing_tests; // nonempty only for KILLED
    double wall_time = 0.0;
};

/// Applies the mutant inside `workspace` (a disposable copy of the project),
/// compiles, runs the tests, and restores the file afterwards.
MutantVerdict evaluate_mutant(const BuildConfig& config, const Mutant& mutant,
                              const std::filesystem::path& workspace);

struct OperatorTally {
    long killed = 0, live = 0, stillborn = 0, timeout = 0;
};

struct CampaignResult {
    std::vector<MutantVerdict> verdicts; // manifest order
    std::map<std::string, OperatorTally> tallies; // by operator name
    std::vector<std::pair<std::string, std::string>> infrastructure_failures;
    bool interrupted = false;
};

struct CampaignOptions {
    int jobs = 1;
    std::filesystem::path journal_path; // verdicts.jsonl; loaded for resume
    std::filesystem::path work_dir;     // receives one workspace per worker
};

/// Evaluates every mutant with a bounded OpenMP worker pool, one isolated
/// project copy per worker. The journal is appended after each verdict and
/// rewritten in manifest order on completion; on SIGINT the run stops after
/// the in-flight mutants and the journal stays resumable.
CampaignResult run_campaign(const BuildConfig& config, const std::vector<Mutant>& mutants,
                            const CampaignOptions& options);

/// Recursive copy used for workspaces and snapshots.
void copy_tree(const std::filesystem::path& from, const std::filesystem::path& to);

// journal I/O (exposed for the pipeline and tests)
std::string verdict_to_json(const MutantVerdict& v);
MutantVerdict verdict_from_json(const std::string& line);

} // namespace ehaudit
