#pragma once

#include "ehaudit/harness.hpp"
#include "ehaudit/mutation.hpp"
#include "ehaudit/report.hpp"

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace ehaudit {

struct AcquisitionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// process exit codes, fixed by the CLI contract
inline constexpr int kExitOk = 0;
inline constexpr int kExitBaselineFailing = 2;
inline constexpr int kExitBuildFailure = 3;
inline constexpr int kExitBadConfig = 4;

struct PipelineConfig {
    std::string project_source; // local path or clone URL
    std::string source_root = "src/main/java";

    BuildTool build_tool = BuildTool::maven;
    std::string compile_command;
    std::string test_command;
    std::vector<std::string> test_report_dirs;
    double timeout_multiplier = 3.0;

    std::set<MutationOperator> operators; // empty means all seven
    std::string coverage_report;          // path; empty requests generation
    std::filesystem::path out_dir = "ehaudit-out";
    int jobs = 1;
    unsigned long seed = 0;
    bool dump_regions = false;

    std::set<MutationOperator> effective_operators() const;
    BuildConfig build_config(const std::filesystem::path& root) const;
};

/// Copies a local tree (or clones a URL) into workdir/snapshot and returns
/// the snapshot path. The snapshot is never written to afterwards.
std::filesystem::path acquire_project(const std::string& source,
                                      const std::filesystem::path& workdir);

struct ProjectAnalysis {
    std::filesystem::path root;
    std::vector<EhRegionMap> maps; // file_id = path relative to root
    ProjectHierarchies hierarchies;
    std::vector<std::string> warnings;
};

/// Parses every .java file under root/source_root (sorted for determinism).
/// Unparseable files are skipped and recorded.
ProjectAnalysis analyze_project(const std::filesystem::path& root,
                                const std::string& source_root);

/// Enumerates sites and generates each mutant with its unified diff.
std::vector<MutantRecord> generate_all_mutants(const ProjectAnalysis& analysis,
                                               const std::set<MutationOperator>& operators,
                                               std::vector<std::string>& warnings);

/// The whole run: acquire, baseline, mutate, campaign, coverage, reports.
/// Returns a process exit code.
int run_full_pipeline(const PipelineConfig& config, std::ostream& log);

} // namespace ehaudit
