#pragma once

#include "ehaudit/harness.hpp"
#include "ehaudit/metrics.hpp"
#include "ehaudit/mutation.hpp"
#include "ehaudit/stats.hpp"

#include <filesystem>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

namespace ehaudit {

/// write-temp-rename; parent directories created on demand
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_text_file(const std::filesystem::path& path);

/// "-" for undefined, else fixed six-decimal notation
std::string format_metric(const std::optional<double>& v);

/// One row per project: TOTAL plus every region class as
/// <REGION>_MI,<REGION>_CI,<REGION>_MB,<REGION>_CB, then the method and
/// catch-reachability counts.
std::string coverage_pairs_csv(const std::string& project_label,
                               const RegionCoverageCounts& counts);

std::string metrics_csv(const MetricSuite& metrics);

/// operator,live,killed,stillborn,timeout in fixed operator order
std::string mutation_tallies_csv(const CampaignResult& campaign);

struct MutantRecord {
    Mutant mutant;
    std::string diff;
};

std::string mutants_manifest_jsonl(const std::vector<MutantRecord>& records);
std::vector<Mutant> load_mutants_manifest(const std::string& jsonl);

nlohmann::json region_map_json(const EhRegionMap& map);

// --- stats command bundles ---

nlohmann::json stats_compare_bundle(const stats::Sample& a, const stats::Sample& b,
                                    double alpha);

nlohmann::json stats_rank_bundle(const std::vector<std::string>& row_labels,
                                 const std::vector<std::string>& col_labels,
                                 const std::vector<std::vector<double>>& scores, double alpha);

// --- tiny CSV support (no quoting; our own files never quote) ---

std::vector<std::vector<std::string>> parse_csv(const std::string& text);

/// Extracts a column by header name (or the single column when unnamed),
/// dropping "-" and empty cells.
std::vector<double> csv_column(const std::vector<std::vector<std::string>>& rows,
                               const std::string& column);

} // namespace ehaudit
