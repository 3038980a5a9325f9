#include "ehaudit/coverage.hpp"
#include "ehaudit/metrics.hpp"
#include "ehaudit/pipeline.hpp"
#include "ehaudit/triangulate.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace ehaudit;
using nlohmann::json;

namespace {

std::set<MutationOperator> parse_operator_list(const std::vector<std::string>& items) {
    std::set<MutationOperator> ops;
    for (const auto& raw : items) {
        std::string item;
        std::istringstream ss(raw);
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            if (item == "all") {
                ops.insert(all_operators().begin(), all_operators().end());
                continue;
            }
            auto op = parse_operator(item);
            if (!op) throw ConfigError("unknown mutation operator: " + item);
            ops.insert(*op);
        }
    }
    return ops;
}

BuildTool parse_build_tool(const std::string& name) {
    if (name == "maven") return BuildTool::maven;
    if (name == "gradle") return BuildTool::gradle;
    if (name == "custom") return BuildTool::custom;
    throw ConfigError("unknown build tool: " + name);
}

// JSON config file mirroring the CLI flags; explicit flags override it.
void apply_config_file(const std::string& path, PipelineConfig& config,
                       std::vector<std::string>& operator_items, std::string& build_tool_name) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (j.contains("project")) config.project_source = j["project"].get<std::string>();
    if (j.contains("source_root")) config.source_root = j["source_root"].get<std::string>();
    if (j.contains("build_tool")) build_tool_name = j["build_tool"].get<std::string>();
    if (j.contains("compile_command"))
        config.compile_command = j["compile_command"].get<std::string>();
    if (j.contains("test_command")) config.test_command = j["test_command"].get<std::string>();
    if (j.contains("test_report_dirs"))
        config.test_report_dirs = j["test_report_dirs"].get<std::vector<std::string>>();
    if (j.contains("timeout_multiplier"))
        config.timeout_multiplier = j["timeout_multiplier"].get<double>();
    if (j.contains("operators"))
        operator_items = j["operators"].get<std::vector<std::string>>();
    if (j.contains("coverage_report"))
        config.coverage_report = j["coverage_report"].get<std::string>();
    if (j.contains("out")) config.out_dir = j["out"].get<std::string>();
    if (j.contains("jobs")) config.jobs = j["jobs"].get<int>();
    if (j.contains("seed")) config.seed = j["seed"].get<unsigned long>();
    if (j.contains("dump_regions")) config.dump_regions = j["dump_regions"].get<bool>();
}

int cmd_regions(const PipelineConfig& config) {
    fs::path workdir = config.out_dir / "workspace";
    fs::path snapshot = acquire_project(config.project_source, workdir);
    ProjectAnalysis analysis = analyze_project(snapshot, config.source_root);
    for (const auto& map : analysis.maps) {
        fs::path dest = config.out_dir / "regions" / (map.file_id + ".json");
        write_text_atomic(dest, region_map_json(map).dump(2) + "\n");
    }
    for (const auto& w : analysis.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "wrote " << analysis.maps.size() << " region files under "
              << (config.out_dir / "regions") << "\n";
    return kExitOk;
}

int cmd_coverage(const PipelineConfig& config) {
    if (config.coverage_report.empty())
        throw ConfigError("coverage subcommand requires --coverage-report");
    fs::path workdir = config.out_dir / "workspace";
    fs::path snapshot = acquire_project(config.project_source, workdir);
    ProjectAnalysis analysis = analyze_project(snapshot, config.source_root);

    CoverageModel model = parse_coverage_report_file(config.coverage_report);
    RegionCoverageCounts counts = triangulate(model, analysis.maps, config.jobs);
    MetricSuite metrics = compute_metrics(counts);

    std::string label = fs::path(config.project_source).filename().string();
    write_text_atomic(config.out_dir / "coverage_pairs.csv",
                      coverage_pairs_csv(label, counts));
    write_text_atomic(config.out_dir / "metrics.csv", metrics_csv(metrics));
    for (const auto& w : model.warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& w : counts.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << metrics_csv(metrics);
    return kExitOk;
}

int cmd_mutate(const PipelineConfig& config) {
    fs::path workdir = config.out_dir / "workspace";
    fs::path snapshot = acquire_project(config.project_source, workdir);
    ProjectAnalysis analysis = analyze_project(snapshot, config.source_root);
    std::vector<std::string> warnings = analysis.warnings;
    auto records = generate_all_mutants(analysis, config.effective_operators(), warnings);
    write_text_atomic(config.out_dir / "mutants.jsonl", mutants_manifest_jsonl(records));
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "generated " << records.size() << " mutants -> "
              << (config.out_dir / "mutants.jsonl") << "\n";
    return kExitOk;
}

int cmd_campaign(const PipelineConfig& config) {
    fs::path workdir = config.out_dir / "workspace";
    fs::path snapshot = acquire_project(config.project_source, workdir);
    ProjectAnalysis analysis = analyze_project(snapshot, config.source_root);

    fs::path baseline_ws = workdir / "baseline";
    fs::remove_all(baseline_ws);
    copy_tree(snapshot, baseline_ws);
    BuildConfig build = config.build_config(baseline_ws);
    BaselineResult baseline = verify_baseline(build);
    if (!baseline.passing) {
        std::cerr << "baseline test suite failing; refusing to start campaign\n";
        for (const auto& t : baseline.failing_tests) std::cerr << "  failing: " << t << "\n";
        return kExitBaselineFailing;
    }
    build.baseline_duration = baseline.duration;

    std::vector<std::string> warnings = analysis.warnings;
    auto records = generate_all_mutants(analysis, config.effective_operators(), warnings);
    write_text_atomic(config.out_dir / "mutants.jsonl", mutants_manifest_jsonl(records));
    std::vector<Mutant> mutants;
    for (const auto& r : records) mutants.push_back(r.mutant);

    CampaignOptions opts;
    opts.jobs = config.jobs;
    opts.journal_path = config.out_dir / "verdicts.jsonl";
    opts.work_dir = workdir / "campaign";
    CampaignResult campaign = run_campaign(build, mutants, opts);
    if (campaign.interrupted) {
        std::cerr << "interrupted; rerun to resume from " << opts.journal_path << "\n";
        return 130;
    }
    write_text_atomic(config.out_dir / "mutation_tallies.csv", mutation_tallies_csv(campaign));
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    std::cout << mutation_tallies_csv(campaign);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exception-handling test adequacy and effectiveness analyzer"};
    app.require_subcommand(1);

    PipelineConfig config;
    std::vector<std::string> operator_items;
    std::string build_tool_name = "maven";
    std::string config_file;

    auto add_common = [&](CLI::App* cmd, bool needs_project) {
        if (needs_project)
            cmd->add_option("--project", config.project_source,
                            "project path or clone URL");
        cmd->add_option("--config", config_file, "JSON config file mirroring these flags");
        cmd->add_option("--source-root", config.source_root, "source root inside the project");
        cmd->add_option("--out", config.out_dir, "output directory");
        cmd->add_option("--jobs", config.jobs, "worker count");
        cmd->add_option("--build-tool", build_tool_name, "maven|gradle|custom");
        cmd->add_option("--test-command", config.test_command, "overrides the tool default");
        cmd->add_option("--compile-command", config.compile_command,
                        "overrides the tool default");
        cmd->add_option("--test-report-dir", config.test_report_dirs,
                        "JUnit XML directory, relative to the project");
        cmd->add_option("--timeout-multiplier", config.timeout_multiplier,
                        "mutant timeout as a multiple of the baseline duration");
        cmd->add_option("--operators", operator_items, "subset, e.g. CBD,TSD (default all)");
        cmd->add_option("--coverage-report", config.coverage_report,
                        "JaCoCo XML path (omit to generate)");
        cmd->add_option("--seed", config.seed, "seed echoed into summary.json");
    };

    auto* regions = app.add_subcommand("regions", "parse sources and dump region maps");
    add_common(regions, true);
    auto* coverage = app.add_subcommand("coverage", "triangulate a coverage report");
    add_common(coverage, true);
    auto* mutate = app.add_subcommand("mutate", "enumerate and generate mutants");
    add_common(mutate, true);
    auto* campaign = app.add_subcommand("campaign", "evaluate every mutant");
    add_common(campaign, true);
    auto* run = app.add_subcommand("run", "full pipeline");
    add_common(run, true);
    run->add_flag("--dump-regions", config.dump_regions, "also emit region JSON files");

    auto* stats_cmd = app.add_subcommand("stats", "statistical comparisons");
    stats_cmd->require_subcommand(1);
    std::string file_a, file_b, col_a, col_b, matrix_file, out_file;
    double alpha = 0.05;
    auto* compare = stats_cmd->add_subcommand("compare", "two-sample battery on CSV columns");
    compare->add_option("a", file_a, "first CSV file")->required();
    compare->add_option("b", file_b, "second CSV file")->required();
    compare->add_option("--col-a", col_a, "column name in the first file");
    compare->add_option("--col-b", col_b, "column name in the second file");
    compare->add_option("--alpha", alpha, "significance level");
    compare->add_option("--out", out_file, "write the JSON bundle here");
    auto* rank = stats_cmd->add_subcommand("rank", "rank an operator-score matrix");
    rank->add_option("matrix", matrix_file, "CSV: first column labels, one column per operator")
        ->required();
    rank->add_option("--alpha", alpha, "significance level");
    rank->add_option("--out", out_file, "write the JSON bundle here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_file.empty())
            apply_config_file(config_file, config, operator_items, build_tool_name);
        // re-parse so explicit flags override the config file
        app.clear();
        CLI11_PARSE(app, argc, argv);

        config.build_tool = parse_build_tool(build_tool_name);
        config.operators = parse_operator_list(operator_items);

        if (compare->parsed()) {
            stats::Sample a{csv_column(parse_csv(read_text_file(file_a)), col_a), col_a};
            stats::Sample b{csv_column(parse_csv(read_text_file(file_b)), col_b), col_b};
            json bundle = stats_compare_bundle(a, b, alpha);
            std::string text = bundle.dump(2) + "\n";
            if (!out_file.empty()) write_text_atomic(out_file, text);
            std::cout << text;
            return kExitOk;
        }
        if (rank->parsed()) {
            auto rows = parse_csv(read_text_file(matrix_file));
            if (rows.size() < 3 || rows[0].size() < 2)
                throw ConfigError("rank matrix needs a header row and >= 2 data rows");
            std::vector<std::string> cols(rows[0].begin() + 1, rows[0].end());
            std::vector<std::string> labels;
            std::vector<std::vector<double>> scores;
            for (std::size_t r = 1; r < rows.size(); ++r) {
                labels.push_back(rows[r][0]);
                std::vector<double> row;
                for (std::size_t ccol = 1; ccol < rows[r].size(); ++ccol)
                    row.push_back(std::stod(rows[r][ccol]));
                scores.push_back(std::move(row));
            }
            json bundle = stats_rank_bundle(labels, cols, scores, alpha);
            std::string text = bundle.dump(2) + "\n";
            if (!out_file.empty()) write_text_atomic(out_file, text);
            std::cout << text;
            return kExitOk;
        }

        if (config.project_source.empty())
            throw ConfigError("--project is required (flag or config file)");

        if (regions->parsed()) return cmd_regions(config);
        if (coverage->parsed()) return cmd_coverage(config);
        if (mutate->parsed()) return cmd_mutate(config);
        if (campaign->parsed()) return cmd_campaign(config);
        if (run->parsed()) return run_full_pipeline(config, std::cout);
        throw ConfigError("no subcommand selected");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const AcquisitionError& e) {
        std::cerr << "acquisition error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const BuildFailure& e) {
        std::cerr << "build failure: " << e.what() << "\n";
        if (!e.output.empty()) std::cerr << e.output << "\n";
        return kExitBuildFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
