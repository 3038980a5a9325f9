#include "ehaudit/pipeline.hpp"

#include "ehaudit/coverage.hpp"
#include "ehaudit/java_lexer.hpp"
#include "ehaudit/metrics.hpp"
#include "ehaudit/subprocess.hpp"
#include "ehaudit/triangulate.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace ehaudit {

std::set<MutationOperator> PipelineConfig::effective_operators() const {
    if (!operators.empty()) return operators;
    return {all_operators().begin(), all_operators().end()};
}

BuildConfig PipelineConfig::build_config(const fs::path& root) const {
    BuildConfig bc;
    bc.project_root = root;
    bc.build_tool = build_tool;
    bc.compile_command = compile_command;
    bc.test_command = test_command;
    bc.timeout_multiplier = timeout_multiplier;
    bc.test_report_dirs = test_report_dirs;
    return bc;
}

fs::path acquire_project(const std::string& source, const fs::path& workdir) {
    fs::path snapshot = workdir / "snapshot";
    fs::remove_all(snapshot);
    fs::create_directories(workdir);

    bool is_url = source.rfind("http://", 0) == 0 || source.rfind("https://", 0) == 0 ||
                  source.rfind("git@", 0) == 0 || source.rfind("ssh://", 0) == 0 ||
                  source.rfind("file://", 0) == 0;
    if (is_url) {
        RunResult rc = run_shell("git clone --quiet '" + source + "' '" +
                                     snapshot.string() + "'",
                                 workdir.string());
        if (rc.exit_code != 0)
            throw AcquisitionError("git clone failed for " + source + ": " + rc.output);
        return snapshot;
    }
    if (!fs::exists(source)) throw AcquisitionError("project source does not exist: " + source);
    if (!fs::is_directory(source))
        throw AcquisitionError("project source is not a directory: " + source);
    copy_tree(source, snapshot);
    return snapshot;
}

ProjectAnalysis analyze_project(const fs::path& root, const std::string& source_root) {
    ProjectAnalysis analysis;
    analysis.root = root;

    fs::path src_dir = source_root.empty() ? root : root / source_root;
    std::vector<fs::path> files;
    if (fs::exists(src_dir))
        for (const auto& entry : fs::recursive_directory_iterator(src_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".java")
                files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    for (const auto& file : files) {
        std::string rel = fs::relative(file, root).generic_string();
        try {
            std::string text = read_text_file(file);
            analysis.maps.push_back(extract_eh_regions(text, rel));
        } catch (const ParseError& e) {
            analysis.warnings.push_back(std::string("skipped unparseable file: ") + e.what());
        }
    }
    analysis.hierarchies = build_hierarchies(analysis.maps);
    for (const auto& w : analysis.hierarchies.warnings) analysis.warnings.push_back(w);
    return analysis;
}

std::vector<MutantRecord> generate_all_mutants(const ProjectAnalysis& analysis,
                                               const std::set<MutationOperator>& operators,
                                               std::vector<std::string>& warnings) {
    auto sites = find_eligible_sites(analysis.maps, analysis.hierarchies, operators);

    std::map<std::string, std::string> sources;
    for (const auto& map : analysis.maps)
        sources[map.file_id] = read_text_file(analysis.root / map.file_id);

    std::vector<MutantRecord> records;
    for (const auto& site : sites) {
        const std::string& text = sources.at(site.file_id);
        try {
            MutantRecord rec;
            rec.mutant = generate_mutant(site, text, analysis.hierarchies);
            std::string mutated = apply_edits(text, rec.mutant.edits);
            rec.diff = unified_diff(text, mutated, site.file_id);
            records.push_back(std::move(rec));
        } catch (const GenerationSkipped& e) {
            warnings.push_back(std::string("generation skipped: ") + e.what());
        }
    }
    return records;
}

namespace {

fs::path generate_coverage_report(const PipelineConfig& config, const fs::path& snapshot,
                                  const fs::path& workdir, std::ostream& log) {
    fs::path ws = workdir / "coverage";
    fs::remove_all(ws);
    copy_tree(snapshot, ws);

    std::string command;
    fs::path produced;
    if (config.build_tool == BuildTool::maven) {
        command = "mvn -q -B org.jacoco:jacoco-maven-plugin:prepare-agent test "
                  "org.jacoco:jacoco-maven-plugin:report";
        produced = ws / "target/site/jacoco/jacoco.xml";
    } else if (config.build_tool == BuildTool::gradle) {
        command = "./gradlew -q test jacocoTestReport";
        produced = ws / "build/reports/jacoco/test/jacocoTestReport.xml";
    } else {
        throw ConfigError("custom build tool requires --coverage-report");
    }
    log << "[coverage] generating report: " << command << "\n";
    RunResult rc = run_shell(command, ws.string());
    if (rc.exit_code != 0 || !fs::exists(produced))
        throw BuildFailure("coverage generation failed", rc.output);
    return produced;
}

json metrics_json(const MetricSuite& metrics) {
    json j = json::object();
    for (const auto& [name, value] : metric_items(metrics)) {
        if (value) j[name] = *value;
        else j[name] = nullptr;
    }
    return j;
}

} // namespace

int run_full_pipeline(const PipelineConfig& config, std::ostream& log) {
    if (config.jobs < 1) throw ConfigError("worker count must be >= 1");
    fs::path out = config.out_dir;
    fs::path workdir = out / "workspace";
    fs::create_directories(workdir);

    if (fs::exists(config.project_source) &&
        fs::weakly_canonical(config.project_source) == fs::weakly_canonical(out))
        throw ConfigError("output directory must differ from the project root");

    // 1. acquire
    fs::path snapshot = acquire_project(config.project_source, workdir);
    log << "[acquire] snapshot at " << snapshot << "\n";

    // 2. parse regions
    ProjectAnalysis analysis = analyze_project(snapshot, config.source_root);
    log << "[regions] parsed " << analysis.maps.size() << " files\n";
    std::vector<std::string> warnings = analysis.warnings;
    if (config.dump_regions) {
        for (const auto& map : analysis.maps) {
            fs::path dest = out / "regions" / (map.file_id + ".json");
            write_text_atomic(dest, region_map_json(map).dump(2) + "\n");
        }
    }

    // 3. baseline verification in a disposable build workspace
    fs::path baseline_ws = workdir / "baseline";
    fs::remove_all(baseline_ws);
    copy_tree(snapshot, baseline_ws);
    BuildConfig build = config.build_config(baseline_ws);
    BaselineResult baseline = verify_baseline(build);
    log << "[baseline] passing=" << (baseline.passing ? "true" : "false")
        << " tests=" << baseline.test_count << " duration=" << baseline.duration << "s\n";
    if (!baseline.passing) {
        log << "[baseline] failing tests:";
        for (const auto& t : baseline.failing_tests) log << " " << t;
        log << "\n[abort] baseline test suite must pass before a campaign\n";
        return kExitBaselineFailing;
    }
    build.baseline_duration = baseline.duration;

    // 4. coverage triangulation input
    fs::path report_path;
    if (!config.coverage_report.empty()) {
        report_path = config.coverage_report;
        if (!fs::exists(report_path)) throw ConfigError("coverage report not found");
    } else {
        report_path = generate_coverage_report(config, snapshot, workdir, log);
    }

    // 5. mutants
    auto operators = config.effective_operators();
    std::vector<MutantRecord> records = generate_all_mutants(analysis, operators, warnings);
    write_text_atomic(out / "mutants.jsonl", mutants_manifest_jsonl(records));
    log << "[mutate] " << records.size() << " mutants\n";

    // 6. campaign
    std::vector<Mutant> mutants;
    mutants.reserve(records.size());
    for (const auto& r : records) mutants.push_back(r.mutant);

    CampaignOptions copts;
    copts.jobs = config.jobs;
    copts.journal_path = out / "verdicts.jsonl";
    copts.work_dir = workdir / "campaign";
    BuildConfig campaign_build = build;
    campaign_build.project_root = baseline_ws; // workers copy the built tree
    CampaignResult campaign = run_campaign(campaign_build, mutants, copts);
    for (const auto& [id, msg] : campaign.infrastructure_failures)
        warnings.push_back("infrastructure failure for " + id + ": " + msg);
    if (campaign.interrupted) {
        log << "[campaign] interrupted; journal is resumable at " << copts.journal_path << "\n";
        return 130;
    }
    write_text_atomic(out / "mutation_tallies.csv", mutation_tallies_csv(campaign));
    log << "[campaign] " << campaign.verdicts.size() << " verdicts\n";

    // 7. coverage metrics
    CoverageModel model = parse_coverage_report_file(report_path.string());
    for (const auto& w : model.warnings) warnings.push_back(w);
    RegionCoverageCounts counts = triangulate(model, analysis.maps, config.jobs);
    for (const auto& w : counts.warnings) warnings.push_back(w);
    MetricSuite metrics = compute_metrics(counts);

    std::string label = fs::path(config.project_source).filename().string();
    if (label.empty()) label = "project";
    write_text_atomic(out / "coverage_pairs.csv", coverage_pairs_csv(label, counts));
    write_text_atomic(out / "metrics.csv", metrics_csv(metrics));

    // 8. summary
    json summary;
    summary["project"] = config.project_source;
    summary["seed"] = config.seed;
    json ops = json::array();
    for (auto op : all_operators())
        if (operators.count(op)) ops.push_back(to_string(op));
    summary["operators"] = std::move(ops);
    summary["baseline"] = {{"passing", baseline.passing},
                           {"test_count", baseline.test_count}};

    long killed = 0, live = 0, stillborn = 0, timeout = 0;
    json per_op = json::object();
    for (auto op : all_operators()) {
        auto it = campaign.tallies.find(to_string(op));
        OperatorTally t = it == campaign.tallies.end() ? OperatorTally{} : it->second;
        killed += t.killed;
        live += t.live;
        stillborn += t.stillborn;
        timeout += t.timeout;
        json jt = {{"killed", t.killed},
                   {"live", t.live},
                   {"stillborn", t.stillborn},
                   {"timeout", t.timeout}};
        long scored_total = t.killed + t.live + t.timeout; // stillborn excluded
        if (scored_total > 0)
            jt["score"] = static_cast<double>(t.killed + t.timeout) / scored_total;
        else
            jt["score"] = nullptr;
        per_op[to_string(op)] = std::move(jt);
    }
    json overall = {{"killed", killed},
                    {"live", live},
                    {"stillborn", stillborn},
                    {"timeout", timeout}};
    long scored_total = killed + live + timeout;
    if (scored_total > 0)
        overall["score"] = static_cast<double>(killed + timeout) / scored_total;
    else
        overall["score"] = nullptr;
    summary["mutation"] = {{"per_operator", per_op}, {"overall", overall}};
    summary["metrics"] = metrics_json(metrics);
    std::sort(warnings.begin(), warnings.end());
    summary["warnings"] = warnings;
    write_text_atomic(out / "summary.json", summary.dump(2) + "\n");

    log << "[done] reports in " << out << "\n";
    return kExitOk;
}

} // namespace ehaudit
