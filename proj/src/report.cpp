#include "ehaudit/report.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace ehaudit {

void write_text_atomic(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string format_metric(const std::optional<double>& v) {
    if (!v) return "-";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", *v);
    return buf;
}

std::string coverage_pairs_csv(const std::string& project_label,
                               const RegionCoverageCounts& c) {
    struct Entry {
        const char* name;
        const RegionCounts* counts;
    };
    const Entry entries[] = {
        {"TOTAL", &c.total},          {"TRY", &c.in_try},
        {"CATCH", &c.in_catch},       {"FINALLY", &c.in_finally},
        {"THROW", &c.in_throw},       {"EH", &c.eh},
        {"NON_TRY", &c.non_try},      {"NON_CATCH", &c.non_catch},
        {"NON_FINALLY", &c.non_finally}, {"NON_THROW", &c.non_throw},
        {"NON_EH", &c.non_eh},
    };
    std::ostringstream head, row;
    head << "PROJECT";
    row << project_label;
    for (const auto& e : entries) {
        head << "," << e.name << "_MI," << e.name << "_CI," << e.name << "_MB," << e.name
             << "_CB";
        row << "," << e.counts->mi << "," << e.counts->ci << "," << e.counts->mb << ","
            << e.counts->cb;
    }
    head << ",THROWS_METHODS_COVERED,THROWS_METHODS_TOTAL,NON_THROWS_METHODS_COVERED,"
            "NON_THROWS_METHODS_TOTAL,CATCH_BLOCKS_ENTERED,CATCH_BLOCKS_TOTAL";
    row << "," << c.throws_methods_covered << "," << c.throws_methods_total << ","
        << c.non_throws_methods_covered << "," << c.non_throws_methods_total << ","
        << c.catch_blocks_entered << "," << c.catch_blocks_total;
    return head.str() + "\n" + row.str() + "\n";
}

std::string metrics_csv(const MetricSuite& metrics) {
    auto items = metric_items(metrics);
    std::ostringstream head, row;
    bool first = true;
    for (const auto& [name, value] : items) {
        if (!first) {
            head << ",";
            row << ",";
        }
        first = false;
        head << name;
        row << format_metric(value);
    }
    return head.str() + "\n" + row.str() + "\n";
}

std::string mutation_tallies_csv(const CampaignResult& campaign) {
    std::ostringstream out;
    out << "operator,live,killed,stillborn,timeout\n";
    for (auto op : all_operators()) {
        auto it = campaign.tallies.find(to_string(op));
        OperatorTally t = it == campaign.tallies.end() ? OperatorTally{} : it->second;
        out << to_string(op) << "," << t.live << "," << t.killed << "," << t.stillborn << ","
            << t.timeout << "\n";
    }
    return out.str();
}

namespace {

json span_json(const SourceSpan& s) {
    json j;
    j["start_line"] = s.start_line;
    j["end_line"] = s.end_line;
    j["start_col"] = s.start_col;
    j["end_col"] = s.end_col;
    return j;
}

} // namespace

std::string mutants_manifest_jsonl(const std::vector<MutantRecord>& records) {
    std::ostringstream out;
    for (const auto& r : records) {
        json j;
        j["mutant_id"] = r.mutant.mutant_id;
        j["operator"] = to_string(r.mutant.site.op);
        j["file"] = r.mutant.site.file_id;
        j["anchor"] = span_json(r.mutant.site.anchor);
        j["anchor"]["begin_offset"] = r.mutant.site.anchor.begin_offset;
        j["anchor"]["end_offset"] = r.mutant.site.anchor.end_offset;
        j["variant_key"] = r.mutant.site.variant_key;
        j["description"] = r.mutant.description;
        json edits = json::array();
        for (const auto& e : r.mutant.edits) {
            json je;
            je["begin"] = e.begin;
            je["original"] = e.original;
            je["replacement"] = e.replacement;
            edits.push_back(std::move(je));
        }
        j["edits"] = std::move(edits);
        j["site"] = {{"try_index", r.mutant.site.try_index},
                     {"clause_index", r.mutant.site.clause_index},
                     {"throw_index", r.mutant.site.throw_index}};
        j["diff"] = r.diff;
        out << j.dump() << "\n";
    }
    return out.str();
}

std::vector<Mutant> load_mutants_manifest(const std::string& jsonl) {
    std::vector<Mutant> mutants;
    std::istringstream in(jsonl);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        Mutant m;
        m.mutant_id = j.at("mutant_id").get<std::string>();
        auto op = parse_operator(j.at("operator").get<std::string>());
        if (!op) throw std::runtime_error("unknown operator in manifest");
        m.site.op = *op;
        m.site.file_id = j.at("file").get<std::string>();
        const json& a = j.at("anchor");
        m.site.anchor.file_id = m.site.file_id;
        m.site.anchor.start_line = a.at("start_line").get<int>();
        m.site.anchor.end_line = a.at("end_line").get<int>();
        m.site.anchor.start_col = a.at("start_col").get<int>();
        m.site.anchor.end_col = a.at("end_col").get<int>();
        m.site.anchor.begin_offset = a.at("begin_offset").get<std::size_t>();
        m.site.anchor.end_offset = a.at("end_offset").get<std::size_t>();
        m.site.variant_key = j.value("variant_key", "");
        m.description = j.value("description", "");
        const json& s = j.at("site");
        m.site.try_index = s.at("try_index").get<int>();
        m.site.clause_index = s.at("clause_index").get<int>();
        m.site.throw_index = s.at("throw_index").get<int>();
        for (const auto& je : j.at("edits")) {
            TextEdit e;
            e.begin = je.at("begin").get<std::size_t>();
            e.original = je.at("original").get<std::string>();
            e.replacement = je.at("replacement").get<std::string>();
            m.edits.push_back(std::move(e));
        }
        mutants.push_back(std::move(m));
    }
    return mutants;
}

nlohmann::json region_map_json(const EhRegionMap& map) {
    json j;
    j["file"] = map.file_id;
    json tries = json::array();
    for (const auto& tb : map.try_blocks) {
        json jt;
        jt["try_body"] = span_json(tb.try_body_span);
        jt["statement"] = span_json(tb.statement_span);
        jt["resources_present"] = tb.resources_present;
        json clauses = json::array();
        for (const auto& c : tb.catch_clauses) {
            json jc;
            jc["exception_types"] = c.exception_types;
            jc["parameter_name"] = c.parameter_name;
            jc["clause"] = span_json(c.clause_span);
            jc["body"] = span_json(c.body_span);
            clauses.push_back(std::move(jc));
        }
        jt["catches"] = std::move(clauses);
        if (tb.finally_span) jt["finally"] = span_json(*tb.finally_span);
        json calls = json::array();
        for (const auto& c : tb.calls_in_body)
            calls.push_back(c.name + "/" + std::to_string(c.arity));
        jt["calls_in_body"] = std::move(calls);
        tries.push_back(std::move(jt));
    }
    j["tries"] = std::move(tries);
    json throws_arr = json::array();
    for (const auto& t : map.throw_spans) throws_arr.push_back(span_json(t));
    j["throws"] = std::move(throws_arr);
    json methods = json::array();
    for (const auto& m : map.methods) {
        json jm;
        jm["name"] = m.name;
        jm["arity"] = m.arity;
        jm["signature"] = span_json(m.signature_span);
        if (m.body_span) jm["body"] = span_json(*m.body_span);
        jm["throws_types"] = m.throws_types;
        jm["returns_void"] = m.declared_return_is_void;
        methods.push_back(std::move(jm));
    }
    j["methods"] = std::move(methods);
    return j;
}

static json test_result_json(const stats::TestResult& r) {
    json j;
    j["statistic"] = r.statistic;
    j["p_value"] = r.p_value;
    j["alpha"] = r.alpha;
    j["reject"] = r.reject;
    return j;
}

nlohmann::json stats_compare_bundle(const stats::Sample& a, const stats::Sample& b,
                                    double alpha) {
    json j;
    j["a"] = {{"label", a.label}, {"n", a.values.size()}};
    j["b"] = {{"label", b.label}, {"n", b.values.size()}};
    auto ks = stats::ks_two_sample(a, b, alpha);
    auto mw_g = stats::mw_one_sided(a, b, stats::Direction::greater, alpha);
    auto mw_l = stats::mw_one_sided(a, b, stats::Direction::less, alpha);
    j["ks"] = test_result_json(ks);
    j["mw_null_a_greater"] = test_result_json(mw_g);
    j["mw_null_a_less"] = test_result_json(mw_l);
    auto delta = stats::cliffs_delta(a, b);
    j["cliffs_delta"] = {{"delta", delta.delta},
                         {"magnitude", stats::to_string(delta.magnitude)}};
    std::vector<double> raw = {ks.p_value, mw_g.p_value, mw_l.p_value};
    auto adjusted = stats::by_adjust(raw);
    j["p_raw"] = {{"ks", raw[0]}, {"mw_null_a_greater", raw[1]}, {"mw_null_a_less", raw[2]}};
    j["p_by_adjusted"] = {{"ks", adjusted[0]},
                          {"mw_null_a_greater", adjusted[1]},
                          {"mw_null_a_less", adjusted[2]}};
    return j;
}

nlohmann::json stats_rank_bundle(const std::vector<std::string>& row_labels,
                                 const std::vector<std::string>& col_labels,
                                 const std::vector<std::vector<double>>& scores,
                                 double alpha) {
    auto fr = stats::friedman(scores);
    const std::size_t k = col_labels.size();

    json j;
    j["columns"] = col_labels;
    json rows = json::array();
    for (std::size_t i = 0; i < fr.ranks.rows.size(); ++i) {
        json r;
        r["label"] = i < row_labels.size() ? row_labels[i] : std::to_string(i);
        r["ranks"] = fr.ranks.rows[i];
        rows.push_back(std::move(r));
    }
    j["ranks"] = std::move(rows);
    j["average_ranks"] = fr.ranks.column_means;
    j["friedman_chi2"] = fr.chi2;
    j["friedman_p"] = fr.p_value;

    double cd = stats::nemenyi_cd(static_cast<int>(k), static_cast<int>(scores.size()), alpha);
    j["nemenyi_cd"] = cd;
    json sig = json::array();
    for (std::size_t x = 0; x < k; ++x) {
        json row = json::array();
        for (std::size_t y = 0; y < k; ++y) {
            double gap = std::abs(fr.ranks.column_means[x] - fr.ranks.column_means[y]);
            row.push_back(x != y && gap >= cd);
        }
        sig.push_back(std::move(row));
    }
    j["significantly_different"] = std::move(sig);
    return j;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            auto comma = line.find(',', start);
            if (comma == std::string::npos) {
                cells.push_back(line.substr(start));
                break;
            }
            cells.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

std::vector<double> csv_column(const std::vector<std::vector<std::string>>& rows,
                               const std::string& column) {
    if (rows.empty()) return {};
    std::size_t index = 0;
    std::size_t first_data_row = 0;
    if (!column.empty()) {
        bool found = false;
        for (std::size_t i = 0; i < rows[0].size(); ++i)
            if (rows[0][i] == column) {
                index = i;
                found = true;
                break;
            }
        if (!found) throw std::runtime_error("column not found: " + column);
        first_data_row = 1;
    } else {
        // single unnamed column; skip a non-numeric header if present
        char* end = nullptr;
        std::strtod(rows[0][0].c_str(), &end);
        if (end == rows[0][0].c_str()) first_data_row = 1;
    }
    std::vector<double> values;
    for (std::size_t r = first_data_row; r < rows.size(); ++r) {
        if (index >= rows[r].size()) continue;
        const std::string& cell = rows[r][index];
        if (cell.empty() || cell == "-") continue;
        values.push_back(std::stod(cell));
    }
    return values;
}

} // namespace ehaudit
