#include "ehaudit/triangulate.hpp"

#include <algorithm>
#include <omp.h>
#include <stdexcept>
#include <unordered_map>

namespace ehaudit {

namespace {

std::string normalize_path(std::string p) {
    std::replace(p.begin(), p.end(), '\\', '/');
    return p;
}

bool suffix_matches(const std::string& path, const std::string& key) {
    if (path == key) return true;
    if (path.size() > key.size() && path.compare(path.size() - key.size(), key.size(), key) == 0)
        return path[path.size() - key.size() - 1] == '/';
    return false;
}

std::string file_name_of(const std::string& path) {
    auto pos = path.rfind('/');
    return pos == std::string::npos ? path : path.substr(pos + 1);
}

// report file key -> region map index (-1 when unmatched)
std::vector<int> join_files(const CoverageModel& model, const std::vector<EhRegionMap>& regions,
                            std::vector<std::string>& warnings) {
    std::vector<std::string> norm(regions.size());
    for (std::size_t i = 0; i < regions.size(); ++i) norm[i] = normalize_path(regions[i].file_id);

    std::vector<int> match(model.files.size(), -1);
    for (std::size_t f = 0; f < model.files.size(); ++f) {
        const std::string& key = model.files[f].key;
        std::vector<int> hits;
        for (std::size_t i = 0; i < regions.size(); ++i)
            if (suffix_matches(norm[i], key)) hits.push_back(static_cast<int>(i));
        if (hits.empty()) {
            std::string base = file_name_of(key);
            for (std::size_t i = 0; i < regions.size(); ++i)
                if (file_name_of(norm[i]) == base) hits.push_back(static_cast<int>(i));
            if (hits.size() > 1) {
                warnings.push_back("ambiguous file join for report entry " + key);
                hits.clear();
            }
        }
        if (hits.empty())
            warnings.push_back("UnmatchedFile: no region map for report entry " + key);
        else
            match[f] = hits.front();
    }
    return match;
}

std::string class_simple_name(const std::string& bytecode_name) {
    auto slash = bytecode_name.rfind('/');
    std::string simple =
        bytecode_name.substr(slash == std::string::npos ? 0 : slash + 1);
    auto dollar = simple.rfind('$');
    if (dollar != std::string::npos) simple = simple.substr(dollar + 1);
    return simple;
}

void accumulate_file(const FileCoverage& fc, const EhRegionMap* map, RegionCoverageCounts& acc) {
    std::unordered_map<int, bool> covered_by_line;
    for (const auto& l : fc.lines) {
        RegionCounts c{l.mi, l.ci, l.mb, l.cb};
        acc.total += c;

        bool t = false, k = false, fin = false, thr = false;
        if (map) {
            for (const auto& tb : map->try_blocks) {
                if (tb.try_body_span.contains_line(l.line_no)) t = true;
                for (const auto& cc : tb.catch_clauses)
                    if (cc.clause_span.contains_line(l.line_no)) k = true;
                if (tb.finally_span && tb.finally_span->contains_line(l.line_no)) fin = true;
            }
            for (const auto& ts : map->throw_spans)
                if (ts.contains_line(l.line_no)) {
                    thr = true;
                    break;
                }
        }
        (t ? acc.in_try : acc.non_try) += c;
        (k ? acc.in_catch : acc.non_catch) += c;
        (fin ? acc.in_finally : acc.non_finally) += c;
        (thr ? acc.in_throw : acc.non_throw) += c;

        // EH instruction region includes throw statements; the branch region
        // is the try/catch/finally union only
        bool eh_instr = t || k || fin || thr;
        bool eh_branch = t || k || fin;
        RegionCounts& icc = eh_instr ? acc.eh : acc.non_eh;
        icc.mi += c.mi;
        icc.ci += c.ci;
        RegionCounts& bcc = eh_branch ? acc.eh : acc.non_eh;
        bcc.mb += c.mb;
        bcc.cb += c.cb;

        covered_by_line[l.line_no] = covered_by_line[l.line_no] || l.ci > 0;
    }

    if (!map) {
        for (const auto& m : fc.methods) {
            acc.non_throws_methods_total += 1;
            if (m.covered) acc.non_throws_methods_covered += 1;
        }
        return;
    }

    for (const auto& tb : map->try_blocks) {
        for (const auto& cc : tb.catch_clauses) {
            acc.catch_blocks_total += 1;
            bool entered = false;
            for (int line = cc.body_span.start_line; line <= cc.body_span.end_line && !entered;
                 ++line) {
                auto it = covered_by_line.find(line);
                entered = it != covered_by_line.end() && it->second;
            }
            if (entered) acc.catch_blocks_entered += 1;
        }
    }

    for (const auto& m : fc.methods) {
        const MethodInfo* found = nullptr;
        std::string wanted = m.name == "<init>" ? class_simple_name(m.class_name) : m.name;
        for (const auto& rm : map->methods) {
            if (rm.name != wanted) continue;
            if (m.decl_line >= rm.full_span.start_line && m.decl_line <= rm.full_span.end_line) {
                found = &rm;
                break;
            }
        }
        bool has_throws = found && !found->throws_types.empty();
        if (has_throws) {
            acc.throws_methods_total += 1;
            if (m.covered) acc.throws_methods_covered += 1;
        } else {
            acc.non_throws_methods_total += 1;
            if (m.covered) acc.non_throws_methods_covered += 1;
        }
    }
}

void verify_partitions(const RegionCoverageCounts& c) {
    auto check = [&](const RegionCounts& part, const RegionCounts& other) {
        RegionCounts sum = part;
        sum += other;
        if (!(sum == c.total))
            throw std::logic_error("count-partition identity violated after triangulation");
    };
    check(c.in_try, c.non_try);
    check(c.in_catch, c.non_catch);
    check(c.in_finally, c.non_finally);
    check(c.in_throw, c.non_throw);
    check(c.eh, c.non_eh);
    if (c.catch_blocks_entered > c.catch_blocks_total)
        throw std::logic_error("catch_blocks_entered exceeds total");
}

} // namespace

RegionCoverageCounts& RegionCoverageCounts::merge(const RegionCoverageCounts& o) {
    total += o.total;
    in_try += o.in_try;
    in_catch += o.in_catch;
    in_finally += o.in_finally;
    in_throw += o.in_throw;
    eh += o.eh;
    non_try += o.non_try;
    non_catch += o.non_catch;
    non_finally += o.non_finally;
    non_throw += o.non_throw;
    non_eh += o.non_eh;
    throws_methods_covered += o.throws_methods_covered;
    throws_methods_total += o.throws_methods_total;
    non_throws_methods_covered += o.non_throws_methods_covered;
    non_throws_methods_total += o.non_throws_methods_total;
    catch_blocks_entered += o.catch_blocks_entered;
    catch_blocks_total += o.catch_blocks_total;
    warnings.insert(warnings.end(), o.warnings.begin(), o.warnings.end());
    return *this;
}

RegionCoverageCounts triangulate(const CoverageModel& model,
                                 const std::vector<EhRegionMap>& regions, int threads) {
    RegionCoverageCounts result;
    auto match = join_files(model, regions, result.warnings);

    const int nfiles = static_cast<int>(model.files.size());
    int nthreads = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel num_threads(nthreads)
    {
        RegionCoverageCounts local;
#pragma omp for schedule(dynamic, 4)
        for (int f = 0; f < nfiles; ++f) {
            const EhRegionMap* map = match[f] >= 0 ? &regions[match[f]] : nullptr;
            accumulate_file(model.files[f], map, local);
        }
#pragma omp critical(ehaudit_triangulate_merge)
        result.merge(local);
    }

    verify_partitions(result);
    return result;
}

RegionCoverageCounts triangulate_reference(const CoverageModel& model,
                                           const std::vector<EhRegionMap>& regions) {
    RegionCoverageCounts result;
    auto match = join_files(model, regions, result.warnings);
    for (std::size_t f = 0; f < model.files.size(); ++f) {
        const EhRegionMap* map = match[f] >= 0 ? &regions[match[f]] : nullptr;
        accumulate_file(model.files[f], map, result);
    }
    verify_partitions(result);
    return result;
}

} // namespace ehaudit
