#include "ehaudit/mutation.hpp"

#include "ehaudit/java_lexer.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <sstream>

namespace ehaudit {

const char* to_string(MutationOperator op) {
    switch (op) {
        case MutationOperator::CBR: return "CBR";
        case MutationOperator::CBI: return "CBI";
        case MutationOperator::CBD: return "CBD";
        case MutationOperator::PTL: return "PTL";
        case MutationOperator::CRE: return "CRE";
        case MutationOperator::FBD: return "FBD";
        case MutationOperator::TSD: return "TSD";
    }
    return "?";
}

std::optional<MutationOperator> parse_operator(const std::string& name) {
    for (auto op : all_operators())
        if (name == to_string(op)) return op;
    return std::nullopt;
}

const std::vector<MutationOperator>& all_operators() {
    static const std::vector<MutationOperator> ops = {
        MutationOperator::CBR, MutationOperator::CBI, MutationOperator::CBD,
        MutationOperator::PTL, MutationOperator::CRE, MutationOperator::FBD,
        MutationOperator::TSD,
    };
    return ops;
}

std::string stable_site_hash(const MutationSite& site) {
    // FNV-1a 64
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0xff;
        h *= 1099511628211ull;
    };
    mix(site.file_id);
    mix(to_string(site.op));
    mix(std::to_string(site.anchor.begin_offset) + ":" + std::to_string(site.anchor.end_offset));
    mix(site.variant_key);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

ProjectHierarchies build_hierarchies(const std::vector<EhRegionMap>& maps) {
    ProjectHierarchies h;
    h.semantic = build_semantic_hierarchy(maps);
    h.warnings = h.semantic.warnings;
    CallIndex index(maps);
    for (const auto& map : maps) {
        auto& per_try = h.invoking[map.file_id];
        per_try.reserve(map.try_blocks.size());
        for (const auto& tb : map.try_blocks) {
            if (tb.catch_clauses.empty()) {
                per_try.emplace_back();
                continue;
            }
            per_try.push_back(build_invoking_hierarchy(tb, index, &h.warnings));
        }
    }
    return h;
}

namespace {

// broadest insertable handler type, or nullopt when Throwable is taken
std::optional<std::string> cbi_type(const TryBlockInfo& tb) {
    bool has_exception = false;
    for (const auto& c : tb.catch_clauses) {
        for (const auto& t : c.exception_types) {
            std::string s = simple_type_name(t);
            if (s == "Throwable") return std::nullopt;
            if (s == "Exception") has_exception = true;
        }
    }
    return has_exception ? std::string("Throwable") : std::string("Exception");
}

std::string position_tag(const SourceSpan& s) {
    return s.file_id + ":" + std::to_string(s.start_line);
}

} // namespace

std::vector<MutationSite> find_eligible_sites(const std::vector<EhRegionMap>& maps,
                                              const ProjectHierarchies& hierarchies,
                                              const std::set<MutationOperator>& operators) {
    auto wanted = [&](MutationOperator op) { return operators.count(op) > 0; };
    std::vector<MutationSite> sites;

    for (const auto& map : maps) {
        const auto* iehs = [&]() -> const std::vector<std::vector<InvokingExceptionHierarchy>>* {
            auto it = hierarchies.invoking.find(map.file_id);
            return it == hierarchies.invoking.end() ? nullptr : &it->second;
        }();

        for (std::size_t ti = 0; ti < map.try_blocks.size(); ++ti) {
            const TryBlockInfo& tb = map.try_blocks[ti];

            if (wanted(MutationOperator::CBI) && cbi_type(tb)) {
                MutationSite s{map.file_id, MutationOperator::CBI, tb.statement_span, "",
                               static_cast<int>(ti), -1, -1};
                sites.push_back(std::move(s));
            }
            if (wanted(MutationOperator::PTL) && tb.trailing_use_run) {
                MutationSite s{map.file_id, MutationOperator::PTL, tb.statement_span, "",
                               static_cast<int>(ti), -1, -1};
                sites.push_back(std::move(s));
            }
            if (wanted(MutationOperator::FBD) && tb.finally_span) {
                MutationSite s{map.file_id, MutationOperator::FBD, *tb.finally_span, "",
                               static_cast<int>(ti), -1, -1};
                sites.push_back(std::move(s));
            }

            for (std::size_t ci = 0; ci < tb.catch_clauses.size(); ++ci) {
                const CatchClause& clause = tb.catch_clauses[ci];
                if (wanted(MutationOperator::CBD)) {
                    MutationSite s{map.file_id, MutationOperator::CBD, clause.clause_span, "",
                                   static_cast<int>(ti), static_cast<int>(ci), -1};
                    sites.push_back(std::move(s));
                }
                if (wanted(MutationOperator::CRE) && !clause.parameter_name.empty()) {
                    MutationSite s{map.file_id, MutationOperator::CRE, clause.clause_span, "",
                                   static_cast<int>(ti), static_cast<int>(ci), -1};
                    sites.push_back(std::move(s));
                }
                if (wanted(MutationOperator::CBR) && iehs && ti < iehs->size() &&
                    ci < (*iehs)[ti].size()) {
                    const auto& ieh = (*iehs)[ti][ci];
                    for (const auto& child : ieh.children) {
                        if (clause.exception_types.size() == 1) {
                            MutationSite s{map.file_id, MutationOperator::CBR,
                                           clause.clause_span, child, static_cast<int>(ti),
                                           static_cast<int>(ci), -1};
                            sites.push_back(std::move(s));
                        } else {
                            // multi-catch: one variant per replaced member
                            for (const auto& declared : clause.exception_types) {
                                MutationSite s{map.file_id, MutationOperator::CBR,
                                               clause.clause_span,
                                               simple_type_name(declared) + "->" + child,
                                               static_cast<int>(ti), static_cast<int>(ci), -1};
                                sites.push_back(std::move(s));
                            }
                        }
                    }
                }
            }
        }

        if (wanted(MutationOperator::TSD)) {
            for (std::size_t si = 0; si < map.throw_spans.size(); ++si) {
                MutationSite s{map.file_id, MutationOperator::TSD, map.throw_spans[si], "", -1,
                               -1, static_cast<int>(si)};
                sites.push_back(std::move(s));
            }
        }
    }

    std::stable_sort(sites.begin(), sites.end(), [](const MutationSite& a, const MutationSite& b) {
        if (a.file_id != b.file_id) return a.file_id < b.file_id;
        if (a.anchor.begin_offset != b.anchor.begin_offset)
            return a.anchor.begin_offset < b.anchor.begin_offset;
        if (a.op != b.op) return static_cast<int>(a.op) < static_cast<int>(b.op);
        return a.variant_key < b.variant_key;
    });
    return sites;
}

namespace {

std::string slice(const std::string& text, std::size_t begin, std::size_t end) {
    return text.substr(begin, end - begin);
}

// fresh handler parameter: first of ex, ex1, ex2... absent from the scope text
std::string fresh_param_name(const std::string& scope_text) {
    auto taken = [&](const std::string& candidate) {
        std::size_t pos = 0;
        while ((pos = scope_text.find(candidate, pos)) != std::string::npos) {
            bool left_ok = pos == 0 || !(std::isalnum(static_cast<unsigned char>(
                                             scope_text[pos - 1])) ||
                                         scope_text[pos - 1] == '_' || scope_text[pos - 1] == '$');
            std::size_t after = pos + candidate.size();
            bool right_ok = after >= scope_text.size() ||
                            !(std::isalnum(static_cast<unsigned char>(scope_text[after])) ||
                              scope_text[after] == '_' || scope_text[after] == '$');
            if (left_ok && right_ok) return true;
            ++pos;
        }
        return false;
    };
    if (!taken("ex")) return "ex";
    for (int i = 1;; ++i) {
        std::string c = "ex" + std::to_string(i);
        if (!taken(c)) return c;
    }
}

const TryBlockInfo& locate_try(const EhRegionMap& map, const MutationSite& site) {
    if (site.try_index < 0 || site.try_index >= static_cast<int>(map.try_blocks.size()))
        throw NotApplicable("try block index out of range for " + site.file_id);
    return map.try_blocks[site.try_index];
}

const CatchClause& locate_clause(const TryBlockInfo& tb, const MutationSite& site) {
    if (site.clause_index < 0 ||
        site.clause_index >= static_cast<int>(tb.catch_clauses.size()))
        throw NotApplicable("catch clause index out of range for " + site.file_id);
    return tb.catch_clauses[site.clause_index];
}

// try statement unwrapped to its body content (CBD/FBD when nothing remains)
TextEdit unwrap_edit(const std::string& src, const TryBlockInfo& tb) {
    TextEdit e;
    e.begin = tb.statement_span.begin_offset;
    e.original = slice(src, tb.statement_span.begin_offset, tb.statement_span.end_offset);
    e.replacement = slice(src, tb.body_open_offset + 1, tb.body_close_offset);
    return e;
}

void append_throws_repair(std::vector<TextEdit>& edits, const std::string& src,
                          const EhRegionMap& map, const TryBlockInfo& tb,
                          const CatchClause& clause, const SemanticExceptionHierarchy& sem) {
    if (tb.enclosing_method_index < 0) return;
    const MethodInfo& m = map.methods[tb.enclosing_method_index];

    std::vector<std::string> to_add;
    for (const auto& t : clause.exception_types) {
        std::string simple = simple_type_name(t);
        if (sem.is_unchecked(simple)) continue;
        bool covered = false;
        for (const auto& declared : m.throws_types) {
            std::string ds = simple_type_name(declared);
            if (ds == simple || sem.derives_from(simple, ds)) {
                covered = true;
                break;
            }
        }
        for (const auto& added : to_add)
            if (simple_type_name(added) == simple) covered = true;
        if (!covered) to_add.push_back(t);
    }
    if (to_add.empty()) return;

    std::string joined;
    for (const auto& t : to_add) joined += ", " + t;

    TextEdit e;
    if (m.throws_clause_span) {
        e.begin = m.throws_clause_span->end_offset;
        e.replacement = joined;
    } else {
        e.begin = m.params_end_offset;
        e.replacement = " throws" + joined.substr(1); // swap leading comma for space
    }
    e.original = "";
    (void)src;
    edits.push_back(std::move(e));
}

} // namespace

Mutant generate_mutant(const MutationSite& site, const std::string& source_text,
                       const ProjectHierarchies& hierarchies) {
    EhRegionMap map;
    try {
        map = extract_eh_regions(source_text, site.file_id);
    } catch (const ParseError& e) {
        throw NotApplicable(std::string("source no longer parses: ") + e.what());
    }

    // snapshot check: the anchor must still cover the same bytes
    auto anchors_match = [&](const SourceSpan& s) {
        return s.begin_offset == site.anchor.begin_offset &&
               s.end_offset == site.anchor.end_offset;
    };

    Mutant mutant;
    mutant.site = site;
    mutant.mutant_id = stable_site_hash(site);

    switch (site.op) {
        case MutationOperator::TSD: {
            if (site.throw_index < 0 ||
                site.throw_index >= static_cast<int>(map.throw_spans.size()))
                throw NotApplicable("throw index out of range");
            const SourceSpan& span = map.throw_spans[site.throw_index];
            if (!anchors_match(span)) throw NotApplicable("throw statement moved");
            TextEdit e{span.begin_offset, slice(source_text, span.begin_offset, span.end_offset),
                       ""};
            mutant.edits.push_back(std::move(e));
            mutant.description = "TSD: delete throw statement at " + position_tag(span);
            break;
        }
        case MutationOperator::CBD: {
            const TryBlockInfo& tb = locate_try(map, site);
            const CatchClause& clause = locate_clause(tb, site);
            if (!anchors_match(clause.clause_span)) throw NotApplicable("catch clause moved");
            bool unwrap = tb.catch_clauses.size() == 1 && !tb.finally_span &&
                          !tb.resources_present;
            if (unwrap) {
                mutant.edits.push_back(unwrap_edit(source_text, tb));
            } else {
                TextEdit e{clause.clause_span.begin_offset,
                           slice(source_text, clause.clause_span.begin_offset,
                                 clause.clause_span.end_offset),
                           ""};
                mutant.edits.push_back(std::move(e));
            }
            mutant.description = "CBD: delete catch (" + clause.exception_types.front() +
                                 ") at " + position_tag(clause.clause_span) +
                                 (unwrap ? ", unwrapping try" : "");
            break;
        }
        case MutationOperator::FBD: {
            const TryBlockInfo& tb = locate_try(map, site);
            if (!tb.finally_span) throw NotApplicable("finally block gone");
            if (!anchors_match(*tb.finally_span)) throw NotApplicable("finally block moved");
            bool unwrap = tb.catch_clauses.empty() && !tb.resources_present;
            if (unwrap) {
                mutant.edits.push_back(unwrap_edit(source_text, tb));
            } else {
                TextEdit e{tb.finally_span->begin_offset,
                           slice(source_text, tb.finally_span->begin_offset,
                                 tb.finally_span->end_offset),
                           ""};
                mutant.edits.push_back(std::move(e));
            }
            mutant.description = "FBD: delete finally block at " +
                                 position_tag(*tb.finally_span) +
                                 (unwrap ? ", unwrapping try" : "");
            break;
        }
        case MutationOperator::CBI: {
            const TryBlockInfo& tb = locate_try(map, site);
            if (!anchors_match(tb.statement_span)) throw NotApplicable("try statement moved");
            auto type = cbi_type(tb);
            if (!type) throw GenerationSkipped("CBI: Throwable already caught");
            std::size_t insert_at = tb.catch_clauses.empty()
                                        ? tb.body_close_offset + 1
                                        : tb.catch_clauses.back().clause_span.end_offset;
            std::string scope = tb.enclosing_method_index >= 0
                                    ? slice(source_text,
                                            map.methods[tb.enclosing_method_index]
                                                .full_span.begin_offset,
                                            map.methods[tb.enclosing_method_index]
                                                .full_span.end_offset)
                                    : source_text;
            std::string param = fresh_param_name(scope);
            TextEdit e{insert_at, "", " catch (" + *type + " " + param + ") { }"};
            mutant.edits.push_back(std::move(e));
            mutant.description = "CBI: append concealing catch (" + *type + ") to try at " +
                                 position_tag(tb.statement_span);
            break;
        }
        case MutationOperator::CRE: {
            const TryBlockInfo& tb = locate_try(map, site);
            const CatchClause& clause = locate_clause(tb, site);
            if (!anchors_match(clause.clause_span)) throw NotApplicable("catch clause moved");
            if (clause.parameter_name.empty())
                throw GenerationSkipped("CRE: catch clause without parameter");
            // last statement of the handler: insert right before its '}'
            TextEdit body{clause.body_span.end_offset - 1, "",
                          "throw " + clause.parameter_name + "; "};
            append_throws_repair(mutant.edits, source_text, map, tb, clause,
                                 hierarchies.semantic);
            mutant.edits.push_back(std::move(body));
            mutant.description = "CRE: rethrow " + clause.parameter_name + " at " +
                                 position_tag(clause.clause_span);
            break;
        }
        case MutationOperator::CBR: {
            const TryBlockInfo& tb = locate_try(map, site);
            const CatchClause& clause = locate_clause(tb, site);
            if (!anchors_match(clause.clause_span)) throw NotApplicable("catch clause moved");

            std::string replacement = site.variant_key;
            std::size_t slot = 0;
            if (auto arrow = site.variant_key.find("->"); arrow != std::string::npos) {
                std::string original = site.variant_key.substr(0, arrow);
                replacement = site.variant_key.substr(arrow + 2);
                bool found = false;
                for (std::size_t i = 0; i < clause.exception_types.size(); ++i)
                    if (simple_type_name(clause.exception_types[i]) == original) {
                        slot = i;
                        found = true;
                        break;
                    }
                if (!found) throw NotApplicable("CBR: declared type no longer present");
            }
            if (slot >= clause.type_spans.size()) throw NotApplicable("CBR: type slot gone");
            for (std::size_t i = 0; i < clause.exception_types.size(); ++i)
                if (i != slot && simple_type_name(clause.exception_types[i]) == replacement)
                    throw GenerationSkipped("CBR: replacement already declared by this clause");

            const SourceSpan& tspan = clause.type_spans[slot];
            std::string original_type = slice(source_text, tspan.begin_offset, tspan.end_offset);
            mutant.description = "CBR: catch type " + original_type + " -> " + replacement +
                                 " at " + position_tag(clause.clause_span);
            mutant.edits.push_back(TextEdit{tspan.begin_offset, std::move(original_type),
                                            std::move(replacement)});
            break;
        }
        case MutationOperator::PTL: {
            const TryBlockInfo& tb = locate_try(map, site);
            if (!anchors_match(tb.statement_span)) throw NotApplicable("try statement moved");
            if (!tb.trailing_use_run)
                throw GenerationSkipped("PTL: no qualifying trailing statement");
            const SourceSpan& run = *tb.trailing_use_run;
            std::string moved = slice(source_text, run.begin_offset, run.end_offset);
            TextEdit insert{tb.body_close_offset, "", moved + " "};
            TextEdit remove{run.begin_offset, moved, ""};
            mutant.edits.push_back(std::move(insert));
            mutant.edits.push_back(std::move(remove));
            mutant.description = "PTL: move trailing statements into try at " +
                                 position_tag(tb.statement_span);
            break;
        }
    }

    std::sort(mutant.edits.begin(), mutant.edits.end(),
              [](const TextEdit& a, const TextEdit& b) { return a.begin < b.begin; });
    for (std::size_t i = 1; i < mutant.edits.size(); ++i)
        if (mutant.edits[i - 1].begin + mutant.edits[i - 1].original.size() >
            mutant.edits[i].begin)
            throw NotApplicable("overlapping edits");
    return mutant;
}

std::string apply_edits(const std::string& pristine, const std::vector<TextEdit>& edits) {
    std::string out = pristine;
    for (auto it = edits.rbegin(); it != edits.rend(); ++it) {
        if (it->begin + it->original.size() > out.size() ||
            out.compare(it->begin, it->original.size(), it->original) != 0)
            throw NotApplicable("patch does not match source");
        out.replace(it->begin, it->original.size(), it->replacement);
    }
    return out;
}

std::string revert_edits(const std::string& mutated, const std::vector<TextEdit>& edits) {
    // edits are ascending against pristine offsets; reverting front to back
    // restores the prefix to pristine form, so each edit's replacement sits
    // exactly at its pristine offset when its turn comes
    std::string out = mutated;
    for (const auto& e : edits) {
        if (e.begin + e.replacement.size() > out.size() ||
            out.compare(e.begin, e.replacement.size(), e.replacement) != 0)
            throw NotApplicable("revert does not match mutated text");
        out.replace(e.begin, e.replacement.size(), e.original);
    }
    return out;
}

std::string unified_diff(const std::string& before, const std::string& after,
                         const std::string& path) {
    auto split = [](const std::string& text) {
        std::vector<std::string> lines;
        std::size_t start = 0;
        while (start <= text.size()) {
            auto nl = text.find('\n', start);
            if (nl == std::string::npos) {
                if (start < text.size()) lines.push_back(text.substr(start));
                break;
            }
            lines.push_back(text.substr(start, nl - start));
            start = nl + 1;
        }
        return lines;
    };
    std::vector<std::string> a = split(before), b = split(after);

    std::size_t prefix = 0;
    while (prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) ++prefix;
    std::size_t suffix = 0;
    while (suffix < a.size() - prefix && suffix < b.size() - prefix &&
           a[a.size() - 1 - suffix] == b[b.size() - 1 - suffix])
        ++suffix;

    if (prefix == a.size() && prefix == b.size()) {
        return "--- a/" + path + "\n+++ b/" + path + "\n";
    }

    const std::size_t context = 3;
    std::size_t ctx_before = std::min(prefix, context);
    std::size_t ctx_after = std::min(suffix, context);

    std::size_t a_start = prefix - ctx_before;
    std::size_t a_len = (a.size() - suffix) - a_start + ctx_after;
    std::size_t b_start = prefix - ctx_before;
    std::size_t b_len = (b.size() - suffix) - b_start + ctx_after;

    std::ostringstream out;
    out << "--- a/" << path << "\n+++ b/" << path << "\n";
    out << "@@ -" << (a_start + 1) << "," << a_len << " +" << (b_start + 1) << "," << b_len
        << " @@\n";
    for (std::size_t i = a_start; i < prefix; ++i) out << " " << a[i] << "\n";
    for (std::size_t i = prefix; i < a.size() - suffix; ++i) out << "-" << a[i] << "\n";
    for (std::size_t i = prefix; i < b.size() - suffix; ++i) out << "+" << b[i] << "\n";
    for (std::size_t i = a.size() - suffix; i < a.size() - suffix + ctx_after; ++i)
        out << " " << a[i] << "\n";
    return out.str();
}

} // namespace ehaudit
