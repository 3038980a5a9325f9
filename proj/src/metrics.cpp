#include "ehaudit/metrics.hpp"

namespace ehaudit {

namespace {

std::optional<double> ratio(long covered, long missed) {
    long denom = covered + missed;
    if (denom == 0) return std::nullopt;
    return static_cast<double>(covered) / static_cast<double>(denom);
}

std::optional<double> ratio2(long num, long denom) {
    if (denom == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(denom);
}

} // namespace

MetricSuite compute_metrics(const RegionCoverageCounts& c) {
    MetricSuite m;
    m.ic = ratio(c.total.ci, c.total.mi);
    m.bc = ratio(c.total.cb, c.total.mb);
    m.mc = ratio2(c.throws_methods_covered + c.non_throws_methods_covered,
                  c.throws_methods_total + c.non_throws_methods_total);
    m.try_catch_bc = ratio2(c.catch_blocks_entered, c.catch_blocks_total);

    m.eh_ic = ratio(c.eh.ci, c.eh.mi);
    m.eh_bc = ratio(c.eh.cb, c.eh.mb);
    m.try_ic = ratio(c.in_try.ci, c.in_try.mi);
    m.try_bc = ratio(c.in_try.cb, c.in_try.mb);
    m.catch_ic = ratio(c.in_catch.ci, c.in_catch.mi);
    m.catch_bc = ratio(c.in_catch.cb, c.in_catch.mb);
    m.finally_ic = ratio(c.in_finally.ci, c.in_finally.mi);
    m.finally_bc = ratio(c.in_finally.cb, c.in_finally.mb);
    m.throw_ic = ratio(c.in_throw.ci, c.in_throw.mi);
    m.throws_mc = ratio2(c.throws_methods_covered, c.throws_methods_total);

    m.non_eh_ic = ratio(c.non_eh.ci, c.non_eh.mi);
    m.non_eh_bc = ratio(c.non_eh.cb, c.non_eh.mb);
    m.non_try_ic = ratio(c.non_try.ci, c.non_try.mi);
    m.non_try_bc = ratio(c.non_try.cb, c.non_try.mb);
    m.non_catch_ic = ratio(c.non_catch.ci, c.non_catch.mi);
    m.non_catch_bc = ratio(c.non_catch.cb, c.non_catch.mb);
    m.non_finally_ic = ratio(c.non_finally.ci, c.non_finally.mi);
    m.non_finally_bc = ratio(c.non_finally.cb, c.non_finally.mb);
    m.non_throw_ic = ratio(c.non_throw.ci, c.non_throw.mi);
    m.non_throws_mc = ratio2(c.non_throws_methods_covered, c.non_throws_methods_total);
    return m;
}

std::vector<std::pair<std::string, std::optional<double>>> metric_items(const MetricSuite& m) {
    return {
        {"IC", m.ic},
        {"BC", m.bc},
        {"MC", m.mc},
        {"TRY_CATCH_BC", m.try_catch_bc},
        {"EH_IC", m.eh_ic},
        {"EH_BC", m.eh_bc},
        {"TRY_IC", m.try_ic},
        {"TRY_BC", m.try_bc},
        {"CATCH_IC", m.catch_ic},
        {"CATCH_BC", m.catch_bc},
        {"FINALLY_IC", m.finally_ic},
        {"FINALLY_BC", m.finally_bc},
        {"THROW_IC", m.throw_ic},
        {"THROWS_MC", m.throws_mc},
        {"NON_EH_IC", m.non_eh_ic},
        {"NON_EH_BC", m.non_eh_bc},
        {"NON_TRY_IC", m.non_try_ic},
        {"NON_TRY_BC", m.non_try_bc},
        {"NON_CATCH_IC", m.non_catch_ic},
        {"NON_CATCH_BC", m.non_catch_bc},
        {"NON_FINALLY_IC", m.non_finally_ic},
        {"NON_FINALLY_BC", m.non_finally_bc},
        {"NON_THROW_IC", m.non_throw_ic},
        {"NON_THROWS_MC", m.non_throws_mc},
    };
}

} // namespace ehaudit
