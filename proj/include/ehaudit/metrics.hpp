#pragma once

#include "ehaudit/triangulate.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ehaudit {

/// The coverage ratio suite. A metric is undefined exactly when its
/// denominator is zero; reports print "-" for those.
struct MetricSuite {
    std::optional<double> ic, bc, mc;
    std::optional<double> try_catch_bc;
    std::optional<double> eh_ic, eh_bc;
    std::optional<double> try_ic, try_bc;
    std::optional<double> catch_ic, catch_bc;
    std::optional<double> finally_ic, finally_bc;
    std::optional<double> throw_ic, throws_mc;
    std::optional<double> non_eh_ic, non_eh_bc;
    std::optional<double> non_try_ic, non_try_bc;
    std::optional<double> non_catch_ic, non_catch_bc;
    std::optional<double> non_finally_ic, non_finally_bc;
    std::optional<double> non_throw_ic, non_throws_mc;
};

MetricSuite compute_metrics(const RegionCoverageCounts& counts);

/// Fixed report order: name/value pairs for CSV and JSON emission.
std::vector<std::pair<std::string, std::optional<double>>> metric_items(const MetricSuite& m);

} // namespace ehaudit
