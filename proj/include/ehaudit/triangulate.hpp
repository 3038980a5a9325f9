#pragma once

#include "ehaudit/coverage.hpp"
#include "ehaudit/eh_model.hpp"

#include <string>
#include <vector>

namespace ehaudit {

struct RegionCounts {
    long mi = 0, ci = 0, mb = 0, cb = 0;

    RegionCounts& operator+=(const RegionCounts& o) {
        mi += o.mi;
        ci += o.ci;
        mb += o.mb;
        cb += o.cb;
        return *this;
    }
    friend bool operator==(const RegionCounts&, const RegionCounts&) = default;
};

/// Per-region-class instruction/branch tallies plus the method and
/// catch-reachability counts. NON_* entries are exact count complements of
/// their partners within `total`.
struct RegionCoverageCounts {
    RegionCounts total;
    RegionCounts in_try, in_catch, in_finally, in_throw, eh;
    RegionCounts non_try, non_catch, non_finally, non_throw, non_eh;

    long throws_methods_covered = 0, throws_methods_total = 0;
    long non_throws_methods_covered = 0, non_throws_methods_total = 0;
    long catch_blocks_entered = 0, catch_blocks_total = 0;

    std::vector<std::string> warnings;

    RegionCoverageCounts& merge(const RegionCoverageCounts& o);
    friend bool operator==(const RegionCoverageCounts& a, const RegionCoverageCounts& b) {
        return a.total == b.total && a.in_try == b.in_try && a.in_catch == b.in_catch &&
               a.in_finally == b.in_finally && a.in_throw == b.in_throw && a.eh == b.eh &&
               a.non_try == b.non_try && a.non_catch == b.non_catch &&
               a.non_finally == b.non_finally && a.non_throw == b.non_throw &&
               a.non_eh == b.non_eh && a.throws_methods_covered == b.throws_methods_covered &&
               a.throws_methods_total == b.throws_methods_total &&
               a.non_throws_methods_covered == b.non_throws_methods_covered &&
               a.non_throws_methods_total == b.non_throws_methods_total &&
               a.catch_blocks_entered == b.catch_blocks_entered &&
               a.catch_blocks_total == b.catch_blocks_total;
    }
};

/// Joins a coverage report with the region maps and accumulates every line's
/// counters into the region classes containing that line. OpenMP-parallel
/// over report files with an order-independent merge; `threads` <= 0 uses the
/// OpenMP default. Partition identities are verified before returning.
RegionCoverageCounts triangulate(const CoverageModel& model,
                                 const std::vector<EhRegionMap>& regions, int threads = 0);

/// Single-pass serial implementation of the same join, kept as the reference
/// for tests and the benchmark. Must produce results identical to
/// triangulate().
RegionCoverageCounts triangulate_reference(const CoverageModel& model,
                                           const std::vector<EhRegionMap>& regions);

} // namespace ehaudit
