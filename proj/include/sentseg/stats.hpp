#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sentseg/types.hpp"

namespace sentseg {

// Duration statistics over a set of segments. Percentiles use the
// nearest-rank rule (value at index ceil(q*n)-1 of the sorted durations).
// The histogram has fixed 1 s bins: bin i counts durations in [i, i+1).
struct SegmentStats {
    std::size_t count = 0;
    double total_s = 0.0;
    std::optional<double> mean_s;
    std::optional<double> min_s;
    std::optional<double> max_s;
    std::optional<double> p50_s;
    std::optional<double> p90_s;
    std::optional<double> p99_s;
    std::vector<std::size_t> histogram;
};

SegmentStats segment_stats(const SegmentSet& set);

// Pooled form used when aggregating across audios.
SegmentStats duration_stats(std::vector<double> durations);

}  // namespace sentseg
