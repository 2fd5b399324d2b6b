#include "sentseg/stats.hpp"

#include <algorithm>
#include <cmath>

namespace sentseg {

namespace {

double nearest_rank(const std::vector<double>& sorted, double q) {
    const std::size_t n = sorted.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    if (rank == 0) rank = 1;
    if (rank > n) rank = n;
    return sorted[rank - 1];
}

}  // namespace

SegmentStats duration_stats(std::vector<double> durations) {
    SegmentStats st;
    st.count = durations.size();
    for (double d : durations) st.total_s += d;
    if (durations.empty()) return st;

    std::sort(durations.begin(), durations.end());
    st.mean_s = st.total_s / static_cast<double>(st.count);
    st.min_s = durations.front();
    st.max_s = durations.back();
    st.p50_s = nearest_rank(durations, 0.50);
    st.p90_s = nearest_rank(durations, 0.90);
    st.p99_s = nearest_rank(durations, 0.99);

    st.histogram.assign(static_cast<std::size_t>(std::floor(durations.back())) + 1, 0);
    for (double d : durations) {
        ++st.histogram[static_cast<std::size_t>(std::floor(d))];
    }
    return st;
}

SegmentStats segment_stats(const SegmentSet& set) {
    std::vector<double> durations;
    durations.reserve(set.segments.size());
    for (const auto& seg : set.segments) durations.push_back(seg.duration_s());
    return duration_stats(std::move(durations));
}

}  // namespace sentseg
