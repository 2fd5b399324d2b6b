#include "sentseg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace sentseg {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Uniform in (0, 1] from the top 53 bits; avoids the unspecified behavior of
// std::uniform_real_distribution so streams are identical across platforms.
double unit_uniform(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng) {
    const double u1 = unit_uniform(rng);
    const double u2 = unit_uniform(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

// Ramped segment membership of a frame center: 1 deep inside, 0 far outside,
// crossing 0.5 exactly at the boundary when ramp_s > 0.
double membership(double center, const Segment& seg, double ramp_s) {
    if (ramp_s <= 0.0) {
        return (center >= seg.start_s && center < seg.end_s) ? 1.0 : 0.0;
    }
    const double from_start = (center - seg.start_s) / ramp_s + 0.5;
    const double from_end = (seg.end_s - center) / ramp_s + 0.5;
    return std::clamp(std::min(from_start, from_end), 0.0, 1.0);
}

}  // namespace

FrameProbabilities synth_probs(const SegmentSet& oracle, double stride_s,
                               double noise_sigma, int boundary_slope_frames,
                               std::uint64_t seed) {
    if (!oracle.audio_len_s) {
        throw std::invalid_argument("synth_probs: oracle is missing audio_len_s");
    }
    validate(oracle);
    if (!(stride_s > 0.0)) {
        throw std::invalid_argument("synth_probs: stride_s must be positive");
    }

    const std::size_t num_frames = frames_for_duration(*oracle.audio_len_s, stride_s);
    const double ramp_s = boundary_slope_frames * stride_s;
    const double span = kSynthInsideLevel - kSynthOutsideLevel;

    std::mt19937_64 rng(seed);
    FrameProbabilities out;
    out.audio_id = oracle.audio_id;
    out.stride_s = stride_s;
    out.probs.resize(num_frames);

    std::size_t seg_cursor = 0;
    for (std::size_t t = 0; t < num_frames; ++t) {
        const double center = (static_cast<double>(t) + 0.5) * stride_s;
        // Segments are sorted; only the ones whose ramp can reach this frame
        // matter. Advance past segments that ended well before the center.
        while (seg_cursor < oracle.segments.size() &&
               oracle.segments[seg_cursor].end_s + ramp_s < center) {
            ++seg_cursor;
        }
        double m = 0.0;
        for (std::size_t i = seg_cursor; i < oracle.segments.size(); ++i) {
            const auto& seg = oracle.segments[i];
            if (seg.start_s - ramp_s > center) break;
            m = std::max(m, membership(center, seg, ramp_s));
        }
        double p = kSynthOutsideLevel + span * m;
        if (noise_sigma > 0.0) p += noise_sigma * gaussian(rng);
        out.probs[t] = static_cast<float>(std::clamp(p, 0.0, 1.0));
    }
    return out;
}

}  // namespace sentseg
