#pragma once

#include <cstdint>

#include "sentseg/types.hpp"

namespace sentseg {

// Plateau levels of the synthetic generator. The default 0.5 threshold
// bisects them, so a noise-free stream binarizes back to its oracle.
inline constexpr double kSynthInsideLevel = 0.95;
inline constexpr double kSynthOutsideLevel = 0.05;

// Builds a probability stream from an oracle segmentation: the inside level
// within segments, the outside level elsewhere, ramped linearly over
// boundary_slope_frames frames centered on each boundary, plus Gaussian noise
// of the given sigma, clamped to [0, 1].
//
// The oracle must carry audio_len_s. Randomness is mt19937-64 with a
// Box-Muller transform on 53-bit uniforms, so output depends only on the
// seed.
FrameProbabilities synth_probs(const SegmentSet& oracle, double stride_s,
                               double noise_sigma, int boundary_slope_frames,
                               std::uint64_t seed);

}  // namespace sentseg
