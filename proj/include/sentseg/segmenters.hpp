#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sentseg/types.hpp"

namespace sentseg {

// Audit record of one long-segment split: the segment that was split, the
// frame time the right part starts at, and the probability there.
struct SplitPoint {
    double seg_start_s = 0.0;
    double seg_end_s = 0.0;
    double t_hat_s = 0.0;
    float p_min = 0.0f;
};

using SplitTrace = std::vector<SplitPoint>;

// l_t = 1 iff p_t > threshold (strict).
LabelSequence binarize(const FrameProbabilities& probs, double threshold);

// One segment per maximal run of 1 labels, spanning
// [first_frame * stride, (last_frame + 1) * stride]. audio_len_s is set to
// the stream extent.
SegmentSet runs_to_segments(const LabelSequence& labels);

// Keeps segments with duration >= minlen_s (kTimeEps slack for frame-grid
// rounding).
SegmentSet discard_short(SegmentSet set, double minlen_s);

// Splits every segment longer than maxlen_s at the probability minimum over
// its interior frames (first frame excluded, so both parts are non-empty;
// ties go to the earliest frame). The minimum frame starts the right part and
// both parts are re-examined, so the output tiles the input exactly and every
// piece ends up <= maxlen_s. Throws if a segment reaches past the stream.
std::pair<SegmentSet, SplitTrace> split_long(const SegmentSet& set,
                                             const FrameProbabilities& probs,
                                             double maxlen_s);

// Moves each start left and each end right by expand_s, clipped to
// [0, audio_len_s]. Where two expanded segments would overlap, both are cut
// at the midpoint of the original gap, so the set stays non-overlapping.
SegmentSet expand_segments(SegmentSet set, double expand_s, double audio_len_s);

struct SegmentationResult {
    SegmentSet segments;
    SplitTrace trace;
};

// binarize -> runs_to_segments -> discard_short -> split_long -> expand,
// in exactly this order. Parts created by split_long may be shorter than
// minlen_s; the discard stage runs before splitting only.
SegmentationResult segment_proposed(const FrameProbabilities& probs,
                                    const SegmenterConfig& config);

// Divide and conquer over threshold runs: while a candidate is longer than
// maxlen_s, split it at its interior probability minimum and trim frames at
// or below the threshold from the ends of each part. Candidates shorter than
// minlen_s are discarded (including split leftovers), then expansion applies.
SegmentSet segment_pdac(const FrameProbabilities& probs, const SegmenterConfig& config);

// Threshold runs with over-long runs chopped into consecutive maxlen_s
// pieces; the last piece of a run is the remainder and is kept even when
// shorter than minlen_s (discarding happens before chopping).
SegmentSet segment_pthr(const FrameProbabilities& probs, const SegmenterConfig& config);

// Contiguous fixed-length pieces covering [0, audio_len_s]; the last piece is
// the remainder. Ignores probabilities entirely.
SegmentSet segment_fixed(std::string audio_id, double audio_len_s, double piece_s);

// Dispatch on config.algorithm. The trace is empty for every algorithm except
// proposed. Algorithm::fixed uses maxlen_s as the piece length.
SegmentationResult run_segmenter(const FrameProbabilities& probs,
                                 const SegmenterConfig& config);

}  // namespace sentseg
