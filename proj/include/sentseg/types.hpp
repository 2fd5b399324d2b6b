#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sentseg {

// Tolerance for comparisons of times that live on the frame grid. Frame
// boundaries are products frame_index * stride_s, so two routes to the same
// time can differ by a few ulps.
inline constexpr double kTimeEps = 1e-9;

// Frame-level speech-membership probabilities for one audio.
// probs[t] is the probability that frame t belongs to a speech segment.
struct FrameProbabilities {
    std::string audio_id;
    double stride_s = 0.04;    // seconds per frame
    std::vector<float> probs;  // each in [0, 1]

    std::size_t num_frames() const { return probs.size(); }
    double duration_s() const { return static_cast<double>(probs.size()) * stride_s; }
};

// Binary frame labels: labels[t] == 1 iff frame t is inside a segment.
struct LabelSequence {
    std::string audio_id;
    double stride_s = 0.04;
    std::vector<std::uint8_t> labels;  // 0 or 1

    std::size_t num_frames() const { return labels.size(); }
};

struct Segment {
    double start_s = 0.0;
    double end_s = 0.0;

    double duration_s() const { return end_s - start_s; }
};

// Ordered, pairwise non-overlapping segments of one audio.
struct SegmentSet {
    std::string audio_id;
    std::vector<Segment> segments;
    std::optional<double> audio_len_s;

    double total_duration_s() const;
};

enum class Algorithm {
    proposed,  // threshold -> runs -> discard short -> split long -> expand
    pdac,      // divide and conquer at probability minima
    pthr,      // threshold runs chopped into fixed maxlen pieces
    fixed,     // fixed-length tiling, ignores probabilities
};

const char* to_string(Algorithm a);
Algorithm algorithm_from_string(std::string_view name);

struct SegmenterConfig {
    Algorithm algorithm = Algorithm::proposed;
    double threshold = 0.5;
    double minlen_s = 0.2;   // segments shorter than this are discarded
    double maxlen_s = 0.0;   // segments longer than this are split; must be set
    double expand_s = 0.06;  // per-side boundary padding applied last
};

// Checks invariants and returns the stream; throws std::invalid_argument with
// the offending index when a value is out of [0, 1] or the stride is not
// positive.
FrameProbabilities validate_probs(std::vector<float> probs, double stride_s,
                                  std::string audio_id);

// Throw std::invalid_argument on any invariant violation.
void validate(const LabelSequence& labels);
void validate(const SegmentSet& set);
void validate(const SegmenterConfig& config);

// Frame-grid helpers. frame_floor/frame_ceil snap a time to the grid with
// kTimeEps slack so 18.0 / 0.04 lands on 450 and not 449.
long frame_floor(double t_s, double stride_s);
long frame_ceil(double t_s, double stride_s);
std::size_t frames_for_duration(double len_s, double stride_s);

}  // namespace sentseg
