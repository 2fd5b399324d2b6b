#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sentseg/types.hpp"

namespace sentseg {

// One inference chunk of a long-form audio.
struct Window {
    std::size_t index = 0;
    double start_s = 0.0;
    double end_s = 0.0;

    double duration_s() const { return end_s - start_s; }
};

// Covers [0, audio_len_s] with windows of window_len_s starting at multiples
// of (window_len_s - overlap_s). The last window is truncated at the audio
// end; audio shorter than one window yields a single [0, audio_len_s] window.
std::vector<Window> split_windows(double audio_len_s, double window_len_s = 20.0,
                                  double overlap_s = 2.0);

// Frame range [first, last) a window covers: start rounded down, end rounded
// up, so no frame is lost between adjacent windows.
std::pair<long, long> window_frame_span(const Window& window, double stride_s);

// Recombines per-window probability sequences into one stream. Frames covered
// by a single window keep that value; frames covered by several get the
// arithmetic mean. Frames covered by no window (possible only for windows not
// produced by split_windows) become 0. Throws if a sequence length does not
// match its window's frame span.
FrameProbabilities merge_window_probs(const std::vector<std::vector<float>>& window_probs,
                                      const std::vector<Window>& windows,
                                      double stride_s, std::string audio_id);

// Frame labels from an oracle segmentation: label 1 iff the frame center
// (t + 0.5) * stride_s falls inside some segment (half-open [start, end)).
LabelSequence labels_from_segments(const SegmentSet& oracle, double audio_len_s,
                                   double stride_s);

// Fixed-length label window for trainer export. Labels beyond valid_frames
// are zero padding.
struct TrainingWindow {
    Window window;
    std::vector<std::uint8_t> labels;
    std::size_t valid_frames = 0;
};

// Tiles the label stream with fixed-length windows at multiples of hop_s.
// Generation stops with the first window whose end reaches the stream end;
// that final window is zero-padded to full length with valid_frames recording
// how many labels are real.
std::vector<TrainingWindow> window_training_examples(const LabelSequence& labels,
                                                     double window_len_s, double hop_s);

}  // namespace sentseg
