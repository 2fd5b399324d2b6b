#include "sentseg/chunker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sentseg {

std::vector<Window> split_windows(double audio_len_s, double window_len_s,
                                  double overlap_s) {
    if (audio_len_s < 0.0) {
        throw std::invalid_argument("split_windows: negative audio length");
    }
    if (!(window_len_s > 0.0) || overlap_s < 0.0 || overlap_s >= window_len_s) {
        throw std::invalid_argument("split_windows: need 0 <= overlap_s < window_len_s");
    }

    const double hop_s = window_len_s - overlap_s;
    std::vector<Window> windows;
    for (std::size_t i = 0;; ++i) {
        const double start = static_cast<double>(i) * hop_s;
        const double end = std::min(start + window_len_s, audio_len_s);
        windows.push_back(Window{i, start, end});
        if (start + window_len_s >= audio_len_s) break;
    }
    return windows;
}

std::pair<long, long> window_frame_span(const Window& window, double stride_s) {
    return {frame_floor(window.start_s, stride_s), frame_ceil(window.end_s, stride_s)};
}

FrameProbabilities merge_window_probs(const std::vector<std::vector<float>>& window_probs,
                                      const std::vector<Window>& windows,
                                      double stride_s, std::string audio_id) {
    if (window_probs.size() != windows.size()) {
        throw std::invalid_argument("merge_window_probs: got " +
                                    std::to_string(window_probs.size()) +
                                    " sequences for " + std::to_string(windows.size()) +
                                    " windows");
    }
    const double audio_len_s = windows.empty() ? 0.0 : windows.back().end_s;
    const std::size_t num_frames = frames_for_duration(audio_len_s, stride_s);

    std::vector<double> sum(num_frames, 0.0);
    std::vector<std::uint32_t> cover(num_frames, 0);
    for (std::size_t w = 0; w < windows.size(); ++w) {
        const auto [first, last] = window_frame_span(windows[w], stride_s);
        const std::size_t expected = static_cast<std::size_t>(std::max(0L, last - first));
        if (window_probs[w].size() != expected) {
            throw std::invalid_argument(
                "merge_window_probs: window " + std::to_string(w) + " spans " +
                std::to_string(expected) + " frames but has " +
                std::to_string(window_probs[w].size()) + " values");
        }
        for (long f = first; f < last; ++f) {
            if (f < 0 || static_cast<std::size_t>(f) >= num_frames) continue;
            sum[static_cast<std::size_t>(f)] += window_probs[w][static_cast<std::size_t>(f - first)];
            ++cover[static_cast<std::size_t>(f)];
        }
    }

    FrameProbabilities out;
    out.audio_id = std::move(audio_id);
    out.stride_s = stride_s;
    out.probs.resize(num_frames);
    for (std::size_t f = 0; f < num_frames; ++f) {
        out.probs[f] = cover[f] == 0
                           ? 0.0f
                           : static_cast<float>(sum[f] / static_cast<double>(cover[f]));
    }
    return out;
}

LabelSequence labels_from_segments(const SegmentSet& oracle, double audio_len_s,
                                   double stride_s) {
    validate(oracle);
    const std::size_t num_frames = frames_for_duration(audio_len_s, stride_s);

    LabelSequence out;
    out.audio_id = oracle.audio_id;
    out.stride_s = stride_s;
    out.labels.assign(num_frames, 0);

    std::size_t seg = 0;
    for (std::size_t t = 0; t < num_frames; ++t) {
        const double center = (static_cast<double>(t) + 0.5) * stride_s;
        while (seg < oracle.segments.size() && oracle.segments[seg].end_s <= center) ++seg;
        if (seg == oracle.segments.size()) break;
        if (center >= oracle.segments[seg].start_s) out.labels[t] = 1;
    }
    return out;
}

std::vector<TrainingWindow> window_training_examples(const LabelSequence& labels,
                                                     double window_len_s, double hop_s) {
    if (!(hop_s > 0.0)) {
        throw std::invalid_argument("window_training_examples: hop_s must be positive");
    }
    const std::size_t total = labels.labels.size();
    const std::size_t window_frames = frames_for_duration(window_len_s, labels.stride_s);
    if (window_frames == 0) {
        throw std::invalid_argument("window_training_examples: window shorter than one frame");
    }

    std::vector<TrainingWindow> out;
    if (total == 0) return out;

    for (std::size_t i = 0;; ++i) {
        const double start_s = static_cast<double>(i) * hop_s;
        const long first = frame_floor(start_s, labels.stride_s);
        const std::size_t begin = static_cast<std::size_t>(std::max(0L, first));
        if (begin >= total && i > 0) break;

        TrainingWindow tw;
        tw.window = Window{i, start_s, start_s + window_len_s};
        tw.valid_frames = std::min(window_frames, total - std::min(begin, total));
        tw.labels.assign(window_frames, 0);
        std::copy_n(labels.labels.begin() + static_cast<std::ptrdiff_t>(begin),
                    tw.valid_frames, tw.labels.begin());
        out.push_back(std::move(tw));

        if (begin + window_frames >= total) break;
    }
    return out;
}

}  // namespace sentseg
