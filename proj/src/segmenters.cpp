#include "sentseg/segmenters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sentseg {

namespace {

// Earliest index of the minimum probability in [first, last).
long argmin_prob(const std::vector<float>& probs, long first, long last) {
    long best = first;
    for (long t = first + 1; t < last; ++t) {
        if (probs[static_cast<std::size_t>(t)] < probs[static_cast<std::size_t>(best)]) {
            best = t;
        }
    }
    return best;
}

struct FrameRange {
    long first = 0;
    long last = 0;  // exclusive

    long size() const { return last - first; }
};

std::vector<FrameRange> label_runs(const LabelSequence& labels) {
    std::vector<FrameRange> runs;
    const auto& l = labels.labels;
    for (std::size_t t = 0; t < l.size();) {
        if (!l[t]) {
            ++t;
            continue;
        }
        std::size_t end = t;
        while (end < l.size() && l[end]) ++end;
        runs.push_back({static_cast<long>(t), static_cast<long>(end)});
        t = end;
    }
    return runs;
}

Segment range_to_segment(const FrameRange& r, double stride_s) {
    return Segment{static_cast<double>(r.first) * stride_s,
                   static_cast<double>(r.last) * stride_s};
}

}  // namespace

LabelSequence binarize(const FrameProbabilities& probs, double threshold) {
    LabelSequence out;
    out.audio_id = probs.audio_id;
    out.stride_s = probs.stride_s;
    out.labels.resize(probs.probs.size());
    for (std::size_t t = 0; t < probs.probs.size(); ++t) {
        out.labels[t] = probs.probs[t] > threshold ? 1 : 0;
    }
    return out;
}

SegmentSet runs_to_segments(const LabelSequence& labels) {
    SegmentSet out;
    out.audio_id = labels.audio_id;
    out.audio_len_s = static_cast<double>(labels.labels.size()) * labels.stride_s;
    for (const auto& run : label_runs(labels)) {
        out.segments.push_back(range_to_segment(run, labels.stride_s));
    }
    return out;
}

SegmentSet discard_short(SegmentSet set, double minlen_s) {
    std::erase_if(set.segments, [minlen_s](const Segment& seg) {
        return seg.duration_s() < minlen_s - kTimeEps;
    });
    return set;
}

std::pair<SegmentSet, SplitTrace> split_long(const SegmentSet& set,
                                             const FrameProbabilities& probs,
                                             double maxlen_s) {
    validate(set);
    if (!(maxlen_s > 0.0)) {
        throw std::invalid_argument("split_long: maxlen_s must be positive");
    }

    const long num_frames = static_cast<long>(probs.probs.size());
    for (const auto& seg : set.segments) {
        if (frame_floor(seg.start_s, probs.stride_s) < 0 ||
            frame_ceil(seg.end_s, probs.stride_s) > num_frames) {
            throw std::invalid_argument("split_long: segment [" +
                                        std::to_string(seg.start_s) + ", " +
                                        std::to_string(seg.end_s) +
                                        ") extends beyond the probability stream");
        }
    }

    SegmentSet out;
    out.audio_id = set.audio_id;
    out.audio_len_s = set.audio_len_s;
    SplitTrace trace;

    std::vector<Segment> stack;
    for (auto it = set.segments.rbegin(); it != set.segments.rend(); ++it) {
        stack.push_back(*it);
    }
    while (!stack.empty()) {
        const Segment seg = stack.back();
        stack.pop_back();
        if (seg.duration_s() <= maxlen_s + kTimeEps) {
            out.segments.push_back(seg);
            continue;
        }
        const long first = frame_floor(seg.start_s, probs.stride_s);
        const long last = frame_ceil(seg.end_s, probs.stride_s);
        if (last - first < 2) {
            // Nothing strictly inside to split at; cannot shorten further.
            out.segments.push_back(seg);
            continue;
        }
        const long t_hat = argmin_prob(probs.probs, first + 1, last);
        const double split_s = static_cast<double>(t_hat) * probs.stride_s;
        trace.push_back(SplitPoint{seg.start_s, seg.end_s, split_s,
                                   probs.probs[static_cast<std::size_t>(t_hat)]});
        stack.push_back(Segment{split_s, seg.end_s});
        stack.push_back(Segment{seg.start_s, split_s});
    }
    return {std::move(out), std::move(trace)};
}

SegmentSet expand_segments(SegmentSet set, double expand_s, double audio_len_s) {
    if (expand_s < 0.0) {
        throw std::invalid_argument("expand_segments: expand_s must be >= 0");
    }
    auto& segs = set.segments;
    std::vector<Segment> original(segs.begin(), segs.end());
    for (std::size_t i = 0; i < segs.size(); ++i) {
        segs[i].start_s = std::max(0.0, original[i].start_s - expand_s);
        segs[i].end_s = std::min(audio_len_s, original[i].end_s + expand_s);
        if (i > 0 && original[i].start_s - original[i - 1].end_s < 2.0 * expand_s) {
            // Both neighbours meet at the midpoint of the original gap.
            const double mid = 0.5 * (original[i - 1].end_s + original[i].start_s);
            segs[i - 1].end_s = mid;
            segs[i].start_s = mid;
        }
    }
    set.audio_len_s = audio_len_s;
    return set;
}

SegmentationResult segment_proposed(const FrameProbabilities& probs,
                                    const SegmenterConfig& config) {
    const LabelSequence labels = binarize(probs, config.threshold);
    SegmentSet runs = runs_to_segments(labels);
    SegmentSet kept = discard_short(std::move(runs), config.minlen_s);
    auto [split, trace] = split_long(kept, probs, config.maxlen_s);
    SegmentSet expanded =
        expand_segments(std::move(split), config.expand_s, probs.duration_s());
    return {std::move(expanded), std::move(trace)};
}

SegmentSet segment_pdac(const FrameProbabilities& probs, const SegmenterConfig& config) {
    const LabelSequence labels = binarize(probs, config.threshold);
    const double stride = probs.stride_s;

    SegmentSet out;
    out.audio_id = probs.audio_id;
    out.audio_len_s = probs.duration_s();

    auto trim = [&](FrameRange r) {
        while (r.first < r.last &&
               probs.probs[static_cast<std::size_t>(r.first)] <= config.threshold) {
            ++r.first;
        }
        while (r.last > r.first &&
               probs.probs[static_cast<std::size_t>(r.last - 1)] <= config.threshold) {
            --r.last;
        }
        return r;
    };

    for (const auto& run : label_runs(labels)) {
        std::vector<FrameRange> stack{run};
        std::vector<Segment> accepted;
        while (!stack.empty()) {
            const FrameRange range = stack.back();
            stack.pop_back();
            if (range.size() <= 0) continue;
            const double duration = static_cast<double>(range.size()) * stride;
            if (duration <= config.maxlen_s + kTimeEps) {
                if (duration >= config.minlen_s - kTimeEps) {
                    accepted.push_back(range_to_segment(range, stride));
                }
                continue;
            }
            if (range.size() < 2) {
                accepted.push_back(range_to_segment(range, stride));
                continue;
            }
            const long t_hat = argmin_prob(probs.probs, range.first + 1, range.last);
            stack.push_back(trim({t_hat, range.last}));
            stack.push_back(trim({range.first, t_hat}));
        }
        // The stack pops left parts first, so accepted is already ordered.
        out.segments.insert(out.segments.end(), accepted.begin(), accepted.end());
    }
    return expand_segments(std::move(out), config.expand_s, probs.duration_s());
}

SegmentSet segment_pthr(const FrameProbabilities& probs, const SegmenterConfig& config) {
    const LabelSequence labels = binarize(probs, config.threshold);
    const double stride = probs.stride_s;
    SegmentSet kept = discard_short(runs_to_segments(labels), config.minlen_s);

    const long piece_frames =
        std::max(1L, static_cast<long>(std::floor(config.maxlen_s / stride + kTimeEps)));

    SegmentSet out;
    out.audio_id = probs.audio_id;
    out.audio_len_s = probs.duration_s();
    for (const auto& seg : kept.segments) {
        const long first = frame_floor(seg.start_s, stride);
        const long last = frame_ceil(seg.end_s, stride);
        for (long f = first; f < last; f += piece_frames) {
            out.segments.push_back(
                range_to_segment({f, std::min(f + piece_frames, last)}, stride));
        }
    }
    return expand_segments(std::move(out), config.expand_s, probs.duration_s());
}

SegmentSet segment_fixed(std::string audio_id, double audio_len_s, double piece_s) {
    if (!(piece_s > 0.0)) {
        throw std::invalid_argument("segment_fixed: piece_s must be positive");
    }
    if (audio_len_s < 0.0) {
        throw std::invalid_argument("segment_fixed: negative audio length");
    }
    SegmentSet out;
    out.audio_id = std::move(audio_id);
    out.audio_len_s = audio_len_s;
    for (std::size_t i = 0;; ++i) {
        const double start = static_cast<double>(i) * piece_s;
        if (start >= audio_len_s - kTimeEps) break;
        out.segments.push_back(Segment{start, std::min(start + piece_s, audio_len_s)});
    }
    return out;
}

SegmentationResult run_segmenter(const FrameProbabilities& probs,
                                 const SegmenterConfig& config) {
    validate(config);
    switch (config.algorithm) {
        case Algorithm::proposed:
            return segment_proposed(probs, config);
        case Algorithm::pdac:
            return {segment_pdac(probs, config), {}};
        case Algorithm::pthr:
            return {segment_pthr(probs, config), {}};
        case Algorithm::fixed:
            return {segment_fixed(probs.audio_id, probs.duration_s(), config.maxlen_s), {}};
    }
    throw std::logic_error("run_segmenter: unhandled algorithm");
}

}  // namespace sentseg
