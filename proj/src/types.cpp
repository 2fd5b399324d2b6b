#include "sentseg/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sentseg {

double SegmentSet::total_duration_s() const {
    double total = 0.0;
    for (const auto& seg : segments) total += seg.duration_s();
    return total;
}

const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::proposed: return "proposed";
        case Algorithm::pdac: return "pdac";
        case Algorithm::pthr: return "pthr";
        case Algorithm::fixed: return "fixed";
    }
    return "unknown";
}

Algorithm algorithm_from_string(std::string_view name) {
    if (name == "proposed") return Algorithm::proposed;
    if (name == "pdac") return Algorithm::pdac;
    if (name == "pthr") return Algorithm::pthr;
    if (name == "fixed") return Algorithm::fixed;
    throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

FrameProbabilities validate_probs(std::vector<float> probs, double stride_s,
                                  std::string audio_id) {
    if (!(stride_s > 0.0)) {
        throw std::invalid_argument("stride_s must be positive, got " +
                                    std::to_string(stride_s));
    }
    for (std::size_t t = 0; t < probs.size(); ++t) {
        const float p = probs[t];
        if (!(p >= 0.0f && p <= 1.0f)) {
            throw std::invalid_argument("probability out of [0,1] at index " +
                                        std::to_string(t) + ": " + std::to_string(p));
        }
    }
    FrameProbabilities fp;
    fp.audio_id = std::move(audio_id);
    fp.stride_s = stride_s;
    fp.probs = std::move(probs);
    return fp;
}

void validate(const LabelSequence& labels) {
    if (!(labels.stride_s > 0.0)) {
        throw std::invalid_argument("label stride_s must be positive");
    }
    for (std::size_t t = 0; t < labels.labels.size(); ++t) {
        if (labels.labels[t] > 1) {
            throw std::invalid_argument("label not in {0,1} at index " + std::to_string(t));
        }
    }
}

void validate(const SegmentSet& set) {
    const auto& segs = set.segments;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (!(segs[i].start_s >= 0.0 && segs[i].start_s < segs[i].end_s)) {
            throw std::invalid_argument(
                "segment " + std::to_string(i) + " of " + set.audio_id +
                " violates 0 <= start < end: [" + std::to_string(segs[i].start_s) +
                ", " + std::to_string(segs[i].end_s) + ")");
        }
        if (i > 0 && segs[i - 1].end_s > segs[i].start_s + kTimeEps) {
            throw std::invalid_argument("segments " + std::to_string(i - 1) + " and " +
                                        std::to_string(i) + " of " + set.audio_id +
                                        " overlap");
        }
        if (set.audio_len_s && segs[i].end_s > *set.audio_len_s + kTimeEps) {
            throw std::invalid_argument("segment " + std::to_string(i) + " of " +
                                        set.audio_id + " extends past audio length");
        }
    }
}

void validate(const SegmenterConfig& config) {
    if (!(config.threshold > 0.0 && config.threshold < 1.0)) {
        throw std::invalid_argument("threshold must be in (0,1)");
    }
    if (!(config.minlen_s >= 0.0 && config.minlen_s < config.maxlen_s)) {
        throw std::invalid_argument("need 0 <= minlen_s < maxlen_s");
    }
    if (!(config.expand_s >= 0.0)) {
        throw std::invalid_argument("expand_s must be >= 0");
    }
}

long frame_floor(double t_s, double stride_s) {
    return static_cast<long>(std::floor(t_s / stride_s + kTimeEps));
}

long frame_ceil(double t_s, double stride_s) {
    return static_cast<long>(std::ceil(t_s / stride_s - kTimeEps));
}

std::size_t frames_for_duration(double len_s, double stride_s) {
    const long n = frame_ceil(len_s, stride_s);
    return n > 0 ? static_cast<std::size_t>(n) : 0;
}

}  // namespace sentseg
