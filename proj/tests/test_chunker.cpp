#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sentseg/chunker.hpp"
#include "sentseg/io.hpp"
#include "sentseg/segmenters.hpp"
#include "sentseg/synth.hpp"

using namespace sentseg;

namespace {

FrameProbabilities random_stream(std::mt19937& rng, std::size_t frames,
                                 double stride = 0.04) {
    std::uniform_real_distribution<float> uniform(0.0f, 1.0f);
    std::vector<float> probs(frames);
    for (auto& p : probs) p = uniform(rng);
    return validate_probs(std::move(probs), stride, "rand");
}

// Slice a stream into the per-window sequences a chunked model would emit.
std::vector<std::vector<float>> slice_by_windows(const FrameProbabilities& fp,
                                                 const std::vector<Window>& windows) {
    std::vector<std::vector<float>> out;
    for (const auto& w : windows) {
        const auto [first, last] = window_frame_span(w, fp.stride_s);
        out.emplace_back(fp.probs.begin() + first, fp.probs.begin() + last);
    }
    return out;
}

}  // namespace

TEST_CASE("split_windows lays out 20 s windows with 2 s overlap") {
    const auto windows = split_windows(38.0, 20.0, 2.0);
    REQUIRE(windows.size() == 2);
    CHECK(windows[0].start_s == 0.0);
    CHECK(windows[0].end_s == 20.0);
    CHECK(windows[1].start_s == 18.0);
    CHECK(windows[1].end_s == 38.0);
}

TEST_CASE("split_windows keeps short audio in a single window") {
    const auto windows = split_windows(15.0, 20.0, 2.0);
    REQUIRE(windows.size() == 1);
    CHECK(windows[0].start_s == 0.0);
    CHECK(windows[0].end_s == 15.0);
}

TEST_CASE("split_windows hops by window minus overlap") {
    const auto windows = split_windows(56.0, 20.0, 2.0);
    REQUIRE(windows.size() == 3);
    CHECK(windows[1].start_s == 18.0);
    CHECK(windows[2].start_s == 36.0);
    CHECK(windows[2].end_s == 56.0);
}

TEST_CASE("split_windows rejects negative audio and bad overlap") {
    CHECK_THROWS_AS(split_windows(-1.0, 20.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(split_windows(10.0, 20.0, 20.0), std::invalid_argument);
}

TEST_CASE("split_windows window count matches the closed form") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> len(0.5, 400.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double audio_len = len(rng);
        const auto windows = split_windows(audio_len, 20.0, 2.0);
        const auto expected = static_cast<std::size_t>(
            std::max(1.0, std::ceil((audio_len - 20.0) / 18.0) + 1.0));
        CAPTURE(audio_len);
        CHECK(windows.size() == expected);
        CHECK(windows.front().start_s == 0.0);
        CHECK(windows.back().end_s == doctest::Approx(audio_len));
        for (std::size_t i = 1; i < windows.size(); ++i) {
            CHECK(windows[i].start_s < windows[i - 1].end_s);  // overlapping cover
        }
    }
}

TEST_CASE("merge averages the overlap region") {
    const std::vector<Window> windows = {{0, 0.0, 20.0}, {1, 18.0, 38.0}};
    std::vector<std::vector<float>> per_window = {
        std::vector<float>(500, 0.8f),
        std::vector<float>(500, 0.4f),
    };
    const auto merged = merge_window_probs(per_window, windows, 0.04, "a");
    REQUIRE(merged.num_frames() == 950);
    CHECK(merged.probs[449] == 0.8f);   // single coverage
    CHECK(merged.probs[450] == 0.6f);   // overlap frames 450..499
    CHECK(merged.probs[499] == 0.6f);
    CHECK(merged.probs[500] == 0.4f);
}

TEST_CASE("merge of identical constants is the identity") {
    const auto windows = split_windows(56.0, 20.0, 2.0);
    std::vector<std::vector<float>> per_window;
    for (const auto& w : windows) {
        per_window.emplace_back(
            static_cast<std::size_t>(std::llround(w.duration_s() / 0.04)), 0.7f);
    }
    const auto merged = merge_window_probs(per_window, windows, 0.04, "a");
    for (float p : merged.probs) CHECK(p == 0.7f);
}

TEST_CASE("merge of a single window is the identity") {
    std::mt19937 rng(3);
    const auto fp = random_stream(rng, 300);
    const auto windows = split_windows(fp.duration_s(), 20.0, 2.0);
    REQUIRE(windows.size() == 1);
    const auto merged = merge_window_probs({fp.probs}, windows, fp.stride_s, fp.audio_id);
    CHECK(merged.probs == fp.probs);
}

TEST_CASE("merge rejects a length mismatch") {
    const std::vector<Window> windows = {{0, 0.0, 20.0}};
    CHECK_THROWS_AS(
        merge_window_probs({std::vector<float>(499, 0.5f)}, windows, 0.04, "a"),
        std::invalid_argument);
}

TEST_CASE("split then merge reconstructs the stream") {
    std::mt19937 rng(21);
    std::uniform_int_distribution<std::size_t> frames(1, 3000);
    for (int trial = 0; trial < 50; ++trial) {
        const auto fp = random_stream(rng, frames(rng));
        const auto windows = split_windows(fp.duration_s(), 20.0, 2.0);
        const auto merged =
            merge_window_probs(slice_by_windows(fp, windows), windows, fp.stride_s, "rand");
        REQUIRE(merged.num_frames() == fp.num_frames());
        for (std::size_t t = 0; t < fp.num_frames(); ++t) {
            REQUIRE(std::abs(merged.probs[t] - fp.probs[t]) < 1e-12);
        }
    }
}

TEST_CASE("labels follow the frame-center rule") {
    const SegmentSet oracle{"a", {{1.0, 2.0}}, 3.0};
    const auto labels = labels_from_segments(oracle, 3.0, 0.04);
    REQUIRE(labels.num_frames() == 75);
    for (std::size_t t = 0; t < labels.num_frames(); ++t) {
        CAPTURE(t);
        CHECK(labels.labels[t] == ((t >= 25 && t <= 49) ? 1 : 0));
    }
}

TEST_CASE("labels of an empty oracle are all zero, full cover all one") {
    const auto zeros = labels_from_segments(SegmentSet{"a", {}, 2.0}, 2.0, 0.04);
    CHECK(std::count(zeros.labels.begin(), zeros.labels.end(), 1) == 0);

    const auto ones = labels_from_segments(SegmentSet{"a", {{0.0, 2.0}}, 2.0}, 2.0, 0.04);
    CHECK(std::count(ones.labels.begin(), ones.labels.end(), 0) == 0);
}

TEST_CASE("label round trip recovers oracle boundaries within one stride") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> gap(0.3, 1.5), len(0.5, 8.0);
    for (int trial = 0; trial < 20; ++trial) {
        SegmentSet oracle{"a", {}, 0.0};
        double cursor = 0.2;
        for (int i = 0; i < 8; ++i) {
            const double d = len(rng);
            oracle.segments.push_back({cursor, cursor + d});
            cursor += d + gap(rng);
        }
        oracle.audio_len_s = cursor;

        const auto labels = labels_from_segments(oracle, cursor, 0.04);
        const auto recovered = runs_to_segments(labels);
        REQUIRE(recovered.segments.size() == oracle.segments.size());
        for (std::size_t i = 0; i < oracle.segments.size(); ++i) {
            CHECK(std::abs(recovered.segments[i].start_s - oracle.segments[i].start_s) <=
                  0.04 + kTimeEps);
            CHECK(std::abs(recovered.segments[i].end_s - oracle.segments[i].end_s) <=
                  0.04 + kTimeEps);
        }
    }
}

TEST_CASE("training windows tile exactly when hop equals window") {
    LabelSequence labels{"a", 0.04, std::vector<std::uint8_t>(1000, 1)};
    const auto windows = window_training_examples(labels, 20.0, 20.0);
    REQUIRE(windows.size() == 2);
    CHECK(windows[0].valid_frames == 500);
    CHECK(windows[1].valid_frames == 500);
    CHECK(windows[1].window.start_s == 20.0);
}

TEST_CASE("training windows stop at the first window reaching the end") {
    LabelSequence labels{"a", 0.04, std::vector<std::uint8_t>(750, 1)};
    const auto windows = window_training_examples(labels, 20.0, 10.0);
    REQUIRE(windows.size() == 2);
    CHECK(windows[0].window.start_s == 0.0);
    CHECK(windows[1].window.start_s == 10.0);
    CHECK(windows[0].valid_frames == 500);
    CHECK(windows[1].valid_frames == 500);
}

TEST_CASE("short audio yields one padded training window") {
    LabelSequence labels{"a", 0.04, std::vector<std::uint8_t>(125, 1)};
    const auto windows = window_training_examples(labels, 20.0, 20.0);
    REQUIRE(windows.size() == 1);
    CHECK(windows[0].labels.size() == 500);
    CHECK(windows[0].valid_frames == 125);
    CHECK(windows[0].labels[124] == 1);
    CHECK(windows[0].labels[125] == 0);  // padding
}

TEST_CASE("label window line carries the export schema") {
    LabelSequence labels{"talk1", 0.04, {1, 1, 0, 1}};
    const auto windows = window_training_examples(labels, 0.16, 0.16);
    REQUIRE(windows.size() == 1);
    const auto line = label_window_line("talk1", 0.04, windows[0]);
    const auto j = json::parse(line);
    CHECK(j.at("audio_id") == "talk1");
    CHECK(j.at("stride_ms") == 40);
    CHECK(j.at("valid") == 4);
    CHECK(j.at("labels").get<std::vector<int>>() == std::vector<int>{1, 1, 0, 1});
}
