#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <random>
#include <set>

#include "sentseg/io.hpp"
#include "sentseg/stats.hpp"
#include "sentseg/synth.hpp"
#include "sentseg/types.hpp"

using namespace sentseg;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "sentseg_core_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

SegmentSet make_set(std::string audio_id, std::vector<Segment> segments,
                    std::optional<double> audio_len = std::nullopt) {
    SegmentSet set;
    set.audio_id = std::move(audio_id);
    set.segments = std::move(segments);
    set.audio_len_s = audio_len;
    return set;
}

}  // namespace

TEST_CASE("validate_probs accepts well-formed input") {
    const auto fp = validate_probs({0.1f, 0.9f}, 0.04, "a");
    CHECK(fp.num_frames() == 2);
    CHECK(fp.audio_id == "a");
    CHECK(fp.stride_s == doctest::Approx(0.04));
}

TEST_CASE("validate_probs reports the offending index") {
    CHECK_THROWS_WITH_AS(validate_probs({1.2f}, 0.04, "a"),
                         doctest::Contains("index 0"), std::invalid_argument);
    CHECK_THROWS_AS(validate_probs({0.5f, -0.1f}, 0.04, "a"), std::invalid_argument);
}

TEST_CASE("validate_probs accepts an empty stream and rejects bad strides") {
    CHECK(validate_probs({}, 0.04, "a").num_frames() == 0);
    CHECK_THROWS_AS(validate_probs({}, 0.0, "a"), std::invalid_argument);
    CHECK_THROWS_AS(validate_probs({}, -1.0, "a"), std::invalid_argument);
}

TEST_CASE("synth_probs noise-free plateau matches the frame-center rule") {
    const auto oracle = make_set("a", {{1.0, 3.0}}, 4.0);
    const auto fp = synth_probs(oracle, 0.04, 0.0, 0, 7);
    REQUIRE(fp.num_frames() == 100);
    for (std::size_t t = 0; t < 100; ++t) {
        const float expected = (t >= 25 && t <= 74) ? 0.95f : 0.05f;
        CAPTURE(t);
        CHECK(fp.probs[t] == expected);
    }
}

TEST_CASE("synth_probs with no segments is flat") {
    const auto fp = synth_probs(make_set("a", {}, 2.0), 0.04, 0.0, 0, 1);
    REQUIRE(fp.num_frames() == 50);
    for (float p : fp.probs) CHECK(p == 0.05f);
}

TEST_CASE("synth_probs is deterministic in the seed") {
    const auto oracle = make_set("a", {{0.5, 2.5}, {3.0, 5.5}}, 6.0);
    const auto first = synth_probs(oracle, 0.04, 0.05, 3, 17);
    const auto second = synth_probs(oracle, 0.04, 0.05, 3, 17);
    const auto other = synth_probs(oracle, 0.04, 0.05, 3, 18);
    CHECK(first.probs == second.probs);
    CHECK(first.probs != other.probs);
}

TEST_CASE("synth_probs without noise or slope takes exactly two values") {
    const auto oracle = make_set("a", {{2.0, 4.0}, {5.0, 9.0}}, 12.0);
    const auto fp = synth_probs(oracle, 0.04, 0.0, 0, 0);
    std::set<float> values(fp.probs.begin(), fp.probs.end());
    REQUIRE(values.size() == 2);
    CHECK(*values.begin() == 0.05f);
    CHECK(*values.rbegin() == 0.95f);
}

TEST_CASE("synth_probs ramp crosses the midpoint at the boundary") {
    const auto oracle = make_set("a", {{2.0, 4.0}}, 6.0);
    const auto fp = synth_probs(oracle, 0.04, 0.0, 4, 0);
    // Frame centers straddling 2.0: frame 49 (1.98) below 0.5, frame 50 (2.02) above.
    CHECK(fp.probs[49] < 0.5f);
    CHECK(fp.probs[50] > 0.5f);
    // Ramp is monotone around the start boundary.
    for (std::size_t t = 46; t < 53; ++t) CHECK(fp.probs[t] <= fp.probs[t + 1]);
}

TEST_CASE("synth_probs requires the oracle audio length") {
    CHECK_THROWS_AS(synth_probs(make_set("a", {{0.0, 1.0}}), 0.04, 0.0, 0, 1),
                    std::invalid_argument);
}

TEST_CASE("segment_stats on a hand-checked set") {
    const auto stats = segment_stats(make_set("a", {{0.0, 2.0}, {3.0, 5.0}}));
    CHECK(stats.count == 2);
    CHECK(stats.total_s == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(*stats.mean_s == doctest::Approx(2.0));
    CHECK(*stats.min_s == doctest::Approx(2.0));
    CHECK(*stats.max_s == doctest::Approx(2.0));
    REQUIRE(stats.histogram.size() == 3);
    CHECK(stats.histogram[2] == 2);
}

TEST_CASE("segment_stats of an empty set has no mean") {
    const auto stats = segment_stats(make_set("a", {}));
    CHECK(stats.count == 0);
    CHECK(stats.total_s == 0.0);
    CHECK_FALSE(stats.mean_s.has_value());
    CHECK_FALSE(stats.p99_s.has_value());
    CHECK(stats.histogram.empty());
}

TEST_CASE("segment_stats agrees with an independent recomputation") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> gap(0.1, 2.0);
    std::uniform_real_distribution<double> len(0.05, 12.0);
    std::vector<Segment> segments;
    double cursor = 0.0;
    for (int i = 0; i < 100; ++i) {
        cursor += gap(rng);
        const double d = len(rng);
        segments.push_back({cursor, cursor + d});
        cursor += d;
    }
    const auto stats = segment_stats(make_set("a", segments));

    // Second pass with independent arithmetic.
    std::vector<double> durations;
    for (const auto& s : segments) durations.push_back(s.end_s - s.start_s);
    std::sort(durations.begin(), durations.end());
    double total = 0.0;
    for (double d : durations) total += d;

    CHECK(stats.count == 100);
    CHECK(std::abs(stats.total_s - total) < 1e-9);
    CHECK(*stats.mean_s == doctest::Approx(total / 100.0));
    CHECK(*stats.min_s == doctest::Approx(durations.front()));
    CHECK(*stats.max_s == doctest::Approx(durations.back()));
    CHECK(*stats.p50_s == doctest::Approx(durations[49]));   // ceil(0.5*100)-1
    CHECK(*stats.p90_s == doctest::Approx(durations[89]));
    CHECK(*stats.p99_s == doctest::Approx(durations[98]));
    std::size_t histogram_total = 0;
    for (auto c : stats.histogram) histogram_total += c;
    CHECK(histogram_total == 100);
}

TEST_CASE("probability JSONL round-trips bit-exactly") {
    std::mt19937 rng(4);
    std::uniform_real_distribution<float> uniform(0.0f, 1.0f);
    std::vector<FrameProbabilities> streams;
    for (int k = 0; k < 3; ++k) {
        std::vector<float> probs(257);
        for (auto& p : probs) p = uniform(rng);
        streams.push_back(validate_probs(std::move(probs), 0.04, "audio" + std::to_string(k)));
    }
    const auto path = temp_file("roundtrip.jsonl");
    write_probs_file(path.string(), streams);
    const auto loaded = read_probs_file(path.string());
    REQUIRE(loaded.size() == streams.size());
    for (std::size_t k = 0; k < streams.size(); ++k) {
        CHECK(loaded[k].audio_id == streams[k].audio_id);
        CHECK(loaded[k].stride_s == streams[k].stride_s);
        CHECK(loaded[k].probs == streams[k].probs);  // bit-exact
    }
}

TEST_CASE("probability raw file round-trips bit-exactly") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<float> uniform(0.0f, 1.0f);
    std::vector<float> probs(1001);
    for (auto& p : probs) p = uniform(rng);
    const auto stream = validate_probs(std::move(probs), 0.02, "raw_audio");

    const auto path = temp_file("roundtrip.f32");
    write_probs_file(path.string(), {stream});
    const auto loaded = read_probs_file(path.string());
    REQUIRE(loaded.size() == 1);
    CHECK(loaded[0].audio_id == "raw_audio");
    CHECK(loaded[0].stride_s == doctest::Approx(0.02));
    CHECK(loaded[0].probs == stream.probs);
}

TEST_CASE("segment files emit 3 decimals and read back from both formats") {
    const std::vector<SegmentSet> sets = {
        make_set("a", {{0.0, 1.23456}, {2.0, 3.5}}),
        make_set("b", {{10.0, 20.0}}),
    };
    const auto jsonl = temp_file("segments.jsonl");
    const auto tsv = temp_file("segments.tsv");
    write_segments_file(jsonl.string(), sets, SegmentFileFormat::jsonl);
    write_segments_file(tsv.string(), sets, SegmentFileFormat::tsv);

    const auto jsonl_lines = read_lines(jsonl.string());
    REQUIRE(jsonl_lines.size() == 3);
    CHECK(jsonl_lines[0] == R"({"audio_id":"a","start":0.000,"end":1.235})");
    const auto tsv_lines = read_lines(tsv.string());
    CHECK(tsv_lines[0] == "a\t0.000\t1.235");

    for (const auto& path : {jsonl, tsv}) {
        const auto loaded = read_segments_file(path.string());
        REQUIRE(loaded.size() == 2);
        CHECK(loaded[0].audio_id == "a");
        CHECK(loaded[0].segments.size() == 2);
        CHECK(loaded[0].segments[1].start_s == doctest::Approx(2.0));
        CHECK(loaded[1].audio_id == "b");
    }
}

TEST_CASE("segment file reading rejects overlapping records") {
    const auto path = temp_file("overlap.jsonl");
    write_lines(path.string(), {R"({"audio_id":"a","start":0.0,"end":2.0})",
                                R"({"audio_id":"a","start":1.5,"end":3.0})"});
    CHECK_THROWS_AS(read_segments_file(path.string()), std::invalid_argument);
}

TEST_CASE("segmenter config validation") {
    SegmenterConfig config;
    config.maxlen_s = 10.0;
    CHECK_NOTHROW(validate(config));
    config.threshold = 1.0;
    CHECK_THROWS_AS(validate(config), std::invalid_argument);
    config.threshold = 0.5;
    config.minlen_s = 11.0;
    CHECK_THROWS_AS(validate(config), std::invalid_argument);
    config.minlen_s = 0.2;
    config.expand_s = -0.1;
    CHECK_THROWS_AS(validate(config), std::invalid_argument);
}
