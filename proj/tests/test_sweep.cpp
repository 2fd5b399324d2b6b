#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>

#include "sentseg/io.hpp"
#include "sentseg/sweep.hpp"
#include "sentseg/synth.hpp"

using namespace sentseg;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "sentseg_sweep_tests" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// Synthetic corpus with oracle sentences of at most max_seg_s seconds.
std::vector<FrameProbabilities> synthetic_corpus(std::size_t audios, double max_seg_s,
                                                 std::uint64_t seed) {
    std::mt19937 rng(static_cast<unsigned>(seed));
    std::uniform_real_distribution<double> seg_len(2.0, max_seg_s);
    std::uniform_real_distribution<double> gap_len(0.6, 1.5);
    std::vector<FrameProbabilities> corpus;
    for (std::size_t a = 0; a < audios; ++a) {
        SegmentSet oracle{"audio" + std::to_string(a), {}, 0.0};
        double cursor = 0.5;
        for (int i = 0; i < 12; ++i) {
            const double d = seg_len(rng);
            oracle.segments.push_back({cursor, cursor + d});
            cursor += d + gap_len(rng);
        }
        oracle.audio_len_s = cursor;
        corpus.push_back(synth_probs(oracle, 0.04, 0.02, 3, seed * 100 + a));
    }
    return corpus;
}

SegmenterConfig base_config() {
    SegmenterConfig config;
    config.maxlen_s = 20.0;  // overridden per grid point
    return config;
}

}  // namespace

TEST_CASE("external_scorer parses the last line of output") {
    const auto dir = fresh_dir("external");
    CHECK(external_scorer("echo 12.85 # {}", "ignored", dir.string()) == 12.85);
    CHECK(external_scorer("echo header {}; echo 0", "x", dir.string()) == 0.0);
    CHECK(external_scorer("printf 'a {}\\n-3.5  \\n'", "x", dir.string()) == -3.5);
}

TEST_CASE("external_scorer substitutes the segment file path") {
    const auto dir = fresh_dir("subst");
    const auto file = dir / "segments.jsonl";
    write_lines(file.string(), {"line1", "line2"});
    CHECK(external_scorer("wc -l < {}", file.string(), dir.string()) == 2.0);
}

TEST_CASE("external_scorer failure modes") {
    const auto dir = fresh_dir("failures");
    CHECK_THROWS_WITH_AS(external_scorer("exit 3 # {}", "x", dir.string()),
                         doctest::Contains("code 3"), std::runtime_error);
    CHECK_THROWS_WITH_AS(external_scorer("echo not-a-number # {}", "x", dir.string()),
                         doctest::Contains("parsable"), std::runtime_error);
    CHECK_THROWS_WITH_AS(external_scorer("sleep 5 # {}", "x", dir.string(), 0.2),
                         doctest::Contains("timed out"), std::runtime_error);
    CHECK_THROWS_AS(external_scorer("echo 1", "x", dir.string()), std::invalid_argument);
}

TEST_CASE("sweep_config_id layout") {
    CHECK(sweep_config_id(10.0, std::nullopt) == "maxlen10");
    CHECK(sweep_config_id(12.5, 0.4) == "maxlen12.5_thr0.4");
}

TEST_CASE("sweep picks the grid point with the better metric") {
    const auto corpus = synthetic_corpus(2, 9.0, 11);
    SweepConfig sweep;
    sweep.maxlens = {10.0, 20.0};
    sweep.workdir = fresh_dir("pick").string();
    sweep.objective = Objective::minimize;
    sweep.scorer.kind = ScorerSpec::Kind::external;
    sweep.scorer.command =
        R"(case "{}" in *maxlen10.*) echo 1.0;; *) echo 2.0;; esac)";

    const auto report = run_sweep(corpus, base_config(), sweep);
    REQUIRE(report.rows.size() == 2);
    REQUIRE(report.best_index.has_value());
    CHECK(report.rows[*report.best_index].maxlen_s == 10.0);
    CHECK(*report.rows[0].metric == 1.0);
    CHECK(*report.rows[1].metric == 2.0);
}

TEST_CASE("a single-point grid is its own best") {
    const auto corpus = synthetic_corpus(1, 6.0, 12);
    SweepConfig sweep;
    sweep.maxlens = {15.0};
    sweep.workdir = fresh_dir("single").string();
    sweep.scorer.command = "echo 42 # {}";
    const auto report = run_sweep(corpus, base_config(), sweep);
    REQUIRE(report.rows.size() == 1);
    CHECK(*report.best_index == 0);
    CHECK(*report.rows[0].metric == 42.0);
}

TEST_CASE("scorer failures become error rows and are excluded from best") {
    const auto corpus = synthetic_corpus(1, 6.0, 13);
    SweepConfig sweep;
    sweep.maxlens = {10.0, 20.0};
    sweep.workdir = fresh_dir("errors").string();
    sweep.objective = Objective::minimize;
    sweep.scorer.command =
        R"(case "{}" in *maxlen10.*) exit 7;; *) echo 5.0;; esac)";
    const auto report = run_sweep(corpus, base_config(), sweep);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].error.has_value());
    CHECK_FALSE(report.rows[0].metric.has_value());
    REQUIRE(report.best_index.has_value());
    CHECK(report.rows[*report.best_index].maxlen_s == 20.0);
}

TEST_CASE("ties prefer the smaller maxlen") {
    const auto corpus = synthetic_corpus(1, 6.0, 14);
    SweepConfig sweep;
    sweep.maxlens = {30.0, 8.0, 15.0};
    sweep.workdir = fresh_dir("ties").string();
    sweep.objective = Objective::maximize;
    sweep.scorer.command = "echo 1.0 # {}";
    const auto report = run_sweep(corpus, base_config(), sweep);
    CHECK(report.rows[*report.best_index].maxlen_s == 8.0);
}

TEST_CASE("rerunning one grid point reproduces its row") {
    const auto corpus = synthetic_corpus(2, 9.0, 15);
    SweepConfig sweep;
    sweep.maxlens = {8.0, 10.0, 15.0};
    sweep.workdir = fresh_dir("independent_full").string();
    sweep.scorer.command = "wc -c < {}";
    const auto full = run_sweep(corpus, base_config(), sweep);

    SweepConfig single = sweep;
    single.maxlens = {10.0};
    single.workdir = fresh_dir("independent_rerun").string();
    const auto isolated = run_sweep(corpus, base_config(), single);

    const auto& row = full.rows[1];
    const auto& repeated = isolated.rows[0];
    CHECK(row.maxlen_s == repeated.maxlen_s);
    CHECK(*row.metric == *repeated.metric);
    CHECK(row.stats.count == repeated.stats.count);
    CHECK(row.stats.total_s == repeated.stats.total_s);
}

TEST_CASE("mean segment duration is non-decreasing in maxlen") {
    const auto corpus = synthetic_corpus(3, 12.0, 16);
    SweepConfig sweep;
    sweep.maxlens = {8.0, 10.0, 15.0, 20.0, 30.0};
    sweep.workdir = fresh_dir("monotone").string();
    sweep.scorer.command = "echo 0 # {}";
    const auto report = run_sweep(corpus, base_config(), sweep);
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        REQUIRE(report.rows[i].stats.mean_s.has_value());
        CHECK(*report.rows[i].stats.mean_s >=
              *report.rows[i - 1].stats.mean_s - kTimeEps);
    }
}

TEST_CASE("best entry matches a recomputed optimum") {
    const auto corpus = synthetic_corpus(2, 9.0, 17);
    SweepConfig sweep;
    sweep.maxlens = {8.0, 10.0, 15.0};
    sweep.workdir = fresh_dir("recompute").string();
    sweep.objective = Objective::maximize;
    sweep.scorer.command = "wc -l < {}";
    const auto report = run_sweep(corpus, base_config(), sweep);
    double best = -1.0;
    for (const auto& row : report.rows) best = std::max(best, row.metric.value_or(-1.0));
    CHECK(*report.rows[*report.best_index].metric == best);
}

TEST_CASE("builtin scorers realign the hypothesis before scoring") {
    const auto corpus = synthetic_corpus(1, 6.0, 18);
    const auto dir = fresh_dir("builtin");
    const auto ref = dir / "ref.txt";
    const auto hyps = dir / "hyps";
    std::filesystem::create_directories(hyps);
    write_lines(ref.string(), {"a b", "c d"});
    // Hypotheses arrive as unsegmented long-form text.
    write_lines((hyps / "maxlen10.txt").string(), {"a b c d"});
    write_lines((hyps / "maxlen20.txt").string(), {"a x c d"});

    SweepConfig sweep;
    sweep.maxlens = {10.0, 20.0};
    sweep.workdir = (dir / "work").string();
    sweep.objective = Objective::minimize;
    sweep.scorer.kind = ScorerSpec::Kind::builtin_wer;
    sweep.scorer.ref_path = ref.string();
    sweep.scorer.hyp_dir = hyps.string();

    const auto report = run_sweep(corpus, base_config(), sweep);
    CHECK(*report.rows[0].metric == 0.0);
    CHECK(*report.rows[1].metric == 0.25);
    CHECK(report.rows[*report.best_index].maxlen_s == 10.0);
}

TEST_CASE("threshold grids expand the sweep") {
    const auto corpus = synthetic_corpus(1, 6.0, 19);
    SweepConfig sweep;
    sweep.maxlens = {10.0, 20.0};
    sweep.thresholds = {0.4, 0.6};
    sweep.workdir = fresh_dir("thresholds").string();
    sweep.scorer.command = "echo 1 # {}";
    const auto report = run_sweep(corpus, base_config(), sweep);
    REQUIRE(report.rows.size() == 4);
    CHECK(report.rows[0].config_id == "maxlen10_thr0.4");
    CHECK(report.rows[3].config_id == "maxlen20_thr0.6");
    CHECK(report.rows[3].threshold == 0.6);
}

TEST_CASE("sweep report round-trips through JSON") {
    const auto corpus = synthetic_corpus(1, 6.0, 20);
    SweepConfig sweep;
    sweep.maxlens = {10.0, 20.0};
    sweep.workdir = fresh_dir("roundtrip").string();
    sweep.scorer.command =
        R"(case "{}" in *maxlen10.*) echo 1.5;; *) exit 1;; esac)";
    const auto report = run_sweep(corpus, base_config(), sweep);
    const auto back = sweep_report_from_json(to_json(report));
    REQUIRE(back.rows.size() == report.rows.size());
    CHECK(back.rows[0].config_id == report.rows[0].config_id);
    CHECK(*back.rows[0].metric == *report.rows[0].metric);
    CHECK(back.rows[1].error.has_value());
    CHECK(*back.best_index == *report.best_index);
    CHECK(back.rows[0].stats.count == report.rows[0].stats.count);
}

TEST_CASE("parallel grid evaluation matches the serial run") {
    const auto corpus = synthetic_corpus(2, 9.0, 22);
    SweepConfig sweep;
    sweep.maxlens = {8.0, 10.0, 15.0, 20.0};
    sweep.workdir = fresh_dir("parallel_serial").string();
    sweep.scorer.command = "wc -c < {}";
    const auto serial = run_sweep(corpus, base_config(), sweep);

    sweep.workdir = fresh_dir("parallel_jobs").string();
    sweep.jobs = 3;
    const auto parallel = run_sweep(corpus, base_config(), sweep);

    REQUIRE(parallel.rows.size() == serial.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(parallel.rows[i].config_id == serial.rows[i].config_id);
        CHECK(*parallel.rows[i].metric == *serial.rows[i].metric);
        CHECK(parallel.rows[i].stats.count == serial.rows[i].stats.count);
    }
    CHECK(*parallel.best_index == *serial.best_index);
}

TEST_CASE("sweep validates its grid") {
    SweepConfig sweep;
    sweep.maxlens = {};
    CHECK_THROWS_AS(run_sweep({}, base_config(), sweep), std::invalid_argument);
    sweep.maxlens = {0.1};  // below the default minlen
    CHECK_THROWS_AS(run_sweep({}, base_config(), sweep), std::invalid_argument);
}

TEST_CASE("format_sweep_table marks the best row") {
    const auto corpus = synthetic_corpus(1, 6.0, 21);
    SweepConfig sweep;
    sweep.maxlens = {10.0};
    sweep.workdir = fresh_dir("table").string();
    sweep.scorer.command = "echo 3.25 # {}";
    const auto report = run_sweep(corpus, base_config(), sweep);
    const auto table = format_sweep_table(report);
    CHECK(table.find("maxlen10") != std::string::npos);
    CHECK(table.find("best") != std::string::npos);
    CHECK(table.find("3.25") != std::string::npos);
}
