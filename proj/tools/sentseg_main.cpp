// sentseg: turn frame-level speech probabilities into sentence-like segments
// and score segmentations with long-form ASR/ST evaluation metrics.

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "sentseg/chunker.hpp"
#include "sentseg/eval.hpp"
#include "sentseg/io.hpp"
#include "sentseg/manifest.hpp"
#include "sentseg/segmenters.hpp"
#include "sentseg/stats.hpp"
#include "sentseg/sweep.hpp"
#include "sentseg/synth.hpp"
#include "sentseg/types.hpp"
#include "sentseg/version.hpp"

namespace {

using namespace sentseg;

std::size_t default_jobs() {
    if (const char* env = std::getenv("SENTSEG_JOBS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<std::size_t>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
    jobs = std::min(std::max<std::size_t>(jobs, 1), count);
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!failed.exchange(true)) first_error = e.what();
                }
            }
        });
    }
    for (auto& worker : workers) worker.join();
    if (failed) throw std::runtime_error(first_error);
}

struct ManifestSink {
    bool enabled = true;
    std::string command;
    json config = json::object();
    std::vector<std::string> inputs;

    void emit(const std::vector<std::string>& outputs) const {
        if (!enabled || outputs.empty()) return;
        RunManifest manifest;
        manifest.command = command;
        manifest.config = config;
        for (const auto& input : inputs) {
            manifest.input_digests[input] = fnv1a64_file(input);
        }
        manifest.outputs = outputs;
        manifest.timestamp = iso8601_utc_now();
        write_manifest(outputs.front(), manifest);
    }
};

void print_report(const json& report, const std::string& out_path,
                  const ManifestSink& manifest) {
    if (out_path.empty()) {
        std::cout << report.dump() << '\n';
    } else {
        write_lines(out_path, {report.dump()});
        manifest.emit({out_path});
    }
}

// ---- segment ---------------------------------------------------------------

struct SegmentArgs {
    std::string probs_path;
    std::string algorithm = "proposed";
    SegmenterConfig config;
    std::string out_path;
    std::string trace_path;
    std::string format = "jsonl";
    std::size_t jobs = default_jobs();
    bool no_manifest = false;
};

int run_segment(const SegmentArgs& args) {
    SegmenterConfig config = args.config;
    config.algorithm = algorithm_from_string(args.algorithm);
    validate(config);

    const auto corpus = read_probs_file(args.probs_path);
    std::vector<SegmentationResult> results(corpus.size());
    parallel_for(corpus.size(), args.jobs,
                 [&](std::size_t i) { results[i] = run_segmenter(corpus[i], config); });

    std::vector<SegmentSet> sets;
    sets.reserve(results.size());
    for (auto& result : results) sets.push_back(std::move(result.segments));
    write_segments_file(args.out_path, sets,
                        args.format == "tsv" ? SegmentFileFormat::tsv
                                             : SegmentFileFormat::jsonl);

    std::vector<std::string> outputs = {args.out_path};
    if (!args.trace_path.empty()) {
        std::vector<std::string> lines;
        for (std::size_t i = 0; i < results.size(); ++i) {
            for (const auto& point : results[i].trace) {
                lines.push_back(trace_line(sets[i].audio_id, point));
            }
        }
        write_lines(args.trace_path, lines);
        outputs.push_back(args.trace_path);
    }

    ManifestSink manifest{!args.no_manifest, "segment",
                          json{{"algorithm", args.algorithm},
                               {"threshold", config.threshold},
                               {"min_len", config.minlen_s},
                               {"max_len", config.maxlen_s},
                               {"expand", config.expand_s},
                               {"format", args.format}},
                          {args.probs_path}};
    manifest.emit(outputs);

    std::size_t total = 0;
    for (const auto& set : sets) total += set.segments.size();
    std::cerr << "segmented " << corpus.size() << " audio(s) into " << total
              << " segment(s)\n";
    return 0;
}

// ---- merge -----------------------------------------------------------------

struct MergeArgs {
    std::string chunks_path;
    double window_s = 20.0;
    double overlap_s = 2.0;
    std::string out_path;
    bool no_manifest = false;
};

int run_merge(const MergeArgs& args) {
    const auto chunks = read_chunks_file(args.chunks_path);
    const double hop_s = args.window_s - args.overlap_s;

    // Group chunks by audio in order of first appearance.
    std::vector<std::string> order;
    std::map<std::string, std::vector<const WindowProbs*>> grouped;
    for (const auto& chunk : chunks) {
        auto [it, inserted] = grouped.try_emplace(chunk.audio_id);
        if (inserted) order.push_back(chunk.audio_id);
        it->second.push_back(&chunk);
    }

    std::vector<FrameProbabilities> merged;
    for (const auto& audio_id : order) {
        auto& group = grouped[audio_id];
        std::sort(group.begin(), group.end(),
                  [](const WindowProbs* a, const WindowProbs* b) {
                      return a->window_start_s < b->window_start_s;
                  });
        const double stride = group.front()->stride_s;
        std::vector<Window> windows;
        std::vector<std::vector<float>> sequences;
        for (std::size_t i = 0; i < group.size(); ++i) {
            const auto& chunk = *group[i];
            if (std::abs(chunk.stride_s - stride) > 1e-9) {
                throw std::runtime_error(audio_id + ": inconsistent stride across chunks");
            }
            const double expected_start = static_cast<double>(i) * hop_s;
            if (std::abs(chunk.window_start_s - expected_start) > 1e-6) {
                throw std::runtime_error(
                    audio_id + ": chunk at " + std::to_string(chunk.window_start_s) +
                    " s is off the window grid (expected " +
                    std::to_string(expected_start) + " s)");
            }
            const double end =
                chunk.window_start_s + static_cast<double>(chunk.probs.size()) * stride;
            if (end - chunk.window_start_s > args.window_s + kTimeEps) {
                throw std::runtime_error(audio_id + ": chunk at " +
                                         std::to_string(chunk.window_start_s) +
                                         " s is longer than the declared window");
            }
            windows.push_back(Window{i, chunk.window_start_s, end});
            sequences.push_back(chunk.probs);
        }
        merged.push_back(merge_window_probs(sequences, windows, stride, audio_id));
    }
    write_probs_file(args.out_path, merged);

    ManifestSink manifest{!args.no_manifest, "merge",
                          json{{"window", args.window_s}, {"overlap", args.overlap_s}},
                          {args.chunks_path}};
    manifest.emit({args.out_path});
    std::cerr << "merged " << chunks.size() << " chunk(s) into " << merged.size()
              << " stream(s)\n";
    return 0;
}

// ---- labels ----------------------------------------------------------------

struct LabelsArgs {
    std::string segments_path;
    double audio_len_s = 0.0;
    int stride_ms = 40;
    double window_s = 20.0;
    double hop_s = 0.0;  // 0: use the window length
    std::string out_path;
    bool no_manifest = false;
};

int run_labels(const LabelsArgs& args) {
    const double stride_s = args.stride_ms / 1000.0;
    const double hop_s = args.hop_s > 0.0 ? args.hop_s : args.window_s;
    auto oracles = read_segments_file(args.segments_path);

    std::vector<std::string> lines;
    for (auto& oracle : oracles) {
        oracle.audio_len_s = args.audio_len_s;
        validate(oracle);
        const auto labels = labels_from_segments(oracle, args.audio_len_s, stride_s);
        for (const auto& window : window_training_examples(labels, args.window_s, hop_s)) {
            lines.push_back(label_window_line(oracle.audio_id, stride_s, window));
        }
    }
    write_lines(args.out_path, lines);

    ManifestSink manifest{!args.no_manifest, "labels",
                          json{{"audio_len", args.audio_len_s},
                               {"stride_ms", args.stride_ms},
                               {"window", args.window_s},
                               {"hop", hop_s}},
                          {args.segments_path}};
    manifest.emit({args.out_path});
    std::cerr << "wrote " << lines.size() << " label window(s)\n";
    return 0;
}

// ---- synth -----------------------------------------------------------------

struct SynthArgs {
    std::string segments_path;
    double audio_len_s = 0.0;
    double sigma = 0.05;
    int slope_frames = 3;
    std::uint64_t seed = 17;
    int stride_ms = 40;
    std::string out_path;
    bool no_manifest = false;
};

int run_synth(const SynthArgs& args) {
    auto oracles = read_segments_file(args.segments_path);
    std::vector<FrameProbabilities> streams;
    for (auto& oracle : oracles) {
        oracle.audio_len_s = args.audio_len_s;
        streams.push_back(synth_probs(oracle, args.stride_ms / 1000.0, args.sigma,
                                      args.slope_frames, args.seed));
    }
    write_probs_file(args.out_path, streams);

    ManifestSink manifest{!args.no_manifest, "synth",
                          json{{"audio_len", args.audio_len_s},
                               {"sigma", args.sigma},
                               {"slope", args.slope_frames},
                               {"seed", args.seed},
                               {"stride_ms", args.stride_ms}},
                          {args.segments_path}};
    manifest.emit({args.out_path});
    std::cerr << "synthesized " << streams.size() << " stream(s)\n";
    return 0;
}

// ---- stats -----------------------------------------------------------------

struct StatsArgs {
    std::string segments_path;
    std::string out_path;
    bool per_audio = false;
};

int run_stats(const StatsArgs& args) {
    const auto sets = read_segments_file(args.segments_path);
    std::vector<double> durations;
    for (const auto& set : sets) {
        for (const auto& seg : set.segments) durations.push_back(seg.duration_s());
    }
    json report = to_json(duration_stats(std::move(durations)));
    if (args.per_audio) {
        json per_audio = json::object();
        for (const auto& set : sets) per_audio[set.audio_id] = to_json(segment_stats(set));
        report = json{{"overall", report}, {"per_audio", per_audio}};
    }
    ManifestSink manifest{true, "stats", json::object(), {args.segments_path}};
    print_report(report, args.out_path, manifest);
    return 0;
}

// ---- eval ------------------------------------------------------------------

struct EvalArgs {
    std::string ref_path;
    std::string hyp_path;
    std::string out_path;      // report JSON (stdout if empty)
    std::string lines_path;    // realigned lines, resegment only
    std::string marks = ".?,";
    bool macro_all = false;
    bool no_manifest = false;
};

std::string join_lines(const std::vector<std::string>& lines) {
    std::string joined;
    for (const auto& line : lines) {
        if (!joined.empty()) joined.push_back(' ');
        joined += line;
    }
    return joined;
}

int run_eval(const std::string& metric, const EvalArgs& args) {
    const auto ref_lines = read_lines(args.ref_path);
    const auto hyp_lines = read_lines(args.hyp_path);
    ManifestSink manifest{!args.no_manifest, "eval " + metric, json::object(),
                          {args.ref_path, args.hyp_path}};

    if (metric == "wer") {
        print_report(to_json(wer_corpus(ref_lines, hyp_lines)), args.out_path, manifest);
        return 0;
    }
    if (metric == "bleu") {
        print_report(to_json(bleu(ref_lines, hyp_lines)), args.out_path, manifest);
        return 0;
    }
    if (metric == "punct-f1") {
        PunctOptions options;
        options.marks = args.marks;
        options.macro_over_all_marks = args.macro_all;
        manifest.config = json{{"marks", args.marks}, {"macro_all", args.macro_all}};
        print_report(to_json(punct_f1(join_lines(ref_lines), join_lines(hyp_lines), options)),
                     args.out_path, manifest);
        return 0;
    }
    // resegment
    Tokens hyp_tokens;
    for (const auto& line : hyp_lines) {
        for (auto& token : tokenize(line)) hyp_tokens.push_back(std::move(token));
    }
    std::vector<Tokens> ref_segments;
    ref_segments.reserve(ref_lines.size());
    for (const auto& line : ref_lines) ref_segments.push_back(tokenize(line));

    const auto result = resegment(hyp_tokens, ref_segments);
    std::vector<std::string> realigned;
    realigned.reserve(result.spans.size());
    for (const auto& [begin, end] : result.spans) {
        std::string joined;
        for (std::size_t i = begin; i < end; ++i) {
            if (!joined.empty()) joined.push_back(' ');
            joined += hyp_tokens[i];
        }
        realigned.push_back(std::move(joined));
    }
    write_lines(args.lines_path, realigned);
    manifest.emit({args.lines_path});
    const json report{{"total_cost", result.total_cost},
                      {"segments", result.spans.size()},
                      {"hyp_words", hyp_tokens.size()}};
    print_report(report, args.out_path, ManifestSink{false, "", {}, {}});
    return 0;
}

// ---- sweep -----------------------------------------------------------------

struct SweepArgs {
    std::string probs_path;
    std::string algorithm = "proposed";
    SegmenterConfig base;
    std::vector<double> maxlens = {8.0, 10.0, 15.0, 20.0, 30.0};
    std::vector<double> thresholds;
    std::string scorer_cmd;
    std::string scorer;  // builtin-wer | builtin-bleu
    std::string ref_path;
    std::string hyp_dir;
    std::string objective;  // min | max
    std::string workdir = "sweep_work";
    double timeout_s = 300.0;
    std::size_t jobs = 1;
    std::string out_path;
    bool print_json = false;
    bool no_manifest = false;
};

int run_sweep_cmd(const SweepArgs& args) {
    SegmenterConfig base = args.base;
    base.algorithm = algorithm_from_string(args.algorithm);
    base.maxlen_s = args.maxlens.empty() ? 0.0 : args.maxlens.front();

    SweepConfig sweep;
    sweep.maxlens = args.maxlens;
    sweep.thresholds = args.thresholds;
    sweep.workdir = args.workdir;
    sweep.jobs = args.jobs;
    sweep.scorer.timeout_s = args.timeout_s;

    if (!args.scorer_cmd.empty() && !args.scorer.empty()) {
        throw CLI::ValidationError("--scorer-cmd and --scorer are mutually exclusive");
    }
    if (!args.scorer_cmd.empty()) {
        sweep.scorer.kind = ScorerSpec::Kind::external;
        sweep.scorer.command = args.scorer_cmd;
        sweep.objective = Objective::minimize;
    } else if (args.scorer == "builtin-wer" || args.scorer == "builtin-bleu") {
        sweep.scorer.kind = args.scorer == "builtin-wer" ? ScorerSpec::Kind::builtin_wer
                                                         : ScorerSpec::Kind::builtin_bleu;
        sweep.scorer.ref_path = args.ref_path;
        sweep.scorer.hyp_dir = args.hyp_dir;
        sweep.objective = args.scorer == "builtin-wer" ? Objective::minimize
                                                       : Objective::maximize;
        if (args.ref_path.empty() || args.hyp_dir.empty()) {
            throw CLI::ValidationError("builtin scorers need --ref and --hyp-dir");
        }
    } else {
        throw CLI::ValidationError("pass --scorer-cmd or --scorer builtin-wer|builtin-bleu");
    }
    if (args.objective == "min") sweep.objective = Objective::minimize;
    if (args.objective == "max") sweep.objective = Objective::maximize;

    const auto corpus = read_probs_file(args.probs_path);
    const auto report = run_sweep(corpus, base, sweep);

    if (args.print_json) {
        std::cout << to_json(report).dump() << '\n';
    } else {
        std::cout << format_sweep_table(report);
    }
    if (!args.out_path.empty()) {
        write_lines(args.out_path, {to_json(report).dump()});
        ManifestSink manifest{!args.no_manifest, "sweep",
                              json{{"algorithm", args.algorithm},
                                   {"max_lens", args.maxlens},
                                   {"thresholds", args.thresholds},
                                   {"threshold", base.threshold},
                                   {"min_len", base.minlen_s},
                                   {"expand", base.expand_s},
                                   {"objective",
                                    sweep.objective == Objective::minimize ? "min" : "max"},
                                   {"scorer", args.scorer_cmd.empty() ? args.scorer
                                                                      : args.scorer_cmd}},
                              {args.probs_path}};
        manifest.emit({args.out_path});
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"speech segmentation and long-form evaluation toolkit"};
    app.set_version_flag("--version", std::string("sentseg ") + kVersion);
    app.require_subcommand(1);

    SegmentArgs segment_args;
    auto* segment = app.add_subcommand("segment", "probability stream -> segment file");
    segment->add_option("--probs", segment_args.probs_path, "probability file (JSONL or .f32)")
        ->required();
    segment->add_option("--algorithm", segment_args.algorithm, "proposed|pdac|pthr|fixed")
        ->check(CLI::IsMember({"proposed", "pdac", "pthr", "fixed"}));
    segment->add_option("--threshold", segment_args.config.threshold, "binarization threshold");
    segment->add_option("--min-len", segment_args.config.minlen_s, "discard shorter (s)");
    segment->add_option("--max-len", segment_args.config.maxlen_s, "split longer (s)")
        ->required();
    segment->add_option("--expand", segment_args.config.expand_s, "boundary padding (s)");
    segment->add_option("--out", segment_args.out_path, "segment file to write")->required();
    segment->add_option("--trace", segment_args.trace_path, "split trace JSONL");
    segment->add_option("--format", segment_args.format, "jsonl|tsv")
        ->check(CLI::IsMember({"jsonl", "tsv"}));
    segment->add_option("--jobs", segment_args.jobs, "worker threads");
    segment->add_flag("--no-manifest", segment_args.no_manifest, "skip manifest emission");

    MergeArgs merge_args;
    auto* merge = app.add_subcommand("merge", "average overlapping window probabilities");
    merge->add_option("--chunks", merge_args.chunks_path, "per-window chunk JSONL")->required();
    merge->add_option("--window", merge_args.window_s, "window length (s)");
    merge->add_option("--overlap", merge_args.overlap_s, "window overlap (s)");
    merge->add_option("--out", merge_args.out_path, "merged probability file")->required();
    merge->add_flag("--no-manifest", merge_args.no_manifest, "skip manifest emission");

    LabelsArgs labels_args;
    auto* labels = app.add_subcommand("labels", "oracle segments -> training label windows");
    labels->add_option("--segments", labels_args.segments_path, "oracle segment file")
        ->required();
    labels->add_option("--audio-len", labels_args.audio_len_s, "audio length (s)")->required();
    labels->add_option("--stride-ms", labels_args.stride_ms, "frame stride (ms)");
    labels->add_option("--window", labels_args.window_s, "training window (s)");
    labels->add_option("--hop", labels_args.hop_s, "window hop (s), default = window");
    labels->add_option("--out", labels_args.out_path, "label JSONL to write")->required();
    labels->add_flag("--no-manifest", labels_args.no_manifest, "skip manifest emission");

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "oracle segments -> synthetic probabilities");
    synth->add_option("--segments", synth_args.segments_path, "oracle segment file")
        ->required();
    synth->add_option("--audio-len", synth_args.audio_len_s, "audio length (s)")->required();
    synth->add_option("--sigma", synth_args.sigma, "gaussian noise sigma");
    synth->add_option("--slope", synth_args.slope_frames, "boundary ramp (frames)");
    synth->add_option("--seed", synth_args.seed, "random seed");
    synth->add_option("--stride-ms", synth_args.stride_ms, "frame stride (ms)");
    synth->add_option("--out", synth_args.out_path, "probability file to write")->required();
    synth->add_flag("--no-manifest", synth_args.no_manifest, "skip manifest emission");

    StatsArgs stats_args;
    auto* stats = app.add_subcommand("stats", "segment duration statistics");
    stats->add_option("--segments", stats_args.segments_path, "segment file")->required();
    stats->add_option("--out", stats_args.out_path, "write report here instead of stdout");
    stats->add_flag("--per-audio", stats_args.per_audio, "include per-audio breakdown");

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "long-form evaluation metrics");
    eval->require_subcommand(1);
    std::vector<CLI::App*> eval_subs;
    for (const char* name : {"wer", "bleu", "punct-f1", "resegment"}) {
        auto* sub = eval->add_subcommand(name);
        sub->add_option("--ref", eval_args.ref_path, "reference text, one segment per line")
            ->required();
        sub->add_option("--hyp", eval_args.hyp_path, "hypothesis text")->required();
        sub->add_option("--report", eval_args.out_path, "write report JSON here");
        sub->add_flag("--no-manifest", eval_args.no_manifest, "skip manifest emission");
        eval_subs.push_back(sub);
    }
    eval_subs[2]->add_option("--marks", eval_args.marks, "punctuation marks to score");
    eval_subs[2]->add_flag("--macro-all", eval_args.macro_all,
                           "macro-average over all configured marks");
    eval_subs[3]->add_option("--out", eval_args.lines_path, "realigned hypothesis lines")
        ->required();

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "grid-sweep maxlen and score each point");
    sweep->add_option("--probs", sweep_args.probs_path, "probability file")->required();
    sweep->add_option("--algorithm", sweep_args.algorithm, "proposed|pdac|pthr|fixed")
        ->check(CLI::IsMember({"proposed", "pdac", "pthr", "fixed"}));
    sweep->add_option("--threshold", sweep_args.base.threshold, "binarization threshold");
    sweep->add_option("--min-len", sweep_args.base.minlen_s, "discard shorter (s)");
    sweep->add_option("--expand", sweep_args.base.expand_s, "boundary padding (s)");
    sweep->add_option("--max-lens", sweep_args.maxlens, "maxlen grid (s)")->delimiter(',');
    sweep->add_option("--thresholds", sweep_args.thresholds, "optional threshold grid")
        ->delimiter(',');
    sweep->add_option("--scorer-cmd", sweep_args.scorer_cmd,
                      "external scorer command with {} placeholder");
    sweep->add_option("--scorer", sweep_args.scorer, "builtin-wer|builtin-bleu")
        ->check(CLI::IsMember({"builtin-wer", "builtin-bleu"}));
    sweep->add_option("--ref", sweep_args.ref_path, "reference for builtin scorers");
    sweep->add_option("--hyp-dir", sweep_args.hyp_dir,
                      "directory with <config_id>.txt hypotheses");
    sweep->add_option("--objective", sweep_args.objective, "min|max")
        ->check(CLI::IsMember({"min", "max"}));
    sweep->add_option("--workdir", sweep_args.workdir, "where per-config files land");
    sweep->add_option("--timeout", sweep_args.timeout_s, "scorer timeout (s)");
    sweep->add_option("--jobs", sweep_args.jobs, "grid points in parallel");
    sweep->add_option("--out", sweep_args.out_path, "write report JSON here");
    sweep->add_flag("--json", sweep_args.print_json, "print JSON instead of the table");
    sweep->add_flag("--no-manifest", sweep_args.no_manifest, "skip manifest emission");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (segment->parsed()) return run_segment(segment_args);
        if (merge->parsed()) return run_merge(merge_args);
        if (labels->parsed()) return run_labels(labels_args);
        if (synth->parsed()) return run_synth(synth_args);
        if (stats->parsed()) return run_stats(stats_args);
        if (eval->parsed()) {
            for (std::size_t i = 0; i < eval_subs.size(); ++i) {
                if (eval_subs[i]->parsed()) {
                    static const char* names[] = {"wer", "bleu", "punct-f1", "resegment"};
                    return run_eval(names[i], eval_args);
                }
            }
        }
        if (sweep->parsed()) return run_sweep_cmd(sweep_args);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
