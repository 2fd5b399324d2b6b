#include "sentseg/sweep.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sentseg/eval.hpp"
#include "sentseg/io.hpp"
#include "sentseg/segmenters.hpp"

namespace sentseg {

namespace {

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", value);
    return buf;
}

// Runs `sh -c command` in workdir, captures stdout, enforces the deadline.
std::string run_command(const std::string& command, const std::string& workdir,
                        double timeout_s, int& exit_code) {
    int pipe_fds[2];
    if (pipe(pipe_fds) != 0) {
        throw std::runtime_error("external scorer: pipe() failed");
    }
    const pid_t pid = fork();
    if (pid < 0) {
        close(pipe_fds[0]);
        close(pipe_fds[1]);
        throw std::runtime_error("external scorer: fork() failed");
    }
    if (pid == 0) {
        close(pipe_fds[0]);
        dup2(pipe_fds[1], STDOUT_FILENO);
        close(pipe_fds[1]);
        if (!workdir.empty() && chdir(workdir.c_str()) != 0) _exit(127);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(pipe_fds[1]);

    std::string output;
    const auto deadline =
        std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_s);
    bool timed_out = false;
    char buf[4096];
    for (;;) {
        const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
            deadline - std::chrono::steady_clock::now());
        if (remaining.count() <= 0) {
            timed_out = true;
            break;
        }
        struct pollfd pfd = {pipe_fds[0], POLLIN, 0};
        const int ready = poll(&pfd, 1, static_cast<int>(remaining.count()));
        if (ready < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (ready == 0) {
            timed_out = true;
            break;
        }
        const ssize_t n = read(pipe_fds[0], buf, sizeof(buf));
        if (n <= 0) break;  // EOF or error
        output.append(buf, static_cast<std::size_t>(n));
    }
    close(pipe_fds[0]);

    if (timed_out) {
        kill(pid, SIGKILL);
        waitpid(pid, nullptr, 0);
        throw std::runtime_error("external scorer: timed out after " +
                                 format_number(timeout_s) + " s");
    }
    int status = 0;
    waitpid(pid, &status, 0);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    return output;
}

std::string last_nonempty_line(const std::string& text) {
    std::size_t end = text.size();
    while (end > 0) {
        std::size_t begin = text.find_last_of('\n', end - 1);
        const std::size_t line_begin = begin == std::string::npos ? 0 : begin + 1;
        std::string line = text.substr(line_begin, end - line_begin);
        if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
        if (begin == std::string::npos) break;
        end = begin;
    }
    return "";
}

double score_with_builtin(const ScorerSpec& scorer, const std::string& config_id) {
    const std::string hyp_path =
        (std::filesystem::path(scorer.hyp_dir) / (config_id + ".txt")).string();
    const std::vector<std::string> ref_lines = read_lines(scorer.ref_path);
    const std::vector<std::string> hyp_lines = read_lines(hyp_path);

    // Long-form hypotheses carry no line alignment; realign to the reference
    // segmentation before scoring.
    Tokens hyp_tokens;
    for (const auto& line : hyp_lines) {
        for (auto& token : tokenize(line)) hyp_tokens.push_back(std::move(token));
    }
    std::vector<Tokens> ref_segments;
    ref_segments.reserve(ref_lines.size());
    for (const auto& line : ref_lines) ref_segments.push_back(tokenize(line));
    const ResegmentResult aligned = resegment(hyp_tokens, ref_segments);

    std::vector<std::string> realigned(ref_lines.size());
    for (std::size_t k = 0; k < aligned.spans.size(); ++k) {
        std::string joined;
        for (std::size_t i = aligned.spans[k].first; i < aligned.spans[k].second; ++i) {
            if (!joined.empty()) joined.push_back(' ');
            joined += hyp_tokens[i];
        }
        realigned[k] = std::move(joined);
    }
    if (scorer.kind == ScorerSpec::Kind::builtin_wer) {
        return wer_corpus(ref_lines, realigned).wer;
    }
    return bleu(ref_lines, realigned).bleu;
}

}  // namespace

std::string sweep_config_id(double maxlen_s, std::optional<double> threshold) {
    std::string id = "maxlen" + format_number(maxlen_s);
    if (threshold) id += "_thr" + format_number(*threshold);
    return id;
}

double external_scorer(const std::string& command_template,
                       const std::string& segment_file, const std::string& workdir,
                       double timeout_s) {
    const std::size_t placeholder = command_template.find("{}");
    if (placeholder == std::string::npos) {
        throw std::invalid_argument("external scorer command needs a {} placeholder");
    }
    std::string command = command_template;
    command.replace(placeholder, 2, segment_file);

    int exit_code = 0;
    const std::string output = run_command(command, workdir, timeout_s, exit_code);
    if (exit_code != 0) {
        throw std::runtime_error("external scorer exited with code " +
                                 std::to_string(exit_code));
    }
    const std::string line = last_nonempty_line(output);
    try {
        std::size_t used = 0;
        const double value = std::stod(line, &used);
        if (line.find_first_not_of(" \t\r", used) != std::string::npos) {
            throw std::invalid_argument("trailing characters");
        }
        return value;
    } catch (const std::exception&) {
        throw std::runtime_error("external scorer printed no parsable metric, last line: \"" +
                                 line + "\"");
    }
}

SweepReport run_sweep(const std::vector<FrameProbabilities>& corpus,
                      const SegmenterConfig& base, const SweepConfig& sweep) {
    if (sweep.maxlens.empty()) {
        throw std::invalid_argument("run_sweep: empty maxlen grid");
    }
    for (double maxlen : sweep.maxlens) {
        if (maxlen <= base.minlen_s) {
            throw std::invalid_argument("run_sweep: maxlen " + format_number(maxlen) +
                                        " not above minlen " + format_number(base.minlen_s));
        }
    }
    std::filesystem::create_directories(sweep.workdir);
    // Scorers run with the workdir as their cwd; hand them absolute paths so
    // the placeholder works no matter where the sweep was launched from.
    const std::string workdir = std::filesystem::absolute(sweep.workdir).string();

    struct GridPoint {
        double maxlen;
        std::optional<double> threshold;
    };
    std::vector<GridPoint> grid;
    if (sweep.thresholds.empty()) {
        for (double maxlen : sweep.maxlens) grid.push_back({maxlen, std::nullopt});
    } else {
        for (double threshold : sweep.thresholds) {
            for (double maxlen : sweep.maxlens) grid.push_back({maxlen, threshold});
        }
    }

    SweepReport report;
    report.objective = sweep.objective;
    report.rows.resize(grid.size());

    // Segmentation fans out freely; external scorer runs share the workdir
    // and are serialized so scorers that drop scratch files there can't
    // collide.
    std::mutex scorer_mutex;

    auto evaluate_row = [&](std::size_t index) {
        const GridPoint& point = grid[index];
        SweepRow& row = report.rows[index];
        row.maxlen_s = point.maxlen;
        row.threshold = point.threshold.value_or(base.threshold);
        row.config_id = sweep_config_id(point.maxlen, point.threshold);
        row.segments_path =
            (std::filesystem::path(workdir) / (row.config_id + ".segments.jsonl"))
                .string();

        SegmenterConfig config = base;
        config.maxlen_s = point.maxlen;
        if (point.threshold) config.threshold = *point.threshold;

        std::vector<SegmentSet> sets;
        std::vector<double> durations;
        sets.reserve(corpus.size());
        for (const auto& probs : corpus) {
            SegmentSet set = run_segmenter(probs, config).segments;
            for (const auto& seg : set.segments) durations.push_back(seg.duration_s());
            sets.push_back(std::move(set));
        }
        write_segments_file(row.segments_path, sets, SegmentFileFormat::jsonl);
        row.stats = duration_stats(std::move(durations));

        try {
            if (sweep.scorer.kind == ScorerSpec::Kind::external) {
                std::lock_guard<std::mutex> lock(scorer_mutex);
                row.metric = external_scorer(sweep.scorer.command, row.segments_path,
                                             workdir, sweep.scorer.timeout_s);
            } else {
                row.metric = score_with_builtin(sweep.scorer, row.config_id);
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    };

    const std::size_t jobs = std::max<std::size_t>(1, sweep.jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) evaluate_row(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        for (std::size_t w = 0; w < std::min(jobs, grid.size()); ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < grid.size();
                     i = next.fetch_add(1)) {
                    evaluate_row(i);
                }
            });
        }
        for (auto& worker : workers) worker.join();
    }

    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const SweepRow& row = report.rows[i];
        if (!row.metric) continue;
        if (!report.best_index) {
            report.best_index = i;
            continue;
        }
        const SweepRow& best = report.rows[*report.best_index];
        const bool better = sweep.objective == Objective::minimize
                                ? *row.metric < *best.metric
                                : *row.metric > *best.metric;
        const bool tie = *row.metric == *best.metric;
        if (better || (tie && (row.maxlen_s < best.maxlen_s ||
                               (row.maxlen_s == best.maxlen_s &&
                                row.threshold < best.threshold)))) {
            report.best_index = i;
        }
    }
    return report;
}

std::string format_sweep_table(const SweepReport& report) {
    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-24s %8s %10s %8s %10s %10s  %s\n", "config",
                  "maxlen", "threshold", "count", "mean_s", "metric", "note");
    out << buf;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const SweepRow& row = report.rows[i];
        std::string metric = row.metric ? format_number(*row.metric) : "-";
        std::string note;
        if (row.error) note = "error: " + *row.error;
        if (report.best_index && *report.best_index == i) note = "best";
        std::snprintf(buf, sizeof(buf), "%-24s %8g %10g %8zu %10s %10s  %s\n",
                      row.config_id.c_str(), row.maxlen_s, row.threshold, row.stats.count,
                      row.stats.mean_s ? format_number(*row.stats.mean_s).c_str() : "-",
                      metric.c_str(), note.c_str());
        out << buf;
    }
    return out.str();
}

}  // namespace sentseg
