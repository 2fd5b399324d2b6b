#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sentseg/stats.hpp"
#include "sentseg/types.hpp"

namespace sentseg {

enum class Objective { minimize, maximize };

struct ScorerSpec {
    enum class Kind { builtin_wer, builtin_bleu, external };
    Kind kind = Kind::external;
    // External: shell command with a "{}" placeholder for the segment file
    // path; the metric is parsed from the last line it prints.
    std::string command;
    double timeout_s = 300.0;
    // Builtin scorers: reference lines file, and a directory expected to hold
    // one hypothesis text per configuration, named <config_id>.txt. The
    // hypothesis is realigned to the reference lines before scoring.
    std::string ref_path;
    std::string hyp_dir;
};

struct SweepConfig {
    std::vector<double> maxlens{8.0, 10.0, 15.0, 20.0, 30.0};
    std::vector<double> thresholds;  // empty: use the base config's threshold
    ScorerSpec scorer;
    Objective objective = Objective::minimize;
    std::string workdir;    // segment files land here, one per configuration
    std::size_t jobs = 1;   // grid points evaluated in parallel
};

struct SweepRow {
    std::string config_id;  // "maxlen<v>" or "maxlen<v>_thr<v>"
    double maxlen_s = 0.0;
    double threshold = 0.0;
    std::string segments_path;
    SegmentStats stats;                 // pooled over the whole corpus
    std::optional<double> metric;
    std::optional<std::string> error;   // scorer failure; row excluded from best
};

struct SweepReport {
    std::vector<SweepRow> rows;
    std::optional<std::size_t> best_index;
    Objective objective = Objective::minimize;
};

// Stable identifier for one grid point, used for file names.
std::string sweep_config_id(double maxlen_s, std::optional<double> threshold);

// Runs the command template (placeholder replaced by segment_file) through
// /bin/sh in workdir and parses one decimal number from the last non-empty
// line of its standard output. Throws std::runtime_error on timeout, non-zero
// exit, or unparsable output.
double external_scorer(const std::string& command_template,
                       const std::string& segment_file, const std::string& workdir,
                       double timeout_s = 300.0);

// Segments the corpus once per grid point, writes the segment file, invokes
// the scorer and collects metric plus duration statistics. Rows keep the
// grid order (thresholds outer, maxlens inner); the best row is chosen per
// objective with ties going to the smaller maxlen, then smaller threshold.
SweepReport run_sweep(const std::vector<FrameProbabilities>& corpus,
                      const SegmenterConfig& base, const SweepConfig& sweep);

// Plain-text table of the report rows.
std::string format_sweep_table(const SweepReport& report);

}  // namespace sentseg
