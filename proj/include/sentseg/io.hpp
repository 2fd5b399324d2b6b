#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sentseg/chunker.hpp"
#include "sentseg/eval.hpp"
#include "sentseg/segmenters.hpp"
#include "sentseg/stats.hpp"
#include "sentseg/sweep.hpp"
#include "sentseg/types.hpp"

namespace sentseg {

using json = nlohmann::json;

// ---- plain text -----------------------------------------------------------

std::vector<std::string> read_lines(const std::string& path);
void write_lines(const std::string& path, const std::vector<std::string>& lines);

// ---- probability files ----------------------------------------------------
//
// JSONL form: one {"audio_id", "stride_ms", "probs": [...]} object per line.
// Raw form (path ending in .f32): little-endian IEEE-754 32-bit floats plus a
// {"audio_id", "stride_ms", "num_frames"} sidecar at <path>.json; one audio
// per raw file. Values round-trip bit-exactly through both forms.

std::vector<FrameProbabilities> read_probs_file(const std::string& path);
void write_probs_file(const std::string& path,
                      const std::vector<FrameProbabilities>& streams);

// ---- segment files --------------------------------------------------------
//
// JSONL form: {"audio_id", "start", "end"} per line, times with 3 decimal
// places. TSV form: audio_id <tab> start <tab> end. Either form is accepted
// on input (detected per line); records are grouped by audio_id in order of
// first appearance and sorted by start time.

enum class SegmentFileFormat { jsonl, tsv };

std::vector<SegmentSet> read_segments_file(const std::string& path);
void write_segments_file(const std::string& path, const std::vector<SegmentSet>& sets,
                         SegmentFileFormat format = SegmentFileFormat::jsonl);

// ---- window chunk files ---------------------------------------------------
//
// Per-window model outputs awaiting merge: one JSONL record
// {"audio_id", "stride_ms", "window_start", "probs": [...]} per window.

struct WindowProbs {
    std::string audio_id;
    double stride_s = 0.04;
    double window_start_s = 0.0;
    std::vector<float> probs;
};

std::vector<WindowProbs> read_chunks_file(const std::string& path);
void write_chunks_file(const std::string& path, const std::vector<WindowProbs>& chunks);

// ---- label and trace export ----------------------------------------------

// {"audio_id", "window_start", "stride_ms", "labels": [...], "valid": n}
std::string label_window_line(const std::string& audio_id, double stride_s,
                              const TrainingWindow& window);

// {"audio_id", "seg_start", "seg_end", "t_hat_s", "p_min"}
std::string trace_line(const std::string& audio_id, const SplitPoint& point);

// ---- report JSON ----------------------------------------------------------

json to_json(const SegmentStats& stats);
json to_json(const WerReport& report);
json to_json(const PunctReport& report);
json to_json(const BleuReport& report);
json to_json(const SweepReport& report);

SegmentStats stats_from_json(const json& j);
WerReport wer_report_from_json(const json& j);
PunctReport punct_report_from_json(const json& j);
BleuReport bleu_report_from_json(const json& j);
SweepReport sweep_report_from_json(const json& j);

}  // namespace sentseg
