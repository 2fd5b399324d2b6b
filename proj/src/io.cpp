#include "sentseg/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace sentseg {

namespace {

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
    std::ifstream in(path, mode);
    if (!in) throw std::runtime_error("cannot open " + path + " for reading");
    return in;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(path, mode);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    return out;
}

std::string fixed3(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", value);
    return buf;
}

int stride_to_ms(double stride_s) {
    const double ms = stride_s * 1000.0;
    const double rounded = std::round(ms);
    if (std::abs(ms - rounded) > 1e-6 || rounded <= 0.0) {
        throw std::invalid_argument(
            "stride must be a whole number of milliseconds for file export, got " +
            std::to_string(stride_s) + " s");
    }
    return static_cast<int>(rounded);
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

json parse_json_line(const std::string& line, const std::string& path, std::size_t lineno) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": invalid JSON");
    }
    return j;
}

std::vector<FrameProbabilities> read_probs_raw(const std::string& path) {
    const std::string sidecar_path = path + ".json";
    const json sidecar = json::parse(open_in(sidecar_path));
    const std::string audio_id = sidecar.at("audio_id").get<std::string>();
    const double stride_s = sidecar.at("stride_ms").get<double>() / 1000.0;
    const std::size_t num_frames = sidecar.at("num_frames").get<std::size_t>();

    auto in = open_in(path, std::ios::binary);
    std::vector<unsigned char> bytes(num_frames * 4);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
        throw std::runtime_error(path + ": expected " + std::to_string(num_frames) +
                                 " frames, file is shorter");
    }
    std::vector<float> probs(num_frames);
    for (std::size_t i = 0; i < num_frames; ++i) {
        const std::uint32_t word = static_cast<std::uint32_t>(bytes[4 * i]) |
                                   static_cast<std::uint32_t>(bytes[4 * i + 1]) << 8 |
                                   static_cast<std::uint32_t>(bytes[4 * i + 2]) << 16 |
                                   static_cast<std::uint32_t>(bytes[4 * i + 3]) << 24;
        probs[i] = std::bit_cast<float>(word);
    }
    std::vector<FrameProbabilities> out;
    out.push_back(validate_probs(std::move(probs), stride_s, audio_id));
    return out;
}

void write_probs_raw(const std::string& path, const FrameProbabilities& stream) {
    auto out = open_out(path, std::ios::binary);
    for (float p : stream.probs) {
        const auto word = std::bit_cast<std::uint32_t>(p);
        const unsigned char bytes[4] = {
            static_cast<unsigned char>(word & 0xff),
            static_cast<unsigned char>(word >> 8 & 0xff),
            static_cast<unsigned char>(word >> 16 & 0xff),
            static_cast<unsigned char>(word >> 24 & 0xff),
        };
        out.write(reinterpret_cast<const char*>(bytes), 4);
    }
    json sidecar;
    sidecar["audio_id"] = stream.audio_id;
    sidecar["stride_ms"] = stride_to_ms(stream.stride_s);
    sidecar["num_frames"] = stream.probs.size();
    open_out(path + ".json") << sidecar.dump() << '\n';
}

}  // namespace

std::vector<std::string> read_lines(const std::string& path) {
    auto in = open_in(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
    auto out = open_out(path);
    for (const auto& line : lines) out << line << '\n';
}

std::vector<FrameProbabilities> read_probs_file(const std::string& path) {
    if (ends_with(path, ".f32") || std::filesystem::exists(path + ".json")) {
        return read_probs_raw(path);
    }
    auto in = open_in(path);
    std::vector<FrameProbabilities> streams;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const json j = parse_json_line(line, path, lineno);
        streams.push_back(validate_probs(j.at("probs").get<std::vector<float>>(),
                                         j.at("stride_ms").get<double>() / 1000.0,
                                         j.at("audio_id").get<std::string>()));
    }
    return streams;
}

void write_probs_file(const std::string& path,
                      const std::vector<FrameProbabilities>& streams) {
    if (ends_with(path, ".f32")) {
        if (streams.size() != 1) {
            throw std::invalid_argument("raw probability files hold exactly one audio; got " +
                                        std::to_string(streams.size()));
        }
        write_probs_raw(path, streams.front());
        return;
    }
    auto out = open_out(path);
    for (const auto& stream : streams) {
        json j;
        j["audio_id"] = stream.audio_id;
        j["stride_ms"] = stride_to_ms(stream.stride_s);
        j["probs"] = stream.probs;
        out << j.dump() << '\n';
    }
}

std::vector<SegmentSet> read_segments_file(const std::string& path) {
    auto in = open_in(path);
    std::vector<SegmentSet> sets;
    std::unordered_map<std::string, std::size_t> index_of;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::string audio_id;
        Segment seg;
        if (line.front() == '{') {
            const json j = parse_json_line(line, path, lineno);
            audio_id = j.at("audio_id").get<std::string>();
            seg.start_s = j.at("start").get<double>();
            seg.end_s = j.at("end").get<double>();
        } else {
            std::istringstream fields(line);
            if (!(fields >> audio_id >> seg.start_s >> seg.end_s)) {
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": expected audio_id <tab> start <tab> end");
            }
        }
        auto [it, inserted] = index_of.try_emplace(audio_id, sets.size());
        if (inserted) {
            sets.push_back(SegmentSet{audio_id, {}, std::nullopt});
        }
        sets[it->second].segments.push_back(seg);
    }
    for (auto& set : sets) {
        std::sort(set.segments.begin(), set.segments.end(),
                  [](const Segment& a, const Segment& b) { return a.start_s < b.start_s; });
        validate(set);
    }
    return sets;
}

void write_segments_file(const std::string& path, const std::vector<SegmentSet>& sets,
                         SegmentFileFormat format) {
    auto out = open_out(path);
    for (const auto& set : sets) {
        for (const auto& seg : set.segments) {
            if (format == SegmentFileFormat::tsv) {
                out << set.audio_id << '\t' << fixed3(seg.start_s) << '\t'
                    << fixed3(seg.end_s) << '\n';
            } else {
                out << "{\"audio_id\":" << json(set.audio_id).dump()
                    << ",\"start\":" << fixed3(seg.start_s)
                    << ",\"end\":" << fixed3(seg.end_s) << "}\n";
            }
        }
    }
}

std::vector<WindowProbs> read_chunks_file(const std::string& path) {
    auto in = open_in(path);
    std::vector<WindowProbs> chunks;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const json j = parse_json_line(line, path, lineno);
        WindowProbs wp;
        wp.audio_id = j.at("audio_id").get<std::string>();
        wp.stride_s = j.at("stride_ms").get<double>() / 1000.0;
        wp.window_start_s = j.at("window_start").get<double>();
        wp.probs = j.at("probs").get<std::vector<float>>();
        chunks.push_back(std::move(wp));
    }
    return chunks;
}

void write_chunks_file(const std::string& path, const std::vector<WindowProbs>& chunks) {
    auto out = open_out(path);
    for (const auto& chunk : chunks) {
        json j;
        j["audio_id"] = chunk.audio_id;
        j["stride_ms"] = stride_to_ms(chunk.stride_s);
        j["window_start"] = chunk.window_start_s;
        j["probs"] = chunk.probs;
        out << j.dump() << '\n';
    }
}

std::string label_window_line(const std::string& audio_id, double stride_s,
                              const TrainingWindow& window) {
    json j;
    j["audio_id"] = audio_id;
    j["window_start"] = window.window.start_s;
    j["stride_ms"] = stride_to_ms(stride_s);
    j["labels"] = window.labels;
    j["valid"] = window.valid_frames;
    return j.dump();
}

std::string trace_line(const std::string& audio_id, const SplitPoint& point) {
    json j;
    j["audio_id"] = audio_id;
    j["seg_start"] = point.seg_start_s;
    j["seg_end"] = point.seg_end_s;
    j["t_hat_s"] = point.t_hat_s;
    j["p_min"] = point.p_min;
    return j.dump();
}

// ---- report JSON ----------------------------------------------------------

namespace {

void put_optional(json& j, const char* key, const std::optional<double>& value) {
    if (value) j[key] = *value;
}

std::optional<double> get_optional(const json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    return j.at(key).get<double>();
}

}  // namespace

json to_json(const SegmentStats& stats) {
    json j;
    j["count"] = stats.count;
    j["total_s"] = stats.total_s;
    put_optional(j, "mean_s", stats.mean_s);
    put_optional(j, "min_s", stats.min_s);
    put_optional(j, "max_s", stats.max_s);
    put_optional(j, "p50_s", stats.p50_s);
    put_optional(j, "p90_s", stats.p90_s);
    put_optional(j, "p99_s", stats.p99_s);
    j["histogram_1s"] = stats.histogram;
    return j;
}

SegmentStats stats_from_json(const json& j) {
    SegmentStats stats;
    stats.count = j.at("count").get<std::size_t>();
    stats.total_s = j.at("total_s").get<double>();
    stats.mean_s = get_optional(j, "mean_s");
    stats.min_s = get_optional(j, "min_s");
    stats.max_s = get_optional(j, "max_s");
    stats.p50_s = get_optional(j, "p50_s");
    stats.p90_s = get_optional(j, "p90_s");
    stats.p99_s = get_optional(j, "p99_s");
    stats.histogram = j.at("histogram_1s").get<std::vector<std::size_t>>();
    return stats;
}

json to_json(const WerReport& report) {
    return json{{"substitutions", report.substitutions},
                {"deletions", report.deletions},
                {"insertions", report.insertions},
                {"reference_words", report.reference_words},
                {"wer", report.wer}};
}

WerReport wer_report_from_json(const json& j) {
    WerReport report;
    report.substitutions = j.at("substitutions").get<std::size_t>();
    report.deletions = j.at("deletions").get<std::size_t>();
    report.insertions = j.at("insertions").get<std::size_t>();
    report.reference_words = j.at("reference_words").get<std::size_t>();
    report.wer = j.at("wer").get<double>();
    return report;
}

json to_json(const PunctReport& report) {
    json marks = json::object();
    for (const auto& [mark, score] : report.per_mark) {
        marks[mark] = json{{"tp", score.tp},           {"fp", score.fp},
                           {"fn", score.fn},           {"precision", score.precision},
                           {"recall", score.recall},   {"f1", score.f1}};
    }
    return json{{"per_mark", marks},
                {"macro", json{{"precision", report.macro_precision},
                               {"recall", report.macro_recall},
                               {"f1", report.macro_f1}}},
                {"micro", json{{"precision", report.micro_precision},
                               {"recall", report.micro_recall},
                               {"f1", report.micro_f1}}}};
}

PunctReport punct_report_from_json(const json& j) {
    PunctReport report;
    for (const auto& [mark, s] : j.at("per_mark").items()) {
        MarkScore score;
        score.tp = s.at("tp").get<std::size_t>();
        score.fp = s.at("fp").get<std::size_t>();
        score.fn = s.at("fn").get<std::size_t>();
        score.precision = s.at("precision").get<double>();
        score.recall = s.at("recall").get<double>();
        score.f1 = s.at("f1").get<double>();
        report.per_mark[mark] = score;
    }
    report.macro_precision = j.at("macro").at("precision").get<double>();
    report.macro_recall = j.at("macro").at("recall").get<double>();
    report.macro_f1 = j.at("macro").at("f1").get<double>();
    report.micro_precision = j.at("micro").at("precision").get<double>();
    report.micro_recall = j.at("micro").at("recall").get<double>();
    report.micro_f1 = j.at("micro").at("f1").get<double>();
    return report;
}

json to_json(const BleuReport& report) {
    return json{{"bleu", report.bleu},
                {"precisions", report.precisions},
                {"brevity_penalty", report.brevity_penalty},
                {"hyp_len", report.hyp_len},
                {"ref_len", report.ref_len}};
}

BleuReport bleu_report_from_json(const json& j) {
    BleuReport report;
    report.bleu = j.at("bleu").get<double>();
    report.precisions = j.at("precisions").get<std::array<double, 4>>();
    report.brevity_penalty = j.at("brevity_penalty").get<double>();
    report.hyp_len = j.at("hyp_len").get<std::size_t>();
    report.ref_len = j.at("ref_len").get<std::size_t>();
    return report;
}

json to_json(const SweepReport& report) {
    json rows = json::array();
    for (const auto& row : report.rows) {
        json r;
        r["config_id"] = row.config_id;
        r["maxlen_s"] = row.maxlen_s;
        r["threshold"] = row.threshold;
        r["segments_path"] = row.segments_path;
        r["stats"] = to_json(row.stats);
        if (row.metric) r["metric"] = *row.metric;
        if (row.error) r["error"] = *row.error;
        rows.push_back(std::move(r));
    }
    json j;
    j["objective"] = report.objective == Objective::minimize ? "minimize" : "maximize";
    j["rows"] = rows;
    if (report.best_index) {
        j["best_index"] = *report.best_index;
        j["best_config_id"] = report.rows[*report.best_index].config_id;
    }
    return j;
}

SweepReport sweep_report_from_json(const json& j) {
    SweepReport report;
    report.objective = j.at("objective").get<std::string>() == "maximize"
                           ? Objective::maximize
                           : Objective::minimize;
    for (const auto& r : j.at("rows")) {
        SweepRow row;
        row.config_id = r.at("config_id").get<std::string>();
        row.maxlen_s = r.at("maxlen_s").get<double>();
        row.threshold = r.at("threshold").get<double>();
        row.segments_path = r.at("segments_path").get<std::string>();
        row.stats = stats_from_json(r.at("stats"));
        if (r.contains("metric")) row.metric = r.at("metric").get<double>();
        if (r.contains("error")) row.error = r.at("error").get<std::string>();
        report.rows.push_back(std::move(row));
    }
    if (j.contains("best_index")) report.best_index = j.at("best_index").get<std::size_t>();
    return report;
}

}  // namespace sentseg
