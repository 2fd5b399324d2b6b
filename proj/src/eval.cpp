#include "sentseg/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace sentseg {

namespace {

constexpr std::size_t kNoCost = std::numeric_limits<std::uint32_t>::max() / 2;

// Backpointer codes for the edit DP.
enum : std::uint8_t { kNone = 0, kMatch, kSubstitute, kDelete, kInsert };

}  // namespace

Tokens tokenize(std::string_view text) {
    Tokens tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t begin = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > begin) tokens.emplace_back(text.substr(begin, i - begin));
    }
    return tokens;
}

Alignment edit_distance(const Tokens& ref, const Tokens& hyp) {
    const std::size_t nr = ref.size();
    const std::size_t nh = hyp.size();
    if ((nr + 1) * (nh + 1) > (std::size_t{1} << 31)) {
        throw std::runtime_error("edit_distance: inputs too large to align");
    }

    // Full backpointer matrix, rolling cost rows.
    std::vector<std::uint8_t> bp((nr + 1) * (nh + 1), kNone);
    auto at = [nh](std::size_t i, std::size_t j) { return i * (nh + 1) + j; };

    std::vector<std::uint32_t> prev(nh + 1), cur(nh + 1);
    for (std::size_t j = 0; j <= nh; ++j) {
        prev[j] = static_cast<std::uint32_t>(j);
        if (j > 0) bp[at(0, j)] = kInsert;
    }
    for (std::size_t i = 1; i <= nr; ++i) {
        cur[0] = static_cast<std::uint32_t>(i);
        bp[at(i, 0)] = kDelete;
        for (std::size_t j = 1; j <= nh; ++j) {
            std::uint32_t best;
            std::uint8_t op;
            if (ref[i - 1] == hyp[j - 1]) {
                best = prev[j - 1];
                op = kMatch;
            } else {
                best = prev[j - 1] + 1;
                op = kSubstitute;
            }
            if (prev[j] + 1 < best) {
                best = prev[j] + 1;
                op = kDelete;
            }
            if (cur[j - 1] + 1 < best) {
                best = cur[j - 1] + 1;
                op = kInsert;
            }
            cur[j] = best;
            bp[at(i, j)] = op;
        }
        std::swap(prev, cur);
    }

    Alignment out;
    out.cost = prev[nh];
    std::size_t i = nr, j = nh;
    while (i > 0 || j > 0) {
        switch (bp[at(i, j)]) {
            case kMatch:
                out.ops.push_back({EditOpKind::match, static_cast<std::ptrdiff_t>(i - 1),
                                   static_cast<std::ptrdiff_t>(j - 1)});
                --i, --j;
                break;
            case kSubstitute:
                ++out.substitutions;
                out.ops.push_back({EditOpKind::substitute,
                                   static_cast<std::ptrdiff_t>(i - 1),
                                   static_cast<std::ptrdiff_t>(j - 1)});
                --i, --j;
                break;
            case kDelete:
                ++out.deletions;
                out.ops.push_back(
                    {EditOpKind::deletion, static_cast<std::ptrdiff_t>(i - 1), -1});
                --i;
                break;
            case kInsert:
                ++out.insertions;
                out.ops.push_back(
                    {EditOpKind::insertion, -1, static_cast<std::ptrdiff_t>(j - 1)});
                --j;
                break;
            default:
                throw std::logic_error("edit_distance: broken backtrace");
        }
    }
    std::reverse(out.ops.begin(), out.ops.end());
    return out;
}

WerReport wer(std::string_view ref_text, std::string_view hyp_text) {
    const Tokens ref = tokenize(ref_text);
    if (ref.empty()) {
        throw std::invalid_argument("wer: empty reference, the rate is undefined");
    }
    const Alignment a = edit_distance(ref, tokenize(hyp_text));
    WerReport report;
    report.substitutions = a.substitutions;
    report.deletions = a.deletions;
    report.insertions = a.insertions;
    report.reference_words = ref.size();
    report.wer = static_cast<double>(a.cost) / static_cast<double>(ref.size());
    return report;
}

WerReport wer_corpus(const std::vector<std::string>& ref_lines,
                     const std::vector<std::string>& hyp_lines) {
    if (ref_lines.size() != hyp_lines.size()) {
        throw std::invalid_argument("wer_corpus: line counts differ (" +
                                    std::to_string(ref_lines.size()) + " vs " +
                                    std::to_string(hyp_lines.size()) + ")");
    }
    WerReport report;
    for (std::size_t i = 0; i < ref_lines.size(); ++i) {
        const Tokens ref = tokenize(ref_lines[i]);
        const Alignment a = edit_distance(ref, tokenize(hyp_lines[i]));
        report.substitutions += a.substitutions;
        report.deletions += a.deletions;
        report.insertions += a.insertions;
        report.reference_words += ref.size();
    }
    if (report.reference_words == 0) {
        throw std::invalid_argument("wer_corpus: reference has no words");
    }
    report.wer = static_cast<double>(report.substitutions + report.deletions +
                                     report.insertions) /
                 static_cast<double>(report.reference_words);
    return report;
}

ResegmentResult resegment(const Tokens& hyp, const std::vector<Tokens>& ref_segments) {
    if (ref_segments.empty()) {
        throw std::invalid_argument("resegment: need at least one reference segment");
    }
    const std::size_t n = hyp.size();
    const std::size_t k_segments = ref_segments.size();

    // level_cost[j]: minimal cost of matching the first j hypothesis words to
    // the reference segments handled so far. span_start[k][j]: earliest start
    // of segment k's span in that optimum.
    std::vector<std::uint32_t> level_cost(n + 1, kNoCost);
    level_cost[0] = 0;
    std::vector<std::vector<std::uint32_t>> span_start(
        k_segments, std::vector<std::uint32_t>(n + 1, 0));

    std::vector<std::uint32_t> row_cost(n + 1), diag_cost(n + 1);
    std::vector<std::uint32_t> row_start(n + 1), diag_start(n + 1);

    for (std::size_t k = 0; k < k_segments; ++k) {
        const Tokens& ref = ref_segments[k];

        // Row 0: the span is still empty; either open it here (cost carried
        // over from the previous level) or extend it by inserting hyp words.
        row_cost[0] = level_cost[0];
        row_start[0] = 0;
        for (std::size_t j = 1; j <= n; ++j) {
            row_cost[j] = level_cost[j];
            row_start[j] = static_cast<std::uint32_t>(j);
            const std::uint32_t extend = row_cost[j - 1] + 1;
            if (extend < row_cost[j] ||
                (extend == row_cost[j] && row_start[j - 1] < row_start[j])) {
                row_cost[j] = extend;
                row_start[j] = row_start[j - 1];
            }
        }
        for (std::size_t r = 1; r <= ref.size(); ++r) {
            std::swap(diag_cost, row_cost);
            std::swap(diag_start, row_start);
            row_cost[0] = diag_cost[0] + 1;
            row_start[0] = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                const bool same = ref[r - 1] == hyp[j - 1];
                std::uint32_t best = diag_cost[j - 1] + (same ? 0 : 1);
                std::uint32_t start = diag_start[j - 1];
                const std::uint32_t del = diag_cost[j] + 1;
                if (del < best || (del == best && diag_start[j] < start)) {
                    best = del;
                    start = diag_start[j];
                }
                const std::uint32_t ins = row_cost[j - 1] + 1;
                if (ins < best || (ins == best && row_start[j - 1] < start)) {
                    best = ins;
                    start = row_start[j - 1];
                }
                row_cost[j] = best;
                row_start[j] = start;
            }
        }
        level_cost = row_cost;
        span_start[k] = row_start;
    }

    ResegmentResult result;
    result.total_cost = level_cost[n];
    result.spans.assign(k_segments, {0, 0});
    std::size_t end = n;
    for (std::size_t k = k_segments; k-- > 0;) {
        const std::size_t begin = span_start[k][end];
        result.spans[k] = {begin, end};
        end = begin;
    }
    return result;
}

namespace {

struct PunctToken {
    std::string core;   // lowercased, trailing marks removed
    std::string marks;  // unique trailing mark characters, in configured order
};

std::vector<PunctToken> punct_tokens(std::string_view text, const std::string& marks) {
    std::vector<PunctToken> out;
    for (auto& token : tokenize(text)) {
        std::string trailing;
        while (!token.empty() && marks.find(token.back()) != std::string::npos) {
            trailing.push_back(token.back());
            token.pop_back();
        }
        PunctToken pt;
        for (char m : marks) {
            if (trailing.find(m) != std::string::npos) pt.marks.push_back(m);
        }
        std::transform(token.begin(), token.end(), std::back_inserter(pt.core),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        out.push_back(std::move(pt));
    }
    return out;
}

double safe_ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double f1_of(double precision, double recall) {
    const double sum = precision + recall;
    return sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum;
}

}  // namespace

PunctReport punct_f1(std::string_view ref_text, std::string_view hyp_text,
                     const PunctOptions& options) {
    const auto ref = punct_tokens(ref_text, options.marks);
    const auto hyp = punct_tokens(hyp_text, options.marks);

    Tokens ref_cores, hyp_cores;
    ref_cores.reserve(ref.size());
    hyp_cores.reserve(hyp.size());
    for (const auto& t : ref) ref_cores.push_back(t.core);
    for (const auto& t : hyp) hyp_cores.push_back(t.core);
    const Alignment alignment = edit_distance(ref_cores, hyp_cores);

    PunctReport report;
    for (char m : options.marks) report.per_mark[std::string(1, m)] = {};

    auto count_marks = [&](const std::string& present_marks, bool is_ref,
                           const std::string& other_marks) {
        for (char m : present_marks) {
            auto& score = report.per_mark[std::string(1, m)];
            if (other_marks.find(m) != std::string::npos) {
                // Counted once, from the reference side.
                if (is_ref) ++score.tp;
            } else {
                if (is_ref)
                    ++score.fn;
                else
                    ++score.fp;
            }
        }
    };

    for (const auto& op : alignment.ops) {
        switch (op.kind) {
            case EditOpKind::match:
            case EditOpKind::substitute: {
                const auto& r = ref[static_cast<std::size_t>(op.ref_index)];
                const auto& h = hyp[static_cast<std::size_t>(op.hyp_index)];
                count_marks(r.marks, true, h.marks);
                count_marks(h.marks, false, r.marks);
                break;
            }
            case EditOpKind::deletion:
                count_marks(ref[static_cast<std::size_t>(op.ref_index)].marks, true, "");
                break;
            case EditOpKind::insertion:
                count_marks(hyp[static_cast<std::size_t>(op.hyp_index)].marks, false, "");
                break;
        }
    }

    std::size_t tp_sum = 0, fp_sum = 0, fn_sum = 0;
    std::size_t macro_n = 0;
    for (auto& [mark, score] : report.per_mark) {
        score.precision = safe_ratio(score.tp, score.tp + score.fp);
        score.recall = safe_ratio(score.tp, score.tp + score.fn);
        score.f1 = f1_of(score.precision, score.recall);
        tp_sum += score.tp;
        fp_sum += score.fp;
        fn_sum += score.fn;
        if (options.macro_over_all_marks || score.tp + score.fp + score.fn > 0) {
            report.macro_precision += score.precision;
            report.macro_recall += score.recall;
            report.macro_f1 += score.f1;
            ++macro_n;
        }
    }
    if (macro_n > 0) {
        report.macro_precision /= static_cast<double>(macro_n);
        report.macro_recall /= static_cast<double>(macro_n);
        report.macro_f1 /= static_cast<double>(macro_n);
    }
    report.micro_precision = safe_ratio(tp_sum, tp_sum + fp_sum);
    report.micro_recall = safe_ratio(tp_sum, tp_sum + fn_sum);
    report.micro_f1 = f1_of(report.micro_precision, report.micro_recall);
    return report;
}

BleuReport bleu(const std::vector<std::string>& ref_lines,
                const std::vector<std::string>& hyp_lines) {
    if (ref_lines.size() != hyp_lines.size()) {
        throw std::invalid_argument("bleu: line counts differ (" +
                                    std::to_string(ref_lines.size()) + " vs " +
                                    std::to_string(hyp_lines.size()) + ")");
    }
    constexpr int kMaxOrder = 4;
    std::array<std::size_t, kMaxOrder> correct{}, total{};
    BleuReport report;

    auto ngram_counts = [](const Tokens& tokens, int n) {
        std::unordered_map<std::string, std::size_t> counts;
        if (static_cast<int>(tokens.size()) < n) return counts;
        for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
            std::string key;
            for (int g = 0; g < n; ++g) {
                if (g) key.push_back('\x1f');
                key += tokens[i + static_cast<std::size_t>(g)];
            }
            ++counts[key];
        }
        return counts;
    };

    for (std::size_t line = 0; line < ref_lines.size(); ++line) {
        const Tokens ref = tokenize(ref_lines[line]);
        const Tokens hyp = tokenize(hyp_lines[line]);
        report.ref_len += ref.size();
        report.hyp_len += hyp.size();
        for (int n = 1; n <= kMaxOrder; ++n) {
            if (static_cast<int>(hyp.size()) < n) continue;
            total[static_cast<std::size_t>(n - 1)] += hyp.size() - static_cast<std::size_t>(n) + 1;
            const auto ref_counts = ngram_counts(ref, n);
            for (const auto& [gram, count] : ngram_counts(hyp, n)) {
                const auto it = ref_counts.find(gram);
                if (it != ref_counts.end()) {
                    correct[static_cast<std::size_t>(n - 1)] += std::min(count, it->second);
                }
            }
        }
    }

    if (report.hyp_len == 0) {
        report.brevity_penalty = 0.0;
        return report;
    }
    double log_sum = 0.0;
    int used = 0;
    std::size_t smooth = 1;
    for (int n = 0; n < kMaxOrder; ++n) {
        const auto idx = static_cast<std::size_t>(n);
        if (total[idx] == 0) continue;  // corpus has no n-grams of this order
        double precision;
        if (correct[idx] == 0) {
            smooth *= 2;  // mteval-style exponential smoothing
            precision = 1.0 / (static_cast<double>(smooth) * static_cast<double>(total[idx]));
        } else {
            precision = static_cast<double>(correct[idx]) / static_cast<double>(total[idx]);
        }
        report.precisions[idx] = precision;
        log_sum += std::log(precision);
        ++used;
    }
    report.brevity_penalty =
        report.hyp_len >= report.ref_len
            ? 1.0
            : std::exp(1.0 - static_cast<double>(report.ref_len) /
                                 static_cast<double>(report.hyp_len));
    if (used > 0) {
        report.bleu = 100.0 * report.brevity_penalty * std::exp(log_sum / used);
    }
    return report;
}

}  // namespace sentseg
