#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sentseg {

using Tokens = std::vector<std::string>;

// Whitespace tokenization (any run of spaces/tabs/newlines separates tokens).
Tokens tokenize(std::string_view text);

enum class EditOpKind { match, substitute, insertion, deletion };

// One alignment step; ref_index / hyp_index is -1 on the side the op does not
// touch (insert has no ref token, delete no hyp token).
struct EditOp {
    EditOpKind kind;
    std::ptrdiff_t ref_index;
    std::ptrdiff_t hyp_index;
};

struct Alignment {
    std::size_t cost = 0;  // substitutions + insertions + deletions
    std::size_t substitutions = 0;
    std::size_t insertions = 0;
    std::size_t deletions = 0;
    std::vector<EditOp> ops;
};

// Unit-cost Levenshtein alignment. When several paths are minimal the
// backtrace prefers match > substitute > delete > insert, which makes the
// operation list deterministic.
Alignment edit_distance(const Tokens& ref, const Tokens& hyp);

struct WerReport {
    std::size_t substitutions = 0;
    std::size_t deletions = 0;
    std::size_t insertions = 0;
    std::size_t reference_words = 0;
    double wer = 0.0;  // (S + D + I) / reference_words
};

// WER over whitespace tokens. Throws std::invalid_argument when the reference
// has no tokens (the rate is undefined).
WerReport wer(std::string_view ref_text, std::string_view hyp_text);

// Line-aligned corpus WER: counts are accumulated over pairs and divided
// once. Throws on line-count mismatch or an all-empty reference.
WerReport wer_corpus(const std::vector<std::string>& ref_lines,
                     const std::vector<std::string>& hyp_lines);

struct ResegmentResult {
    // One [begin, end) token span per reference segment; spans are contiguous
    // and may be empty.
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    std::size_t total_cost = 0;
};

// Partitions hyp into one contiguous span per reference segment so that the
// summed edit distance between each reference and its span is minimal
// (the long-form realignment step usually done with mwerSegmenter). Among
// minimal solutions each boundary is placed as early as possible, resolved
// right to left. Requires at least one reference segment.
ResegmentResult resegment(const Tokens& hyp, const std::vector<Tokens>& ref_segments);

struct MarkScore {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct PunctReport {
    std::map<std::string, MarkScore> per_mark;  // keyed by the mark character
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    double micro_precision = 0.0;
    double micro_recall = 0.0;
    double micro_f1 = 0.0;
};

struct PunctOptions {
    std::string marks = ".?,";
    // When false (default) the macro average covers only marks that occur in
    // the reference or hypothesis; when true it covers every configured mark.
    bool macro_over_all_marks = false;
};

// Punctuation scoring against an aligned reference: trailing mark characters
// are stripped from each token, token cores are lowercased and aligned with
// edit_distance, and each mark is scored as TP when both sides of an aligned
// pair carry it, FP for an unmatched hypothesis mark and FN for an unmatched
// reference mark (a substituted mark therefore counts FN + FP).
PunctReport punct_f1(std::string_view ref_text, std::string_view hyp_text,
                     const PunctOptions& options = {});

struct BleuReport {
    double bleu = 0.0;                          // 0..100
    std::array<double, 4> precisions{};         // modified n-gram precisions
    double brevity_penalty = 1.0;
    std::size_t hyp_len = 0;
    std::size_t ref_len = 0;
};

// Corpus BLEU over line-aligned plain-text (whitespace tokens,
// case-sensitive, single reference): geometric mean of 1..4-gram modified
// precisions over the orders that have any n-grams, mteval-style exponential
// smoothing for zero match counts, brevity penalty exp(1 - r/c) when c < r.
// Throws on line-count mismatch.
BleuReport bleu(const std::vector<std::string>& ref_lines,
                const std::vector<std::string>& hyp_lines);

}  // namespace sentseg
