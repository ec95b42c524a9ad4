#pragma once

#include "cimig/model.hpp"
#include "cimig/translate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cimig {

// Whole-text TF cosine over the shared tokenizer. Two empty token multisets
// score 1.0; exactly one empty scores 0.0.
double cosine_similarity(const std::string& a, const std::string& b);

struct EvalRow {
    std::string file;
    bool failed = false;
    std::string error;
    bool empty = false; // no H2s in the source: excluded from aggregates
    double translation_pct = 0.0;
    double cosine = 0.0;
};

struct EvalResult {
    std::vector<EvalRow> rows;
    std::optional<double> mean_pct, median_pct;
    std::optional<double> mean_cosine, median_cosine;

    // Header row plus one row per file; aggregates appear as MEAN / MEDIAN
    // rows. The crystal_bleu column is reserved for an external scorer.
    std::string to_tsv() const;
};

EvalResult evaluate_corpus(const std::vector<std::pair<std::string, std::string>>& pair_paths,
                           const RuleModel& model);

// In-memory variant used by tests: pairs of (source text, reference text).
EvalResult evaluate_texts(const std::vector<std::pair<std::string, std::string>>& pairs,
                          const RuleModel& model);

// Scores one pair and computes aggregates over already-scored rows.
EvalRow evaluate_pair_texts(const std::string& name, const std::string& source_text,
                            const std::string& reference_text, const RuleModel& model);
EvalResult finalize_rows(std::vector<EvalRow> rows);

} // namespace cimig
