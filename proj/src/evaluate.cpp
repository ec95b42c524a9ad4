#include "cimig/evaluate.hpp"

#include "cimig/corpus.hpp"
#include "cimig/text.hpp"

#include <algorithm>
#include <sstream>

namespace cimig {

double cosine_similarity(const std::string& a, const std::string& b) { return tf_cosine(a, b); }

namespace {

std::optional<double> mean_of(const std::vector<double>& xs) {
    if (xs.empty()) return std::nullopt;
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

std::optional<double> median_of(std::vector<double> xs) {
    if (xs.empty()) return std::nullopt;
    std::sort(xs.begin(), xs.end());
    size_t n = xs.size();
    if (n % 2 == 1) return xs[n / 2];
    return (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << std::fixed << v;
    return os.str();
}

EvalRow score_pair(const std::string& name, const std::string& source_text,
                   const std::string& reference_text, const RuleModel& model) {
    EvalRow row;
    row.file = name;
    try {
        TranslationOutput out = translate_file(source_text, model);
        row.cosine = cosine_similarity(out.yaml, reference_text);
        if (out.report.empty_input) {
            row.empty = true;
        } else {
            row.translation_pct = *out.report.translation_percentage;
        }
    } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
    }
    return row;
}

} // namespace

EvalResult finalize_rows(std::vector<EvalRow> rows) {
    EvalResult result;
    result.rows = std::move(rows);
    std::vector<double> pcts, cosines;
    for (const auto& r : result.rows) {
        if (r.failed || r.empty) continue;
        pcts.push_back(r.translation_pct);
        cosines.push_back(r.cosine);
    }
    result.mean_pct = mean_of(pcts);
    result.median_pct = median_of(pcts);
    result.mean_cosine = mean_of(cosines);
    result.median_cosine = median_of(cosines);
    return result;
}

EvalRow evaluate_pair_texts(const std::string& name, const std::string& source_text,
                            const std::string& reference_text, const RuleModel& model) {
    return score_pair(name, source_text, reference_text, model);
}

EvalResult evaluate_texts(const std::vector<std::pair<std::string, std::string>>& pairs,
                          const RuleModel& model) {
    std::vector<EvalRow> rows;
    size_t i = 0;
    for (const auto& [src, ref] : pairs)
        rows.push_back(score_pair("pair-" + std::to_string(i++), src, ref, model));
    return finalize_rows(std::move(rows));
}

EvalResult evaluate_corpus(const std::vector<std::pair<std::string, std::string>>& pair_paths,
                           const RuleModel& model) {
    std::vector<EvalRow> rows;
    for (const auto& [src_path, ref_path] : pair_paths) {
        try {
            std::string src = read_file(src_path);
            std::string ref = read_file(ref_path);
            rows.push_back(score_pair(src_path, src, ref, model));
        } catch (const std::exception& e) {
            EvalRow row;
            row.file = src_path;
            row.failed = true;
            row.error = e.what();
            rows.push_back(std::move(row));
        }
    }
    return finalize_rows(std::move(rows));
}

std::string EvalResult::to_tsv() const {
    std::ostringstream os;
    os << "file\tstatus\ttranslation_pct\tcosine\tcrystal_bleu\n";
    for (const auto& r : rows) {
        os << r.file << '\t';
        if (r.failed) {
            os << "error\t\t\t\n";
            continue;
        }
        if (r.empty) {
            os << "empty\t\t" << fmt(r.cosine) << "\t\n";
            continue;
        }
        os << "ok\t" << fmt(r.translation_pct) << '\t' << fmt(r.cosine) << "\t\n";
    }
    auto agg = [&](const char* name, const std::optional<double>& pct,
                   const std::optional<double>& cos) {
        os << name << "\tok\t" << (pct ? fmt(*pct) : "") << '\t' << (cos ? fmt(*cos) : "")
           << "\t\n";
    };
    agg("MEAN", mean_pct, mean_cosine);
    agg("MEDIAN", median_pct, median_cosine);
    return os.str();
}

} // namespace cimig
