#include "cimig/corpus.hpp"
#include "cimig/evaluate.hpp"
#include "cimig/model.hpp"
#include "cimig/text.hpp"
#include "cimig/train.hpp"
#include "cimig/translate.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

namespace {

using namespace cimig;

int log_level() {
    const char* env = std::getenv("CIMIG_LOG");
    if (!env) return 1; // warnings and errors
    std::string v = to_lower(env);
    if (v == "quiet" || v == "error") return 0;
    if (v == "warn" || v == "warning") return 1;
    if (v == "info") return 2;
    if (v == "debug") return 3;
    return 1;
}

void log_warn(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "warning: " << msg << "\n";
}

void log_info(const std::string& msg) {
    if (log_level() >= 2) std::cerr << msg << "\n";
}

bool parse_direction(const std::string& text, Dialect& source, Dialect& target) {
    if (text == "travis-to-gha") {
        source = Dialect::travis();
        target = Dialect::gha();
        return true;
    }
    if (text == "gha-to-travis") {
        source = Dialect::gha();
        target = Dialect::travis();
        return true;
    }
    size_t colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) return false;
    source = Dialect::from_id(text.substr(0, colon));
    target = Dialect::from_id(text.substr(colon + 1));
    return true;
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(4);
    os << std::fixed << v;
    return os.str();
}

int cmd_train(const std::string& pairs_dir, const std::string& src_only_dir,
              const std::string& tgt_only_dir, const std::string& direction,
              const std::string& out_path, const std::string& abstraction_path,
              const std::string& dialect_keys_dir, const TrainKnobs& knobs) {
    Dialect source, target;
    if (!parse_direction(direction, source, target)) {
        std::cerr << "error: bad --direction; use travis-to-gha, gha-to-travis or SRC:TGT\n";
        return 1;
    }
    AbstractionSpec abstraction = abstraction_path.empty()
                                      ? AbstractionSpec::defaults()
                                      : AbstractionSpec::load_file(abstraction_path);
    auto keys = default_dialect_top_keys();
    if (!dialect_keys_dir.empty()) {
        auto loaded = load_dialect_keys_dir(dialect_keys_dir);
        for (auto& [dialect, list] : loaded) keys[dialect] = std::move(list);
    }
    CorpusFiles corpus = load_corpus(pairs_dir, src_only_dir, tgt_only_dir, source, target);
    if (corpus.pairs.empty()) {
        std::cerr << "error: no usable pairs found under " << pairs_dir << "\n";
        return 1;
    }

    TrainSummary summary;
    auto started = std::chrono::steady_clock::now();
    RuleModel model = train_model(corpus, source, target, abstraction, keys, knobs, &summary);
    auto total_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - started)
                        .count();
    save_model(model, out_path);

    std::string coverage_path = out_path + ".coverage.txt";
    {
        std::string text;
        for (const auto& line : summary.coverage) text += line + "\n";
        write_file(coverage_path, text);
    }

    for (const auto& w : summary.warnings) log_warn(w);
    std::cout << "model: " << out_path << "\n"
              << "pairs: " << model.meta.pair_count << " (src-only " << model.meta.src_only_count
              << ", tgt-only " << model.meta.tgt_only_count << ")\n"
              << "transactions: " << summary.transactions
              << " (hierarchization " << summary.hierarchization_transactions << ")\n"
              << "rules: sim " << summary.r_sim << ", stat " << summary.r_stat << " (usable "
              << summary.stat_rules_usable << "), hierarchization " << summary.h_rules << "\n"
              << "frequent trees: src " << summary.src_fts << ", tgt " << summary.tgt_fts
              << ", tars " << summary.tars << "\n";
    for (const auto& [phase, ms] : summary.timings_ms)
        std::cout << "time " << phase << ": " << ms << " ms\n";
    std::cout << "time total: " << total_ms << " ms\n"
              << "coverage report: " << coverage_path << "\n";
    return 0;
}

int cmd_translate(const std::string& model_path, const std::string& in_path,
                  const std::string& out_path, std::string report_path) {
    RuleModel model = load_model(model_path);
    std::string source_text;
    TranslationOutput out;
    try {
        source_text = read_file(in_path);
        out = translate_file(source_text, model);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    Dialect detected = detect_dialect(in_path);
    if (!(detected == model.source) && detected.kind != DialectKind::Other)
        log_warn("input file name suggests dialect '" + detected.id() +
                 "' but the model translates from '" + model.source.id() + "'");
    write_file(out_path, out.yaml);
    if (report_path.empty()) report_path = out_path + ".report.json";
    write_file(report_path, out.report.to_json_text());

    if (out.report.empty_input) {
        std::cout << "no H2s in input (empty translation); seed skeleton written\n";
        return 0;
    }
    std::cout << "translated " << (out.report.translated_sim + out.report.translated_stat) << "/"
              << out.report.total_h2 << " H2 ASTs ("
              << fmt_double(*out.report.translation_percentage * 100.0) << "%)\n";
    switch (report_status(out.report)) {
    case TranslateStatus::Success: return 0;
    case TranslateStatus::Partial: return 2;
    case TranslateStatus::Error: return 1;
    }
    return 1;
}

int cmd_eval(const std::string& model_path, const std::string& pairs_dir,
             const std::string& out_path) {
    RuleModel model = load_model(model_path);
    auto pairs = load_pair_paths(pairs_dir, model.source, model.target);
    if (pairs.empty()) {
        std::cerr << "error: no pairs found under " << pairs_dir << "\n";
        return 1;
    }
    std::vector<EvalRow> rows;
    for (const auto& [src_path, ref_path] : pairs) {
        auto started = std::chrono::steady_clock::now();
        EvalResult one = evaluate_corpus({{src_path, ref_path}}, model);
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - started)
                      .count();
        rows.push_back(one.rows.front());
        std::cout << src_path << ": " << ms << " ms\n";
    }
    EvalResult agg = finalize_rows(std::move(rows));
    write_file(out_path, agg.to_tsv());
    if (agg.mean_pct)
        std::cout << "mean translation: " << fmt_double(*agg.mean_pct * 100.0) << "%, median "
                  << fmt_double(*agg.median_pct * 100.0) << "%\n";
    if (agg.mean_cosine)
        std::cout << "mean cosine: " << fmt_double(*agg.mean_cosine) << ", median "
                  << fmt_double(*agg.median_cosine) << "\n";
    std::cout << "results: " << out_path << "\n";
    return 0;
}

int cmd_inspect_rules(const std::string& model_path, const std::string& set) {
    RuleModel model = load_model(model_path);
    auto dump_translation = [](const std::vector<TranslationRule>& rules) {
        for (const auto& r : rules)
            std::cout << r.lhs << '\t' << r.rhs << '\t' << r.support << '\t' << r.confidence
                      << '\t' << r.lift << '\t' << r.support_product << '\t'
                      << r.confidence_product << '\t' << r.lift_product << '\t'
                      << (r.cls == RuleClass::Sim ? "sim" : "stat") << "\n";
    };
    if (set == "sim" || set == "all") dump_translation(model.r_sim);
    if (set == "stat" || set == "all") dump_translation(model.r_stat);
    if (set == "hier" || set == "all") {
        for (const auto& r : model.h_rules)
            std::cout << r.child << '\t' << kind_tag(r.parent_kind) << '(' << r.parent_label
                      << ")\t" << r.support << '\t' << r.confidence << '\t' << r.lift << '\t'
                      << r.support_product << '\t' << r.confidence_product << '\t'
                      << r.lift_product << "\thier\n";
    }
    return 0;
}

void dump_tree(const ViewNode& n, int indent) {
    std::cout << std::string(static_cast<size_t>(indent), ' ') << kind_tag(n.kind) << ' '
              << (n.label.empty() ? "(root)" : n.label) << "\n";
    for (const auto& c : n.children) dump_tree(c, indent + 2);
}

int cmd_dump_trees(const std::string& model_path, const std::string& side) {
    RuleModel model = load_model(model_path);
    const auto& trees = side == "src" ? model.src_fts : model.tgt_fts;
    for (size_t i = 0; i < trees.size(); ++i) {
        std::cout << "# tree " << i << " support " << fmt_double(trees[i].support) << "\n";
        dump_tree(trees[i].tree, 0);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Example-based CI configuration migration"};
    app.require_subcommand(1);

    // train
    auto* train = app.add_subcommand("train", "Mine a rule model from a corpus");
    std::string pairs_dir, src_only_dir, tgt_only_dir, direction = "travis-to-gha";
    std::string model_out = "model.json", abstraction_path, dialect_keys_dir;
    TrainKnobs knobs;
    train->add_option("--pairs", pairs_dir, "Directory of pair subdirectories")->required();
    train->add_option("--src-only", src_only_dir, "Directory of source-dialect files");
    train->add_option("--tgt-only", tgt_only_dir, "Directory of target-dialect files");
    train->add_option("--direction", direction, "travis-to-gha | gha-to-travis | SRC:TGT");
    train->add_option("--out", model_out, "Model output path");
    train->add_option("--abstraction", abstraction_path, "Abstraction spec JSON");
    train->add_option("--dialect-keys-dir", dialect_keys_dir,
                      "Directory of <dialect>.txt top-level key lists");
    train->add_option("--min-support-rules", knobs.min_support_rules, "Apriori minimum support");
    train->add_option("--min-support-trees", knobs.min_support_trees,
                      "Frequent-tree minimum support");
    train->add_option("--sim-threshold", knobs.sim_threshold, "Sim/stat cosine threshold");
    train->add_option("--tar-branch-threshold", knobs.tar_branch_threshold,
                      "TAR antecedent branch fraction");
    train->add_option("--cartesian-cap", knobs.cartesian_cap,
                      "Per-pair transaction cap before sampling");
    train->add_option("--seed", knobs.seed, "Sampling seed");
    train->add_option("--tree-time-budget-ms", knobs.tree_time_budget_ms,
                      "Per-group tree mining budget");
    train->add_option("--seed-file", knobs.seed_file, "Explicit target seed skeleton (YAML)");

    // translate
    auto* translate = app.add_subcommand("translate", "Translate one configuration file");
    std::string t_model, t_in, t_out = "out.yml", t_report;
    translate->add_option("--model", t_model, "Trained model path")->required();
    translate->add_option("--in", t_in, "Input YAML file")->required();
    translate->add_option("--out", t_out, "Output YAML path");
    translate->add_option("--report", t_report, "Report path (default: <out>.report.json)");

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate a model over a paired corpus");
    std::string e_model, e_pairs, e_out = "results.tsv";
    eval->add_option("--model", e_model, "Trained model path")->required();
    eval->add_option("--pairs", e_pairs, "Directory of pair subdirectories")->required();
    eval->add_option("--out", e_out, "Results TSV path");

    // inspect-rules
    auto* inspect = app.add_subcommand("inspect-rules", "Dump rules, one per line");
    std::string i_model, i_set = "all";
    inspect->add_option("--model", i_model, "Trained model path")->required();
    inspect->add_option("--set", i_set, "sim | stat | hier | all");

    // dump-trees
    auto* dump = app.add_subcommand("dump-trees", "Dump frequent trees with supports");
    std::string d_model, d_side = "tgt";
    dump->add_option("--model", d_model, "Trained model path")->required();
    dump->add_option("--side", d_side, "src | tgt");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed())
            return cmd_train(pairs_dir, src_only_dir, tgt_only_dir, direction, model_out,
                             abstraction_path, dialect_keys_dir, knobs);
        if (translate->parsed()) return cmd_translate(t_model, t_in, t_out, t_report);
        if (eval->parsed()) return cmd_eval(e_model, e_pairs, e_out);
        if (inspect->parsed()) return cmd_inspect_rules(i_model, i_set);
        if (dump->parsed()) return cmd_dump_trees(d_model, d_side);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
