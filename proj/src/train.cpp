#include "cimig/train.hpp"

#include "cimig/text.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace cimig {

std::map<std::string, std::vector<std::string>> default_dialect_top_keys() {
    std::map<std::string, std::vector<std::string>> keys;
    keys["travisci"] = {"language",   "os",           "dist",          "arch",
                        "sudo",       "jdk",          "node_js",       "python",
                        "env",        "install",      "before_install", "script",
                        "before_script", "after_script", "after_success", "after_failure",
                        "cache",      "matrix",       "jobs",          "stages",
                        "branches",   "notifications", "services",     "addons",
                        "deploy",     "before_deploy", "after_deploy", "git"};
    keys["githubactions"] = {"name", "run-name", "on",  "permissions",
                             "env",  "defaults", "jobs", "concurrency"};
    return keys;
}

std::map<std::string, std::vector<std::string>> load_dialect_keys_dir(const std::string& dir) {
    std::map<std::string, std::vector<std::string>> keys;
    if (dir.empty() || !fs::exists(dir)) return keys;
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file()) files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        std::string dialect = fs::path(f).stem().string();
        std::ifstream in(f);
        std::string line;
        while (std::getline(in, line)) {
            std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            keys[dialect].push_back(t);
        }
    }
    return keys;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
    Clock::time_point start = Clock::now();
    std::int64_t stop() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    }
};

struct AbstractedFile {
    std::string path;
    ViewNode view;
    std::vector<std::string> h2_canonicals;
};

AbstractedFile prepare(const std::string& path, const Dialect& dialect,
                       const AbstractionSpec& spec, TrainSummary* summary) {
    AbstractedFile out;
    out.path = path;
    ConfigAST ast = parse_config(read_file(path), dialect);
    ast.source_path = path;
    AbstractionResult abstracted = abstract_ast(ast, spec);
    if (summary) {
        for (const auto& scalar : abstracted.unabstracted)
            summary->coverage.push_back(path + "\t" + scalar);
    }
    out.view = fold_view(abstracted.ast);
    std::set<std::string> seen;
    for (const auto& h2 : extract_h2(out.view)) {
        std::string c = canonical_form(h2);
        if (seen.insert(c).second) out.h2_canonicals.push_back(std::move(c));
    }
    return out;
}

bool seed_passes_structure_check(const ViewNode& tree,
                                 const std::vector<std::string>& top_keys) {
    if (tree.children.empty()) return false;
    for (const auto& c : tree.children) {
        if (c.kind != NodeKind::MappingKey) return false;
        std::string key = c.label;
        size_t pos = key.find(": ");
        if (pos != std::string::npos) key = key.substr(0, pos);
        if (std::find(top_keys.begin(), top_keys.end(), key) == top_keys.end()) return false;
    }
    return true;
}

} // namespace

RuleModel train_model(const CorpusFiles& corpus, const Dialect& source, const Dialect& target,
                      const AbstractionSpec& abstraction,
                      const std::map<std::string, std::vector<std::string>>& dialect_top_keys,
                      const TrainKnobs& knobs, TrainSummary* summary) {
    if (corpus.pairs.empty())
        throw TrainError("paired corpus is empty: translation rules cannot be mined");

    RuleModel model;
    model.source = source;
    model.target = target;
    model.abstraction = abstraction;
    model.dialect_top_keys = dialect_top_keys;
    if (summary)
        for (const auto& w : corpus.warnings) summary->warnings.push_back(w);

    // Step 1: abstract the paired corpus
    Timer t_abstract;
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pair_h2s;
    std::vector<ViewNode> pair_target_views;
    for (const auto& [src_path, tgt_path] : corpus.pairs) {
        AbstractedFile src = prepare(src_path, source, abstraction, summary);
        AbstractedFile tgt = prepare(tgt_path, target, abstraction, summary);
        pair_h2s.emplace_back(src.h2_canonicals, tgt.h2_canonicals);
        pair_target_views.push_back(std::move(tgt.view));
    }
    if (summary) summary->timings_ms["abstraction"] = t_abstract.stop();

    // Task A-1: translation rules
    Timer t_rules;
    TransactionBuildStats tstats;
    TransactionSet t_transl =
        build_translation_transactions(pair_h2s, knobs.cartesian_cap, knobs.seed, &tstats);
    std::vector<AssociationRule> mined = mine_apriori(t_transl, knobs.min_support_rules);
    std::vector<TranslationRule> filtered = filter_translation_rules(mined);
    auto [r_sim, r_stat] = bifurcate_rules(std::move(filtered), knobs.sim_threshold);
    model.r_sim = std::move(r_sim);
    model.r_stat = std::move(r_stat);
    if (summary) {
        summary->transactions = t_transl.size();
        summary->rules_mined = mined.size();
        summary->r_sim = model.r_sim.size();
        summary->r_stat = model.r_stat.size();
        for (const auto& w : tstats.warnings) summary->warnings.push_back(w);
        summary->timings_ms["translation_rules"] = t_rules.stop();
    }

    // Task A-2: hierarchization rules from the pairs' target files
    Timer t_hier;
    TransactionSet th = build_hierarchization_transactions(pair_target_views);
    model.h_rules = mine_hierarchization_rules(th, knobs.min_support_rules);
    if (summary) {
        summary->hierarchization_transactions = th.size();
        summary->h_rules = model.h_rules.size();
        summary->timings_ms["hierarchization_rules"] = t_hier.stop();
    }

    // Task B: frequent trees from the single-tool sets
    Timer t_trees;
    TreeMineOptions topts;
    topts.min_support = knobs.min_support_trees;
    topts.group_time_budget_ms = knobs.tree_time_budget_ms;
    TreeMineStats tree_stats;
    if (corpus.src_only.empty()) {
        if (summary)
            summary->warnings.push_back(
                "source-only corpus is empty: stat-based translation will be degraded");
    } else {
        std::vector<ViewNode> views;
        for (const auto& path : corpus.src_only)
            views.push_back(prepare(path, source, abstraction, summary).view);
        model.src_fts = mine_frequent_trees(views, source, topts, &tree_stats);
    }
    if (corpus.tgt_only.empty()) {
        if (summary)
            summary->warnings.push_back(
                "target-only corpus is empty: TAR enrichment will be degraded");
    } else {
        std::vector<ViewNode> views;
        for (const auto& path : corpus.tgt_only)
            views.push_back(prepare(path, target, abstraction, summary).view);
        model.tgt_fts = mine_frequent_trees(views, target, topts, &tree_stats);
    }
    if (summary) {
        for (const auto& w : tree_stats.warnings) summary->warnings.push_back(w);
        summary->src_fts = model.src_fts.size();
        summary->tgt_fts = model.tgt_fts.size();
        summary->timings_ms["frequent_trees"] = t_trees.stop();
    }

    // TARs over the target-dialect trees
    model.tars = derive_tars(model.tgt_fts, knobs.tar_branch_threshold);
    if (summary) summary->tars = model.tars.size();

    // Stat rule / frequent tree index
    Timer t_index;
    model.stat_index = match_stat_rules_to_trees(model.r_stat, model.src_fts, model.tgt_fts);
    if (summary) {
        for (const auto& e : model.stat_index.per_rule)
            if (e.usable()) ++summary->stat_rules_usable;
        summary->timings_ms["stat_index"] = t_index.stop();
    }

    // Seed selection
    SeedTree seed;
    seed.dialect = target;
    if (!knobs.seed_file.empty()) {
        ConfigAST ast = parse_config(read_file(knobs.seed_file), target);
        AbstractionResult abstracted = abstract_ast(ast, abstraction);
        seed.tree = fold_view(abstracted.ast);
        model.meta.notes.push_back("seed tree loaded from " +
                                   fs::path(knobs.seed_file).filename().string());
    } else {
        const FrequentTree* best = nullptr;
        auto keys_it = dialect_top_keys.find(target.id());
        for (const auto& ft : model.tgt_fts) {
            if (!ft.root_label.empty() || ft.tree.kind != NodeKind::MappingKey) continue;
            if (keys_it != dialect_top_keys.end() &&
                !seed_passes_structure_check(ft.tree, keys_it->second))
                continue;
            if (!best || ft.support > best->support ||
                (ft.support == best->support &&
                 canonical_form(ft.tree) < canonical_form(best->tree)))
                best = &ft;
        }
        if (best) {
            seed.tree = best->tree;
            model.meta.notes.push_back("seed tree selected from target frequent trees");
        } else {
            seed.tree = ViewNode{NodeKind::MappingKey, "", {}, -1};
            model.meta.notes.push_back(
                "no structurally valid target frequent tree: empty seed skeleton used");
            if (summary)
                summary->warnings.push_back(
                    "no seed candidate among target frequent trees; using an empty skeleton");
        }
    }
    model.seeds.push_back(std::move(seed));

    model.meta.pair_count = corpus.pairs.size();
    model.meta.src_only_count = corpus.src_only.size();
    model.meta.tgt_only_count = corpus.tgt_only.size();
    model.meta.tool_version = kToolVersion;
    auto knob = [&](const std::string& k, const std::string& v) { model.meta.knobs[k] = v; };
    auto dbl = [](double v) {
        std::ostringstream os;
        os << v;
        return os.str();
    };
    knob("min_support_rules", dbl(knobs.min_support_rules));
    knob("min_support_trees", dbl(knobs.min_support_trees));
    knob("sim_threshold", dbl(knobs.sim_threshold));
    knob("tar_branch_threshold", dbl(knobs.tar_branch_threshold));
    knob("cartesian_cap", std::to_string(knobs.cartesian_cap));
    knob("seed", std::to_string(knobs.seed));
    knob("tree_time_budget_ms", std::to_string(knobs.tree_time_budget_ms));
    return model;
}

} // namespace cimig
