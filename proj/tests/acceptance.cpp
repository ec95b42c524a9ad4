// Acceptance suite: one pass/fail line per criterion, non-zero exit when any
// criterion fails. Criteria 5-9 run against the bundled mini corpus.
#include "cimig/corpus.hpp"
#include "cimig/evaluate.hpp"
#include "cimig/train.hpp"
#include "cimig/translate.hpp"

#include "oracles.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

using namespace cimig;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << criterion << " " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!pass) ++failures;
}

std::string repo_path(const std::string& rel) {
    return (fs::path(CIMIG_REPO_DIR) / rel).string();
}

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

// --- criterion 1 -----------------------------------------------------------

void criterion_apriori_oracle() {
    auto start = Clock::now();
    std::mt19937 rng(20240801);
    size_t mismatches = 0;
    for (int round = 0; round < 100; ++round) {
        auto raw = oracle::random_transactions(rng, 8, 50);
        double min_support = std::uniform_real_distribution<double>(0.01, 0.6)(rng);
        TransactionSet ts;
        for (const auto& t : raw) ts.add_transaction(t);
        auto mined = mine_apriori(ts, min_support);
        auto expected = oracle::brute_force_rules(raw, min_support);
        if (mined.size() != expected.size()) {
            ++mismatches;
            continue;
        }
        for (size_t i = 0; i < mined.size(); ++i) {
            if (mined[i].lhs != expected[i].lhs || mined[i].rhs != expected[i].rhs ||
                std::fabs(mined[i].support - expected[i].support) > 1e-12 ||
                std::fabs(mined[i].confidence - expected[i].confidence) > 1e-12 ||
                std::fabs(mined[i].lift - expected[i].lift) > 1e-12) {
                ++mismatches;
                break;
            }
        }
    }
    long long elapsed = ms_since(start);
    report(1, "apriori equals brute-force pair counting on 100 toy sets",
           mismatches == 0 && elapsed < 5000,
           std::to_string(mismatches) + " mismatches, " + std::to_string(elapsed) + " ms");
}

// --- criterion 2 -----------------------------------------------------------

void criterion_tree_oracle() {
    auto start = Clock::now();
    std::mt19937 rng(20240802);
    size_t mismatches = 0;
    TreeMineOptions opts;
    opts.group_time_budget_ms = 0;
    for (int round = 0; round < 50; ++round) {
        std::uniform_int_distribution<int> n_trees(2, 12);
        std::vector<ViewNode> group;
        int n = n_trees(rng);
        for (int i = 0; i < n; ++i) group.push_back(oracle::random_labeled_tree(rng, 15));
        double min_support = std::uniform_real_distribution<double>(0.15, 0.85)(rng);
        opts.min_support = min_support;
        auto mined = mine_group(group, min_support, opts);
        std::vector<oracle::FrequentTreeRef> got;
        for (const auto& [tree, support] : mined) got.push_back({canonical_form(tree), support});
        std::sort(got.begin(), got.end());
        auto expected = oracle::brute_force_frequent_trees(group, min_support);
        if (got.size() != expected.size()) {
            ++mismatches;
            continue;
        }
        for (size_t i = 0; i < got.size(); ++i)
            if (!(got[i] == expected[i])) {
                ++mismatches;
                break;
            }
    }
    long long elapsed = ms_since(start);
    report(2, "frequent trees equal exhaustive enumeration on 50 toy corpora",
           mismatches == 0 && elapsed < 60000,
           std::to_string(mismatches) + " mismatches, " + std::to_string(elapsed) + " ms");
}

// --- criterion 3 -----------------------------------------------------------

struct HierarchizationCase {
    std::string name;
    std::vector<std::string> initial;
    std::vector<std::string> parked;
    std::vector<std::tuple<std::string, std::string, double>> rules; // child, parent, product
    std::string expected;
};

void criterion_hierarchization() {
    std::vector<HierarchizationCase> cases = {
        {"unique match", {"M(jobs)[M(build)[M(steps)[S(uses: a)]]]"}, {"M(steps)[S(run: b)]"}, {},
         "M()[M(jobs)[M(build)[M(steps)[S(uses: a),S(run: b)]]]]"},
        {"deepest match", {"M(a)[M(steps)[S(x)]]", "M(b)[M(c)[M(steps)[S(y)]]]"},
         {"M(steps)[S(z)]"}, {},
         "M()[M(a)[M(steps)[S(x)]],M(b)[M(c)[M(steps)[S(y),S(z)]]]]"},
        {"document-order tie", {"M(a)[M(steps)[S(x)]]", "M(b)[M(steps)[S(y)]]"},
         {"M(steps)[S(z)]"}, {},
         "M()[M(a)[M(steps)[S(x),S(z)]],M(b)[M(steps)[S(y)]]]"},
        {"rule parent exists", {"M(build)[M(env)[M(k: v)]]"}, {"M(steps)[S(z)]"},
         {{"M(steps)[S(z)]", "build", 0.9}},
         "M()[M(build)[M(env)[M(k: v)],M(steps)[S(z)]]]"},
        {"lines 26-28: new parent at the root", {"M(language: java)"}, {"M(steps)[S(z)]"},
         {{"M(steps)[S(z)]", "build", 0.9}},
         "M()[M(language: java),M(build)[M(steps)[S(z)]]]"},
        {"no rule stays at root", {"M(a: 1)"}, {"M(steps)[S(z)]"}, {},
         "M()[M(a: 1),M(steps)[S(z)]]"},
        {"synthesized node reused in the same pass", {},
         {"M(deploy)[M(steps)]", "M(steps)[S(z)]"},
         {{"M(deploy)[M(steps)]", "build", 0.8}},
         "M()[M(build)[M(deploy)[M(steps)[S(z)]]]]"},
        {"parked siblings are searchable", {}, {"M(steps)[S(z)]", "M(deploy)[M(steps)]"}, {},
         "M()[M(deploy)[M(steps)[S(z)]]]"},
        {"best rule by confidence product", {"M(wrong)[M(q: 1)]", "M(right)[M(r: 1)]"},
         {"M(script)[S(cmd)]"},
         {{"M(script)[S(cmd)]", "wrong", 0.5}, {"M(script)[S(cmd)]", "right", 0.9}},
         "M()[M(wrong)[M(q: 1)],M(right)[M(r: 1),M(script)[S(cmd)]]]"},
        {"anonymous H2 moves via its rule", {"M(jobs)[M(build)[M(steps)[S(uses: a)]]]"},
         {"S()[M(name: n),M(run: c)]"},
         {{"S()[M(name: n),M(run: c)]", "steps", 0.7}},
         "M()[M(jobs)[M(build)[M(steps)[S(uses: a),S()[M(name: n),M(run: c)]]]]]"},
        {"graft deduplicates equal children", {"M(jobs)[M(steps)[S(run: x)]]"},
         {"M(steps)[S(run: x),S(run: y)]"}, {},
         "M()[M(jobs)[M(steps)[S(run: x),S(run: y)]]]"},
        {"fixpoint on reapplication", {"M(language: java)"},
         {"M(steps)[S(z)]", "M(other)[S(w)]"},
         {{"M(steps)[S(z)]", "build", 0.9}},
         "M()[M(language: java),M(other)[S(w)],M(build)[M(steps)[S(z)]]]"},
    };
    size_t failed = 0;
    for (const auto& c : cases) {
        TranslationState state;
        for (const auto& canon : c.initial)
            state.tree.append(state.tree.root(), state.tree.materialize(parse_canonical(canon)));
        for (const auto& canon : c.parked) {
            GenNode* n =
                state.tree.append(state.tree.root(), state.tree.materialize(parse_canonical(canon)));
            state.root_attached.push_back(n->id);
        }
        RuleModel model;
        for (const auto& [child, parent, product] : c.rules) {
            HierarchizationRule r;
            r.child = child;
            r.parent_kind = NodeKind::MappingKey;
            r.parent_label = parent;
            r.support = 0.1;
            r.confidence = 1.0;
            r.lift = 1.0;
            r.flipped_support = 0.1;
            r.flipped_confidence = product;
            r.flipped_lift = 1.0;
            r.support_product = 0.01;
            r.confidence_product = product;
            r.lift_product = 1.0;
            model.h_rules.push_back(std::move(r));
        }
        hierarchize(state, model);
        std::string got = canonical_form(state.tree.to_view());
        if (got != c.expected) {
            ++failed;
            std::cout << "       case '" << c.name << "': got " << got << "\n";
            continue;
        }
        hierarchize(state, model); // must be a fixpoint
        if (canonical_form(state.tree.to_view()) != c.expected) {
            ++failed;
            std::cout << "       case '" << c.name << "': not a fixpoint\n";
        }
    }
    report(3, "hierarchization matches " + std::to_string(cases.size()) + " hand-traced cases",
           failed == 0, std::to_string(failed) + " mismatching cases");
}

// --- criteria 4-9 share corpus helpers --------------------------------------

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) {
        path = fs::temp_directory_path() / name;
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::vector<std::string> identity_files() {
    const std::vector<std::string> blocks = {
        "jdk:\n  - openjdk11\n",
        "script:\n  - mvn -B package\n",
        "services:\n  - docker\n",
        "cache:\n  directories:\n    - $HOME/.m2\n",
        "env:\n  global:\n    - TERM=dumb\n",
        "branches:\n  only:\n    - main\n",
        "notifications:\n  email: false\n",
        "os:\n  - linux\n",
        "addons:\n  apt:\n    packages:\n      - jq\n",
        "after_success:\n  - bash coverage.sh\n",
    };
    std::vector<std::string> files;
    for (size_t i = 0; i < 10; ++i) {
        std::string text = "language: java\n";
        for (size_t k = 0; k < 3; ++k) text += blocks[(i + k) % blocks.size()];
        files.push_back(text);
    }
    return files;
}

void criterion_identity() {
    TempDir dir("cimig_acceptance_identity");
    fs::create_directories(dir.path / "pairs");
    auto files = identity_files();
    for (size_t i = 0; i < files.size(); ++i) {
        fs::path p = dir.path / "pairs" / ("p" + std::to_string(i));
        fs::create_directories(p);
        write_file((p / "travis.yml").string(), files[i]);
        write_file((p / "gha.yml").string(), files[i]);
    }
    CorpusFiles corpus =
        load_corpus((dir.path / "pairs").string(), "", "", Dialect::travis(), Dialect::gha());
    RuleModel model = train_model(corpus, Dialect::travis(), Dialect::gha(),
                                  AbstractionSpec::defaults(), default_dialect_top_keys(),
                                  TrainKnobs{});
    size_t bad = 0;
    for (const auto& text : files) {
        TranslationOutput out = translate_file(text, model);
        bool full = out.report.translation_percentage &&
                    *out.report.translation_percentage == 1.0;
        AbstractionResult in_abs =
            abstract_ast(parse_config(text, Dialect::travis()), model.abstraction);
        AbstractionResult out_abs =
            abstract_ast(parse_config(out.yaml, Dialect::gha()), model.abstraction);
        std::multiset<std::string> in_set, out_set;
        for (const auto& h2 : extract_h2(in_abs.ast)) in_set.insert(canonical_form(h2));
        for (const auto& h2 : extract_h2(out_abs.ast)) out_set.insert(canonical_form(h2));
        if (!full || in_set != out_set) ++bad;
    }
    report(4, "identity corpus: 100% translation and equal H2 multisets on 10 files", bad == 0,
           std::to_string(bad) + " files off");
}

struct MiniModels {
    RuleModel t2g;
    RuleModel g2t;
    long long train_ms = 0;
};

TrainKnobs mini_knobs() {
    TrainKnobs knobs;
    knobs.min_support_trees = 0.3; // 5% is calibrated for corpora three orders larger
    return knobs;
}

MiniModels train_mini_models() {
    MiniModels models;
    auto start = Clock::now();
    CorpusFiles forward =
        load_corpus(repo_path("corpus/mini/pairs"), repo_path("corpus/mini/travis-only"),
                    repo_path("corpus/mini/gha-only"), Dialect::travis(), Dialect::gha());
    models.t2g = train_model(forward, Dialect::travis(), Dialect::gha(),
                             AbstractionSpec::defaults(), default_dialect_top_keys(), mini_knobs());
    CorpusFiles reverse =
        load_corpus(repo_path("corpus/mini/pairs"), repo_path("corpus/mini/gha-only"),
                    repo_path("corpus/mini/travis-only"), Dialect::gha(), Dialect::travis());
    models.g2t = train_model(reverse, Dialect::gha(), Dialect::travis(),
                             AbstractionSpec::defaults(), default_dialect_top_keys(), mini_knobs());
    models.train_ms = ms_since(start);
    return models;
}

void criterion_mini_corpus(const MiniModels& models) {
    auto forward_pairs =
        load_pair_paths(repo_path("corpus/mini/pairs"), Dialect::travis(), Dialect::gha());
    EvalResult forward = evaluate_corpus(forward_pairs, models.t2g);
    auto reverse_pairs =
        load_pair_paths(repo_path("corpus/mini/pairs"), Dialect::gha(), Dialect::travis());
    EvalResult reverse = evaluate_corpus(reverse_pairs, models.g2t);
    size_t failed_rows = 0;
    for (const auto& r : forward.rows) failed_rows += r.failed ? 1 : 0;
    for (const auto& r : reverse.rows) failed_rows += r.failed ? 1 : 0;
    bool ok = forward.rows.size() >= 15 && reverse.rows.size() >= 15 && failed_rows == 0 &&
              forward.mean_pct && *forward.mean_pct >= 0.60 && forward.mean_cosine &&
              *forward.mean_cosine >= 0.40 && reverse.mean_pct && *reverse.mean_pct >= 0.40;
    std::ostringstream detail;
    detail.precision(3);
    detail << std::fixed << "travis->gha " << (forward.mean_pct ? *forward.mean_pct : 0)
           << " pct / " << (forward.mean_cosine ? *forward.mean_cosine : 0) << " cosine, "
           << "gha->travis " << (reverse.mean_pct ? *reverse.mean_pct : 0) << " pct";
    report(5, "mini-corpus floors: >=60% fwd, >=0.4 cosine fwd, >=40% rev", ok, detail.str());
}

void criterion_parameter_conservation(const MiniModels& models) {
    size_t bad = 0, checked = 0;
    auto check_direction = [&](const RuleModel& model, const Dialect& src, const Dialect& tgt) {
        auto pairs = load_pair_paths(repo_path("corpus/mini/pairs"), src, tgt);
        for (const auto& [src_path, ref_path] : pairs) {
            (void)ref_path;
            TranslationOutput out = translate_file(read_file(src_path), model);
            ++checked;
            if (out.report.parameters_stored !=
                out.report.parameters_placed + out.report.unplaced_parameters.size())
                ++bad;
        }
    };
    check_direction(models.t2g, Dialect::travis(), Dialect::gha());
    check_direction(models.g2t, Dialect::gha(), Dialect::travis());
    report(6, "parameter conservation: stored = placed + reported-unplaced", bad == 0,
           std::to_string(checked) + " translations, " + std::to_string(bad) + " leaks");
}

void criterion_roundtrip_determinism(const MiniModels& models) {
    size_t bad_roundtrip = 0, files = 0;
    for (const char* dir : {"corpus/mini/pairs", "corpus/mini/travis-only", "corpus/mini/gha-only"}) {
        for (const auto& entry : fs::recursive_directory_iterator(repo_path(dir))) {
            if (!entry.is_regular_file()) continue;
            ++files;
            std::string text = read_file(entry.path().string());
            ConfigAST first = parse_config(text, Dialect::other("probe"));
            std::string emitted = emit_yaml(first);
            ConfigAST second = parse_config(emitted, Dialect::other("probe"));
            if (!ast_equal(first, second) || emit_yaml(second) != emitted) ++bad_roundtrip;
        }
    }
    // repeated training and translation are byte-identical
    CorpusFiles forward =
        load_corpus(repo_path("corpus/mini/pairs"), repo_path("corpus/mini/travis-only"),
                    repo_path("corpus/mini/gha-only"), Dialect::travis(), Dialect::gha());
    RuleModel again = train_model(forward, Dialect::travis(), Dialect::gha(),
                                  AbstractionSpec::defaults(), default_dialect_top_keys(),
                                  mini_knobs());
    bool train_deterministic = model_to_string(models.t2g) == model_to_string(again);
    std::string sample = read_file(repo_path("corpus/mini/pairs/p01/travis.yml"));
    TranslationOutput once = translate_file(sample, models.t2g);
    TranslationOutput twice = translate_file(sample, models.t2g);
    bool translate_deterministic =
        once.yaml == twice.yaml && once.report.to_json_text() == twice.report.to_json_text();
    report(7, "round-trip fixpoint on all corpus files; train and translate deterministic",
           bad_roundtrip == 0 && train_deterministic && translate_deterministic,
           std::to_string(files) + " files, " + std::to_string(bad_roundtrip) +
               " round-trip failures" + (train_deterministic ? "" : ", train differs") +
               (translate_deterministic ? "" : ", translate differs"));
}

void criterion_performance(const MiniModels& models) {
    long long worst = 0;
    auto pairs = load_pair_paths(repo_path("corpus/mini/pairs"), Dialect::travis(), Dialect::gha());
    for (const auto& [src_path, ref_path] : pairs) {
        (void)ref_path;
        std::string text = read_file(src_path);
        auto start = Clock::now();
        translate_file(text, models.t2g);
        worst = std::max(worst, ms_since(start));
    }
    bool ok = worst < 2000 && models.train_ms < 600000;
    report(8, "performance: <2000 ms per translation, <10 min training", ok,
           "worst translation " + std::to_string(worst) + " ms, training " +
               std::to_string(models.train_ms) + " ms");
}

void criterion_failure_categories(const MiniModels& models) {
    auto has_category = [&](const std::string& source, FailureCategory cat,
                            const std::string& marker) {
        TranslationOutput out = translate_file(source, models.t2g);
        for (const auto& e : out.report.entries)
            if (e.category == cat && e.canonical.find(marker) != std::string::npos) return true;
        return false;
    };
    bool unabstracted = has_category("language: java\n"
                                     "before_deploy:\n"
                                     "  - openssl aes-256-cbc -K $k -in a.enc -out a -d\n"
                                     "  - jarsigner -verbose -keystore release.jks app.apk alias\n",
                                     FailureCategory::UnabstractedSyntax, "openssl");
    bool deep = has_category("language: java\n"
                             "matrix:\n"
                             "  include:\n"
                             "    - jdk: openjdk4\n"
                             "      env: ANCIENT=1\n",
                             FailureCategory::MoreThanTwoLevels, "openjdk4");
    bool no_equiv = has_category("language: java\n"
                                 "addons:\n"
                                 "  sauce_connect: true\n",
                                 FailureCategory::NoDirectEquivalent, "sauce_connect");
    report(9, "failure categories each triggered by a dedicated fixture",
           unabstracted && deep && no_equiv,
           std::string(unabstracted ? "" : "unabstracted missing ") +
               (deep ? "" : "deep missing ") + (no_equiv ? "" : "no-equivalent missing"));
}

} // namespace

int main() {
    std::cout << "cimig acceptance suite\n";
    try {
        criterion_apriori_oracle();
        criterion_tree_oracle();
        criterion_hierarchization();
        criterion_identity();
        MiniModels models = train_mini_models();
        criterion_mini_corpus(models);
        criterion_parameter_conservation(models);
        criterion_roundtrip_determinism(models);
        criterion_performance(models);
        criterion_failure_categories(models);
    } catch (const std::exception& e) {
        std::cout << "[FAIL] suite aborted: " << e.what() << "\n";
        return 1;
    }
    std::cout << (failures == 0 ? "all criteria passed\n"
                                : std::to_string(failures) + " criteria failed\n");
    return failures == 0 ? 0 : 1;
}
