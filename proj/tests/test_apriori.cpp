#include "cimig/apriori.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace cimig;

namespace {

TransactionSet make_ts(const std::vector<std::vector<std::string>>& raw) {
    TransactionSet ts;
    for (const auto& t : raw) ts.add_transaction(t);
    return ts;
}

const AssociationRule* find_rule(const std::vector<AssociationRule>& rules, const std::string& lhs,
                                 const std::string& rhs) {
    for (const auto& r : rules)
        if (r.lhs == lhs && r.rhs == rhs) return &r;
    return nullptr;
}

} // namespace

TEST_CASE("worked example: {A,B},{A,B},{A,C}") {
    auto rules = mine_apriori(make_ts({{"A", "B"}, {"A", "B"}, {"A", "C"}}), 0.3);
    const AssociationRule* ab = find_rule(rules, "A", "B");
    REQUIRE(ab != nullptr);
    CHECK(ab->support == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(ab->confidence == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(ab->lift == doctest::Approx(1.0).epsilon(1e-12));
    // A,C at support 1/3 passes 0.3 as well
    CHECK(find_rule(rules, "C", "A") != nullptr);
    CHECK(find_rule(rules, "B", "C") == nullptr);
}

TEST_CASE("degenerate single transaction") {
    auto rules = mine_apriori(make_ts({{"A", "B"}}), 1.0);
    REQUIRE(rules.size() == 2);
    for (const auto& r : rules) {
        CHECK(r.support == 1.0);
        CHECK(r.confidence == 1.0);
        CHECK(r.lift == 1.0);
    }
}

TEST_CASE("empty transaction set") {
    CHECK(mine_apriori(TransactionSet{}, 0.1).empty());
}

TEST_CASE("oracle equivalence on random toy sets") {
    std::mt19937 rng(42);
    for (int round = 0; round < 60; ++round) {
        auto raw = oracle::random_transactions(rng, 8, 50);
        double min_support = std::uniform_real_distribution<double>(0.02, 0.5)(rng);
        auto mined = mine_apriori(make_ts(raw), min_support);
        auto expected = oracle::brute_force_rules(raw, min_support);
        REQUIRE(mined.size() == expected.size());
        for (size_t i = 0; i < mined.size(); ++i) {
            CHECK(mined[i].lhs == expected[i].lhs);
            CHECK(mined[i].rhs == expected[i].rhs);
            CHECK(mined[i].support == doctest::Approx(expected[i].support).epsilon(1e-12));
            CHECK(mined[i].confidence == doctest::Approx(expected[i].confidence).epsilon(1e-12));
            CHECK(mined[i].lift == doctest::Approx(expected[i].lift).epsilon(1e-12));
        }
    }
}

TEST_CASE("anti-monotonicity of the support threshold") {
    std::mt19937 rng(7);
    for (int round = 0; round < 20; ++round) {
        auto raw = oracle::random_transactions(rng, 6, 30);
        auto low = mine_apriori(make_ts(raw), 0.05);
        auto high = mine_apriori(make_ts(raw), 0.3);
        std::set<std::pair<std::string, std::string>> low_keys;
        for (const auto& r : low) low_keys.emplace(r.lhs, r.rhs);
        for (const auto& r : high) CHECK(low_keys.count({r.lhs, r.rhs}) == 1);
        CHECK(high.size() <= low.size());
    }
}

TEST_CASE("translation transactions: cartesian product per pair") {
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairs;
    pairs.push_back({{"s1", "s2"}, {"t1", "t2", "t3"}});
    TransactionBuildStats stats;
    TransactionSet ts = build_translation_transactions(pairs, 0, 1, &stats);
    CHECK(ts.size() == 6);
    CHECK(stats.pairs_with_empty_side == 0);
    for (const auto& t : ts.transactions) CHECK(t.size() == 2);
}

TEST_CASE("translation transactions: empty side contributes nothing, warned") {
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairs;
    pairs.push_back({{"s1"}, {}});
    TransactionBuildStats stats;
    TransactionSet ts = build_translation_transactions(pairs, 0, 1, &stats);
    CHECK(ts.size() == 0);
    CHECK(stats.pairs_with_empty_side == 1);
    REQUIRE(stats.warnings.size() == 1);
}

TEST_CASE("translation transactions: hand-counted multi-pair corpus") {
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairs = {
        {{"a", "b"}, {"x"}},           // 2
        {{"a"}, {"x", "y"}},           // 2
        {{"a", "b", "c"}, {"x", "y"}}, // 6
        {{}, {"x"}},                   // 0
        {{"q"}, {"x", "y", "z"}},      // 3
    };
    TransactionSet ts = build_translation_transactions(pairs, 0, 1, nullptr);
    CHECK(ts.size() == 13);
}

TEST_CASE("cartesian cap samples deterministically") {
    std::vector<std::string> src, tgt;
    for (int i = 0; i < 40; ++i) src.push_back("s" + std::to_string(i));
    for (int i = 0; i < 40; ++i) tgt.push_back("t" + std::to_string(i));
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairs{{src, tgt}};
    TransactionBuildStats stats;
    TransactionSet a = build_translation_transactions(pairs, 100, 9, &stats);
    TransactionSet b = build_translation_transactions(pairs, 100, 9, nullptr);
    CHECK(a.size() == 100);
    CHECK(stats.pairs_sampled == 1);
    REQUIRE(b.size() == a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a.transactions[i].size() == 2);
        CHECK(a.items[static_cast<size_t>(a.transactions[i][0])] ==
              b.items[static_cast<size_t>(b.transactions[i][0])]);
    }
}

TEST_CASE("filter keeps SRC=>TGT with flipped metrics and products") {
    // conf(s=>t)=0.8 and conf(t=>s)=0.5: 4x{s,t}, 1x{s,u}, 4x{v,t}, 1x{v,u}
    std::vector<std::vector<std::string>> raw;
    std::string s = item::src("s"), t = item::tgt("t"), u = item::tgt("u");
    std::string v = item::src("v");
    for (int i = 0; i < 4; ++i) raw.push_back({s, t});
    raw.push_back({s, u});
    for (int i = 0; i < 4; ++i) raw.push_back({v, t});
    raw.push_back({v, u});
    auto rules = mine_apriori(make_ts(raw), 1e-9);
    auto filtered = filter_translation_rules(rules);
    const TranslationRule* st = nullptr;
    for (const auto& r : filtered)
        if (r.lhs == "s" && r.rhs == "t") st = &r;
    REQUIRE(st != nullptr);
    CHECK(st->confidence == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(st->flipped_confidence == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(st->confidence_product == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(st->support_product == doctest::Approx(st->support * st->flipped_support).epsilon(1e-12));
    // payloads are untagged and no TGT=>SRC rules leak through
    for (const auto& r : filtered) {
        CHECK(r.lhs.find('\t') == std::string::npos);
        CHECK(r.rhs.find('\t') == std::string::npos);
    }
}

TEST_CASE("product symmetry for a rule and its flip") {
    std::vector<std::vector<std::string>> raw = {{item::src("a"), item::tgt("b")},
                                                 {item::src("a"), item::tgt("c")},
                                                 {item::src("d"), item::tgt("b")}};
    auto rules = mine_apriori(make_ts(raw), 1e-9);
    std::map<std::pair<std::string, std::string>, const AssociationRule*> index;
    for (const auto& r : rules) index[{r.lhs, r.rhs}] = &r;
    for (const auto& r : rules) {
        const AssociationRule* flip = index[{r.rhs, r.lhs}];
        REQUIRE(flip != nullptr);
        CHECK(r.support == doctest::Approx(flip->support).epsilon(1e-15));
        CHECK(r.lift == doctest::Approx(flip->lift).epsilon(1e-12));
    }
}

TEST_CASE("bifurcation by leaf cosine") {
    TranslationRule similar;
    similar.lhs = "M(script)[S(CMD:mvn)]";
    similar.rhs = "M(steps)[S(run: CMD:mvn)]";
    TranslationRule disjoint;
    disjoint.lhs = "M()[M(language: java)]";
    disjoint.rhs = "M(on)[S(push),S(pull_request)]";
    auto [sim, stat] = bifurcate_rules({similar, disjoint}, 0.5);
    REQUIRE(sim.size() == 1);
    REQUIRE(stat.size() == 1);
    CHECK(sim[0].rhs == similar.rhs);
    CHECK(sim[0].cls == RuleClass::Sim);
    CHECK(stat[0].cls == RuleClass::Stat);
    CHECK(sim[0].leaf_cosine > 0.5);
    CHECK(stat[0].leaf_cosine == doctest::Approx(0.0));
}

TEST_CASE("jdk example lands in stat: tokens do not overlap") {
    double cos = translation_rule_leaf_cosine(
        "M()[M(jdk: openjdk8)]", "M(with)[M(java-version: 8),M(distribution: temurin)]");
    // lhs tokens {jdk, openjdk8}; rhs {java, version, 8, distribution, temurin}
    CHECK(cos == doctest::Approx(0.0));
}

TEST_CASE("partition covers every filtered rule exactly once") {
    std::mt19937 rng(11);
    std::vector<TranslationRule> rules;
    for (int i = 0; i < 30; ++i) {
        TranslationRule r;
        r.lhs = "M(k" + std::to_string(rng() % 5) + ")[C(x" + std::to_string(rng() % 7) + ")]";
        r.rhs = "M(k" + std::to_string(rng() % 5) + ")[C(x" + std::to_string(rng() % 7) + ")]";
        rules.push_back(std::move(r));
    }
    auto [sim, stat] = bifurcate_rules(rules, 0.5);
    CHECK(sim.size() + stat.size() == rules.size());
    for (const auto& r : sim) CHECK(r.leaf_cosine > 0.5);
    for (const auto& r : stat) CHECK(r.leaf_cosine <= 0.5);
}

namespace {

ViewNode view_of(const std::string& yaml) {
    return fold_view(parse_config(yaml, Dialect::gha()));
}

} // namespace

TEST_CASE("hierarchization transactions use the grandparent") {
    ViewNode v = view_of("jobs:\n  build:\n    steps:\n      - run: mvn test\n");
    TransactionSet ts = build_hierarchization_transactions({v});
    // steps H2 => build; build H2 => jobs; jobs H2 has the root grandparent (excluded)
    REQUIRE(ts.size() == 2);
    bool saw_steps_build = false;
    for (const auto& t : ts.transactions) {
        std::string a = ts.items[static_cast<size_t>(t[0])];
        std::string b = ts.items[static_cast<size_t>(t[1])];
        std::string parent = item::has_tag(a, 'P') ? a : b;
        std::string child = item::has_tag(a, 'C') ? a : b;
        REQUIRE(item::has_tag(parent, 'P'));
        if (item::payload(child).rfind("M(steps)[", 0) == 0) {
            CHECK(item::payload(parent) == "M(build)");
            saw_steps_build = true;
        }
    }
    CHECK(saw_steps_build);
}

TEST_CASE("flat files produce no hierarchization transactions") {
    ViewNode v = view_of("language: java\nscript:\n  - mvn test\n");
    CHECK(build_hierarchization_transactions({v}).size() == 0);
}

TEST_CASE("hierarchization rules: deterministic parents get confidence 1") {
    std::vector<ViewNode> views;
    for (int i = 0; i < 3; ++i)
        views.push_back(view_of("jobs:\n  build:\n    steps:\n      - run: mvn test\n"));
    auto rules = mine_hierarchization_rules(build_hierarchization_transactions(views), 1e-6);
    REQUIRE(!rules.empty());
    for (const auto& r : rules) {
        CHECK(r.confidence == doctest::Approx(1.0));
        if (r.child.rfind("M(steps)[", 0) == 0) CHECK(r.parent_label == "build");
    }
}

TEST_CASE("hierarchization rules: 2/3 confidence case") {
    std::vector<ViewNode> views = {
        view_of("jobs:\n  a:\n    steps:\n      - run: mvn test\n"),
        view_of("jobs:\n  a:\n    steps:\n      - run: mvn test\n"),
        view_of("other:\n  b:\n    steps:\n      - run: mvn test\n"),
    };
    auto rules = mine_hierarchization_rules(build_hierarchization_transactions(views), 1e-6);
    const HierarchizationRule* steps_a = nullptr;
    for (const auto& r : rules)
        if (r.child.rfind("M(steps)[", 0) == 0 && r.parent_label == "a") steps_a = &r;
    REQUIRE(steps_a != nullptr);
    CHECK(steps_a->confidence == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(mine_hierarchization_rules(TransactionSet{}, 1e-6).empty());
}
