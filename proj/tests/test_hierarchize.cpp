// Hand-traced hierarchization fixtures: each case builds a working tree plus
// parked H2s, runs the hierarchization pass and compares the whole tree
// against the expected canonical form node for node.
#include "cimig/translate.hpp"

#include <doctest.h>

using namespace cimig;

namespace {

TranslationState make_state(const std::vector<std::string>& root_children) {
    TranslationState state;
    for (const auto& canon : root_children)
        state.tree.append(state.tree.root(), state.tree.materialize(parse_canonical(canon)));
    return state;
}

void park(TranslationState& state, const std::string& canon) {
    GenNode* n = state.tree.append(state.tree.root(), state.tree.materialize(parse_canonical(canon)));
    state.root_attached.push_back(n->id);
}

HierarchizationRule hrule(const std::string& child, const std::string& parent_label,
                          double confidence_product) {
    HierarchizationRule r;
    r.child = child;
    r.parent_kind = NodeKind::MappingKey;
    r.parent_label = parent_label;
    r.support = 0.1;
    r.confidence = 1.0;
    r.lift = 1.0;
    r.flipped_support = 0.1;
    r.flipped_confidence = confidence_product;
    r.flipped_lift = 1.0;
    r.support_product = 0.01;
    r.confidence_product = confidence_product;
    r.lift_product = 1.0;
    return r;
}

RuleModel with_rules(std::vector<HierarchizationRule> rules) {
    RuleModel m;
    m.h_rules = std::move(rules);
    return m;
}

std::string tree_canon(TranslationState& state) { return canonical_form(state.tree.to_view()); }

} // namespace

TEST_CASE("h1: parked H2 grafts into the unique matching node") {
    TranslationState s = make_state({"M(jobs)[M(build)[M(steps)[S(uses: a)]]]"});
    park(s, "M(steps)[S(run: b)]");
    RuleModel m = with_rules({});
    hierarchize(s, m);
    CHECK(tree_canon(s) == "M()[M(jobs)[M(build)[M(steps)[S(uses: a),S(run: b)]]]]");
    CHECK(s.root_attached.empty());
}

TEST_CASE("h2: deepest match wins") {
    TranslationState s = make_state({"M(a)[M(steps)[S(x)]]", "M(b)[M(c)[M(steps)[S(y)]]]"});
    park(s, "M(steps)[S(z)]");
    RuleModel m = with_rules({});
    hierarchize(s, m);
    CHECK(tree_canon(s) == "M()[M(a)[M(steps)[S(x)]],M(b)[M(c)[M(steps)[S(y),S(z)]]]]");
}

TEST_CASE("h3: equal depth resolves to the first in document order") {
    TranslationState s = make_state({"M(a)[M(steps)[S(x)]]", "M(b)[M(steps)[S(y)]]"});
    park(s, "M(steps)[S(z)]");
    RuleModel m = with_rules({});
    hierarchize(s, m);
    CHECK(tree_canon(s) == "M()[M(a)[M(steps)[S(x),S(z)]],M(b)[M(steps)[S(y)]]]");
}

TEST_CASE("h4: no match, rule parent exists: H2 moves under it") {
    TranslationState s = make_state({"M(build)[M(env)[M(k: v)]]"});
    park(s, "M(steps)[S(z)]");
    RuleModel m = with_rules({hrule("M(steps)[S(z)]", "build", 0.9)});
    hierarchize(s, m);
    CHECK(tree_canon(s) == "M()[M(build)[M(env)[M(k: v)],M(steps)[S(z)]]]");
}

TEST_CASE("h5: no match and no rule-parent node: new parent plus H2 at the root") {
    TranslationState s = make_state({"M(language: java)"});
    park(s, "M(steps)[S(z)]");
    RuleModel m = with_rules({hrule("M(steps)[S(z)]", "build", 0.9)});
    hierarchize(s, m);
    CHECK(tree_canon(s) == "M()[M(language: java),M(build)[M(steps)[S(z)]]]");
}

TEST_CASE("h6: no match and no rule: the H2 stays at the root") {
    TranslationState s = make_state({"M(a: 1)"});
    park(s, "M(steps)[S(z)]");
    RuleModel m = with_rules({});
    hierarchize(s, m);
    CHECK(tree_canon(s) == "M()[M(a: 1),M(steps)[S(z)]]");
    CHECK(s.root_attached.size() == 1);
}

TEST_CASE("h7: later H2s use nodes synthesized earlier in the pass") {
    TranslationState s = make_state({});
    park(s, "M(deploy)[M(steps)]"); // synthesizes build, exposing a steps node
    park(s, "M(steps)[S(z)]");      // then grafts into it
    RuleModel m = with_rules({hrule("M(deploy)[M(steps)]", "build", 0.8)});
    hierarchize(s, m);
    CHECK(tree_canon(s) == "M()[M(build)[M(deploy)[M(steps)[S(z)]]]]");
    CHECK(s.root_attached.empty());
}

TEST_CASE("h7b: parked siblings are part of the search space") {
    // Algorithm 1 searches the whole generated AST, so an H2 parked earlier
    // can receive another parked H2's children directly.
    TranslationState s = make_state({});
    park(s, "M(steps)[S(z)]");
    park(s, "M(deploy)[M(steps)]");
    RuleModel m = with_rules({});
    hierarchize(s, m);
    // the first H2 grafts into the second one's steps leaf; the second stays
    CHECK(tree_canon(s) == "M()[M(deploy)[M(steps)[S(z)]]]");
    CHECK(s.root_attached.size() == 1);
}

TEST_CASE("h8: the best rule by confidence product is chosen") {
    TranslationState s = make_state({"M(wrong)[M(q: 1)]", "M(right)[M(r: 1)]"});
    park(s, "M(script)[S(cmd)]");
    RuleModel m = with_rules({hrule("M(script)[S(cmd)]", "wrong", 0.5),
                              hrule("M(script)[S(cmd)]", "right", 0.9)});
    hierarchize(s, m);
    CHECK(tree_canon(s) == "M()[M(wrong)[M(q: 1)],M(right)[M(r: 1),M(script)[S(cmd)]]]");
}

TEST_CASE("h8b: confidence tie falls through to support product") {
    TranslationState s = make_state({"M(wrong)[M(q: 1)]", "M(right)[M(r: 1)]"});
    park(s, "M(script)[S(cmd)]");
    HierarchizationRule low = hrule("M(script)[S(cmd)]", "wrong", 0.5);
    HierarchizationRule high = hrule("M(script)[S(cmd)]", "right", 0.5);
    high.support_product = 0.2; // beats low's 0.01
    RuleModel m = with_rules({low, high});
    hierarchize(s, m);
    CHECK(tree_canon(s) == "M()[M(wrong)[M(q: 1)],M(right)[M(r: 1),M(script)[S(cmd)]]]");
}

TEST_CASE("h9: anonymous item H2s only move via rules") {
    TranslationState s = make_state({"M(jobs)[M(build)[M(steps)[S(uses: a)]]]"});
    park(s, "S()[M(name: n),M(run: c)]");
    RuleModel m = with_rules({hrule("S()[M(name: n),M(run: c)]", "steps", 0.7)});
    hierarchize(s, m);
    CHECK(tree_canon(s) ==
          "M()[M(jobs)[M(build)[M(steps)[S(uses: a),S()[M(name: n),M(run: c)]]]]]");
}

TEST_CASE("h10: grafting deduplicates exact children") {
    TranslationState s = make_state({"M(jobs)[M(steps)[S(run: x)]]"});
    park(s, "M(steps)[S(run: x),S(run: y)]");
    RuleModel m = with_rules({});
    hierarchize(s, m);
    CHECK(tree_canon(s) == "M()[M(jobs)[M(steps)[S(run: x),S(run: y)]]]");
}

TEST_CASE("h11: no parked H2s leaves the tree unchanged") {
    TranslationState s = make_state({"M(a: 1)", "M(b)[S(c)]"});
    std::string before = tree_canon(s);
    RuleModel m = with_rules({hrule("M(x)[S(y)]", "z", 0.9)});
    hierarchize(s, m);
    CHECK(tree_canon(s) == before);
}

TEST_CASE("h12: hierarchize is a fixpoint") {
    TranslationState s = make_state({"M(language: java)"});
    park(s, "M(steps)[S(z)]");
    park(s, "M(other)[S(w)]");
    RuleModel m = with_rules({hrule("M(steps)[S(z)]", "build", 0.9)});
    hierarchize(s, m);
    std::string once = tree_canon(s);
    hierarchize(s, m);
    CHECK(tree_canon(s) == once);
}
