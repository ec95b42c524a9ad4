#include "cimig/apriori.hpp"

#include "cimig/text.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_set>

namespace cimig {

namespace item {

std::string src(const std::string& canonical) { return "S\t" + canonical; }
std::string tgt(const std::string& canonical) { return "T\t" + canonical; }
std::string child(const std::string& canonical) { return "C\t" + canonical; }

std::string parent(NodeKind kind, const std::string& label) {
    ViewNode leaf;
    leaf.kind = kind;
    leaf.label = label;
    return "P\t" + canonical_form(leaf);
}

bool has_tag(const std::string& it, char tag) {
    return it.size() >= 2 && it[0] == tag && it[1] == '\t';
}

std::string payload(const std::string& it) {
    size_t pos = it.find('\t');
    return pos == std::string::npos ? it : it.substr(pos + 1);
}

} // namespace item

int TransactionSet::intern(const std::string& text) {
    auto it = ids.find(text);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(items.size());
    items.push_back(text);
    ids.emplace(text, id);
    return id;
}

void TransactionSet::add_transaction(std::vector<std::string> item_texts) {
    std::vector<int> t;
    t.reserve(item_texts.size());
    for (auto& s : item_texts) t.push_back(intern(s));
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    transactions.push_back(std::move(t));
}

std::vector<AssociationRule> mine_apriori(const TransactionSet& ts, double min_support) {
    std::vector<AssociationRule> rules;
    const size_t n = ts.size();
    if (n == 0) return rules;

    std::vector<long long> item_count(ts.items.size(), 0);
    std::map<std::pair<int, int>, long long> pair_count;
    for (const auto& t : ts.transactions) {
        for (int id : t) ++item_count[static_cast<size_t>(id)];
        for (size_t i = 0; i < t.size(); ++i)
            for (size_t j = i + 1; j < t.size(); ++j) ++pair_count[{t[i], t[j]}];
    }

    std::vector<bool> frequent(ts.items.size(), false);
    for (size_t id = 0; id < ts.items.size(); ++id)
        frequent[id] = static_cast<double>(item_count[id]) / static_cast<double>(n) >= min_support;

    for (const auto& [pair, count] : pair_count) {
        auto [a, b] = pair;
        if (!frequent[static_cast<size_t>(a)] || !frequent[static_cast<size_t>(b)]) continue;
        double support = static_cast<double>(count) / static_cast<double>(n);
        if (support < min_support) continue;
        auto emit = [&](int lhs, int rhs) {
            AssociationRule r;
            r.lhs = ts.items[static_cast<size_t>(lhs)];
            r.rhs = ts.items[static_cast<size_t>(rhs)];
            r.support = support;
            r.confidence =
                static_cast<double>(count) / static_cast<double>(item_count[static_cast<size_t>(lhs)]);
            double p_rhs = static_cast<double>(item_count[static_cast<size_t>(rhs)]) /
                           static_cast<double>(n);
            r.lift = r.confidence / p_rhs;
            rules.push_back(std::move(r));
        };
        emit(a, b);
        emit(b, a);
    }
    std::sort(rules.begin(), rules.end(), [](const AssociationRule& x, const AssociationRule& y) {
        return x.lhs != y.lhs ? x.lhs < y.lhs : x.rhs < y.rhs;
    });
    return rules;
}

std::vector<std::string> unique_h2_canonicals(const ConfigAST& ast) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& h2 : extract_h2(ast)) {
        std::string c = canonical_form(h2);
        if (seen.insert(c).second) out.push_back(std::move(c));
    }
    return out;
}

TransactionSet build_translation_transactions(
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& pair_h2s,
    size_t cartesian_cap, uint64_t seed, TransactionBuildStats* stats) {
    TransactionSet ts;
    TransactionBuildStats local;
    local.pairs = pair_h2s.size();
    size_t pair_index = 0;
    for (const auto& [src_h2s, tgt_h2s] : pair_h2s) {
        ++pair_index;
        if (src_h2s.empty() || tgt_h2s.empty()) {
            ++local.pairs_with_empty_side;
            local.warnings.push_back("pair " + std::to_string(pair_index) +
                                     " has an empty H-2 set on one side; contributes no transactions");
            continue;
        }
        const uint64_t cross = static_cast<uint64_t>(src_h2s.size()) * tgt_h2s.size();
        if (cartesian_cap > 0 && cross > cartesian_cap) {
            ++local.pairs_sampled;
            local.warnings.push_back("pair " + std::to_string(pair_index) + " cartesian product " +
                                     std::to_string(cross) + " exceeds cap " +
                                     std::to_string(cartesian_cap) + "; sampled");
            std::mt19937_64 rng(seed + pair_index);
            std::unordered_set<uint64_t> chosen;
            chosen.reserve(cartesian_cap * 2);
            while (chosen.size() < cartesian_cap) chosen.insert(rng() % cross);
            std::vector<uint64_t> ordered(chosen.begin(), chosen.end());
            std::sort(ordered.begin(), ordered.end());
            for (uint64_t flat : ordered) {
                const auto& s = src_h2s[static_cast<size_t>(flat / tgt_h2s.size())];
                const auto& t = tgt_h2s[static_cast<size_t>(flat % tgt_h2s.size())];
                ts.add_transaction({item::src(s), item::tgt(t)});
            }
        } else {
            for (const auto& s : src_h2s)
                for (const auto& t : tgt_h2s) ts.add_transaction({item::src(s), item::tgt(t)});
        }
    }
    if (stats) *stats = std::move(local);
    return ts;
}

TransactionSet build_hierarchization_transactions(const std::vector<ViewNode>& target_views) {
    TransactionSet ts;
    for (const auto& view : target_views) {
        std::set<std::pair<std::string, std::string>> seen;
        for (const auto& h2 : extract_h2(view)) {
            if (h2.parent_is_root || !h2.grandparent) continue;
            if (h2.grandparent->second.empty()) continue; // root or anonymous item
            std::string c = item::child(canonical_form(h2));
            std::string p = item::parent(h2.grandparent->first, h2.grandparent->second);
            if (seen.emplace(c, p).second) ts.add_transaction({c, p});
        }
    }
    return ts;
}

namespace {

struct RuleKey {
    std::string lhs, rhs;
    bool operator<(const RuleKey& o) const {
        return lhs != o.lhs ? lhs < o.lhs : rhs < o.rhs;
    }
};

} // namespace

std::vector<TranslationRule> filter_translation_rules(const std::vector<AssociationRule>& rules) {
    std::map<RuleKey, const AssociationRule*> index;
    for (const auto& r : rules) index[{r.lhs, r.rhs}] = &r;

    std::vector<TranslationRule> out;
    for (const auto& r : rules) {
        if (!item::has_tag(r.lhs, 'S') || !item::has_tag(r.rhs, 'T')) continue;
        TranslationRule tr;
        tr.lhs = item::payload(r.lhs);
        tr.rhs = item::payload(r.rhs);
        tr.support = r.support;
        tr.confidence = r.confidence;
        tr.lift = r.lift;
        auto it = index.find({r.rhs, r.lhs});
        if (it != index.end()) {
            tr.flipped_support = it->second->support;
            tr.flipped_confidence = it->second->confidence;
            tr.flipped_lift = it->second->lift;
        }
        tr.support_product = tr.support * tr.flipped_support;
        tr.confidence_product = tr.confidence * tr.flipped_confidence;
        tr.lift_product = tr.lift * tr.flipped_lift;
        out.push_back(std::move(tr));
    }
    return out;
}

double translation_rule_leaf_cosine(const std::string& lhs_canonical,
                                    const std::string& rhs_canonical) {
    auto leaves_text = [](const std::string& canonical) {
        ViewNode v = parse_canonical(canonical);
        std::vector<std::string> labels;
        labels.reserve(v.children.size());
        for (const auto& c : v.children) labels.push_back(c.label);
        return join(labels, " ");
    };
    return tf_cosine(leaves_text(lhs_canonical), leaves_text(rhs_canonical));
}

std::pair<std::vector<TranslationRule>, std::vector<TranslationRule>>
bifurcate_rules(std::vector<TranslationRule> rules, double threshold) {
    std::vector<TranslationRule> sim, stat;
    for (auto& r : rules) {
        r.leaf_cosine = translation_rule_leaf_cosine(r.lhs, r.rhs);
        if (r.leaf_cosine > threshold) {
            r.cls = RuleClass::Sim;
            sim.push_back(std::move(r));
        } else {
            r.cls = RuleClass::Stat;
            stat.push_back(std::move(r));
        }
    }
    return {std::move(sim), std::move(stat)};
}

std::vector<HierarchizationRule> mine_hierarchization_rules(const TransactionSet& th,
                                                            double min_support) {
    std::vector<AssociationRule> rules = mine_apriori(th, min_support);
    std::map<RuleKey, const AssociationRule*> index;
    for (const auto& r : rules) index[{r.lhs, r.rhs}] = &r;

    std::vector<HierarchizationRule> out;
    for (const auto& r : rules) {
        if (!item::has_tag(r.lhs, 'C') || !item::has_tag(r.rhs, 'P')) continue;
        HierarchizationRule hr;
        hr.child = item::payload(r.lhs);
        ViewNode parent = parse_canonical(item::payload(r.rhs));
        hr.parent_kind = parent.kind;
        hr.parent_label = parent.label;
        hr.support = r.support;
        hr.confidence = r.confidence;
        hr.lift = r.lift;
        auto it = index.find({r.rhs, r.lhs});
        if (it != index.end()) {
            hr.flipped_support = it->second->support;
            hr.flipped_confidence = it->second->confidence;
            hr.flipped_lift = it->second->lift;
        }
        hr.support_product = hr.support * hr.flipped_support;
        hr.confidence_product = hr.confidence * hr.flipped_confidence;
        hr.lift_product = hr.lift * hr.flipped_lift;
        out.push_back(std::move(hr));
    }
    return out;
}

bool rule_rank_less(const TranslationRule& a, const TranslationRule& b) {
    if (a.confidence_product != b.confidence_product)
        return a.confidence_product > b.confidence_product;
    if (a.support_product != b.support_product) return a.support_product > b.support_product;
    if (a.lift_product != b.lift_product) return a.lift_product > b.lift_product;
    if (a.lhs != b.lhs) return a.lhs < b.lhs;
    return a.rhs < b.rhs;
}

bool rule_rank_less(const HierarchizationRule& a, const HierarchizationRule& b) {
    if (a.confidence_product != b.confidence_product)
        return a.confidence_product > b.confidence_product;
    if (a.support_product != b.support_product) return a.support_product > b.support_product;
    if (a.lift_product != b.lift_product) return a.lift_product > b.lift_product;
    if (a.child != b.child) return a.child < b.child;
    if (a.parent_label != b.parent_label) return a.parent_label < b.parent_label;
    return kind_tag(a.parent_kind) < kind_tag(b.parent_kind);
}

} // namespace cimig
