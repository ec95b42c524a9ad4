#pragma once

#include "cimig/h2.hpp"
#include "cimig/yaml.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cimig {

// Item texts carry a side/role tag so rule formats can be filtered after
// mining: "S\t..." / "T\t..." for translation pairs, "C\t..." / "P\t..." for
// hierarchization.
namespace item {
std::string src(const std::string& canonical);
std::string tgt(const std::string& canonical);
std::string child(const std::string& canonical);
std::string parent(NodeKind kind, const std::string& label);
bool has_tag(const std::string& item, char tag);
std::string payload(const std::string& item);
} // namespace item

struct TransactionSet {
    std::vector<std::string> items;            // id -> text
    std::map<std::string, int> ids;            // text -> id
    std::vector<std::vector<int>> transactions; // sorted unique ids

    int intern(const std::string& text);
    void add_transaction(std::vector<std::string> item_texts);
    size_t size() const { return transactions.size(); }
};

struct AssociationRule {
    std::string lhs;
    std::string rhs;
    double support = 0.0;
    double confidence = 0.0;
    double lift = 0.0;
};

// All 2-itemset rules with support >= min_support, both orientations, sorted
// by (lhs, rhs). Empty input yields an empty list.
std::vector<AssociationRule> mine_apriori(const TransactionSet& ts, double min_support);

enum class RuleClass { Sim, Stat };

struct TranslationRule {
    std::string lhs; // source-dialect H2 canonical form (untagged)
    std::string rhs; // target-dialect H2 canonical form
    double support = 0.0, confidence = 0.0, lift = 0.0;
    double flipped_support = 0.0, flipped_confidence = 0.0, flipped_lift = 0.0;
    double support_product = 0.0, confidence_product = 0.0, lift_product = 0.0;
    double leaf_cosine = 0.0;
    RuleClass cls = RuleClass::Stat;
};

struct HierarchizationRule {
    std::string child; // H2 canonical form
    NodeKind parent_kind = NodeKind::MappingKey;
    std::string parent_label;
    double support = 0.0, confidence = 0.0, lift = 0.0;
    double flipped_support = 0.0, flipped_confidence = 0.0, flipped_lift = 0.0;
    double support_product = 0.0, confidence_product = 0.0, lift_product = 0.0;
};

struct TransactionBuildStats {
    size_t pairs = 0;
    size_t pairs_with_empty_side = 0;
    size_t pairs_sampled = 0;
    std::vector<std::string> warnings;
};

// Unique H2 canonical forms of one file, document order, first occurrence kept.
std::vector<std::string> unique_h2_canonicals(const ConfigAST& ast);

// Cartesian product of the two H2 sets per pair, concatenated over pairs.
// Products larger than `cartesian_cap` are down-sampled with the given seed.
TransactionSet build_translation_transactions(
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& pair_h2s,
    size_t cartesian_cap, uint64_t seed, TransactionBuildStats* stats = nullptr);

// One transaction per extracted H2 with a named (non-root, non-anonymous)
// grandparent: {CHILD: canonical(h2), PARENT: kind(label)}. Deduplicated per
// file.
TransactionSet build_hierarchization_transactions(const std::vector<ViewNode>& target_views);

// Keeps SRC => TGT rules, attaches the flipped rule's metrics and the three
// products. Ties in later ranking break on support product, lift product,
// then lexicographic canonical forms.
std::vector<TranslationRule> filter_translation_rules(const std::vector<AssociationRule>& rules);

// Partitions by leaf cosine: > threshold goes to R_sim, the rest to R_stat.
std::pair<std::vector<TranslationRule>, std::vector<TranslationRule>>
bifurcate_rules(std::vector<TranslationRule> rules, double threshold);

std::vector<HierarchizationRule> mine_hierarchization_rules(const TransactionSet& th,
                                                            double min_support);

double translation_rule_leaf_cosine(const std::string& lhs_canonical,
                                    const std::string& rhs_canonical);

// Ranking used everywhere a "best rule" is chosen.
bool rule_rank_less(const TranslationRule& a, const TranslationRule& b);
bool rule_rank_less(const HierarchizationRule& a, const HierarchizationRule& b);

} // namespace cimig
