#pragma once

#include "cimig/apriori.hpp"
#include "cimig/view.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cimig {

struct FrequentTree {
    ViewNode tree;
    double support = 0.0; // fraction of the root group's sub-ASTs containing it
    Dialect dialect;
    std::string root_label;
};

// A frequent tree split into root + antecedent branches and the remaining
// consequent branches. Branch values index into tree.children.
struct Tar {
    int tree_index = 0;
    std::vector<int> antecedent;
    std::vector<int> consequent;
};

struct StatRuleTrees {
    std::vector<int> src_trees;
    std::vector<int> tgt_trees;
    bool usable() const { return !src_trees.empty() && !tgt_trees.empty(); }
};

// Parallel to the stat rule set it was built from.
struct StatRuleIndex {
    std::vector<StatRuleTrees> per_rule;
};

struct TreeMineOptions {
    double min_support = 0.05;
    std::int64_t group_time_budget_ms = 20000; // <= 0 disables the budget
};

struct TreeMineStats {
    bool aborted = false;
    std::vector<std::string> warnings;
};

// Collects one sub-AST per internal node (document root included) from each
// view; used to build the mining groups.
std::vector<ViewNode> collect_sub_asts(const ViewNode& view);

// Maximal induced ordered subtrees anchored at the shared group root,
// occurring in at least min_support of the group's trees (document
// frequency). Root-only results are not reported.
std::vector<std::pair<ViewNode, double>> mine_group(const std::vector<ViewNode>& group,
                                                    double min_support,
                                                    const TreeMineOptions& opts,
                                                    TreeMineStats* stats = nullptr);

std::vector<FrequentTree> mine_frequent_trees(const std::vector<ViewNode>& views, Dialect dialect,
                                              const TreeMineOptions& opts,
                                              TreeMineStats* stats = nullptr);

// One TAR per antecedent choice of ceil(threshold * b) branches: every subset
// for b <= 6, contiguous windows beyond that. Single-branch trees yield none.
std::vector<Tar> derive_tars(const std::vector<FrequentTree>& trees, double branch_threshold);

// Containment means the rule side's H2 pattern embeds somewhere in the tree.
StatRuleIndex match_stat_rules_to_trees(const std::vector<TranslationRule>& r_stat,
                                        const std::vector<FrequentTree>& src_trees,
                                        const std::vector<FrequentTree>& tgt_trees);

} // namespace cimig
