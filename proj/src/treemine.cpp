#include "cimig/treemine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace cimig {

namespace {

void collect_internal(const ViewNode& n, std::vector<ViewNode>& out) {
    if (!n.children.empty()) out.push_back(n);
    for (const auto& c : n.children) collect_internal(c, out);
}

std::string group_key(const ViewNode& n) { return std::string(1, kind_tag(n.kind)) + n.label; }

using Clock = std::chrono::steady_clock;

struct GroupMiner {
    const std::vector<ViewNode>& group;
    double min_support;
    Clock::time_point deadline;
    bool has_deadline = false;
    bool aborted = false;

    // Frequent candidates whose rightmost extensions are all infrequent.
    // Globally maximal trees always land here, so a pairwise filter over this
    // much smaller frontier recovers exactly the maximal set.
    std::vector<std::pair<ViewNode, long long>> frontier;

    long long count(const ViewNode& candidate) const {
        long long c = 0;
        for (const auto& m : group)
            if (contains_rooted(candidate, m)) ++c;
        return c;
    }

    bool is_frequent(long long cnt) const {
        return static_cast<double>(cnt) / static_cast<double>(group.size()) >= min_support;
    }

    // Appends a child to each node along the rightmost path and recurses.
    // Every ordered tree is generated exactly once this way. Attach points
    // are re-resolved by depth because push_back may reallocate siblings.
    // Returns true when some extension of `candidate` was frequent.
    bool expand(ViewNode& candidate, long long candidate_count,
                const std::vector<std::pair<NodeKind, std::string>>& alphabet) {
        if (has_deadline && Clock::now() > deadline) {
            aborted = true;
            return true; // suppress frontier insertion on abort paths
        }
        bool any_frequent_extension = false;
        size_t path_len = 1;
        for (const ViewNode* cur = &candidate; !cur->children.empty(); cur = &cur->children.back())
            ++path_len;
        for (size_t depth = 0; depth < path_len; ++depth) {
            for (const auto& [kind, label] : alphabet) {
                ViewNode* attach = &candidate;
                for (size_t i = 0; i < depth; ++i) attach = &attach->children.back();
                attach->children.push_back(ViewNode{kind, label, {}, -1});
                long long cnt = count(candidate);
                if (is_frequent(cnt)) {
                    any_frequent_extension = true;
                    if (!expand(candidate, cnt, alphabet) && !aborted)
                        frontier.emplace_back(candidate, cnt);
                }
                attach = &candidate;
                for (size_t i = 0; i < depth; ++i) attach = &attach->children.back();
                attach->children.pop_back();
                if (aborted) return true;
            }
        }
        (void)candidate_count;
        return any_frequent_extension;
    }
};

void add_subsets(int b, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(pick.size()) == k) {
            out.push_back(pick);
            return;
        }
        for (int i = start; i <= b - (k - static_cast<int>(pick.size())); ++i) {
            pick.push_back(i);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
}

} // namespace

std::vector<ViewNode> collect_sub_asts(const ViewNode& view) {
    std::vector<ViewNode> out;
    collect_internal(view, out);
    return out;
}

std::vector<std::pair<ViewNode, double>> mine_group(const std::vector<ViewNode>& group,
                                                    double min_support,
                                                    const TreeMineOptions& opts,
                                                    TreeMineStats* stats) {
    std::vector<std::pair<ViewNode, double>> out;
    if (group.empty()) return out;

    // group members share their root (kind,label) by construction
    std::vector<std::pair<NodeKind, std::string>> alphabet;
    {
        std::set<std::pair<char, std::string>> seen;
        std::function<void(const ViewNode&)> visit = [&](const ViewNode& n) {
            seen.emplace(kind_tag(n.kind), n.label);
            for (const auto& c : n.children) visit(c);
        };
        for (const auto& m : group)
            for (const auto& c : m.children) visit(c);
        for (const auto& [tag, label] : seen) alphabet.emplace_back(kind_from_tag(tag), label);
    }

    GroupMiner miner{group, min_support, {}, false, false, {}};
    if (opts.group_time_budget_ms > 0) {
        miner.deadline = Clock::now() + std::chrono::milliseconds(opts.group_time_budget_ms);
        miner.has_deadline = true;
    }
    ViewNode root;
    root.kind = group.front().kind;
    root.label = group.front().label;
    miner.expand(root, miner.count(root), alphabet);
    if (miner.aborted && stats) {
        stats->aborted = true;
        stats->warnings.push_back("tree mining time budget exhausted for group '" +
                                  group.front().label + "'; partial results kept");
    }

    // maximality: drop frontier candidates contained in a larger one
    const auto& freq = miner.frontier;
    for (size_t i = 0; i < freq.size(); ++i) {
        bool maximal = true;
        for (size_t j = 0; j < freq.size() && maximal; ++j) {
            if (i == j) continue;
            if (view_size(freq[j].first) <= view_size(freq[i].first)) continue;
            if (contains_rooted(freq[i].first, freq[j].first)) maximal = false;
        }
        if (maximal)
            out.emplace_back(freq[i].first, static_cast<double>(freq[i].second) /
                                                static_cast<double>(group.size()));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return canonical_form(a.first) < canonical_form(b.first);
    });
    return out;
}

std::vector<FrequentTree> mine_frequent_trees(const std::vector<ViewNode>& views, Dialect dialect,
                                              const TreeMineOptions& opts, TreeMineStats* stats) {
    std::map<std::string, std::vector<ViewNode>> groups;
    for (const auto& v : views)
        for (auto& sub : collect_sub_asts(v)) groups[group_key(sub)].push_back(std::move(sub));

    std::vector<FrequentTree> out;
    for (const auto& [key, group] : groups) {
        (void)key;
        for (auto& [tree, support] : mine_group(group, opts.min_support, opts, stats)) {
            FrequentTree ft;
            ft.root_label = tree.label;
            ft.tree = std::move(tree);
            ft.support = support;
            ft.dialect = dialect;
            out.push_back(std::move(ft));
        }
    }
    return out;
}

std::vector<Tar> derive_tars(const std::vector<FrequentTree>& trees, double branch_threshold) {
    std::vector<Tar> out;
    for (size_t t = 0; t < trees.size(); ++t) {
        const int b = static_cast<int>(trees[t].tree.children.size());
        if (b < 2) continue;
        const int k = std::max(
            1, static_cast<int>(std::ceil(branch_threshold * static_cast<double>(b) - 1e-9)));
        if (k > b - 1) continue;
        std::vector<std::vector<int>> picks;
        if (b <= 6) {
            add_subsets(b, k, picks);
        } else {
            for (int i = 0; i + k <= b; ++i) {
                std::vector<int> w(static_cast<size_t>(k));
                for (int j = 0; j < k; ++j) w[static_cast<size_t>(j)] = i + j;
                picks.push_back(std::move(w));
            }
        }
        for (auto& pick : picks) {
            Tar tar;
            tar.tree_index = static_cast<int>(t);
            tar.antecedent = std::move(pick);
            std::set<int> in_ant(tar.antecedent.begin(), tar.antecedent.end());
            for (int i = 0; i < b; ++i)
                if (!in_ant.count(i)) tar.consequent.push_back(i);
            out.push_back(std::move(tar));
        }
    }
    return out;
}

StatRuleIndex match_stat_rules_to_trees(const std::vector<TranslationRule>& r_stat,
                                        const std::vector<FrequentTree>& src_trees,
                                        const std::vector<FrequentTree>& tgt_trees) {
    StatRuleIndex index;
    index.per_rule.resize(r_stat.size());
    for (size_t r = 0; r < r_stat.size(); ++r) {
        ViewNode lhs = parse_canonical(r_stat[r].lhs);
        ViewNode rhs = parse_canonical(r_stat[r].rhs);
        for (size_t t = 0; t < src_trees.size(); ++t)
            if (contains_anywhere(lhs, src_trees[t].tree))
                index.per_rule[r].src_trees.push_back(static_cast<int>(t));
        for (size_t t = 0; t < tgt_trees.size(); ++t)
            if (contains_anywhere(rhs, tgt_trees[t].tree))
                index.per_rule[r].tgt_trees.push_back(static_cast<int>(t));
    }
    return index;
}

} // namespace cimig
