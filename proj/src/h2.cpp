#include "cimig/h2.hpp"

#include <algorithm>
#include <map>

namespace cimig {

std::string canonical_form(const H2Tree& h2) { return canonical_form(to_view(h2)); }

ViewNode to_view(const H2Tree& h2) {
    ViewNode v;
    v.kind = h2.parent_kind;
    v.label = h2.parent_label;
    v.origin_id = h2.origin_node_id;
    for (const auto& c : h2.children) {
        ViewNode leaf;
        leaf.kind = c.kind;
        leaf.label = c.label;
        leaf.origin_id = c.origin_scalar_id;
        v.children.push_back(std::move(leaf));
    }
    return v;
}

H2Tree h2_from_view(const ViewNode& v) {
    H2Tree h2;
    h2.parent_kind = v.kind;
    h2.parent_label = v.label;
    for (const auto& c : v.children) {
        H2Child child;
        child.kind = c.kind;
        child.label = c.label;
        child.origin_scalar_id = c.origin_id;
        h2.children.push_back(std::move(child));
    }
    return h2;
}

namespace {

struct WorkNode {
    NodeKind kind;
    std::string label;
    std::vector<WorkNode> children;
    int origin_id = -1;
    int preorder = 0;
    bool synthetic_leaf = false; // became a leaf by pruning

    bool is_leaf() const { return children.empty(); }
};

WorkNode to_work(const ViewNode& v, int& counter) {
    WorkNode w;
    w.kind = v.kind;
    w.label = v.label;
    w.origin_id = v.origin_id;
    w.preorder = counter++;
    for (const auto& c : v.children) w.children.push_back(to_work(c, counter));
    return w;
}

// One extraction round; returns true when something was extracted. `parent`
// is the node above `node`, i.e. the grandparent of any H2 rooted at `node`.
bool extract_round(WorkNode& node, const WorkNode* parent, int depth, std::vector<H2Tree>& out) {
    bool changed = false;
    if (!node.is_leaf()) {
        bool all_leaves = std::all_of(node.children.begin(), node.children.end(),
                                      [](const WorkNode& c) { return c.is_leaf(); });
        if (all_leaves) {
            H2Tree h2;
            h2.parent_kind = node.kind;
            h2.parent_label = node.label;
            h2.origin_node_id = node.origin_id;
            h2.parent_is_root = parent == nullptr;
            h2.parent_depth = depth;
            if (parent != nullptr) h2.grandparent = std::make_pair(parent->kind, parent->label);
            for (const auto& c : node.children) {
                H2Child child;
                child.kind = c.kind;
                child.label = c.label;
                child.origin_scalar_id = c.synthetic_leaf ? -1 : c.origin_id;
                child.synthetic = c.synthetic_leaf;
                h2.children.push_back(std::move(child));
            }
            h2.h2_id = node.preorder; // temporary ordering key
            out.push_back(std::move(h2));
            node.children.clear();
            node.synthetic_leaf = true;
            return true;
        }
        for (auto& c : node.children)
            changed |= extract_round(c, &node, depth + 1, out);
    }
    return changed;
}

} // namespace

std::vector<H2Tree> extract_h2(const ViewNode& view) {
    int counter = 0;
    WorkNode work = to_work(view, counter);
    std::vector<H2Tree> h2s;
    if (work.is_leaf()) return h2s;
    while (extract_round(work, nullptr, 0, h2s)) {
    }
    std::stable_sort(h2s.begin(), h2s.end(),
                     [](const H2Tree& a, const H2Tree& b) { return a.h2_id < b.h2_id; });
    for (size_t i = 0; i < h2s.size(); ++i) h2s[i].h2_id = static_cast<int>(i);
    return h2s;
}

std::vector<H2Tree> extract_h2(const ConfigAST& ast) { return extract_h2(fold_view(ast)); }

} // namespace cimig
