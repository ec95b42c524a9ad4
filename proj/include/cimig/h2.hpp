#pragma once

#include "cimig/view.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cimig {

struct H2Child {
    NodeKind kind = NodeKind::Scalar;
    std::string label;
    int origin_scalar_id = -1; // AST scalar node backing this leaf, -1 if none
    bool synthetic = false;    // leaf created by pruning an extracted parent
};

// Height-2 sub-AST: one parent plus its leaf children at extraction time.
struct H2Tree {
    NodeKind parent_kind = NodeKind::MappingKey;
    std::string parent_label;
    std::vector<H2Child> children;
    int h2_id = 0;
    int origin_node_id = -1; // AST id of the parent node
    bool parent_is_root = false;
    std::optional<std::pair<NodeKind, std::string>> grandparent;
    int parent_depth = 0; // root = 0
};

std::string canonical_form(const H2Tree& h2);
ViewNode to_view(const H2Tree& h2);
H2Tree h2_from_view(const ViewNode& v); // ids/context default-initialized

// Bottom-up extraction over the folded view: repeatedly collects every node
// whose children are all leaves, then prunes those children so the parent
// becomes a leaf for the next round. The result is ordered by the parent's
// document (preorder) position.
std::vector<H2Tree> extract_h2(const ConfigAST& ast);
std::vector<H2Tree> extract_h2(const ViewNode& view);

} // namespace cimig
