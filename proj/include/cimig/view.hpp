#pragma once

#include "cimig/yaml.hpp"

#include <string>
#include <vector>

namespace cimig {

// Folded working representation of a config tree. Key-value pairs collapse
// into one leaf labeled "key: value"; sequence items wrapping a scalar or a
// single-pair mapping collapse the same way. All mining and translation
// operates on this form, which matches how rules textually name tree parts.
struct ViewNode {
    NodeKind kind = NodeKind::MappingKey;
    std::string label;
    std::vector<ViewNode> children;
    // id of the AST node whose scalar text this leaf carries (-1 when none,
    // e.g. synthetic leaves). Internal view nodes carry the source node id.
    int origin_id = -1;

    bool is_leaf() const { return children.empty(); }
};

// Root of the folded view is (MappingKey, "").
ViewNode fold_view(const ConfigAST& ast);
ViewNode fold_view(const Node& root);

// Inverse of fold_view up to scalar/mapping ambiguity of "k: v" sequence
// items (unfold prefers the single-pair mapping reading). Children of mixed
// kinds are coerced to the kind of the first child.
Node unfold_view(const ViewNode& view);

// Deterministic injective encoding: kind tag + parenthesized label, children
// bracketed recursively. Delimiters and backslash inside labels are escaped.
std::string canonical_form(const ViewNode& n);
ViewNode parse_canonical(std::string_view text);

bool view_equal(const ViewNode& a, const ViewNode& b);
size_t view_size(const ViewNode& n);

// Rooted induced ordered containment: pattern's root must map onto host's
// root; children map to an order-preserving subsequence, recursively.
bool contains_rooted(const ViewNode& pattern, const ViewNode& host);

// Unanchored variant: true when some node of host (matching the pattern root's
// kind and label) roots an induced ordered embedding of pattern.
bool contains_anywhere(const ViewNode& pattern, const ViewNode& host);

} // namespace cimig
