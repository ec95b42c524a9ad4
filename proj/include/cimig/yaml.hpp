#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cimig {

enum class NodeKind { MappingKey, SequenceItem, Scalar };

char kind_tag(NodeKind k);
NodeKind kind_from_tag(char c);

// Ordered labeled tree node. MappingKey nodes carry the key as label and the
// value as children (a scalar value becomes a single Scalar child). Sequence
// items carry an empty label and wrap their element. Scalar nodes are leaves.
struct Node {
    NodeKind kind = NodeKind::MappingKey;
    std::string label;
    std::vector<Node> children;
    int node_id = -1;

    bool is_leaf() const { return children.empty(); }
};

enum class DialectKind { TravisCI, GitHubActions, Other };

struct Dialect {
    DialectKind kind = DialectKind::Other;
    std::string name; // set for Other

    static Dialect travis() { return {DialectKind::TravisCI, ""}; }
    static Dialect gha() { return {DialectKind::GitHubActions, ""}; }
    static Dialect other(std::string n) { return {DialectKind::Other, std::move(n)}; }
    static Dialect from_id(std::string_view id);

    std::string id() const;
    bool operator==(const Dialect& o) const { return id() == o.id(); }
};

// The document root is a MappingKey node with an empty label.
struct ConfigAST {
    Node root;
    Dialect dialect;
    std::optional<std::string> source_path;
};

class ParseError : public std::runtime_error {
public:
    ParseError(size_t line, size_t column, const std::string& msg);
    size_t line() const { return line_; }
    size_t column() const { return column_; }

private:
    size_t line_;
    size_t column_;
};

class EmitError : public std::runtime_error {
public:
    explicit EmitError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parses a single-document YAML text. Anchors and aliases are expanded,
// comments dropped, merge keys (<<) spliced. Multi-document input is rejected.
ConfigAST parse_config(std::string_view text, Dialect dialect);

// Emits block-style YAML such that parse_config(emit_yaml(ast)) is structurally
// equal to ast. An empty root emits "{}\n". Duplicate sibling mapping keys are
// refused with the offending path.
std::string emit_yaml(const ConfigAST& ast);

bool node_equal(const Node& a, const Node& b); // ignores node_id
bool ast_equal(const ConfigAST& a, const ConfigAST& b);
size_t count_nodes(const Node& n); // includes n itself

// Reassigns node_id values in preorder starting at 0 (root gets 0).
void renumber(ConfigAST& ast);

} // namespace cimig
