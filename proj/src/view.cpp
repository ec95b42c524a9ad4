#include "cimig/view.hpp"

#include "cimig/text.hpp"

#include <stdexcept>

namespace cimig {

namespace {

bool foldable(const Node& n) {
    return (n.kind == NodeKind::MappingKey || n.kind == NodeKind::SequenceItem) &&
           n.children.size() == 1 && n.children[0].kind == NodeKind::Scalar;
}

// A sequence item wrapping exactly one single-pair mapping ("- run: x").
bool foldable_pair_item(const Node& n) {
    return n.kind == NodeKind::SequenceItem && n.children.size() == 1 &&
           n.children[0].kind == NodeKind::MappingKey && foldable(n.children[0]);
}

ViewNode fold_node(const Node& n) {
    if (foldable(n)) {
        ViewNode leaf;
        leaf.kind = n.kind;
        leaf.origin_id = n.children[0].node_id;
        if (n.kind == NodeKind::MappingKey)
            leaf.label = n.label + ": " + n.children[0].label;
        else
            leaf.label = n.children[0].label;
        return leaf;
    }
    if (foldable_pair_item(n)) {
        const Node& pair = n.children[0];
        ViewNode leaf;
        leaf.kind = NodeKind::SequenceItem;
        leaf.label = pair.label + ": " + pair.children[0].label;
        leaf.origin_id = pair.children[0].node_id;
        return leaf;
    }
    ViewNode v;
    v.kind = n.kind;
    v.label = n.label;
    v.origin_id = n.node_id;
    v.children.reserve(n.children.size());
    for (const auto& c : n.children) v.children.push_back(fold_node(c));
    return v;
}

Node unfold_node(const ViewNode& v) {
    Node n;
    n.kind = v.kind;
    if (v.is_leaf()) {
        std::string key, value;
        switch (v.kind) {
        case NodeKind::Scalar:
            n.label = v.label;
            break;
        case NodeKind::MappingKey:
            if (split_key_value(v.label, key, value)) {
                n.label = key;
                n.children.push_back(Node{NodeKind::Scalar, value, {}, -1});
            } else {
                n.label = v.label;
            }
            break;
        case NodeKind::SequenceItem:
            if (split_key_value(v.label, key, value)) {
                Node pair{NodeKind::MappingKey, key, {}, -1};
                pair.children.push_back(Node{NodeKind::Scalar, value, {}, -1});
                n.children.push_back(std::move(pair));
            } else if (!v.label.empty()) {
                n.children.push_back(Node{NodeKind::Scalar, v.label, {}, -1});
            }
            break;
        }
        return n;
    }
    n.label = v.label;
    n.children.reserve(v.children.size());
    for (const auto& c : v.children) n.children.push_back(unfold_node(c));
    if (!n.children.empty()) {
        // coerce stragglers to the first child's kind so emission stays valid
        NodeKind lead = n.children[0].kind;
        if (lead == NodeKind::Scalar && n.children.size() > 1) lead = NodeKind::MappingKey;
        for (auto& c : n.children) {
            if (c.kind == NodeKind::Scalar) continue;
            if (c.kind != lead) {
                if (lead == NodeKind::SequenceItem) {
                    Node wrapped{NodeKind::SequenceItem, "", {}, -1};
                    wrapped.children.push_back(std::move(c));
                    c = std::move(wrapped);
                } else {
                    c.kind = lead;
                }
            }
        }
    }
    return n;
}

void escape_into(const std::string& s, std::string& out) {
    for (char c : s) {
        if (c == '\\' || c == '(' || c == ')' || c == '[' || c == ']' || c == ',')
            out += '\\';
        out += c;
    }
}

void encode(const ViewNode& n, std::string& out) {
    out += kind_tag(n.kind);
    out += '(';
    escape_into(n.label, out);
    out += ')';
    if (!n.children.empty()) {
        out += '[';
        for (size_t i = 0; i < n.children.size(); ++i) {
            if (i) out += ',';
            encode(n.children[i], out);
        }
        out += ']';
    }
}

struct CanonParser {
    std::string_view s;
    size_t i = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("canonical form: " + msg + " at offset " + std::to_string(i));
    }

    char peek() const { return i < s.size() ? s[i] : '\0'; }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++i;
    }

    ViewNode parse_node() {
        if (i >= s.size()) fail("unexpected end");
        ViewNode n;
        n.kind = kind_from_tag(s[i++]);
        expect('(');
        std::string label;
        while (i < s.size() && s[i] != ')') {
            char c = s[i];
            if (c == '\\') {
                if (i + 1 >= s.size()) fail("dangling escape");
                label += s[i + 1];
                i += 2;
            } else if (c == '(' || c == '[' || c == ']' || c == ',') {
                fail("unescaped delimiter in label");
            } else {
                label += c;
                ++i;
            }
        }
        expect(')');
        n.label = std::move(label);
        if (peek() == '[') {
            ++i;
            while (true) {
                n.children.push_back(parse_node());
                if (peek() == ',') {
                    ++i;
                    continue;
                }
                break;
            }
            expect(']');
        }
        return n;
    }
};

bool embed_children(const std::vector<ViewNode>& pat, const std::vector<ViewNode>& host, size_t pi,
                    size_t hi);

bool embeds(const ViewNode& pattern, const ViewNode& host) {
    if (pattern.kind != host.kind || pattern.label != host.label) return false;
    if (pattern.children.empty()) return true;
    return embed_children(pattern.children, host.children, 0, 0);
}

// Order-preserving embedding of pattern children into host children with gaps.
bool embed_children(const std::vector<ViewNode>& pat, const std::vector<ViewNode>& host, size_t pi,
                    size_t hi) {
    if (pi == pat.size()) return true;
    if (pat.size() - pi > host.size() - hi) return false;
    for (size_t j = hi; j + (pat.size() - pi) <= host.size(); ++j) {
        if (embeds(pat[pi], host[j]) && embed_children(pat, host, pi + 1, j + 1)) return true;
    }
    return false;
}

bool search_anywhere(const ViewNode& pattern, const ViewNode& host) {
    if (embeds(pattern, host)) return true;
    for (const auto& c : host.children)
        if (search_anywhere(pattern, c)) return true;
    return false;
}

} // namespace

ViewNode fold_view(const Node& root) {
    ViewNode v;
    v.kind = NodeKind::MappingKey;
    v.label = "";
    v.origin_id = root.node_id;
    v.children.reserve(root.children.size());
    for (const auto& c : root.children) v.children.push_back(fold_node(c));
    return v;
}

ViewNode fold_view(const ConfigAST& ast) { return fold_view(ast.root); }

Node unfold_view(const ViewNode& view) {
    Node root{NodeKind::MappingKey, "", {}, -1};
    root.children.reserve(view.children.size());
    for (const auto& c : view.children) root.children.push_back(unfold_node(c));
    return root;
}

std::string canonical_form(const ViewNode& n) {
    std::string out;
    encode(n, out);
    return out;
}

ViewNode parse_canonical(std::string_view text) {
    CanonParser p{text};
    ViewNode n = p.parse_node();
    if (p.i != text.size()) p.fail("trailing characters");
    return n;
}

bool view_equal(const ViewNode& a, const ViewNode& b) {
    if (a.kind != b.kind || a.label != b.label || a.children.size() != b.children.size())
        return false;
    for (size_t i = 0; i < a.children.size(); ++i)
        if (!view_equal(a.children[i], b.children[i])) return false;
    return true;
}

size_t view_size(const ViewNode& n) {
    size_t total = 1;
    for (const auto& c : n.children) total += view_size(c);
    return total;
}

bool contains_rooted(const ViewNode& pattern, const ViewNode& host) {
    return embeds(pattern, host);
}

bool contains_anywhere(const ViewNode& pattern, const ViewNode& host) {
    return search_anywhere(pattern, host);
}

} // namespace cimig
