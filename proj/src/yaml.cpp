#include "cimig/yaml.hpp"

#include "cimig/text.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <map>
#include <sstream>

namespace cimig {

char kind_tag(NodeKind k) {
    switch (k) {
    case NodeKind::MappingKey: return 'M';
    case NodeKind::SequenceItem: return 'S';
    case NodeKind::Scalar: return 'C';
    }
    return '?';
}

NodeKind kind_from_tag(char c) {
    switch (c) {
    case 'M': return NodeKind::MappingKey;
    case 'S': return NodeKind::SequenceItem;
    case 'C': return NodeKind::Scalar;
    }
    throw std::invalid_argument(std::string("unknown node kind tag: ") + c);
}

Dialect Dialect::from_id(std::string_view id) {
    if (id == "travisci") return travis();
    if (id == "githubactions") return gha();
    return other(std::string(id));
}

std::string Dialect::id() const {
    switch (kind) {
    case DialectKind::TravisCI: return "travisci";
    case DialectKind::GitHubActions: return "githubactions";
    case DialectKind::Other: return name.empty() ? "other" : name;
    }
    return "other";
}

ParseError::ParseError(size_t line, size_t column, const std::string& msg)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "yaml: line " << line << ", column " << column << ": " << msg;
          return os.str();
      }()),
      line_(line), column_(column) {}

namespace {

struct SrcLine {
    int indent = 0;   // column where content starts
    std::string text; // content after indent, comments intact
    size_t number = 0;
};

// Strips a trailing comment from a structural line: '#' outside quotes,
// preceded by whitespace or at the start of the content.
std::string strip_comment(const std::string& s) {
    bool in_single = false, in_double = false;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (in_single) {
            if (c == '\'') in_single = false;
        } else if (in_double) {
            if (c == '\\') ++i;
            else if (c == '"') in_double = false;
        } else if (c == '\'') {
            in_single = true;
        } else if (c == '"') {
            in_double = true;
        } else if (c == '#' && (i == 0 || s[i - 1] == ' ' || s[i - 1] == '\t')) {
            std::string out = s.substr(0, i);
            while (!out.empty() && (out.back() == ' ' || out.back() == '\t')) out.pop_back();
            return out;
        }
    }
    std::string out = s;
    while (!out.empty() && (out.back() == ' ' || out.back() == '\t')) out.pop_back();
    return out;
}

class LineStream {
public:
    explicit LineStream(std::string_view text) {
        size_t start = 0;
        size_t lineno = 1;
        while (start < text.size()) {
            size_t end = text.find('\n', start);
            std::string raw(end == std::string_view::npos ? text.substr(start)
                                                          : text.substr(start, end - start));
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            int indent = 0;
            for (char c : raw) {
                if (c == ' ') ++indent;
                else if (c == '\t')
                    throw ParseError(lineno, indent + 1, "tab characters are not allowed in indentation");
                else
                    break;
            }
            lines_.push_back(SrcLine{indent, raw.substr(static_cast<size_t>(indent)), lineno});
            if (end == std::string_view::npos) break;
            start = end + 1;
            ++lineno;
        }
    }

    bool eof() {
        skip_ignorable();
        return pending_.empty() && pos_ >= lines_.size();
    }

    const SrcLine& peek() {
        skip_ignorable();
        if (!pending_.empty()) return pending_.back();
        return lines_[pos_];
    }

    SrcLine take() {
        SrcLine l = peek();
        if (!pending_.empty()) pending_.pop_back();
        else ++pos_;
        return l;
    }

    void push_synthetic(SrcLine l) { pending_.push_back(std::move(l)); }

    // Raw access for block scalars: returns the next physical line without
    // comment/blank skipping, or nullptr at end of input.
    const SrcLine* peek_raw() const {
        if (!pending_.empty()) return &pending_.back();
        if (pos_ >= lines_.size()) return nullptr;
        return &lines_[pos_];
    }
    void take_raw() {
        if (!pending_.empty()) pending_.pop_back();
        else ++pos_;
    }

private:
    void skip_ignorable() {
        while (pending_.empty() && pos_ < lines_.size()) {
            const std::string stripped = strip_comment(lines_[pos_].text);
            if (stripped.empty()) ++pos_;
            else break;
        }
    }

    std::vector<SrcLine> lines_;
    size_t pos_ = 0;
    std::vector<SrcLine> pending_;
};

bool is_seq_entry(const std::string& content) {
    return content == "-" || starts_with(content, "- ");
}

class Parser {
public:
    explicit Parser(std::string_view text) : ls_(text) {}

    Node parse_document() {
        Node root{NodeKind::MappingKey, "", {}, 0};
        skip_preamble();
        if (ls_.eof()) return root;

        const SrcLine& first = ls_.peek();
        std::string content = strip_comment(first.text);
        if (content == "..." && first.indent == 0) {
            ls_.take();
            if (!ls_.eof())
                throw ParseError(ls_.peek().number, 1, "multi-document input is not supported");
            return root;
        }
        root.children = parse_block(first.indent, /*at_document_root=*/true);
        if (!ls_.eof()) {
            const SrcLine& l = ls_.peek();
            std::string c = strip_comment(l.text);
            if (c == "---")
                throw ParseError(l.number, 1, "multi-document input is not supported");
            if (c == "...") {
                ls_.take();
                if (!ls_.eof()) {
                    const SrcLine& m = ls_.peek();
                    throw ParseError(m.number, 1, "multi-document input is not supported");
                }
            } else {
                throw ParseError(l.number, l.indent + 1, "unexpected content after document");
            }
        }
        return root;
    }

private:
    void skip_preamble() {
        bool seen_doc_start = false;
        while (!ls_.eof()) {
            const SrcLine& l = ls_.peek();
            std::string content = strip_comment(l.text);
            if (!content.empty() && content[0] == '%' && l.indent == 0) {
                ls_.take();
                continue;
            }
            if (content == "---" && l.indent == 0) {
                if (seen_doc_start)
                    throw ParseError(l.number, 1, "multi-document input is not supported");
                seen_doc_start = true;
                ls_.take();
                continue;
            }
            break;
        }
    }

    std::vector<Node> parse_block(int block_indent, bool at_document_root = false) {
        if (ls_.eof()) return {};
        const SrcLine& first = ls_.peek();
        std::string content = strip_comment(first.text);
        if (at_document_root && !is_seq_entry(content) && find_key_sep(content) == std::string::npos) {
            // scalar or flow document
            SrcLine l = ls_.take();
            Node scalar{NodeKind::Scalar, "", {}, -1};
            if (!content.empty() && (content[0] == '[' || content[0] == '{')) {
                return parse_flow_children(collect_flow_text(content, l), l.number);
            }
            scalar.label = parse_scalar_text(content, l);
            return {scalar};
        }
        if (is_seq_entry(content)) return parse_sequence_block(block_indent);
        return parse_mapping_block(block_indent);
    }

    std::vector<Node> parse_sequence_block(int block_indent) {
        std::vector<Node> items;
        while (!ls_.eof()) {
            const SrcLine& l = ls_.peek();
            std::string content = strip_comment(l.text);
            if (l.indent == 0 && (content == "---" || content == "...")) break;
            if (l.indent != block_indent) {
                if (l.indent > block_indent)
                    throw ParseError(l.number, l.indent + 1, "bad indentation in sequence");
                break;
            }
            if (!is_seq_entry(content)) break;
            items.push_back(parse_sequence_item());
        }
        return items;
    }

    Node parse_sequence_item() {
        SrcLine l = ls_.take();
        std::string content = strip_comment(l.text);
        Node item{NodeKind::SequenceItem, "", {}, -1};
        if (content == "-") {
            item.children = parse_child_block(l.indent, /*allow_same_indent_seq=*/false);
            return item;
        }
        size_t rest_off = 2;
        while (rest_off < content.size() && content[rest_off] == ' ') ++rest_off;
        std::string rest = content.substr(rest_off);
        int rest_indent = l.indent + static_cast<int>(rest_off);
        ls_.push_synthetic(SrcLine{rest_indent, rest, l.number});
        if (is_seq_entry(rest)) {
            item.children = parse_sequence_block(rest_indent);
        } else if (find_key_sep(rest) != std::string::npos) {
            item.children = parse_mapping_block(rest_indent);
        } else {
            SrcLine v = ls_.take();
            item.children = parse_inline_value(rest, v, l.indent);
        }
        return item;
    }

    std::vector<Node> parse_mapping_block(int block_indent) {
        std::vector<Node> entries;
        std::vector<Node> merged;
        while (!ls_.eof()) {
            const SrcLine& l = ls_.peek();
            std::string content = strip_comment(l.text);
            if (l.indent == 0 && (content == "---" || content == "...")) break;
            if (l.indent != block_indent) {
                if (l.indent > block_indent)
                    throw ParseError(l.number, l.indent + 1, "bad indentation in mapping");
                break;
            }
            if (is_seq_entry(content)) break;
            Node entry = parse_mapping_entry();
            if (entry.label == "<<") {
                for (auto& m : entry.children) merged.push_back(std::move(m));
            } else {
                entries.push_back(std::move(entry));
            }
        }
        for (auto& m : merged) {
            bool present = std::any_of(entries.begin(), entries.end(),
                                       [&](const Node& e) { return e.label == m.label; });
            if (!present) entries.push_back(std::move(m));
        }
        std::map<std::string, size_t> seen;
        for (const auto& e : entries) {
            if (++seen[e.label] > 1)
                throw ParseError(0, 0, "duplicate mapping key '" + e.label + "'");
        }
        return entries;
    }

    Node parse_mapping_entry() {
        SrcLine l = ls_.take();
        std::string content = strip_comment(l.text);
        std::string key, rest;
        split_entry(content, l, key, rest);
        Node node{NodeKind::MappingKey, key, {}, -1};
        if (rest.empty()) {
            node.children = parse_child_block(l.indent, /*allow_same_indent_seq=*/true);
        } else {
            node.children = parse_inline_value(rest, l, l.indent);
        }
        return node;
    }

    // Parses the value text that sits on the same line as its key or dash.
    std::vector<Node> parse_inline_value(std::string rest, const SrcLine& l, int owner_indent) {
        if (starts_with(rest, "&")) {
            std::string name = take_token(rest).substr(1);
            std::vector<Node> value =
                rest.empty() ? parse_child_block(owner_indent, true)
                             : parse_inline_value(rest, l, owner_indent);
            anchors_[name] = value;
            return value;
        }
        if (starts_with(rest, "*")) {
            std::string name = take_token(rest);
            name = name.substr(1);
            auto it = anchors_.find(name);
            if (it == anchors_.end())
                throw ParseError(l.number, l.indent + 1, "unknown alias '*" + name + "'");
            return it->second; // deep copy
        }
        if (starts_with(rest, "!")) {
            take_token(rest); // drop tag
            if (rest.empty()) return parse_child_block(owner_indent, true);
            return parse_inline_value(rest, l, owner_indent);
        }
        if (rest[0] == '|' || rest[0] == '>') {
            return {Node{NodeKind::Scalar, parse_block_scalar(rest, l, owner_indent), {}, -1}};
        }
        if (rest[0] == '[' || rest[0] == '{') {
            return parse_flow_children(collect_flow_text(rest, l), l.number);
        }
        return {Node{NodeKind::Scalar, parse_scalar_text(rest, l), {}, -1}};
    }

    std::string take_token(std::string& s) {
        size_t sp = s.find(' ');
        std::string tok = sp == std::string::npos ? s : s.substr(0, sp);
        s = sp == std::string::npos ? "" : trim(s.substr(sp + 1));
        return tok;
    }

    std::vector<Node> parse_child_block(int owner_indent, bool allow_same_indent_seq) {
        if (ls_.eof()) return {};
        const SrcLine& l = ls_.peek();
        std::string content = strip_comment(l.text);
        if (l.indent == 0 && (content == "---" || content == "...")) return {};
        if (l.indent > owner_indent) return parse_block(l.indent);
        if (allow_same_indent_seq && l.indent == owner_indent && is_seq_entry(content))
            return parse_sequence_block(l.indent);
        return {};
    }

    // `threshold` is the column of the owning key or dash; content lines must
    // be indented past it.
    std::string parse_block_scalar(const std::string& header, const SrcLine& l, int threshold) {
        char style = header[0];
        char chomp = 0; // 0 clip, '-' strip, '+' keep
        for (size_t i = 1; i < header.size(); ++i) {
            if (header[i] == '-' || header[i] == '+') chomp = header[i];
            else if (std::isdigit(static_cast<unsigned char>(header[i]))) {
                // explicit indentation indicator unsupported; tolerated as fixed offset
            } else if (header[i] == ' ' || header[i] == '#') {
                break;
            }
        }
        (void)l;
        std::vector<std::string> body;
        int body_indent = -1;
        while (const SrcLine* raw = ls_.peek_raw()) {
            std::string full((size_t)raw->indent, ' ');
            full += raw->text;
            std::string tr = trim(full);
            if (tr.empty()) {
                body.push_back("");
                ls_.take_raw();
                continue;
            }
            if (raw->indent <= threshold) break;
            if (body_indent < 0) body_indent = raw->indent;
            if (raw->indent < body_indent)
                throw ParseError(raw->number, raw->indent + 1, "bad indentation in block scalar");
            body.push_back(full.substr(static_cast<size_t>(body_indent)));
            ls_.take_raw();
        }
        std::string text;
        if (style == '|') {
            for (const auto& line : body) {
                text += line;
                text += '\n';
            }
        } else { // folded
            bool prev_blank = true;
            for (const auto& line : body) {
                if (line.empty()) {
                    text += '\n';
                    prev_blank = true;
                } else {
                    if (!prev_blank) text += ' ';
                    text += line;
                    prev_blank = false;
                }
            }
            if (!body.empty()) text += '\n';
        }
        if (chomp == '-') {
            while (!text.empty() && text.back() == '\n') text.pop_back();
        } else if (chomp == 0) {
            while (text.size() >= 2 && text[text.size() - 1] == '\n' && text[text.size() - 2] == '\n')
                text.pop_back();
        }
        return text;
    }

    // Joins continuation lines until brackets balance outside quotes.
    std::string collect_flow_text(std::string first, const SrcLine& l) {
        std::string text = first;
        while (flow_depth(text) > 0) {
            if (ls_.eof())
                throw ParseError(l.number, l.indent + 1, "unterminated flow collection");
            SrcLine cont = ls_.take();
            text += ' ';
            text += strip_comment(cont.text);
        }
        return text;
    }

    static int flow_depth(const std::string& s) {
        int depth = 0;
        bool in_single = false, in_double = false;
        for (size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            if (in_single) {
                if (c == '\'') in_single = false;
            } else if (in_double) {
                if (c == '\\') ++i;
                else if (c == '"') in_double = false;
            } else if (c == '\'') in_single = true;
            else if (c == '"') in_double = true;
            else if (c == '[' || c == '{') ++depth;
            else if (c == ']' || c == '}') --depth;
        }
        return depth;
    }

    std::vector<Node> parse_flow_children(const std::string& text, size_t lineno) {
        size_t i = 0;
        std::vector<Node> out = parse_flow_value(text, i, lineno);
        skip_spaces(text, i);
        if (i != text.size())
            throw ParseError(lineno, i + 1, "trailing characters after flow collection");
        return out;
    }

    std::vector<Node> parse_flow_value(const std::string& s, size_t& i, size_t lineno) {
        skip_spaces(s, i);
        if (i >= s.size()) throw ParseError(lineno, i + 1, "empty flow value");
        if (s[i] == '[') {
            ++i;
            std::vector<Node> items;
            skip_spaces(s, i);
            if (i < s.size() && s[i] == ']') {
                ++i;
                return items;
            }
            while (true) {
                Node item{NodeKind::SequenceItem, "", {}, -1};
                item.children = parse_flow_value(s, i, lineno);
                items.push_back(std::move(item));
                skip_spaces(s, i);
                if (i < s.size() && s[i] == ',') {
                    ++i;
                    continue;
                }
                if (i < s.size() && s[i] == ']') {
                    ++i;
                    break;
                }
                throw ParseError(lineno, i + 1, "expected ',' or ']' in flow sequence");
            }
            return items;
        }
        if (s[i] == '{') {
            ++i;
            std::vector<Node> entries;
            skip_spaces(s, i);
            if (i < s.size() && s[i] == '}') {
                ++i;
                return entries;
            }
            while (true) {
                skip_spaces(s, i);
                std::string key = parse_flow_scalar(s, i, lineno, /*stop_colon=*/true);
                skip_spaces(s, i);
                Node entry{NodeKind::MappingKey, key, {}, -1};
                if (i < s.size() && s[i] == ':') {
                    ++i;
                    skip_spaces(s, i);
                    if (i < s.size() && s[i] != ',' && s[i] != '}')
                        entry.children = parse_flow_value(s, i, lineno);
                }
                entries.push_back(std::move(entry));
                skip_spaces(s, i);
                if (i < s.size() && s[i] == ',') {
                    ++i;
                    continue;
                }
                if (i < s.size() && s[i] == '}') {
                    ++i;
                    break;
                }
                throw ParseError(lineno, i + 1, "expected ',' or '}' in flow mapping");
            }
            return entries;
        }
        std::string scalar = parse_flow_scalar(s, i, lineno, /*stop_colon=*/false);
        return {Node{NodeKind::Scalar, scalar, {}, -1}};
    }

    std::string parse_flow_scalar(const std::string& s, size_t& i, size_t lineno, bool stop_colon) {
        skip_spaces(s, i);
        if (i < s.size() && (s[i] == '\'' || s[i] == '"'))
            return parse_quoted(s, i, lineno);
        size_t start = i;
        while (i < s.size()) {
            char c = s[i];
            if (c == ',' || c == ']' || c == '}' || c == '[' || c == '{') break;
            if (stop_colon && c == ':') break;
            ++i;
        }
        return trim(s.substr(start, i - start));
    }

    static void skip_spaces(const std::string& s, size_t& i) {
        while (i < s.size() && s[i] == ' ') ++i;
    }

    std::string parse_quoted(const std::string& s, size_t& i, size_t lineno) {
        char q = s[i++];
        std::string out;
        if (q == '\'') {
            while (i < s.size()) {
                if (s[i] == '\'') {
                    if (i + 1 < s.size() && s[i + 1] == '\'') {
                        out += '\'';
                        i += 2;
                    } else {
                        ++i;
                        return out;
                    }
                } else {
                    out += s[i++];
                }
            }
        } else {
            while (i < s.size()) {
                char c = s[i];
                if (c == '"') {
                    ++i;
                    return out;
                }
                if (c == '\\' && i + 1 < s.size()) {
                    char e = s[i + 1];
                    switch (e) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case 'r': out += '\r'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    case '0': out += '\0'; break;
                    default: out += '\\'; out += e; break;
                    }
                    i += 2;
                } else {
                    out += s[i++];
                }
            }
        }
        throw ParseError(lineno, i + 1, "unterminated quoted string");
    }

    std::string parse_scalar_text(const std::string& rest, const SrcLine& l) {
        std::string t = trim(rest);
        if (!t.empty() && (t[0] == '\'' || t[0] == '"')) {
            size_t i = 0;
            std::string out = parse_quoted(t, i, l.number);
            if (i != t.size())
                throw ParseError(l.number, l.indent + static_cast<int>(i) + 1,
                                 "trailing characters after quoted scalar");
            return out;
        }
        return t;
    }

    // Finds the key/value separator: ':' followed by space or end of line,
    // outside quotes and flow brackets.
    static size_t find_key_sep(const std::string& s) {
        bool in_single = false, in_double = false;
        int depth = 0;
        for (size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            if (in_single) {
                if (c == '\'') in_single = false;
            } else if (in_double) {
                if (c == '\\') ++i;
                else if (c == '"') in_double = false;
            } else if (c == '\'') in_single = true;
            else if (c == '"') in_double = true;
            else if (c == '[' || c == '{') ++depth;
            else if (c == ']' || c == '}') --depth;
            else if (c == ':' && depth == 0 && (i + 1 == s.size() || s[i + 1] == ' '))
                return i;
        }
        return std::string::npos;
    }

    void split_entry(const std::string& content, const SrcLine& l, std::string& key, std::string& rest) {
        if (!content.empty() && (content[0] == '\'' || content[0] == '"')) {
            size_t i = 0;
            key = parse_quoted(content, i, l.number);
            while (i < content.size() && content[i] == ' ') ++i;
            if (i >= content.size() || content[i] != ':')
                throw ParseError(l.number, l.indent + static_cast<int>(i) + 1, "expected ':' after key");
            ++i;
            rest = trim(content.substr(i));
            return;
        }
        size_t sep = find_key_sep(content);
        if (sep == std::string::npos)
            throw ParseError(l.number, l.indent + 1, "expected a 'key: value' mapping entry");
        key = trim(content.substr(0, sep));
        rest = trim(content.substr(sep + 1));
        if (key.empty())
            throw ParseError(l.number, l.indent + 1, "empty mapping key");
    }

    LineStream ls_;
    std::map<std::string, std::vector<Node>> anchors_;
};

// ---------------------------------------------------------------------------
// Emission

const char* kPlainUnsafeFirst = "-?:,[]{}#&*!|>'\"%@` ";

bool needs_quotes(const std::string& s) {
    if (s.empty()) return true;
    if (s != trim(s)) return true;
    if (std::strchr(kPlainUnsafeFirst, s.front()) != nullptr) return true;
    if (s.find(": ") != std::string::npos) return true;
    if (s.find(" #") != std::string::npos) return true;
    if (s.back() == ':') return true;
    if (s == "<<" || s == "---" || s == "...") return true;
    for (char c : s)
        if (static_cast<unsigned char>(c) < 0x20) return true;
    return false;
}

std::string quote_single(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        out += c;
        if (c == '\'') out += '\'';
    }
    out += '\'';
    return out;
}

std::string emit_scalar_inline(const std::string& s) {
    return needs_quotes(s) ? quote_single(s) : s;
}

std::string emit_key(const std::string& s) {
    if (s.find('\n') != std::string::npos)
        throw EmitError("mapping key contains a newline: '" + s + "'");
    if (s.empty()) return "''";
    if (needs_quotes(s) || s.find(':') != std::string::npos || s.find('#') != std::string::npos)
        return quote_single(s);
    return s;
}

void emit_children(const std::vector<Node>& children, int indent, std::string& out,
                   std::vector<std::string>& path);

void emit_block_scalar(const std::string& text, int indent, std::string& out) {
    size_t trailing = 0;
    size_t end = text.size();
    while (end > 0 && text[end - 1] == '\n') {
        ++trailing;
        --end;
    }
    const char* header = trailing == 0 ? "|-" : (trailing == 1 ? "|" : "|+");
    out += header;
    out += '\n';
    std::string body = trailing >= 1 ? text.substr(0, text.size() - 1) : text;
    size_t start = 0;
    while (true) {
        size_t nl = body.find('\n', start);
        std::string line = nl == std::string::npos ? body.substr(start) : body.substr(start, nl - start);
        if (!line.empty()) {
            out.append(static_cast<size_t>(indent), ' ');
            out += line;
        }
        out += '\n';
        if (nl == std::string::npos) break;
        start = nl + 1;
    }
}

// Emits one node's value part. `prefix_len` is the column where the value's
// first line content begins (used to place block children).
void emit_value(const Node& n, int indent, std::string& out, std::vector<std::string>& path) {
    if (n.children.empty()) {
        out += '\n';
        return;
    }
    if (n.children.size() == 1 && n.children[0].kind == NodeKind::Scalar) {
        const std::string& s = n.children[0].label;
        out += ' ';
        if (s.find('\n') != std::string::npos) {
            emit_block_scalar(s, indent + 2, out);
        } else {
            out += emit_scalar_inline(s);
            out += '\n';
        }
        return;
    }
    out += '\n';
    emit_children(n.children, indent + 2, out, path);
}

void emit_children(const std::vector<Node>& children, int indent, std::string& out,
                   std::vector<std::string>& path) {
    bool all_map = std::all_of(children.begin(), children.end(),
                               [](const Node& c) { return c.kind == NodeKind::MappingKey; });
    bool all_seq = std::all_of(children.begin(), children.end(),
                               [](const Node& c) { return c.kind == NodeKind::SequenceItem; });
    if (all_map && !children.empty()) {
        std::map<std::string, int> keys;
        for (const auto& c : children) {
            if (++keys[c.label] > 1) {
                std::string p = join(path, ".");
                throw EmitError("duplicate mapping key '" + c.label + "' at /" + p);
            }
        }
        for (const auto& c : children) {
            out.append(static_cast<size_t>(indent), ' ');
            out += emit_key(c.label);
            out += ':';
            path.push_back(c.label);
            emit_value(c, indent, out, path);
            path.pop_back();
        }
        return;
    }
    if (all_seq && !children.empty()) {
        for (const auto& c : children) {
            if (c.children.empty()) {
                out.append(static_cast<size_t>(indent), ' ');
                out += "-\n";
                continue;
            }
            if (c.children.size() == 1 && c.children[0].kind == NodeKind::Scalar) {
                const std::string& s = c.children[0].label;
                out.append(static_cast<size_t>(indent), ' ');
                out += "- ";
                if (s.find('\n') != std::string::npos) {
                    emit_block_scalar(s, indent + 2, out);
                } else {
                    out += emit_scalar_inline(s);
                    out += '\n';
                }
                continue;
            }
            // nested block: emit at indent+2 and splice "- " onto its first line
            std::string block;
            path.push_back("-");
            emit_children(c.children, indent + 2, block, path);
            path.pop_back();
            out.append(static_cast<size_t>(indent), ' ');
            out += "- ";
            out += block.substr(static_cast<size_t>(indent) + 2);
        }
        return;
    }
    if (children.size() == 1 && children[0].kind == NodeKind::Scalar) {
        out.append(static_cast<size_t>(indent), ' ');
        const std::string& s = children[0].label;
        if (s.find('\n') != std::string::npos) emit_block_scalar(s, indent, out);
        else {
            out += emit_scalar_inline(s);
            out += '\n';
        }
        return;
    }
    std::string p = join(path, ".");
    throw EmitError("mixed child kinds cannot be emitted at /" + p);
}

void assign_ids(Node& n, int& next) {
    n.node_id = next++;
    for (auto& c : n.children) assign_ids(c, next);
}

} // namespace

ConfigAST parse_config(std::string_view text, Dialect dialect) {
    Parser p(text);
    ConfigAST ast;
    ast.root = p.parse_document();
    ast.dialect = dialect;
    renumber(ast);
    return ast;
}

std::string emit_yaml(const ConfigAST& ast) {
    if (ast.root.children.empty()) return "{}\n";
    std::string out;
    std::vector<std::string> path;
    emit_children(ast.root.children, 0, out, path);
    return out;
}

bool node_equal(const Node& a, const Node& b) {
    if (a.kind != b.kind || a.label != b.label || a.children.size() != b.children.size())
        return false;
    for (size_t i = 0; i < a.children.size(); ++i)
        if (!node_equal(a.children[i], b.children[i])) return false;
    return true;
}

bool ast_equal(const ConfigAST& a, const ConfigAST& b) {
    return node_equal(a.root, b.root);
}

size_t count_nodes(const Node& n) {
    size_t total = 1;
    for (const auto& c : n.children) total += count_nodes(c);
    return total;
}

void renumber(ConfigAST& ast) {
    int next = 0;
    assign_ids(ast.root, next);
}

} // namespace cimig
