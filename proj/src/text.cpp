#include "cimig/text.hpp"

#include <cctype>
#include <cmath>

namespace cimig {

std::string to_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char ch : text) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (!cur.empty()) {
            tokens.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
}

double tf_cosine_tokens(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    std::map<std::string, double> fa, fb;
    for (const auto& t : a) fa[t] += 1.0;
    for (const auto& t : b) fb[t] += 1.0;
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (const auto& [t, f] : fa) {
        na += f * f;
        auto it = fb.find(t);
        if (it != fb.end()) dot += f * it->second;
    }
    for (const auto& [t, f] : fb) nb += f * f;
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

double tf_cosine(std::string_view a, std::string_view b) {
    return tf_cosine_tokens(tokenize(a), tokenize(b));
}

bool split_key_value(std::string_view label, std::string& key, std::string& value) {
    size_t pos = label.find(": ");
    if (pos == std::string_view::npos) return false;
    key.assign(label.substr(0, pos));
    value.assign(label.substr(pos + 2));
    return true;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out.append(sep);
        out.append(parts[i]);
    }
    return out;
}

} // namespace cimig
