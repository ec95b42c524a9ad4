#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cimig {

// Lowercases and splits on every character outside [a-z0-9]. Used both for
// rule bifurcation and for file-level similarity scoring, so the two stay
// comparable.
std::vector<std::string> tokenize(std::string_view text);

// Term-frequency cosine over tokenize() output. Both token sets empty -> 1.0,
// exactly one empty -> 0.0.
double tf_cosine(std::string_view a, std::string_view b);
double tf_cosine_tokens(const std::vector<std::string>& a, const std::vector<std::string>& b);

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);

// Splits "key: value" on the first ": " occurrence; returns false when the
// separator is absent.
bool split_key_value(std::string_view label, std::string& key, std::string& value);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

} // namespace cimig
