#pragma once

#include "cimig/yaml.hpp"

#include <optional>
#include <regex>
#include <string>
#include <vector>

namespace cimig {

// One scalar-rewriting pattern. Command rules rewrite a matching scalar to
// "CMD:<canonical>" and excise the remaining text as a parameter; scalar
// classes replace the whole scalar with a placeholder and store the original.
struct AbstractionRule {
    enum class Kind { Command, ScalarClass };
    Kind kind = Kind::Command;
    std::string pattern;
    std::string replacement; // canonical command, or placeholder text
};

struct AbstractionSpec {
    std::vector<AbstractionRule> rules; // ordered, first match wins

    static AbstractionSpec defaults();
    static AbstractionSpec load_file(const std::string& path);
    static AbstractionSpec from_json_text(const std::string& text);
    std::string to_json_text() const;
};

inline constexpr const char* kCommandPrefix = "CMD:";

bool is_command_label(const std::string& scalar); // "CMD:x"
bool is_placeholder_label(const std::string& scalar); // "<X>"
std::string deabstract_scalar(const std::string& scalar); // CMD:x -> x

struct ParameterEntry {
    int h2_id = 0;
    int slot_index = 0;
    std::string original_text;
    int scalar_node_id = -1;
    // for command rules: the canonical name and the spelling that matched
    // (e.g. "gradle" and "./gradlew"), so transfer can restore the original
    std::string canonical;
    std::string matched_text;
};

struct ParameterStore {
    std::vector<ParameterEntry> entries; // ordered by (h2_id, slot_index)

    std::vector<const ParameterEntry*> for_h2(int h2_id) const;
};

struct AbstractionResult {
    ConfigAST ast;
    ParameterStore store;
    // scalar texts that matched no rule, in document order
    std::vector<std::string> unabstracted;
    // node ids of unmatched scalars that look like commands (multi-token)
    std::vector<int> unabstracted_command_ids;
};

// Rewrites scalar leaves per spec. Total: unmatched scalars pass through and
// are listed in the coverage report. Applying the result again is a no-op.
AbstractionResult abstract_ast(const ConfigAST& ast, const AbstractionSpec& spec);

} // namespace cimig
