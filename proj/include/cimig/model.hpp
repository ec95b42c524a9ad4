#pragma once

#include "cimig/abstraction.hpp"
#include "cimig/apriori.hpp"
#include "cimig/treemine.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cimig {

struct SeedTree {
    Dialect dialect;
    ViewNode tree; // rooted at the document root (M,"")
};

struct TrainingMeta {
    size_t pair_count = 0;
    size_t src_only_count = 0;
    size_t tgt_only_count = 0;
    std::map<std::string, std::string> knobs;
    std::string tool_version;
    std::vector<std::string> notes;
};

// The persisted training artifact for one translation direction.
struct RuleModel {
    Dialect source;
    Dialect target;
    AbstractionSpec abstraction;
    std::vector<TranslationRule> r_sim;
    std::vector<TranslationRule> r_stat;
    std::vector<HierarchizationRule> h_rules;
    std::vector<FrequentTree> src_fts;
    std::vector<FrequentTree> tgt_fts;
    std::vector<Tar> tars; // over tgt_fts
    std::vector<SeedTree> seeds;
    StatRuleIndex stat_index; // parallel to r_stat
    std::map<std::string, std::vector<std::string>> dialect_top_keys;
    TrainingMeta meta;

    const SeedTree* seed_for(const Dialect& d) const;
};

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class ModelVersionError : public ModelError {
public:
    using ModelError::ModelError;
};
class ModelIntegrityError : public ModelError {
public:
    using ModelError::ModelError;
};
class ModelInvariantError : public ModelError {
public:
    using ModelError::ModelError;
};

inline constexpr int kModelSchemaVersion = 1;

// Deterministic bytes for a given model; written atomically via temp+rename.
void save_model(const RuleModel& model, const std::string& path);
std::string model_to_string(const RuleModel& model);

// Re-validates the checksum, schema version and referential integrity.
RuleModel load_model(const std::string& path);
RuleModel model_from_string(const std::string& text);

// FNV-1a 64-bit, the model file's content checksum.
std::string fnv1a64_hex(std::string_view data);

} // namespace cimig
