#pragma once

#include "cimig/corpus.hpp"
#include "cimig/model.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cimig {

inline constexpr const char* kToolVersion = "cimig 0.1.0";

struct TrainKnobs {
    double min_support_rules = 1e-6;
    double min_support_trees = 0.05;
    double sim_threshold = 0.5;
    double tar_branch_threshold = 0.5;
    std::size_t cartesian_cap = 250000;
    std::uint64_t seed = 1;
    std::int64_t tree_time_budget_ms = 20000;
    std::string seed_file; // explicit target seed skeleton (YAML), optional
};

struct TrainSummary {
    std::size_t transactions = 0;
    std::size_t hierarchization_transactions = 0;
    std::size_t rules_mined = 0;
    std::size_t r_sim = 0;
    std::size_t r_stat = 0;
    std::size_t h_rules = 0;
    std::size_t src_fts = 0;
    std::size_t tgt_fts = 0;
    std::size_t tars = 0;
    std::size_t stat_rules_usable = 0;
    std::vector<std::string> warnings;
    std::vector<std::string> coverage; // "path<TAB>unabstracted scalar" lines
    std::map<std::string, std::int64_t> timings_ms;
};

std::map<std::string, std::vector<std::string>> default_dialect_top_keys();
std::map<std::string, std::vector<std::string>> load_dialect_keys_dir(const std::string& dir);

class TrainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Runs the full training pipeline: abstraction, translation and
// hierarchization rule mining, frequent-tree mining, TAR derivation, the
// stat-rule/tree index and seed selection.
RuleModel train_model(const CorpusFiles& corpus, const Dialect& source, const Dialect& target,
                      const AbstractionSpec& abstraction,
                      const std::map<std::string, std::vector<std::string>>& dialect_top_keys,
                      const TrainKnobs& knobs, TrainSummary* summary = nullptr);

} // namespace cimig
