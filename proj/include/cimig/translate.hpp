#pragma once

#include "cimig/abstraction.hpp"
#include "cimig/model.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cimig {

class TranslateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class H2Status { TranslatedSim, TranslatedStat, Untranslated };

enum class FailureCategory { None, NoDirectEquivalent, MoreThanTwoLevels, UnabstractedSyntax };

std::string to_string(H2Status s);
std::string to_string(FailureCategory c);

struct TraceEntry {
    int h2_id = 0;
    std::string canonical;
    H2Status status = H2Status::Untranslated;
    std::string rule_ref; // "sim:<i>" or "stat:<i>"
    std::vector<int> generated_node_ids;  // children actually placed
    std::vector<int> generated_slot_ids;  // placed children that can take parameters
    bool placement_failed = false;
    FailureCategory category = FailureCategory::None;
};

struct UnplacedParameter {
    int h2_id = 0;
    int slot_index = 0;
    std::string text;
    std::string reason;
};

struct TranslationReport {
    std::string source_dialect;
    std::string target_dialect;
    size_t total_h2 = 0;
    size_t translated_sim = 0;
    size_t translated_stat = 0;
    size_t untranslated = 0;
    bool empty_input = false; // no H2s extracted
    std::optional<double> translation_percentage; // unset when empty_input
    std::vector<TraceEntry> entries;
    std::vector<int> applied_tars;
    size_t parameters_stored = 0;
    size_t parameters_placed = 0;
    std::vector<UnplacedParameter> unplaced_parameters;
    std::vector<std::string> unparameterized_slots; // abstract labels left in output
    std::vector<std::string> unabstracted_scalars;
    std::vector<std::string> notes;

    size_t category_count(FailureCategory c) const;
    std::string to_json_text() const;
};

enum class TranslateStatus { Success, Partial, Error };
TranslateStatus report_status(const TranslationReport& r);

// ---------------------------------------------------------------------------
// Generated target tree with stable node identity across moves.

struct GenNode {
    NodeKind kind = NodeKind::MappingKey;
    std::string label;
    std::vector<std::unique_ptr<GenNode>> children;
    GenNode* parent = nullptr;
    int id = -1;

    bool is_leaf() const { return children.empty(); }
};

class TargetTree {
public:
    TargetTree();
    GenNode* root() { return root_.get(); }
    const GenNode* root() const { return root_.get(); }

    // Fresh node with a stable id; registered on append.
    std::unique_ptr<GenNode> make_node(NodeKind kind, std::string label);
    // Deep copy of a view with fresh ids; not yet attached.
    std::unique_ptr<GenNode> materialize(const ViewNode& v);
    GenNode* append(GenNode* parent, std::unique_ptr<GenNode> node);
    std::unique_ptr<GenNode> detach(GenNode* node);
    GenNode* by_id(int id) const; // nullptr once a node was dropped

    ViewNode to_view() const;
    ViewNode to_view(const GenNode* node) const;
    size_t node_count() const;

private:
    std::unique_ptr<GenNode> root_;
    int next_id_ = 0;
    std::map<int, GenNode*> by_id_;
    void index(GenNode* n);
    void unindex(GenNode* n);
};

struct AttachOutcome {
    std::vector<int> placed_ids;
    std::vector<int> slot_ids;
    bool anything_placed = false;
};

// ---------------------------------------------------------------------------
// Pipeline steps (exposed for tests; translate_file runs them in order).

struct TranslationState {
    TargetTree tree;
    std::vector<int> root_attached; // ids of whole H2 subtrees parked at the root
    std::vector<TraceEntry> entries;
};

ConfigAST init_seed(const RuleModel& model, const Dialect& target);

// DFS insertion: children graft under the deepest node matching the H2's
// parent (first in document order on ties); a root-labeled parent grafts at
// the root; otherwise the whole H2 parks at the root for hierarchization.
AttachOutcome insert_h2(TranslationState& state, const ViewNode& h2_view);

void translate_sim(const std::vector<H2Tree>& h2s, const RuleModel& model, TranslationState& state);
void translate_stat(const std::vector<H2Tree>& h2s, const ViewNode& source_view,
                    const RuleModel& model, TranslationState& state);
void enrich_with_tars(TranslationState& state, const RuleModel& model,
                      std::vector<int>* applied = nullptr);
void hierarchize(TranslationState& state, const RuleModel& model);
void transfer_parameters(TranslationState& state, const ParameterStore& store,
                         TranslationReport& report);

struct TranslationOutput {
    std::string yaml;
    TranslationReport report;
};

TranslationOutput translate_file(const std::string& source_text, const RuleModel& model);

} // namespace cimig
