#include "cimig/translate.hpp"

#include "cimig/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <set>

namespace cimig {

using nlohmann::json;

std::string to_string(H2Status s) {
    switch (s) {
    case H2Status::TranslatedSim: return "sim";
    case H2Status::TranslatedStat: return "stat";
    case H2Status::Untranslated: return "untranslated";
    }
    return "?";
}

std::string to_string(FailureCategory c) {
    switch (c) {
    case FailureCategory::None: return "";
    case FailureCategory::NoDirectEquivalent: return "no_direct_equivalent";
    case FailureCategory::MoreThanTwoLevels: return "more_than_two_levels";
    case FailureCategory::UnabstractedSyntax: return "unabstracted_syntax";
    }
    return "?";
}

size_t TranslationReport::category_count(FailureCategory c) const {
    size_t n = 0;
    for (const auto& e : entries)
        if (e.category == c) ++n;
    return n;
}

TranslateStatus report_status(const TranslationReport& r) {
    if (r.empty_input) return TranslateStatus::Success;
    return r.untranslated == 0 ? TranslateStatus::Success : TranslateStatus::Partial;
}

std::string TranslationReport::to_json_text() const {
    json doc;
    doc["direction"] = {{"source", source_dialect}, {"target", target_dialect}};
    doc["translation"] = {{"total_h2", total_h2},
                          {"translated_sim", translated_sim},
                          {"translated_stat", translated_stat},
                          {"untranslated", untranslated},
                          {"empty_input", empty_input}};
    if (translation_percentage)
        doc["translation"]["percentage"] = *translation_percentage;
    else
        doc["translation"]["percentage"] = nullptr;
    json rows = json::array();
    for (const auto& e : entries) {
        json row{{"id", e.h2_id},
                 {"canonical", e.canonical},
                 {"status", to_string(e.status)},
                 {"rule", e.rule_ref.empty() ? json(nullptr) : json(e.rule_ref)},
                 {"placement_failed", e.placement_failed}};
        row["category"] = e.category == FailureCategory::None ? json(nullptr)
                                                              : json(to_string(e.category));
        rows.push_back(std::move(row));
    }
    doc["h2"] = rows;
    doc["applied_tars"] = applied_tars;
    json unplaced = json::array();
    for (const auto& u : unplaced_parameters)
        unplaced.push_back(json{{"h2", u.h2_id}, {"slot", u.slot_index}, {"text", u.text},
                                {"reason", u.reason}});
    doc["parameters"] = {{"stored", parameters_stored},
                         {"placed", parameters_placed},
                         {"unplaced", unplaced},
                         {"unparameterized_slots", unparameterized_slots}};
    doc["unabstracted_scalars"] = unabstracted_scalars;
    doc["notes"] = notes;
    return doc.dump(1) + "\n";
}

// ---------------------------------------------------------------------------
// TargetTree

TargetTree::TargetTree() {
    root_ = std::make_unique<GenNode>();
    root_->kind = NodeKind::MappingKey;
    root_->id = next_id_++;
    by_id_[root_->id] = root_.get();
}

std::unique_ptr<GenNode> TargetTree::make_node(NodeKind kind, std::string label) {
    auto n = std::make_unique<GenNode>();
    n->kind = kind;
    n->label = std::move(label);
    n->id = next_id_++;
    return n;
}

std::unique_ptr<GenNode> TargetTree::materialize(const ViewNode& v) {
    auto n = make_node(v.kind, v.label);
    for (const auto& c : v.children) {
        auto child = materialize(c);
        child->parent = n.get();
        n->children.push_back(std::move(child));
    }
    return n;
}

GenNode* TargetTree::append(GenNode* parent, std::unique_ptr<GenNode> node) {
    node->parent = parent;
    GenNode* raw = node.get();
    index(raw);
    parent->children.push_back(std::move(node));
    return raw;
}

std::unique_ptr<GenNode> TargetTree::detach(GenNode* node) {
    GenNode* parent = node->parent;
    if (!parent) throw TranslateError("detach: node has no parent");
    auto& siblings = parent->children;
    for (auto it = siblings.begin(); it != siblings.end(); ++it) {
        if (it->get() == node) {
            std::unique_ptr<GenNode> out = std::move(*it);
            siblings.erase(it);
            out->parent = nullptr;
            unindex(out.get());
            return out;
        }
    }
    throw TranslateError("detach: node is not a child of its parent");
}

GenNode* TargetTree::by_id(int id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : it->second;
}

void TargetTree::index(GenNode* n) {
    by_id_[n->id] = n;
    for (auto& c : n->children) index(c.get());
}

void TargetTree::unindex(GenNode* n) {
    by_id_.erase(n->id);
    for (auto& c : n->children) unindex(c.get());
}

ViewNode TargetTree::to_view(const GenNode* node) const {
    ViewNode v;
    v.kind = node->kind;
    v.label = node->label;
    v.origin_id = node->id;
    for (const auto& c : node->children) v.children.push_back(to_view(c.get()));
    return v;
}

ViewNode TargetTree::to_view() const { return to_view(root_.get()); }

size_t TargetTree::node_count() const {
    std::function<size_t(const GenNode*)> rec = [&](const GenNode* n) {
        size_t total = 1;
        for (const auto& c : n->children) total += rec(c.get());
        return total;
    };
    return rec(root_.get());
}

// ---------------------------------------------------------------------------
// insertion machinery

namespace {

std::string mapping_key_of(const std::string& label) {
    size_t pos = label.find(": ");
    return pos == std::string::npos ? label : label.substr(0, pos);
}

// Deepest node matching (kind,label), first in document order on ties.
// Anonymous labels and the root never match; `exclude` skips that subtree.
void find_deepest(GenNode* node, NodeKind kind, const std::string& label, int depth,
                  const GenNode* exclude, int& best_depth, GenNode*& best) {
    if (node == exclude) return;
    if (depth > 0 && !node->label.empty() && node->kind == kind && node->label == label &&
        depth > best_depth) {
        best_depth = depth;
        best = node;
    }
    for (auto& c : node->children)
        find_deepest(c.get(), kind, label, depth + 1, exclude, best_depth, best);
}

GenNode* search_parent(TargetTree& tree, NodeKind kind, const std::string& label,
                       const GenNode* exclude = nullptr) {
    if (label.empty()) return nullptr;
    int best_depth = 0;
    GenNode* best = nullptr;
    find_deepest(tree.root(), kind, label, 0, exclude, best_depth, best);
    return best;
}

bool is_slot_label(const std::string& label) {
    std::string key, value;
    const std::string scalar = split_key_value(label, key, value) ? value : label;
    return is_command_label(scalar) || is_placeholder_label(scalar);
}

NodeKind coerce_kind(const GenNode* parent, NodeKind kind) {
    if (kind == NodeKind::Scalar || parent->children.empty()) return kind;
    NodeKind lead = parent->children.front()->kind;
    if (lead == NodeKind::Scalar) return kind;
    return lead;
}

// Grafts one leaf view under `parent`: skips anonymous placeholders, dedups
// against existing children and coerces its kind to the sibling class. A
// deduplicated slot child adopts the existing equal node so parameters still
// have somewhere to go.
void attach_leaf(TargetTree& tree, GenNode* parent, const ViewNode& child, AttachOutcome& out) {
    if (child.label.empty() && child.kind != NodeKind::Scalar) return;
    NodeKind kind = coerce_kind(parent, child.kind);
    if (kind == NodeKind::MappingKey) {
        std::string key = mapping_key_of(child.label);
        for (const auto& existing : parent->children) {
            if (existing->kind == NodeKind::MappingKey && mapping_key_of(existing->label) == key) {
                if (existing->label == child.label && existing->is_leaf() &&
                    is_slot_label(child.label))
                    out.slot_ids.push_back(existing->id);
                return;
            }
        }
    } else {
        for (const auto& existing : parent->children) {
            if (existing->kind == kind && existing->label == child.label && existing->is_leaf()) {
                if (is_slot_label(child.label)) out.slot_ids.push_back(existing->id);
                return;
            }
        }
    }
    GenNode* placed = tree.append(parent, tree.make_node(kind, child.label));
    out.placed_ids.push_back(placed->id);
    if (is_slot_label(child.label)) out.slot_ids.push_back(placed->id);
    out.anything_placed = true;
}

// Merges a freshly created subtree under `parent`: mapping keys merge
// recursively, leaves dedup, everything else appends. Never removes or
// relabels existing nodes.
void merge_subtree(TargetTree& tree, GenNode* parent, const ViewNode& sub, AttachOutcome& out) {
    if (sub.is_leaf()) {
        attach_leaf(tree, parent, sub, out);
        return;
    }
    if (sub.kind == NodeKind::MappingKey && !sub.label.empty()) {
        for (auto& existing : parent->children) {
            if (existing->kind == NodeKind::MappingKey &&
                mapping_key_of(existing->label) == mapping_key_of(sub.label)) {
                if (existing->label != sub.label) return; // valued leaf blocks the key
                for (const auto& c : sub.children) merge_subtree(tree, existing.get(), c, out);
                return;
            }
        }
    }
    GenNode* placed = tree.append(parent, tree.make_node(coerce_kind(parent, sub.kind), sub.label));
    out.placed_ids.push_back(placed->id);
    out.anything_placed = true;
    for (const auto& c : sub.children) merge_subtree(tree, placed, c, out);
}

// Moves an existing subtree under `dest`, preserving node identity wherever
// the node is actually kept. Conflicting or duplicate nodes are dropped.
void move_subtree(TargetTree& tree, std::unique_ptr<GenNode> node, GenNode* dest) {
    if (node->is_leaf()) {
        if (node->label.empty() && node->kind != NodeKind::Scalar) return;
        NodeKind kind = coerce_kind(dest, node->kind);
        if (kind == NodeKind::MappingKey) {
            std::string key = mapping_key_of(node->label);
            for (const auto& existing : dest->children)
                if (existing->kind == NodeKind::MappingKey &&
                    mapping_key_of(existing->label) == key)
                    return;
        } else {
            for (const auto& existing : dest->children)
                if (existing->kind == kind && existing->label == node->label &&
                    existing->is_leaf())
                    return;
        }
        node->kind = kind;
        tree.append(dest, std::move(node));
        return;
    }
    if (node->kind == NodeKind::MappingKey && !node->label.empty()) {
        for (auto& existing : dest->children) {
            if (existing->kind == NodeKind::MappingKey &&
                mapping_key_of(existing->label) == mapping_key_of(node->label)) {
                if (existing->label != node->label) return;
                while (!node->children.empty()) {
                    std::unique_ptr<GenNode> child = std::move(node->children.front());
                    node->children.erase(node->children.begin());
                    child->parent = nullptr;
                    move_subtree(tree, std::move(child), existing.get());
                }
                return;
            }
        }
    }
    node->kind = coerce_kind(dest, node->kind);
    tree.append(dest, std::move(node));
}

struct HRuleIndex {
    std::map<std::string, std::vector<int>> by_child;
};

HRuleIndex index_h_rules(const std::vector<HierarchizationRule>& rules) {
    HRuleIndex index;
    for (size_t i = 0; i < rules.size(); ++i)
        index.by_child[rules[i].child].push_back(static_cast<int>(i));
    for (auto& [child, ids] : index.by_child) {
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            return rule_rank_less(rules[static_cast<size_t>(a)], rules[static_cast<size_t>(b)]);
        });
    }
    return index;
}

std::map<std::string, std::vector<int>> index_translation_rules(
    const std::vector<TranslationRule>& rules) {
    std::map<std::string, std::vector<int>> index;
    for (size_t i = 0; i < rules.size(); ++i) index[rules[i].lhs].push_back(static_cast<int>(i));
    for (auto& [lhs, ids] : index) {
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            return rule_rank_less(rules[static_cast<size_t>(a)], rules[static_cast<size_t>(b)]);
        });
    }
    return index;
}

TraceEntry* entry_for(TranslationState& state, int h2_id) {
    for (auto& e : state.entries)
        if (e.h2_id == h2_id) return &e;
    return nullptr;
}

void remove_root_attached(TranslationState& state, int id) {
    state.root_attached.erase(
        std::remove(state.root_attached.begin(), state.root_attached.end(), id),
        state.root_attached.end());
}

} // namespace

// ---------------------------------------------------------------------------

ConfigAST init_seed(const RuleModel& model, const Dialect& target) {
    const SeedTree* seed = model.seed_for(target);
    if (!seed)
        throw TranslateError("no seed tree available for dialect '" + target.id() +
                             "'; retrain with target-dialect files or pass --seed-file");
    ConfigAST ast;
    ast.root = unfold_view(seed->tree);
    ast.dialect = target;
    renumber(ast);
    return ast;
}

AttachOutcome insert_h2(TranslationState& state, const ViewNode& h2_view) {
    AttachOutcome out;
    TargetTree& tree = state.tree;
    const bool parent_is_root = h2_view.kind == NodeKind::MappingKey && h2_view.label.empty();
    GenNode* target =
        parent_is_root ? tree.root() : search_parent(tree, h2_view.kind, h2_view.label);
    if (target != nullptr) {
        for (const auto& c : h2_view.children) attach_leaf(tree, target, c, out);
        return out;
    }
    // no matching parent: park the whole H2 at the root
    if (h2_view.kind == NodeKind::MappingKey) {
        std::string key = mapping_key_of(h2_view.label);
        for (const auto& existing : tree.root()->children)
            if (existing->kind == NodeKind::MappingKey && mapping_key_of(existing->label) == key)
                return out; // key conflict at the root; nothing placed
    }
    GenNode* placed = tree.append(tree.root(), tree.materialize(h2_view));
    state.root_attached.push_back(placed->id);
    out.placed_ids.push_back(placed->id);
    for (const auto& c : placed->children) {
        out.placed_ids.push_back(c->id);
        if (is_slot_label(c->label)) out.slot_ids.push_back(c->id);
    }
    out.anything_placed = true;
    return out;
}

namespace {

void apply_rule(TranslationState& state, TraceEntry& entry, const std::string& rhs_canonical,
                H2Status status, const std::string& rule_ref) {
    ViewNode rhs = parse_canonical(rhs_canonical);
    AttachOutcome out = insert_h2(state, rhs);
    entry.status = status;
    entry.rule_ref = rule_ref;
    entry.generated_node_ids = out.placed_ids;
    entry.generated_slot_ids = out.slot_ids;
    entry.placement_failed = !out.anything_placed;
}

} // namespace

void translate_sim(const std::vector<H2Tree>& h2s, const RuleModel& model,
                   TranslationState& state) {
    auto index = index_translation_rules(model.r_sim);
    for (const auto& h2 : h2s) {
        TraceEntry* entry = entry_for(state, h2.h2_id);
        if (!entry || entry->status != H2Status::Untranslated) continue;
        auto it = index.find(entry->canonical);
        if (it == index.end()) continue;
        int best = it->second.front();
        apply_rule(state, *entry, model.r_sim[static_cast<size_t>(best)].rhs,
                   H2Status::TranslatedSim, "sim:" + std::to_string(best));
    }
}

void translate_stat(const std::vector<H2Tree>& h2s, const ViewNode& source_view,
                    const RuleModel& model, TranslationState& state) {
    auto index = index_translation_rules(model.r_stat);
    for (const auto& h2 : h2s) {
        TraceEntry* entry = entry_for(state, h2.h2_id);
        if (!entry || entry->status != H2Status::Untranslated) continue;
        auto it = index.find(entry->canonical);
        if (it == index.end()) continue;
        ViewNode target_view = state.tree.to_view();
        for (int rule_idx : it->second) {
            const TranslationRule& rule = model.r_stat[static_cast<size_t>(rule_idx)];
            const StatRuleTrees& trees = model.stat_index.per_rule[static_cast<size_t>(rule_idx)];
            if (!trees.usable()) continue;
            bool src_ok = false;
            for (int t : trees.src_trees) {
                if (contains_anywhere(model.src_fts[static_cast<size_t>(t)].tree, source_view)) {
                    src_ok = true;
                    break;
                }
            }
            if (!src_ok) continue;
            bool tgt_ok = false;
            for (int t : trees.tgt_trees) {
                const ViewNode& ft = model.tgt_fts[static_cast<size_t>(t)].tree;
                if (ft.children.empty()) continue;
                size_t present = 0;
                for (const auto& branch : ft.children)
                    if (contains_anywhere(branch, target_view)) ++present;
                if (2 * present >= ft.children.size()) {
                    tgt_ok = true;
                    break;
                }
            }
            if (!tgt_ok) continue;
            apply_rule(state, *entry, rule.rhs, H2Status::TranslatedStat,
                       "stat:" + std::to_string(rule_idx));
            break;
        }
    }
}

void enrich_with_tars(TranslationState& state, const RuleModel& model, std::vector<int>* applied) {
    for (size_t tar_idx = 0; tar_idx < model.tars.size(); ++tar_idx) {
        const Tar& tar = model.tars[tar_idx];
        const FrequentTree& ft = model.tgt_fts[static_cast<size_t>(tar.tree_index)];
        ViewNode antecedent;
        antecedent.kind = ft.tree.kind;
        antecedent.label = ft.tree.label;
        for (int b : tar.antecedent)
            antecedent.children.push_back(ft.tree.children[static_cast<size_t>(b)]);

        ViewNode whole = state.tree.to_view();
        GenNode* anchor = nullptr;
        if (ft.tree.kind == NodeKind::MappingKey && ft.tree.label.empty()) {
            if (contains_rooted(antecedent, whole)) anchor = state.tree.root();
        } else {
            int best_depth = 0;
            std::function<void(GenNode*, int)> scan = [&](GenNode* n, int depth) {
                if (depth > 0 && n->kind == antecedent.kind && n->label == antecedent.label &&
                    depth > best_depth && contains_rooted(antecedent, state.tree.to_view(n))) {
                    best_depth = depth;
                    anchor = n;
                }
                for (auto& c : n->children) scan(c.get(), depth + 1);
            };
            scan(state.tree.root(), 0);
        }
        if (!anchor) continue;

        AttachOutcome out;
        for (int b : tar.consequent) {
            const ViewNode& branch = ft.tree.children[static_cast<size_t>(b)];
            if (contains_anywhere(branch, whole)) continue; // already present
            merge_subtree(state.tree, anchor, branch, out);
        }
        if (out.anything_placed && applied) applied->push_back(static_cast<int>(tar_idx));
    }
}

void hierarchize(TranslationState& state, const RuleModel& model) {
    HRuleIndex index = index_h_rules(model.h_rules);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> pending = state.root_attached;
        for (int id : pending) {
            GenNode* node = state.tree.by_id(id);
            if (!node || node->parent != state.tree.root()) {
                remove_root_attached(state, id);
                continue;
            }
            // DFS-based insertion of the parked H2 itself
            GenNode* match = search_parent(state.tree, node->kind, node->label, node);
            if (match) {
                std::unique_ptr<GenNode> owned = state.tree.detach(node);
                while (!owned->children.empty()) {
                    std::unique_ptr<GenNode> child = std::move(owned->children.front());
                    owned->children.erase(owned->children.begin());
                    child->parent = nullptr;
                    // re-index happens in move_subtree's append
                    move_subtree(state.tree, std::move(child), match);
                }
                remove_root_attached(state, id);
                changed = true;
                continue;
            }
            auto rit = index.by_child.find(canonical_form(state.tree.to_view(node)));
            if (rit == index.by_child.end()) continue; // stays at the root
            const HierarchizationRule& rule =
                model.h_rules[static_cast<size_t>(rit->second.front())];
            GenNode* existing = search_parent(state.tree, rule.parent_kind, rule.parent_label, node);
            std::unique_ptr<GenNode> owned = state.tree.detach(node);
            remove_root_attached(state, id);
            if (existing) {
                move_subtree(state.tree, std::move(owned), existing);
            } else {
                GenNode* synthesized = state.tree.append(
                    state.tree.root(), state.tree.make_node(rule.parent_kind, rule.parent_label));
                state.tree.append(synthesized, std::move(owned));
            }
            changed = true;
        }
    }
}

void transfer_parameters(TranslationState& state, const ParameterStore& store,
                         TranslationReport& report) {
    report.parameters_stored = store.entries.size();
    for (auto& entry : state.entries) {
        std::vector<const ParameterEntry*> params;
        for (const auto& p : store.entries)
            if (p.h2_id == entry.h2_id) params.push_back(&p);
        if (params.empty()) continue;
        if (entry.status == H2Status::Untranslated) {
            for (const auto* p : params)
                report.unplaced_parameters.push_back(
                    {p->h2_id, p->slot_index, p->original_text, "h2 untranslated"});
            continue;
        }
        // slots still abstract and alive, in generation order; a slot claimed
        // by an earlier H2 no longer accepts parameters
        std::vector<GenNode*> slots;
        for (int sid : entry.generated_slot_ids) {
            GenNode* n = state.tree.by_id(sid);
            if (!n) continue;
            std::string key, value;
            const std::string scalar = split_key_value(n->label, key, value) ? value : n->label;
            if (is_command_label(scalar) || is_placeholder_label(scalar)) slots.push_back(n);
        }
        size_t i = 0;
        for (; i < params.size() && i < slots.size(); ++i) {
            GenNode* slot = slots[i];
            std::string key, value;
            bool folded = split_key_value(slot->label, key, value);
            std::string scalar = folded ? value : slot->label;
            if (is_command_label(scalar)) {
                std::string cmd = deabstract_scalar(scalar);
                // restore the source spelling when it names the same command
                if (!params[i]->matched_text.empty() && params[i]->canonical == cmd)
                    cmd = params[i]->matched_text;
                scalar = params[i]->original_text.empty() ? cmd
                                                          : cmd + " " + params[i]->original_text;
            } else {
                scalar = params[i]->original_text;
            }
            slot->label = folded ? key + ": " + scalar : scalar;
            ++report.parameters_placed;
        }
        for (; i < params.size(); ++i)
            report.unplaced_parameters.push_back({params[i]->h2_id, params[i]->slot_index,
                                                  params[i]->original_text,
                                                  "no slot in generated h2"});
    }
}

namespace {

// De-abstracts leftover CMD:* labels; placeholders stay visible and both are
// reported so the user can fill them in.
void finalize_labels(GenNode* n, TranslationReport& report) {
    std::string key, value;
    bool folded = split_key_value(n->label, key, value);
    std::string scalar = folded ? value : n->label;
    if (is_command_label(scalar)) {
        report.unparameterized_slots.push_back(n->label);
        scalar = deabstract_scalar(scalar);
        n->label = folded ? key + ": " + scalar : scalar;
    } else if (is_placeholder_label(scalar) && n->is_leaf() && !n->label.empty()) {
        report.unparameterized_slots.push_back(n->label);
    }
    for (auto& c : n->children) finalize_labels(c.get(), report);
}

} // namespace

TranslationOutput translate_file(const std::string& source_text, const RuleModel& model) {
    ConfigAST parsed = parse_config(source_text, model.source);
    AbstractionResult abstracted = abstract_ast(parsed, model.abstraction);
    ViewNode source_view = fold_view(abstracted.ast);
    std::vector<H2Tree> h2s = extract_h2(source_view);

    TranslationReport report;
    report.source_dialect = model.source.id();
    report.target_dialect = model.target.id();
    report.unabstracted_scalars = abstracted.unabstracted;

    TranslationState state;
    {
        const SeedTree* seed = model.seed_for(model.target);
        if (!seed)
            throw TranslateError("no seed tree available for dialect '" + model.target.id() +
                                 "'; retrain with target-dialect files or pass --seed-file");
        for (const auto& c : seed->tree.children)
            state.tree.append(state.tree.root(), state.tree.materialize(c));
    }

    for (const auto& h2 : h2s) {
        TraceEntry e;
        e.h2_id = h2.h2_id;
        e.canonical = canonical_form(h2);
        state.entries.push_back(std::move(e));
    }

    translate_sim(h2s, model, state);
    translate_stat(h2s, source_view, model, state);
    enrich_with_tars(state, model, &report.applied_tars);
    hierarchize(state, model);
    transfer_parameters(state, abstracted.store, report);
    finalize_labels(state.tree.root(), report);

    std::set<int> unabstracted_cmd(abstracted.unabstracted_command_ids.begin(),
                                   abstracted.unabstracted_command_ids.end());
    report.total_h2 = h2s.size();
    for (size_t i = 0; i < h2s.size(); ++i) {
        TraceEntry& e = state.entries[i];
        switch (e.status) {
        case H2Status::TranslatedSim: ++report.translated_sim; break;
        case H2Status::TranslatedStat: ++report.translated_stat; break;
        case H2Status::Untranslated: {
            ++report.untranslated;
            bool unabstracted = false;
            for (const auto& c : h2s[i].children)
                if (c.origin_scalar_id >= 0 && unabstracted_cmd.count(c.origin_scalar_id))
                    unabstracted = true;
            if (unabstracted) e.category = FailureCategory::UnabstractedSyntax;
            else if (h2s[i].parent_depth >= 2) e.category = FailureCategory::MoreThanTwoLevels;
            else e.category = FailureCategory::NoDirectEquivalent;
            break;
        }
        }
    }
    report.empty_input = h2s.empty();
    if (!h2s.empty())
        report.translation_percentage =
            static_cast<double>(report.translated_sim + report.translated_stat) /
            static_cast<double>(report.total_h2);
    report.entries = state.entries;

    ConfigAST out_ast;
    out_ast.root = unfold_view(state.tree.to_view());
    out_ast.dialect = model.target;
    renumber(out_ast);
    TranslationOutput output;
    output.yaml = emit_yaml(out_ast);
    output.report = std::move(report);
    return output;
}

} // namespace cimig
