#include "cimig/model.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cimig {

using nlohmann::json;

const SeedTree* RuleModel::seed_for(const Dialect& d) const {
    for (const auto& s : seeds)
        if (s.dialect == d) return &s;
    return nullptr;
}

std::string fnv1a64_hex(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

namespace {

json translation_rule_to_json(const TranslationRule& r) {
    return json{{"lhs", r.lhs},
                {"rhs", r.rhs},
                {"support", r.support},
                {"confidence", r.confidence},
                {"lift", r.lift},
                {"flipped_support", r.flipped_support},
                {"flipped_confidence", r.flipped_confidence},
                {"flipped_lift", r.flipped_lift},
                {"support_product", r.support_product},
                {"confidence_product", r.confidence_product},
                {"lift_product", r.lift_product},
                {"leaf_cosine", r.leaf_cosine},
                {"class", r.cls == RuleClass::Sim ? "sim" : "stat"}};
}

TranslationRule translation_rule_from_json(const json& j) {
    TranslationRule r;
    r.lhs = j.at("lhs").get<std::string>();
    r.rhs = j.at("rhs").get<std::string>();
    r.support = j.at("support").get<double>();
    r.confidence = j.at("confidence").get<double>();
    r.lift = j.at("lift").get<double>();
    r.flipped_support = j.at("flipped_support").get<double>();
    r.flipped_confidence = j.at("flipped_confidence").get<double>();
    r.flipped_lift = j.at("flipped_lift").get<double>();
    r.support_product = j.at("support_product").get<double>();
    r.confidence_product = j.at("confidence_product").get<double>();
    r.lift_product = j.at("lift_product").get<double>();
    r.leaf_cosine = j.at("leaf_cosine").get<double>();
    r.cls = j.at("class").get<std::string>() == "sim" ? RuleClass::Sim : RuleClass::Stat;
    return r;
}

json h_rule_to_json(const HierarchizationRule& r) {
    return json{{"child", r.child},
                {"parent_label", r.parent_label},
                {"parent_kind", std::string(1, kind_tag(r.parent_kind))},
                {"support", r.support},
                {"confidence", r.confidence},
                {"lift", r.lift},
                {"flipped_support", r.flipped_support},
                {"flipped_confidence", r.flipped_confidence},
                {"flipped_lift", r.flipped_lift},
                {"support_product", r.support_product},
                {"confidence_product", r.confidence_product},
                {"lift_product", r.lift_product}};
}

HierarchizationRule h_rule_from_json(const json& j) {
    HierarchizationRule r;
    r.child = j.at("child").get<std::string>();
    r.parent_label = j.at("parent_label").get<std::string>();
    r.parent_kind = kind_from_tag(j.at("parent_kind").get<std::string>().at(0));
    r.support = j.at("support").get<double>();
    r.confidence = j.at("confidence").get<double>();
    r.lift = j.at("lift").get<double>();
    r.flipped_support = j.at("flipped_support").get<double>();
    r.flipped_confidence = j.at("flipped_confidence").get<double>();
    r.flipped_lift = j.at("flipped_lift").get<double>();
    r.support_product = j.at("support_product").get<double>();
    r.confidence_product = j.at("confidence_product").get<double>();
    r.lift_product = j.at("lift_product").get<double>();
    return r;
}

json ft_to_json(const FrequentTree& ft) {
    return json{{"tree", canonical_form(ft.tree)},
                {"support", ft.support},
                {"dialect", ft.dialect.id()},
                {"root_label", ft.root_label}};
}

FrequentTree ft_from_json(const json& j) {
    FrequentTree ft;
    ft.tree = parse_canonical(j.at("tree").get<std::string>());
    ft.support = j.at("support").get<double>();
    ft.dialect = Dialect::from_id(j.at("dialect").get<std::string>());
    ft.root_label = j.at("root_label").get<std::string>();
    return ft;
}

void check(bool cond, const std::string& msg) {
    if (!cond) throw ModelInvariantError("model invariant violated: " + msg);
}

void validate(const RuleModel& m) {
    check(m.stat_index.per_rule.size() == m.r_stat.size(),
          "stat_index must have one entry per stat rule");
    for (const auto& entry : m.stat_index.per_rule) {
        for (int t : entry.src_trees)
            check(t >= 0 && static_cast<size_t>(t) < m.src_fts.size(),
                  "stat_index references a missing source frequent tree");
        for (int t : entry.tgt_trees)
            check(t >= 0 && static_cast<size_t>(t) < m.tgt_fts.size(),
                  "stat_index references a missing target frequent tree");
    }
    for (const auto& tar : m.tars) {
        check(tar.tree_index >= 0 && static_cast<size_t>(tar.tree_index) < m.tgt_fts.size(),
              "TAR references a missing target frequent tree");
        size_t branches = m.tgt_fts[static_cast<size_t>(tar.tree_index)].tree.children.size();
        check(tar.antecedent.size() + tar.consequent.size() == branches,
              "TAR antecedent and consequent must cover all branches");
    }
    auto check_products = [&](double a, double b, double product, const char* what) {
        check(std::fabs(a * b - product) <= 1e-9, std::string("rule ") + what +
                                                      " product mismatch");
    };
    for (const auto& r : m.r_sim) {
        check(r.cls == RuleClass::Sim, "r_sim rule tagged stat");
        check_products(r.confidence, r.flipped_confidence, r.confidence_product, "confidence");
        check_products(r.support, r.flipped_support, r.support_product, "support");
        check_products(r.lift, r.flipped_lift, r.lift_product, "lift");
    }
    for (const auto& r : m.r_stat) {
        check(r.cls == RuleClass::Stat, "r_stat rule tagged sim");
        check_products(r.confidence, r.flipped_confidence, r.confidence_product, "confidence");
    }
    for (const auto& r : m.r_sim)
        check(r.confidence >= r.support - 1e-12, "confidence below support");
    for (const auto& r : m.r_stat)
        check(r.confidence >= r.support - 1e-12, "confidence below support");
}

} // namespace

std::string model_to_string(const RuleModel& m) {
    json payload;
    payload["direction"] = {{"source", m.source.id()}, {"target", m.target.id()}};
    payload["abstraction"] = json::parse(m.abstraction.to_json_text());
    json sim = json::array(), stat = json::array();
    for (const auto& r : m.r_sim) sim.push_back(translation_rule_to_json(r));
    for (const auto& r : m.r_stat) stat.push_back(translation_rule_to_json(r));
    payload["r_sim"] = sim;
    payload["r_stat"] = stat;
    json hr = json::array();
    for (const auto& r : m.h_rules) hr.push_back(h_rule_to_json(r));
    payload["h_rules"] = hr;
    json sfts = json::array(), tfts = json::array();
    for (const auto& ft : m.src_fts) sfts.push_back(ft_to_json(ft));
    for (const auto& ft : m.tgt_fts) tfts.push_back(ft_to_json(ft));
    payload["src_fts"] = sfts;
    payload["tgt_fts"] = tfts;
    json tars = json::array();
    for (const auto& t : m.tars)
        tars.push_back(json{{"tree", t.tree_index}, {"antecedent", t.antecedent},
                            {"consequent", t.consequent}});
    payload["tars"] = tars;
    json seeds = json::array();
    for (const auto& s : m.seeds)
        seeds.push_back(json{{"dialect", s.dialect.id()}, {"tree", canonical_form(s.tree)}});
    payload["seeds"] = seeds;
    json index = json::array();
    for (const auto& e : m.stat_index.per_rule)
        index.push_back(json{{"src_trees", e.src_trees}, {"tgt_trees", e.tgt_trees}});
    payload["stat_index"] = index;
    payload["dialect_top_keys"] = m.dialect_top_keys;
    payload["training_meta"] = {{"pair_count", m.meta.pair_count},
                                {"src_only_count", m.meta.src_only_count},
                                {"tgt_only_count", m.meta.tgt_only_count},
                                {"knobs", m.meta.knobs},
                                {"tool_version", m.meta.tool_version},
                                {"notes", m.meta.notes}};

    std::string payload_text = payload.dump();
    json doc;
    doc["schema_version"] = kModelSchemaVersion;
    doc["checksum"] = "fnv1a64:" + fnv1a64_hex(payload_text);
    doc["payload"] = std::move(payload);
    return doc.dump(1) + "\n";
}

void save_model(const RuleModel& model, const std::string& path) {
    validate(model);
    std::string text = model_to_string(model);
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ModelError("cannot open for writing: " + tmp);
        out << text;
        if (!out) throw ModelError("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw ModelError("atomic rename failed: " + path);
}

RuleModel model_from_string(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ModelIntegrityError(std::string("model file is not valid JSON: ") + e.what());
    }
    if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer())
        throw ModelIntegrityError("model file lacks a schema_version field");
    int version = doc["schema_version"].get<int>();
    if (version != kModelSchemaVersion)
        throw ModelVersionError("unsupported model schema version: expected " +
                                std::to_string(kModelSchemaVersion) + ", found " +
                                std::to_string(version));
    if (!doc.contains("payload") || !doc.contains("checksum"))
        throw ModelIntegrityError("model file lacks payload or checksum");
    std::string expect = doc["checksum"].get<std::string>();
    std::string actual = "fnv1a64:" + fnv1a64_hex(doc["payload"].dump());
    if (expect != actual)
        throw ModelIntegrityError("model checksum mismatch: header " + expect + ", content " +
                                  actual);

    const json& payload = doc["payload"];
    RuleModel m;
    try {
        m.source = Dialect::from_id(payload.at("direction").at("source").get<std::string>());
        m.target = Dialect::from_id(payload.at("direction").at("target").get<std::string>());
        m.abstraction = AbstractionSpec::from_json_text(payload.at("abstraction").dump());
        for (const auto& j : payload.at("r_sim")) m.r_sim.push_back(translation_rule_from_json(j));
        for (const auto& j : payload.at("r_stat")) m.r_stat.push_back(translation_rule_from_json(j));
        for (const auto& j : payload.at("h_rules")) m.h_rules.push_back(h_rule_from_json(j));
        for (const auto& j : payload.at("src_fts")) m.src_fts.push_back(ft_from_json(j));
        for (const auto& j : payload.at("tgt_fts")) m.tgt_fts.push_back(ft_from_json(j));
        for (const auto& j : payload.at("tars")) {
            Tar t;
            t.tree_index = j.at("tree").get<int>();
            t.antecedent = j.at("antecedent").get<std::vector<int>>();
            t.consequent = j.at("consequent").get<std::vector<int>>();
            m.tars.push_back(std::move(t));
        }
        for (const auto& j : payload.at("seeds")) {
            SeedTree s;
            s.dialect = Dialect::from_id(j.at("dialect").get<std::string>());
            s.tree = parse_canonical(j.at("tree").get<std::string>());
            m.seeds.push_back(std::move(s));
        }
        for (const auto& j : payload.at("stat_index")) {
            StatRuleTrees e;
            e.src_trees = j.at("src_trees").get<std::vector<int>>();
            e.tgt_trees = j.at("tgt_trees").get<std::vector<int>>();
            m.stat_index.per_rule.push_back(std::move(e));
        }
        m.dialect_top_keys =
            payload.at("dialect_top_keys").get<std::map<std::string, std::vector<std::string>>>();
        const json& meta = payload.at("training_meta");
        m.meta.pair_count = meta.at("pair_count").get<size_t>();
        m.meta.src_only_count = meta.at("src_only_count").get<size_t>();
        m.meta.tgt_only_count = meta.at("tgt_only_count").get<size_t>();
        m.meta.knobs = meta.at("knobs").get<std::map<std::string, std::string>>();
        m.meta.tool_version = meta.at("tool_version").get<std::string>();
        m.meta.notes = meta.at("notes").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw ModelIntegrityError(std::string("model payload is malformed: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ModelIntegrityError(std::string("model payload is malformed: ") + e.what());
    }
    validate(m);
    return m;
}

RuleModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelError("cannot open model file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return model_from_string(ss.str());
}

} // namespace cimig
