// Hand-built rule models for translator tests.
#pragma once

#include "cimig/model.hpp"
#include "cimig/translate.hpp"

#include <string>
#include <vector>

namespace fixtures {

inline cimig::TranslationRule trule(const std::string& lhs, const std::string& rhs,
                                    double confidence_product, cimig::RuleClass cls) {
    cimig::TranslationRule r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.support = 0.1;
    r.confidence = 1.0;
    r.lift = 1.0;
    r.flipped_support = 0.1;
    r.flipped_confidence = confidence_product;
    r.flipped_lift = 1.0;
    r.support_product = 0.01;
    r.confidence_product = confidence_product;
    r.lift_product = 1.0;
    r.leaf_cosine = cls == cimig::RuleClass::Sim ? 0.9 : 0.0;
    r.cls = cls;
    return r;
}

inline cimig::FrequentTree ftree(const std::string& canonical, const cimig::Dialect& dialect,
                                 double support = 0.5) {
    cimig::FrequentTree ft;
    ft.tree = cimig::parse_canonical(canonical);
    ft.support = support;
    ft.dialect = dialect;
    ft.root_label = ft.tree.label;
    return ft;
}

inline cimig::SeedTree seed_tree(const std::string& canonical, const cimig::Dialect& dialect) {
    cimig::SeedTree s;
    s.dialect = dialect;
    s.tree = cimig::parse_canonical(canonical);
    return s;
}

// Travis -> GHA model exercising every pipeline stage: one sim rule, one stat
// rule with its frequent-tree prerequisites, one TAR and one hierarchization
// rule that relies on the TAR's insertion.
inline cimig::RuleModel pipeline_model() {
    using namespace cimig;
    RuleModel m;
    m.source = Dialect::travis();
    m.target = Dialect::gha();
    m.abstraction = AbstractionSpec::defaults();
    m.seeds.push_back(seed_tree("M()[M(on)[S(push)],M(jobs)]", Dialect::gha()));

    m.r_sim.push_back(
        trule("M(script)[S(CMD:mvn)]", "M(steps)[S(run: CMD:mvn)]", 0.9, RuleClass::Sim));

    m.r_stat.push_back(trule("M()[M(language: java),M(script)]", "M(jobs)[M(build)]", 0.8,
                             RuleClass::Stat));
    m.src_fts.push_back(
        ftree("M()[M(language: java),M(script)[S(CMD:mvn)]]", Dialect::travis(), 0.7));
    m.tgt_fts.push_back(
        ftree("M()[M(on)[S(push)],M(jobs)[M(build)]]", Dialect::gha(), 0.7)); // stat prereq (b)
    m.tgt_fts.push_back(ftree("M(steps)[S(run: CMD:mvn),S(uses: actions/checkout@v4)]",
                              Dialect::gha(), 0.6)); // TAR source
    m.stat_index.per_rule.push_back({{0}, {0}});

    Tar tar;
    tar.tree_index = 1;
    tar.antecedent = {0};
    tar.consequent = {1};
    m.tars.push_back(tar);

    HierarchizationRule hr;
    hr.child = "M(steps)[S(run: CMD:mvn),S(uses: actions/checkout@v4)]";
    hr.parent_kind = NodeKind::MappingKey;
    hr.parent_label = "build";
    hr.support = 0.2;
    hr.confidence = 1.0;
    hr.lift = 1.0;
    hr.flipped_support = 0.2;
    hr.flipped_confidence = 0.9;
    hr.flipped_lift = 1.0;
    hr.support_product = 0.04;
    hr.confidence_product = 0.9;
    hr.lift_product = 1.0;
    m.h_rules.push_back(hr);
    m.meta.tool_version = "cimig test";
    return m;
}

} // namespace fixtures
