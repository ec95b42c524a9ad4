#include "cimig/abstraction.hpp"

#include "cimig/h2.hpp"
#include "cimig/text.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace cimig {

using nlohmann::json;

AbstractionSpec AbstractionSpec::defaults() {
    AbstractionSpec spec;
    auto cmd = [&](const char* pattern, const char* canonical) {
        spec.rules.push_back({AbstractionRule::Kind::Command, pattern, canonical});
    };
    cmd(R"(^(\.\/)?mvnw?\b)", "mvn");
    cmd(R"(^(\.\/)?gradlew?\b)", "gradle");
    cmd(R"(^bash\b)", "bash");
    cmd(R"(^sh\b)", "sh");
    cmd(R"(^(sudo )?apt-get\b)", "apt-get");
    cmd(R"(^(sudo )?pip3?\b)", "pip");
    cmd(R"(^npm\b)", "npm");
    cmd(R"(^curl\b)", "curl");
    cmd(R"(^git\b)", "git");
    cmd(R"(^chmod\b)", "chmod");
    spec.rules.push_back({AbstractionRule::Kind::ScalarClass, R"(^v?\d+(\.\d+)+$)", "<VER>"});
    spec.rules.push_back({AbstractionRule::Kind::ScalarClass, R"(^https?://\S+$)", "<URL>"});
    return spec;
}

AbstractionSpec AbstractionSpec::from_json_text(const std::string& text) {
    json doc = json::parse(text);
    AbstractionSpec spec;
    for (const auto& item : doc.at("rules")) {
        AbstractionRule rule;
        std::string kind = item.at("kind").get<std::string>();
        if (kind == "command") rule.kind = AbstractionRule::Kind::Command;
        else if (kind == "scalar_class") rule.kind = AbstractionRule::Kind::ScalarClass;
        else throw std::invalid_argument("abstraction rule kind must be 'command' or 'scalar_class'");
        rule.pattern = item.at("pattern").get<std::string>();
        rule.replacement = item.at("canonical").get<std::string>();
        std::regex probe(rule.pattern); // validate early
        (void)probe;
        spec.rules.push_back(std::move(rule));
    }
    return spec;
}

std::string AbstractionSpec::to_json_text() const {
    json rules = json::array();
    for (const auto& r : this->rules) {
        rules.push_back({{"kind", r.kind == AbstractionRule::Kind::Command ? "command" : "scalar_class"},
                         {"pattern", r.pattern},
                         {"canonical", r.replacement}});
    }
    json doc;
    doc["rules"] = rules;
    return doc.dump(2);
}

AbstractionSpec AbstractionSpec::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open abstraction spec: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

bool is_command_label(const std::string& scalar) { return starts_with(scalar, kCommandPrefix); }

bool is_placeholder_label(const std::string& scalar) {
    if (scalar.size() < 3 || scalar.front() != '<' || scalar.back() != '>') return false;
    for (size_t i = 1; i + 1 < scalar.size(); ++i) {
        char c = scalar[i];
        if (!(std::isupper(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) ||
              c == '_'))
            return false;
    }
    return true;
}

std::string deabstract_scalar(const std::string& scalar) {
    if (is_command_label(scalar)) return scalar.substr(std::string(kCommandPrefix).size());
    return scalar;
}

std::vector<const ParameterEntry*> ParameterStore::for_h2(int h2_id) const {
    std::vector<const ParameterEntry*> out;
    for (const auto& e : entries)
        if (e.h2_id == h2_id) out.push_back(&e);
    return out;
}

namespace {

struct CompiledRule {
    AbstractionRule::Kind kind;
    std::regex re;
    std::string replacement;
};

struct Excision {
    std::string params;
    std::string canonical;
    std::string matched_text;
};

bool looks_like_command(const std::string& s) {
    return trim(s).find(' ') != std::string::npos;
}

void walk_scalars(Node& n, const std::vector<CompiledRule>& rules, AbstractionResult& result,
                  std::map<int, Excision>& excised) {
    if (n.kind == NodeKind::Scalar) {
        const std::string original = n.label;
        if (is_command_label(original) || is_placeholder_label(original)) return; // already abstract
        for (const auto& rule : rules) {
            std::smatch m;
            if (!std::regex_search(original, m, rule.re)) continue;
            if (rule.kind == AbstractionRule::Kind::Command) {
                std::string params = trim(m.prefix().str() + " " + m.suffix().str());
                n.label = std::string(kCommandPrefix) + rule.replacement;
                if (!params.empty())
                    excised[n.node_id] = Excision{params, rule.replacement, trim(m.str())};
            } else {
                n.label = rule.replacement;
                excised[n.node_id] = Excision{original, "", ""};
            }
            return;
        }
        result.unabstracted.push_back(original);
        if (looks_like_command(original)) result.unabstracted_command_ids.push_back(n.node_id);
        return;
    }
    for (auto& c : n.children) walk_scalars(c, rules, result, excised);
}

} // namespace

AbstractionResult abstract_ast(const ConfigAST& ast, const AbstractionSpec& spec) {
    std::vector<CompiledRule> rules;
    rules.reserve(spec.rules.size());
    for (const auto& r : spec.rules)
        rules.push_back({r.kind, std::regex(r.pattern, std::regex::ECMAScript), r.replacement});

    AbstractionResult result;
    result.ast = ast;
    std::map<int, Excision> excised;
    walk_scalars(result.ast.root, rules, result, excised);

    // Key parameter slots by the H-2 decomposition of the abstracted tree so
    // the store lines up with what extraction and translation will see.
    std::vector<H2Tree> h2s = extract_h2(result.ast);
    for (const auto& h2 : h2s) {
        int slot = 0;
        for (const auto& child : h2.children) {
            if (child.origin_scalar_id < 0) continue;
            auto it = excised.find(child.origin_scalar_id);
            if (it == excised.end()) continue;
            result.store.entries.push_back(ParameterEntry{h2.h2_id, slot++, it->second.params,
                                                          child.origin_scalar_id,
                                                          it->second.canonical,
                                                          it->second.matched_text});
        }
    }
    return result;
}

} // namespace cimig
