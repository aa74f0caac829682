#include "tabclf/schema_io.hpp"

#include <fstream>
#include <sstream>

#include "tabclf/errors.hpp"
#include "yaml_util.hpp"

namespace tabclf {

const char* to_string(LabelRuleKind kind) {
    switch (kind) {
        case LabelRuleKind::Anemia: return "anemia";
        case LabelRuleKind::Malaria: return "malaria";
        case LabelRuleKind::Binary: return "binary";
    }
    return "?";
}

const char* to_string(VariableKind kind) {
    return kind == VariableKind::Numeric ? "numeric" : "categorical";
}

const char* to_string(VariableRole role) {
    switch (role) {
        case VariableRole::Feature: return "feature";
        case VariableRole::LabelSource: return "label_source";
        case VariableRole::Ignored: return "ignored";
    }
    return "?";
}

std::string schema_to_yaml(const Schema& schema) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "label_rule";
    if (schema.label_rule.kind == LabelRuleKind::Binary) {
        out << YAML::Value << YAML::Flow << YAML::BeginMap << YAML::Key << "kind" << YAML::Value
            << "binary" << YAML::Key << "positive" << YAML::Value << YAML::DoubleQuoted
            << schema.label_rule.positive_level << YAML::EndMap;
    } else {
        out << YAML::Value << to_string(schema.label_rule.kind);
    }
    out << YAML::Key << "variables" << YAML::Value << YAML::BeginSeq;
    for (const auto& v : schema.variables) {
        out << YAML::BeginMap;
        out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << v.name;
        out << YAML::Key << "kind" << YAML::Value << to_string(v.kind);
        if (v.is_categorical()) {
            out << YAML::Key << "levels" << YAML::Value << YAML::Flow << YAML::BeginSeq;
            for (const auto& l : v.levels) out << YAML::DoubleQuoted << l;
            out << YAML::EndSeq;
        }
        out << YAML::Key << "role" << YAML::Value << to_string(v.role);
        out << YAML::Key << "missing_codes" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (const auto& c : v.missing_codes) out << YAML::DoubleQuoted << c;
        out << YAML::EndSeq;
        out << YAML::EndMap;
    }
    out << YAML::EndSeq << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

Schema schema_from_yaml(std::string_view text) {
    const auto root = yaml::load(std::string(text));
    yaml::check_keys(root, "schema", {"label_rule", "variables"});

    Schema schema;
    const auto rule = root["label_rule"];
    if (!rule) yaml::fail(root, "schema needs label_rule");
    if (rule.IsMap()) {
        yaml::check_keys(rule, "label_rule", {"kind", "positive"});
        if (yaml::as<std::string>(rule["kind"], "label_rule.kind") != "binary") {
            yaml::fail(rule, "only the binary label rule takes options");
        }
        schema.label_rule.kind = LabelRuleKind::Binary;
        if (!rule["positive"]) yaml::fail(rule, "binary label rule needs 'positive'");
        schema.label_rule.positive_level = yaml::as<std::string>(rule["positive"], "label_rule.positive");
    } else {
        const auto kind = yaml::as<std::string>(rule, "label_rule");
        if (kind == "anemia") schema.label_rule.kind = LabelRuleKind::Anemia;
        else if (kind == "malaria") schema.label_rule.kind = LabelRuleKind::Malaria;
        else yaml::fail(rule, "unknown label_rule '" + kind + "'");
    }

    const auto vars = root["variables"];
    if (!vars || !vars.IsSequence()) yaml::fail(root, "schema needs a variables list");
    for (const auto& node : vars) {
        yaml::check_keys(node, "variable", {"name", "kind", "levels", "role", "missing_codes"});
        VariableSpec v;
        if (!node["name"]) yaml::fail(node, "variable needs a name");
        v.name = yaml::as<std::string>(node["name"], "name");
        const auto kind = node["kind"] ? yaml::as<std::string>(node["kind"], "kind") : "numeric";
        if (kind == "numeric") v.kind = VariableKind::Numeric;
        else if (kind == "categorical") v.kind = VariableKind::Categorical;
        else yaml::fail(node["kind"], "unknown variable kind '" + kind + "'");
        if (const auto levels = node["levels"]) {
            if (!levels.IsSequence()) yaml::fail(levels, "levels must be a list");
            for (const auto& l : levels) v.levels.push_back(yaml::as<std::string>(l, "level"));
        }
        const auto role = node["role"] ? yaml::as<std::string>(node["role"], "role") : "feature";
        if (role == "feature") v.role = VariableRole::Feature;
        else if (role == "label_source") v.role = VariableRole::LabelSource;
        else if (role == "ignored") v.role = VariableRole::Ignored;
        else yaml::fail(node["role"], "unknown role '" + role + "'");
        if (const auto codes = node["missing_codes"]) {
            if (!codes.IsSequence()) yaml::fail(codes, "missing_codes must be a list");
            v.missing_codes.clear();
            for (const auto& c : codes) v.missing_codes.insert(yaml::as<std::string>(c, "missing code"));
        }
        schema.variables.push_back(std::move(v));
    }
    return schema;
}

Schema load_schema(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open schema file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return schema_from_yaml(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace tabclf
