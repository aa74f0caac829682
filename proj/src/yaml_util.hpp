#pragma once

// Helpers shared by the YAML readers. Private to the library.

#include <initializer_list>
#include <set>
#include <string>

#include <yaml-cpp/yaml.h>

#include "tabclf/errors.hpp"

namespace tabclf::yaml {

inline std::string where(const YAML::Node& node) {
    const auto mark = node.Mark();
    if (mark.is_null()) return "";
    return "line " + std::to_string(mark.line + 1) + ": ";
}

[[noreturn]] inline void fail(const YAML::Node& node, const std::string& message) {
    throw ParseError(where(node) + message);
}

inline void require_map(const YAML::Node& node, const std::string& what) {
    if (!node.IsMap()) fail(node, what + " must be a mapping");
}

inline void check_keys(const YAML::Node& node, const std::string& what,
                       std::initializer_list<const char*> allowed) {
    require_map(node, what);
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!ok.count(key)) fail(kv.first, "unknown key '" + key + "' in " + what);
    }
}

template <typename T>
T as(const YAML::Node& node, const std::string& what) {
    if (!node.IsScalar()) fail(node, what + " must be a scalar");
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        fail(node, "invalid value '" + node.Scalar() + "' for " + what);
    }
}

inline YAML::Node load(const std::string& text) {
    try {
        return YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ParseError("line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
}

}  // namespace tabclf::yaml
