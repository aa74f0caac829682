#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "tabclf/data_model.hpp"

namespace tabclf {

// Schema files are YAML:
//
//   label_rule: anemia            # anemia | malaria | {kind: binary, positive: <level>}
//   variables:
//     - name: Sex of child
//       kind: categorical         # numeric | categorical
//       levels: [Male, Female]
//       role: feature             # feature | label_source | ignored
//       missing_codes: ["", NA]   # optional, default ["", NA]

std::string schema_to_yaml(const Schema& schema);
Schema schema_from_yaml(std::string_view text);
Schema load_schema(const std::filesystem::path& path);

const char* to_string(LabelRuleKind kind);
const char* to_string(VariableKind kind);
const char* to_string(VariableRole role);

}  // namespace tabclf
