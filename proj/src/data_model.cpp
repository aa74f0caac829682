#include "tabclf/data_model.hpp"

#include <algorithm>
#include <map>

#include "tabclf/errors.hpp"

namespace tabclf {

std::optional<std::size_t> Schema::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i].name == name) return i;
    }
    return std::nullopt;
}

const VariableSpec& Schema::at(const std::string& name) const {
    const auto idx = index_of(name);
    if (!idx) throw InvalidArgument("unknown variable '" + name + "'");
    return variables[*idx];
}

std::size_t Schema::label_index() const {
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i].role != VariableRole::LabelSource) continue;
        if (found) throw InvalidArgument("schema has more than one label source variable");
        found = i;
    }
    if (!found) throw InvalidArgument("schema has no label source variable");
    return *found;
}

std::vector<SchemaViolation> schema_validate(const Schema& schema) {
    std::vector<SchemaViolation> out;
    std::map<std::string, int> seen;
    std::vector<std::string> label_sources;

    for (const auto& v : schema.variables) {
        if (v.name.empty()) out.push_back({v.name, "variable name is empty"});
        if (++seen[v.name] == 2) out.push_back({v.name, "duplicate variable name"});

        if (v.is_categorical()) {
            if (v.levels.empty()) out.push_back({v.name, "categorical variable has no levels"});
            std::set<std::string> levels;
            for (const auto& l : v.levels) {
                if (!levels.insert(l).second) {
                    out.push_back({v.name, "duplicate level '" + l + "'"});
                }
                if (v.missing_codes.count(l)) {
                    out.push_back({v.name, "level '" + l + "' is also a missing code"});
                }
            }
        } else if (!v.levels.empty()) {
            out.push_back({v.name, "numeric variable declares levels"});
        }
        if (v.role == VariableRole::LabelSource) label_sources.push_back(v.name);
    }

    if (label_sources.empty()) {
        out.push_back({"", "no variable has role label_source"});
    } else if (label_sources.size() > 1) {
        for (std::size_t i = 1; i < label_sources.size(); ++i) {
            out.push_back({label_sources[i], "more than one label_source variable"});
        }
    } else {
        // The label variable must be readable by the declared rule.
        const auto& v = schema.at(label_sources.front());
        switch (schema.label_rule.kind) {
            case LabelRuleKind::Anemia:
                if (v.is_categorical()) {
                    static const std::set<std::string> known{"severe", "moderate", "mild",
                                                             "not anemic", "not anaemic"};
                    for (const auto& l : v.levels) {
                        std::string lower = l;
                        std::transform(lower.begin(), lower.end(), lower.begin(),
                                       [](unsigned char c) { return std::tolower(c); });
                        if (!known.count(lower)) {
                            out.push_back({v.name, "level '" + l + "' is not an anemia level"});
                        }
                    }
                }
                break;
            case LabelRuleKind::Malaria: {
                const bool ok = v.is_categorical() && v.levels.size() == 2 &&
                                std::count(v.levels.begin(), v.levels.end(), "Positive") == 1 &&
                                std::count(v.levels.begin(), v.levels.end(), "Negative") == 1;
                if (!ok) out.push_back({v.name, "malaria label needs levels Positive and Negative"});
                break;
            }
            case LabelRuleKind::Binary:
                if (!v.is_categorical() ||
                    std::find(v.levels.begin(), v.levels.end(), schema.label_rule.positive_level) ==
                        v.levels.end()) {
                    out.push_back({v.name, "positive level '" + schema.label_rule.positive_level +
                                               "' is not a level of the label variable"});
                }
                break;
        }
    }
    return out;
}

double column_missing_fraction(const RawTable& table, const std::string& variable) {
    const auto idx = table.schema.index_of(variable);
    if (!idx) throw InvalidArgument("unknown variable '" + variable + "'");
    if (table.rows.empty()) return 0.0;
    std::size_t missing = 0;
    for (const auto& row : table.rows) {
        if (!row[*idx]) ++missing;
    }
    return static_cast<double>(missing) / static_cast<double>(table.rows.size());
}

EncodedMatrix EncodedMatrix::select_columns(const std::vector<std::size_t>& keep) const {
    EncodedMatrix out;
    out.values.resize(values.rows(), static_cast<Eigen::Index>(keep.size()));
    out.columns.reserve(keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) {
        out.values.col(static_cast<Eigen::Index>(j)) = values.col(static_cast<Eigen::Index>(keep[j]));
        out.columns.push_back(columns.at(keep[j]));
    }
    return out;
}

EncodedMatrix EncodedMatrix::select_rows(const std::vector<std::size_t>& keep) const {
    EncodedMatrix out;
    out.columns = columns;
    out.values.resize(static_cast<Eigen::Index>(keep.size()), values.cols());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        out.values.row(static_cast<Eigen::Index>(i)) = values.row(static_cast<Eigen::Index>(keep[i]));
    }
    return out;
}

std::size_t LabelVector::count(int label) const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

LabelVector LabelVector::select(const std::vector<std::size_t>& keep) const {
    LabelVector out;
    out.positive_meaning = positive_meaning;
    out.labels.reserve(keep.size());
    for (auto i : keep) out.labels.push_back(labels.at(i));
    return out;
}

void require_both_classes(const LabelVector& y, const char* who) {
    if (!y.has_both_classes()) {
        throw FitError(std::string(who) + ": labels contain a single class");
    }
}

}  // namespace tabclf
