#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tabclf {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class VariableKind { Numeric, Categorical };
enum class VariableRole { Feature, LabelSource, Ignored };

/// One survey variable: how it is represented and which codes mean "absent".
struct VariableSpec {
    std::string name;
    VariableKind kind = VariableKind::Numeric;
    std::vector<std::string> levels;  // ordered; Categorical only
    VariableRole role = VariableRole::Feature;
    std::set<std::string> missing_codes{"", "NA"};

    bool is_categorical() const { return kind == VariableKind::Categorical; }
    bool operator==(const VariableSpec&) const = default;
};

enum class LabelRuleKind {
    Anemia,   // hemoglobin (g/dl) or pre-binned anemia level
    Malaria,  // Positive / Negative test result
    Binary,   // custom: one categorical level is the positive class
};

struct LabelRule {
    LabelRuleKind kind = LabelRuleKind::Anemia;
    std::string positive_level;  // Binary only

    bool operator==(const LabelRule&) const = default;
};

struct Schema {
    std::vector<VariableSpec> variables;
    LabelRule label_rule;

    std::optional<std::size_t> index_of(const std::string& name) const;
    const VariableSpec& at(const std::string& name) const;
    /// Index of the unique LabelSource variable; throws if there is not exactly one.
    std::size_t label_index() const;

    bool operator==(const Schema&) const = default;
};

struct SchemaViolation {
    std::string variable;
    std::string message;
};

/// Every broken Schema invariant, each naming the offending variable.
std::vector<SchemaViolation> schema_validate(const Schema& schema);

/// A cell is either a string value or Missing.
using Cell = std::optional<std::string>;

/// Rows of cells in schema order.
struct RawTable {
    Schema schema;
    std::vector<std::vector<Cell>> rows;

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_cols() const { return schema.variables.size(); }
};

double column_missing_fraction(const RawTable& table, const std::string& variable);

struct ColumnMeta {
    std::string source;            // source variable name
    std::optional<std::string> level;  // set for one-hot indicator columns
    std::size_t level_count = 0;   // number of declared levels of the source (indicators only)
    bool standardized = false;
    double mean = 0.0;
    double stddev = 1.0;

    bool is_indicator() const { return level.has_value(); }
    std::string label() const { return level ? source + "=" + *level : source; }
    bool operator==(const ColumnMeta&) const = default;
};

/// Dense design matrix with column provenance.
struct EncodedMatrix {
    Matrix values;
    std::vector<ColumnMeta> columns;

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }
    /// Column subset in the given order.
    EncodedMatrix select_columns(const std::vector<std::size_t>& keep) const;
    /// Row subset in the given order.
    EncodedMatrix select_rows(const std::vector<std::size_t>& keep) const;
};

/// Binary labels, +1 POSITIVE / -1 NEGATIVE.
struct LabelVector {
    std::vector<int> labels;
    std::string positive_meaning;

    std::size_t size() const { return labels.size(); }
    std::size_t count(int label) const;
    bool has_both_classes() const { return count(+1) > 0 && count(-1) > 0; }
    LabelVector select(const std::vector<std::size_t>& keep) const;
};

/// Throws FitError unless both classes are present.
void require_both_classes(const LabelVector& y, const char* who);

}  // namespace tabclf
