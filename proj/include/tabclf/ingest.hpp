#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tabclf/data_model.hpp"

namespace tabclf {

/// Per-stage record of what the reduction pipeline removed.
///
/// Stage 1 counts source variables. Later stages operate on encoded columns,
/// so one-hot expansion is tracked separately and the conservation identity is
///   initial_count + encoding_expansion - sum(removed) == final_count.
/// For all-numeric schemas the expansion is zero.
struct ReductionLedger {
    struct Stage {
        std::string name;
        std::vector<std::string> removed;
        std::size_t count = 0;

        bool operator==(const Stage&) const = default;
    };

    std::size_t initial_count = 0;
    std::ptrdiff_t encoding_expansion = 0;
    std::vector<Stage> stages;
    std::size_t final_count = 0;

    static constexpr const char* kSparse = "sparse/unimportant";
    static constexpr const char* kCorrelation = "correlation";
    static constexpr const char* kRfe = "rfe";
    static constexpr const char* kPca = "pca";

    void record(std::string name, std::vector<std::string> removed);
    std::size_t total_removed() const;
    bool conserved() const;
    bool operator==(const ReductionLedger&) const = default;
};

/// Parses a header-first CSV into schema order. Header columns outside the
/// schema are dropped.
RawTable parse_csv(std::string_view text, const Schema& schema);
RawTable parse_csv(std::istream& in, const Schema& schema);

/// Writes the table back out in the same format; Missing cells use the
/// variable's "NA" code when declared, otherwise its first missing code.
void write_csv(std::ostream& out, const RawTable& table);

struct SparseDropResult {
    RawTable table;
    std::vector<std::string> removed;
};

/// Removes columns whose missing fraction exceeds `threshold`.
/// Variables with role Ignored are also removed here; the label source is never removed.
SparseDropResult drop_sparse_columns(const RawTable& table, double threshold);

RawTable drop_incomplete_rows(const RawTable& table);

/// Feature variables to numeric columns: numerics one column each, categoricals
/// one indicator per declared level. Label source and ignored variables are skipped.
EncodedMatrix encode(const RawTable& table, bool standardize_numeric);

/// Parses a decimal number cell. Throws ParseError on junk.
double parse_number(const std::string& text);

}  // namespace tabclf
