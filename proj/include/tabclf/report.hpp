#pragma once

#include <filesystem>
#include <string>

#include "tabclf/evaluation.hpp"

namespace tabclf {

/// Report layout, keys in this order:
///   task, ledger {initial, encoding_expansion, stages [{stage, count, removed}], final},
///   split {kind, test_fraction | folds, description}, seed, rows, features,
///   algorithms [{name, params, accuracy, accuracy_percent, confusion {tp, fp, tn, fn}, seed, error?}]
/// A failed algorithm has a null accuracy and carries an error string.
Json report_to_json(const ComparisonReport& report);
ComparisonReport report_from_json(const Json& j);

/// Four significant figures with a percent sign, e.g. 0.9231 -> "92.31%".
std::string format_percent(double fraction);

/// Writes report_to_json(report) pretty-printed with a trailing newline.
void emit_report(const ComparisonReport& report, const std::filesystem::path& path);
ComparisonReport load_report(const std::filesystem::path& path);

}  // namespace tabclf
