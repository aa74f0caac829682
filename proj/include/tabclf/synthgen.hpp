#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tabclf/data_model.hpp"

namespace tabclf {

/// A numeric feature generated as a noisy copy of another: source + N(0, noise_sd^2).
struct DerivedColumn {
    std::string column;
    std::string source;
    double noise_sd = 0.1;

    bool operator==(const DerivedColumn&) const = default;
};

struct SignalSpec {
    std::vector<std::string> informative;
    std::vector<double> weights;
    double noise_rate = 0.0;    // label flip probability
    double missing_rate = 0.0;  // default for every non-label column
    std::map<std::string, double> missing_rates;  // per-column overrides
    std::vector<DerivedColumn> derived;

    bool operator==(const SignalSpec&) const = default;
};

struct SyntheticData {
    RawTable table;
    LabelVector labels;
};

/// Draws a table with planted linear signal.
///
/// Per row, in schema order: numeric cells ~ N(0, 1) (printed with 6
/// significant digits and re-read, so the table is exactly what a CSV round
/// trip yields); categorical cells uniform over levels; derived columns are
/// then overwritten. score = sum_i weight_i * code_i, where code is the
/// numeric value or, for a categorical, 2 * level_index / (L - 1) - 1.
/// label = +1 iff score >= 0, flipped with probability noise_rate. Finally
/// non-label cells are masked Missing at their missing rate. Uses Rng
/// ("mt19937_64/v1") seeded with `seed`.
SyntheticData generate(const Schema& schema, std::size_t n, const SignalSpec& spec, std::uint64_t seed);

/// Throws InvalidArgument describing the first problem.
void validate_signal_spec(const Schema& schema, const SignalSpec& spec);

/// All-numeric schema: features x1..xF, ignored id1..idI, plus one label
/// variable suitable for the task's rule.
Schema synthetic_schema(std::size_t features, std::size_t ignored, LabelRuleKind task);

}  // namespace tabclf
