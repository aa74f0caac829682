#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "tabclf/data_model.hpp"

namespace tabclf {

struct BayesParams {
    double laplace_alpha = 1.0;
    double variance_floor = 1e-9;

    bool operator==(const BayesParams&) const = default;
};

/// Class slot 0 holds +1, slot 1 holds -1.
using ClassPair = std::array<double, 2>;

struct GaussianTerm {
    std::size_t column = 0;
    ClassPair mean{};
    ClassPair variance{};
};

/// One categorical source variable. `columns` are its surviving indicator
/// columns; when some declared levels were dropped upstream, rows with no
/// active indicator fall into an extra "other" level.
struct CategoricalTerm {
    std::string source;
    std::vector<std::size_t> columns;
    bool has_other = false;
    std::array<std::vector<double>, 2> probability;  // per class, per level

    std::size_t level_count() const { return columns.size() + (has_other ? 1 : 0); }
};

struct BayesModel {
    ClassPair prior{};
    std::vector<GaussianTerm> gaussians;
    std::vector<CategoricalTerm> categoricals;
    std::size_t n_features = 0;
    BayesParams params;
};

/// Numeric columns get per-class Gaussians (population variance, floored);
/// one-hot groups get per-class multinomials with additive smoothing.
BayesModel nb_fit(const Matrix& X, const LabelVector& y, const std::vector<ColumnMeta>& columns,
                  const BayesParams& params = {});

/// Unnormalized log P(x | c) + log P(c), slot 0 for +1.
ClassPair nb_log_joint(const BayesModel& model, const Eigen::Ref<const Vector>& x);

/// P(+1 | x), normalized in log space.
double nb_predict_proba(const BayesModel& model, const Eigen::Ref<const Vector>& x);

/// +1 iff P(+1 | x) >= P(-1 | x).
int nb_predict(const BayesModel& model, const Eigen::Ref<const Vector>& x);

}  // namespace tabclf
