#pragma once

#include <cstddef>
#include <vector>

#include "tabclf/data_model.hpp"
#include "tabclf/linalg.hpp"
#include "tabclf/svm.hpp"

namespace tabclf {

struct CorrelationFilterResult {
    std::vector<std::size_t> kept;
    std::vector<std::size_t> removed;
};

/// Scans columns in index order; column j is dropped when |r| > threshold
/// against some already-kept column i < j.
CorrelationFilterResult correlation_filter(const Matrix& x, double threshold = 0.75);
inline CorrelationFilterResult correlation_filter(const EncodedMatrix& m, double threshold = 0.75) {
    return correlation_filter(m.values, threshold);
}

/// RFE ranker: a linear SVM on population-standardized columns, importance |w_j|.
struct RankerConfig {
    SvmParams svm{};
};

struct FeatureRanking {
    std::vector<std::size_t> order;     // column indices, eliminated first .. rank 1 last
    std::vector<double> scores_per_round;  // importance of the column eliminated in each round
};

FeatureRanking rfe_rank(const Matrix& x, const LabelVector& y, const RankerConfig& ranker = {});
inline FeatureRanking rfe_rank(const EncodedMatrix& m, const LabelVector& y,
                               const RankerConfig& ranker = {}) {
    return rfe_rank(m.values, y, ranker);
}

/// The n_keep best-ranked columns, ascending.
std::vector<std::size_t> rfe_select(const FeatureRanking& ranking, std::size_t n_keep);

struct PcaModel {
    Vector mean;
    Vector scale;          // per-column divisor applied after centering (1 when unstandardized)
    Matrix components;     // k x d, rows orthonormal
    Vector eigenvalues;    // non-increasing
    Vector explained_variance_ratio;
    bool standardized = false;
    int sweeps = 0;

    Eigen::Index dimension() const { return mean.size(); }
    Eigen::Index n_components() const { return components.rows(); }
};

struct PcaOptions {
    bool standardize = true;
    double tolerance = 1e-12;
    int max_sweeps = 100;
};

/// All principal components of the population covariance (or correlation
/// matrix when standardizing). Each component's largest-magnitude entry is
/// made positive.
PcaModel pca_fit(const Matrix& x, const PcaOptions& options = {});
inline PcaModel pca_fit(const EncodedMatrix& m, const PcaOptions& options = {}) {
    return pca_fit(m.values, options);
}

/// Smallest k whose cumulative explained variance ratio reaches the target.
std::size_t choose_components(const PcaModel& model, double variance_target = 0.95);

Matrix pca_transform(const PcaModel& model, const Matrix& x, std::size_t k);

}  // namespace tabclf
