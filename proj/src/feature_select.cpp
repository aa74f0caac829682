#include "tabclf/feature_select.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tabclf/errors.hpp"

namespace tabclf {

CorrelationFilterResult correlation_filter(const Matrix& x, double threshold) {
    if (!(threshold > 0.0)) throw InvalidArgument("correlation threshold must be positive");
    CorrelationFilterResult out;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        bool redundant = false;
        if (x.rows() >= 2) {
            for (auto i : out.kept) {
                if (std::abs(pearson(x.col(static_cast<Eigen::Index>(i)), x.col(j))) > threshold) {
                    redundant = true;
                    break;
                }
            }
        }
        (redundant ? out.removed : out.kept).push_back(static_cast<std::size_t>(j));
    }
    return out;
}

FeatureRanking rfe_rank(const Matrix& x, const LabelVector& y, const RankerConfig& ranker) {
    if (x.cols() < 2) throw InvalidArgument("rfe: need at least two columns");
    if (static_cast<std::size_t>(x.rows()) != y.size()) {
        throw InvalidArgument("rfe: row count and label count differ");
    }
    require_both_classes(y, "rfe");

    Matrix z = x;
    const double n = static_cast<double>(x.rows());
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
        auto col = z.col(j);
        const double mean = col.mean();
        const double sd = std::sqrt((col.array() - mean).square().sum() / n);
        if (sd > 0.0) col = (col.array() - mean) / sd; else col.setZero();
    }

    std::vector<std::size_t> remaining(static_cast<std::size_t>(x.cols()));
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});

    FeatureRanking ranking;
    while (remaining.size() > 1) {
        Matrix sub(z.rows(), static_cast<Eigen::Index>(remaining.size()));
        for (std::size_t c = 0; c < remaining.size(); ++c) {
            sub.col(static_cast<Eigen::Index>(c)) = z.col(static_cast<Eigen::Index>(remaining[c]));
        }
        const auto model = svm_fit(sub, y, ranker.svm);

        // Lowest |w|; ties go to the lowest original index (remaining is ascending).
        std::size_t worst = 0;
        for (std::size_t c = 1; c < remaining.size(); ++c) {
            if (std::abs(model.w(static_cast<Eigen::Index>(c))) <
                std::abs(model.w(static_cast<Eigen::Index>(worst)))) {
                worst = c;
            }
        }
        ranking.order.push_back(remaining[worst]);
        ranking.scores_per_round.push_back(std::abs(model.w(static_cast<Eigen::Index>(worst))));
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(worst));
    }
    ranking.order.push_back(remaining.front());
    return ranking;
}

std::vector<std::size_t> rfe_select(const FeatureRanking& ranking, std::size_t n_keep) {
    if (n_keep == 0 || n_keep > ranking.order.size()) {
        throw InvalidArgument("rfe_select: n_keep " + std::to_string(n_keep) + " outside [1, " +
                              std::to_string(ranking.order.size()) + "]");
    }
    std::vector<std::size_t> kept(ranking.order.end() - static_cast<std::ptrdiff_t>(n_keep),
                                  ranking.order.end());
    std::sort(kept.begin(), kept.end());
    return kept;
}

PcaModel pca_fit(const Matrix& x, const PcaOptions& options) {
    if (x.rows() < 2) throw InvalidArgument("pca: need at least two rows");
    const Eigen::Index d = x.cols();

    PcaModel model;
    model.standardized = options.standardize;
    model.mean = x.colwise().mean().transpose();
    Matrix centered = x.rowwise() - model.mean.transpose();
    model.scale = Vector::Ones(d);
    if (options.standardize) {
        const double n = static_cast<double>(x.rows());
        for (Eigen::Index j = 0; j < d; ++j) {
            const double sd = std::sqrt(centered.col(j).squaredNorm() / n);
            if (sd > 0.0) model.scale(j) = sd;
        }
        centered = centered.array().rowwise() / model.scale.transpose().array();
    }
    const Matrix cov = (centered.transpose() * centered) / static_cast<double>(x.rows());

    auto eig = jacobi_eigen(cov, options.tolerance, options.max_sweeps);
    model.sweeps = eig.sweeps;

    model.eigenvalues = eig.values.cwiseMax(0.0);  // round-off can leave tiny negatives
    model.components = eig.vectors.transpose();
    for (Eigen::Index k = 0; k < d; ++k) {
        Eigen::Index arg = 0;
        model.components.row(k).cwiseAbs().maxCoeff(&arg);
        if (model.components(k, arg) < 0.0) model.components.row(k) *= -1.0;
    }
    const double total = model.eigenvalues.sum();
    model.explained_variance_ratio =
        total > 0.0 ? Vector(model.eigenvalues / total) : Vector::Zero(d);
    return model;
}

std::size_t choose_components(const PcaModel& model, double variance_target) {
    if (!(variance_target > 0.0 && variance_target <= 1.0)) {
        throw InvalidArgument("pca variance target must lie in (0, 1]");
    }
    const auto& r = model.explained_variance_ratio;
    double cumulative = 0.0;
    for (Eigen::Index k = 0; k < r.size(); ++k) {
        cumulative += r(k);
        // Absorb round-off in the ratio sum so a target of 1.0 is reachable.
        if (cumulative >= variance_target - 1e-12) return static_cast<std::size_t>(k + 1);
    }
    return std::max<std::size_t>(1, static_cast<std::size_t>(r.size()));
}

Matrix pca_transform(const PcaModel& model, const Matrix& x, std::size_t k) {
    if (x.cols() != model.dimension()) {
        throw InvalidArgument("pca_transform: input has " + std::to_string(x.cols()) +
                              " columns, model expects " + std::to_string(model.dimension()));
    }
    if (k > static_cast<std::size_t>(model.n_components())) {
        throw InvalidArgument("pca_transform: k exceeds stored components");
    }
    const Matrix z = (x.rowwise() - model.mean.transpose()).array().rowwise() /
                     model.scale.transpose().array();
    return z * model.components.topRows(static_cast<Eigen::Index>(k)).transpose();
}

}  // namespace tabclf
