#include "tabclf/bayes.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "tabclf/errors.hpp"

namespace tabclf {

namespace {

std::size_t slot(int label) { return label > 0 ? 0 : 1; }

// Index of the active indicator, or columns.size() for "other" / none.
std::size_t active_level(const CategoricalTerm& term, const Eigen::Ref<const Vector>& x) {
    for (std::size_t l = 0; l < term.columns.size(); ++l) {
        if (x(static_cast<Eigen::Index>(term.columns[l])) > 0.5) return l;
    }
    return term.columns.size();
}

}  // namespace

BayesModel nb_fit(const Matrix& X, const LabelVector& y, const std::vector<ColumnMeta>& columns,
                  const BayesParams& params) {
    if (static_cast<std::size_t>(X.rows()) != y.size()) {
        throw InvalidArgument("naive bayes: row count and label count differ");
    }
    if (columns.size() != static_cast<std::size_t>(X.cols())) {
        throw InvalidArgument("naive bayes: column metadata does not match the matrix");
    }
    if (!(params.laplace_alpha > 0.0)) throw InvalidArgument("naive bayes: alpha must be positive");
    if (!(params.variance_floor > 0.0)) {
        throw InvalidArgument("naive bayes: variance floor must be positive");
    }
    require_both_classes(y, "naive bayes");

    BayesModel model;
    model.params = params;
    model.n_features = columns.size();

    const ClassPair count{static_cast<double>(y.count(+1)), static_cast<double>(y.count(-1))};
    const double n = count[0] + count[1];
    model.prior = {count[0] / n, count[1] / n};

    std::map<std::string, std::size_t> group_of;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const auto& meta = columns[c];
        if (!meta.is_indicator()) {
            GaussianTerm g;
            g.column = c;
            const auto col = X.col(static_cast<Eigen::Index>(c));
            for (std::size_t k = 0; k < 2; ++k) {
                double sum = 0.0;
                for (Eigen::Index r = 0; r < X.rows(); ++r) {
                    if (slot(y.labels[static_cast<std::size_t>(r)]) == k) sum += col(r);
                }
                const double mean = sum / count[k];
                double ss = 0.0;
                for (Eigen::Index r = 0; r < X.rows(); ++r) {
                    if (slot(y.labels[static_cast<std::size_t>(r)]) == k) ss += (col(r) - mean) * (col(r) - mean);
                }
                g.mean[k] = mean;
                g.variance[k] = std::max(ss / count[k], params.variance_floor);
            }
            model.gaussians.push_back(g);
            continue;
        }
        auto [it, inserted] = group_of.try_emplace(meta.source, model.categoricals.size());
        if (inserted) {
            CategoricalTerm term;
            term.source = meta.source;
            model.categoricals.push_back(std::move(term));
        }
        auto& term = model.categoricals[it->second];
        term.columns.push_back(c);
        term.has_other = term.columns.size() < meta.level_count;
    }

    for (auto& term : model.categoricals) {
        std::array<std::vector<double>, 2> counts;
        counts[0].assign(term.columns.size() + 1, 0.0);
        counts[1].assign(term.columns.size() + 1, 0.0);
        for (Eigen::Index r = 0; r < X.rows(); ++r) {
            const auto level = active_level(term, X.row(r).transpose());
            counts[slot(y.labels[static_cast<std::size_t>(r)])][level] += 1.0;
        }
        if (counts[0].back() + counts[1].back() > 0.0) term.has_other = true;

        const std::size_t levels = term.level_count();
        for (std::size_t k = 0; k < 2; ++k) {
            counts[k].resize(levels);
            term.probability[k].resize(levels);
            const double denom = count[k] + params.laplace_alpha * static_cast<double>(levels);
            for (std::size_t l = 0; l < levels; ++l) {
                term.probability[k][l] = (counts[k][l] + params.laplace_alpha) / denom;
            }
        }
    }
    return model;
}

ClassPair nb_log_joint(const BayesModel& model, const Eigen::Ref<const Vector>& x) {
    if (static_cast<std::size_t>(x.size()) != model.n_features) {
        throw InvalidArgument("naive bayes: input has " + std::to_string(x.size()) +
                              " features, model expects " + std::to_string(model.n_features));
    }
    ClassPair score{std::log(model.prior[0]), std::log(model.prior[1])};
    for (const auto& g : model.gaussians) {
        const double v = x(static_cast<Eigen::Index>(g.column));
        for (std::size_t k = 0; k < 2; ++k) {
            const double z = v - g.mean[k];
            score[k] += -0.5 * std::log(2.0 * std::numbers::pi * g.variance[k]) - z * z / (2.0 * g.variance[k]);
        }
    }
    for (const auto& term : model.categoricals) {
        const auto level = active_level(term, x);
        if (level >= term.level_count()) continue;  // no indicator set and no "other" level
        for (std::size_t k = 0; k < 2; ++k) score[k] += std::log(term.probability[k][level]);
    }
    return score;
}

double nb_predict_proba(const BayesModel& model, const Eigen::Ref<const Vector>& x) {
    const auto s = nb_log_joint(model, x);
    // P(+1|x) = 1 / (1 + exp(s_neg - s_pos)).
    return 1.0 / (1.0 + std::exp(s[1] - s[0]));
}

int nb_predict(const BayesModel& model, const Eigen::Ref<const Vector>& x) {
    const auto s = nb_log_joint(model, x);
    return s[0] >= s[1] ? +1 : -1;
}

}  // namespace tabclf
