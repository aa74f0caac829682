#include "tabclf/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tabclf/errors.hpp"

namespace tabclf {

namespace {

constexpr double kTau = 1e-12;  // curvature floor for degenerate pairs
constexpr Eigen::Index kGramRows = 6000;  // up to this many rows the full Gram matrix is kept

void check_dimension(const SvmModel& model, Eigen::Index d) {
    if (d != model.w.size()) {
        throw InvalidArgument("svm: input has " + std::to_string(d) + " features, model expects " +
                              std::to_string(model.w.size()));
    }
}

}  // namespace

SvmModel svm_fit(const Matrix& X, const LabelVector& y, const SvmParams& params) {
    if (!(params.C > 0.0)) throw InvalidArgument("svm: C must be positive");
    if (!(params.tol > 0.0)) throw InvalidArgument("svm: tol must be positive");
    if (static_cast<std::size_t>(X.rows()) != y.size()) {
        throw InvalidArgument("svm: row count and label count differ");
    }
    if (X.rows() < 2) throw InvalidArgument("svm: need at least two rows");
    require_both_classes(y, "svm");

    const Eigen::Index n = X.rows();
    const double C = params.C;
    const Vector yv = Eigen::Map<const Eigen::VectorXi>(y.labels.data(), n).cast<double>();
    const Vector kdiag = X.rowwise().squaredNorm();

    Vector alpha = Vector::Zero(n);
    Vector grad = Vector::Constant(n, -1.0);  // Q alpha - e, current on active rows
    Vector w = Vector::Zero(X.cols());

    const auto at_upper = [&](Eigen::Index t) { return alpha(t) >= C; };
    const auto at_lower = [&](Eigen::Index t) { return alpha(t) <= 0.0; };
    const auto in_up = [&](Eigen::Index t) { return yv(t) > 0 ? !at_upper(t) : !at_lower(t); };
    const auto in_low = [&](Eigen::Index t) { return yv(t) > 0 ? !at_lower(t) : !at_upper(t); };

    // Shrinking: bound rows whose gradient keeps them out of the working set
    // are set aside; xa holds the active rows in order.
    std::vector<Eigen::Index> active(static_cast<std::size_t>(n));
    for (Eigen::Index t = 0; t < n; ++t) active[static_cast<std::size_t>(t)] = t;
    const bool cached = n <= kGramRows;
    Matrix gram, xa;
    if (cached) gram.noalias() = X * X.transpose();
    else xa = X;
    Vector ki(n), step(n);
    bool unshrunk = false;
    const std::size_t shrink_every = std::min<std::size_t>(static_cast<std::size_t>(n), 1000);
    std::size_t countdown = shrink_every;

    const auto reconstruct = [&] {
        grad = (yv.array() * (X * w).array() - 1.0).matrix();
        active.resize(static_cast<std::size_t>(n));
        for (Eigen::Index t = 0; t < n; ++t) active[static_cast<std::size_t>(t)] = t;
        if (!cached) xa = X;
    };
    const auto shrink = [&] {
        double up = -std::numeric_limits<double>::infinity();
        double low = -std::numeric_limits<double>::infinity();
        for (const auto t : active) {
            if (in_up(t)) up = std::max(up, -yv(t) * grad(t));
            if (in_low(t)) low = std::max(low, yv(t) * grad(t));
        }
        if (!unshrunk && up + low <= 10.0 * params.tol) {
            unshrunk = true;
            reconstruct();
        }
        std::vector<Eigen::Index> keep;
        keep.reserve(active.size());
        for (const auto t : active) {
            bool out = false;
            if (at_upper(t)) out = yv(t) > 0 ? -grad(t) > up : -grad(t) > low;
            else if (at_lower(t)) out = yv(t) > 0 ? grad(t) > low : grad(t) > up;
            if (!out) keep.push_back(t);
        }
        if (keep.size() == active.size()) return;
        active = std::move(keep);
        if (cached) return;
        xa.resize(static_cast<Eigen::Index>(active.size()), X.cols());
        for (std::size_t p = 0; p < active.size(); ++p) xa.row(static_cast<Eigen::Index>(p)) = X.row(active[p]);
    };

    const std::size_t passes = params.max_passes ? params.max_passes : 10 * static_cast<std::size_t>(n);
    const std::size_t budget = passes * static_cast<std::size_t>(n);

    SvmModel model;
    model.C = C;
    std::size_t iter = 0;
    for (; iter < budget; ++iter) {
        if (--countdown == 0) {
            countdown = shrink_every;
            shrink();
        }
        const auto m = static_cast<Eigen::Index>(active.size());

        // i: maximal violator in I_up.
        double gmax = -std::numeric_limits<double>::infinity();
        Eigen::Index i = -1;
        for (const auto t : active) {
            if (in_up(t) && -yv(t) * grad(t) > gmax) {
                gmax = -yv(t) * grad(t);
                i = t;
            }
        }
        if (i >= 0) {
            if (cached) {
                for (Eigen::Index p = 0; p < m; ++p) ki(p) = gram(active[static_cast<std::size_t>(p)], i);
            } else {
                ki.head(m).noalias() = xa * X.row(i).transpose();
            }
        }

        // j: second-order selection in I_low; gmin tracks the stopping gap.
        double gmin = std::numeric_limits<double>::infinity();
        double best = std::numeric_limits<double>::infinity();
        Eigen::Index j = -1, pj = -1;
        for (Eigen::Index p = 0; p < m; ++p) {
            const Eigen::Index t = active[static_cast<std::size_t>(p)];
            if (!in_low(t)) continue;
            const double v = -yv(t) * grad(t);
            gmin = std::min(gmin, v);
            const double diff = gmax - v;
            if (i >= 0 && diff > 0.0) {
                double quad = kdiag(i) + kdiag(t) - 2.0 * ki(p);
                if (quad <= 0.0) quad = kTau;
                const double obj = -(diff * diff) / quad;
                if (obj < best) {
                    best = obj;
                    j = t;
                    pj = p;
                }
            }
        }
        if (i < 0 || j < 0 || gmax - gmin <= params.tol) {
            if (m == n) {
                model.converged = true;
                break;
            }
            reconstruct();
            countdown = shrink_every;
            continue;
        }

        const double ai_old = alpha(i), aj_old = alpha(j);
        double quad = kdiag(i) + kdiag(j) - 2.0 * ki(pj);
        if (quad <= 0.0) quad = kTau;
        if (yv(i) != yv(j)) {
            const double delta = (-grad(i) - grad(j)) / quad;
            const double diff = alpha(i) - alpha(j);
            alpha(i) += delta;
            alpha(j) += delta;
            if (diff > 0.0) {
                if (alpha(j) < 0.0) { alpha(j) = 0.0; alpha(i) = diff; }
                if (alpha(i) > C) { alpha(i) = C; alpha(j) = C - diff; }
            } else {
                if (alpha(i) < 0.0) { alpha(i) = 0.0; alpha(j) = -diff; }
                if (alpha(j) > C) { alpha(j) = C; alpha(i) = C + diff; }
            }
        } else {
            const double delta = (grad(i) - grad(j)) / quad;
            const double sum = alpha(i) + alpha(j);
            alpha(i) -= delta;
            alpha(j) += delta;
            if (sum > C) {
                if (alpha(i) > C) { alpha(i) = C; alpha(j) = sum - C; }
                if (alpha(j) > C) { alpha(j) = C; alpha(i) = sum - C; }
            } else {
                if (alpha(j) < 0.0) { alpha(j) = 0.0; alpha(i) = sum; }
                if (alpha(i) < 0.0) { alpha(i) = 0.0; alpha(j) = sum; }
            }
        }

        // w moves by d_i x_i + d_j x_j; G_t = y_t w.x_t - 1 on active rows.
        const double di = (alpha(i) - ai_old) * yv(i);
        const double dj = (alpha(j) - aj_old) * yv(j);
        w.noalias() += di * X.row(i).transpose() + dj * X.row(j).transpose();
        if (cached) {
            for (Eigen::Index p = 0; p < m; ++p) {
                const Eigen::Index t = active[static_cast<std::size_t>(p)];
                step(p) = di * gram(t, i) + dj * gram(t, j);
            }
        } else {
            step.head(m).noalias() = xa * (di * X.row(i).transpose() + dj * X.row(j).transpose());
        }
        for (Eigen::Index p = 0; p < m; ++p) {
            const Eigen::Index t = active[static_cast<std::size_t>(p)];
            grad(t) += yv(t) * step(p);
        }
    }
    if (static_cast<Eigen::Index>(active.size()) != n) reconstruct();
    model.iterations = iter;

    // Bias: average over free vectors, else midpoint of the feasible interval.
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double sum_free = 0.0;
    std::size_t n_free = 0;
    for (Eigen::Index t = 0; t < n; ++t) {
        const double yg = yv(t) * grad(t);
        if (at_upper(t)) {
            if (yv(t) < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else if (at_lower(t)) {
            if (yv(t) > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else {
            ++n_free;
            sum_free += yg;
        }
    }
    const double rho = n_free ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2.0;

    model.alpha = alpha;
    model.w = X.transpose() * (alpha.array() * yv.array()).matrix();
    model.b = -rho;
    const double norm = model.w.norm();
    model.margin = norm > 0.0 ? 2.0 / norm : std::numeric_limits<double>::infinity();
    return model;
}

double svm_decision(const SvmModel& model, const Eigen::Ref<const Vector>& x) {
    check_dimension(model, x.size());
    return model.w.dot(x) + model.b;
}

int svm_predict(const SvmModel& model, const Eigen::Ref<const Vector>& x) {
    return svm_decision(model, x) >= 0.0 ? +1 : -1;
}

double svm_primal_objective(const SvmModel& model, const Matrix& X, const LabelVector& y) {
    check_dimension(model, X.cols());
    const Vector f = (X * model.w).array() + model.b;
    double slack = 0.0;
    for (Eigen::Index t = 0; t < X.rows(); ++t) {
        slack += std::max(0.0, 1.0 - y.labels[static_cast<std::size_t>(t)] * f(t));
    }
    return 0.5 * model.w.squaredNorm() + model.C * slack;
}

double svm_dual_objective(const SvmModel& model, const Matrix& X, const LabelVector& y) {
    check_dimension(model, X.cols());
    const Vector yv = Eigen::Map<const Eigen::VectorXi>(y.labels.data(), X.rows()).cast<double>();
    const Vector w = X.transpose() * (model.alpha.array() * yv.array()).matrix();
    return model.alpha.sum() - 0.5 * w.squaredNorm();
}

double svm_max_kkt_violation(const SvmModel& model, const Matrix& X, const LabelVector& y) {
    check_dimension(model, X.cols());
    const Vector f = (X * model.w).array() + model.b;
    double worst = 0.0;
    for (Eigen::Index t = 0; t < X.rows(); ++t) {
        const double margin = y.labels[static_cast<std::size_t>(t)] * f(t);
        const double a = model.alpha(t);
        double v = 0.0;
        if (a <= 0.0) {
            v = std::max(0.0, 1.0 - margin);
        } else if (a >= model.C) {
            v = std::max(0.0, margin - 1.0);
        } else {
            v = std::abs(margin - 1.0);
        }
        worst = std::max(worst, v);
    }
    return worst;
}

}  // namespace tabclf
