#pragma once

#include <cstddef>

#include "tabclf/data_model.hpp"

namespace tabclf {

struct SvmParams {
    double C = 10.0;
    double tol = 1e-3;
    /// Budget in passes; one pass is n pair updates. 0 selects 10 * n passes.
    std::size_t max_passes = 0;

    bool operator==(const SvmParams&) const = default;
};

/// Linear soft-margin SVM, decision w.x + b.
struct SvmModel {
    Vector w;
    double b = 0.0;
    double C = 10.0;
    Vector alpha;  // dual coefficients, one per training row, in [0, C]
    bool converged = false;
    double margin = 0.0;  // 2 / ||w||
    std::size_t iterations = 0;
};

/// Soft-margin dual by sequential minimal optimization.
///
/// Minimises 0.5 a'Qa - sum(a) subject to 0 <= a <= C and y'a = 0, with
/// Q_ij = y_i y_j x_i.x_j. Each step updates the pair chosen by second-order
/// working-set selection: i is the maximal KKT violator in I_up, j the
/// member of I_low giving the largest guaranteed decrease. Stops when
/// max_{I_up}(-y G) - min_{I_low}(-y G) <= tol.
SvmModel svm_fit(const Matrix& X, const LabelVector& y, const SvmParams& params = {});

double svm_decision(const SvmModel& model, const Eigen::Ref<const Vector>& x);

/// +1 iff the decision value is >= 0.
int svm_predict(const SvmModel& model, const Eigen::Ref<const Vector>& x);

/// 0.5 ||w||^2 + C sum_i max(0, 1 - y_i (w.x_i + b)).
double svm_primal_objective(const SvmModel& model, const Matrix& X, const LabelVector& y);

/// sum(alpha) - 0.5 ||sum alpha_i y_i x_i||^2.
double svm_dual_objective(const SvmModel& model, const Matrix& X, const LabelVector& y);

/// Largest per-sample violation of the complementary-slackness conditions:
///   alpha = 0      needs y f >= 1
///   0 < alpha < C  needs y f == 1
///   alpha = C      needs y f <= 1
double svm_max_kkt_violation(const SvmModel& model, const Matrix& X, const LabelVector& y);

}  // namespace tabclf
