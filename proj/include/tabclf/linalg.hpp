#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tabclf/errors.hpp"

namespace tabclf {

/// Sample Pearson correlation. Returns 0 when either input is constant.
template <typename DerivedX, typename DerivedY>
typename DerivedX::Scalar pearson(const Eigen::MatrixBase<DerivedX>& x,
                                  const Eigen::MatrixBase<DerivedY>& y) {
    using Scalar = typename DerivedX::Scalar;
    if (x.size() != y.size()) throw InvalidArgument("pearson: length mismatch");
    if (x.size() < 2) throw InvalidArgument("pearson: need at least two observations");

    const auto constant = [](const auto& v) {
        return (v.array() == v(0)).all();
    };
    if (constant(x) || constant(y)) return Scalar(0);

    const auto xc = (x.array() - x.mean()).matrix().eval();
    const auto yc = (y.array() - y.mean()).matrix().eval();
    const Scalar denom = std::sqrt(xc.squaredNorm() * yc.squaredNorm());
    if (denom == Scalar(0)) return Scalar(0);
    return std::clamp(xc.dot(yc) / denom, Scalar(-1), Scalar(1));
}

template <typename Scalar>
struct SymmetricEigen {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values;                // descending
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // columns match values
    int sweeps = 0;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Sweeps rotate every (p, q) pair in row order until the off-diagonal
/// Frobenius norm is at most `tolerance * max(1, ||A||_F)`. Eigenpairs are
/// returned sorted by eigenvalue, largest first (stable on ties).
template <typename Derived>
SymmetricEigen<typename Derived::Scalar> jacobi_eigen(const Eigen::MatrixBase<Derived>& input,
                                                      typename Derived::Scalar tolerance = 1e-12,
                                                      int max_sweeps = 100) {
    using Scalar = typename Derived::Scalar;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    if (input.rows() != input.cols()) throw InvalidArgument("jacobi_eigen: matrix is not square");
    const Eigen::Index d = input.rows();
    Mat a = input;
    Mat v = Mat::Identity(d, d);

    const Scalar scale = std::max(Scalar(1), a.norm());
    const auto off_norm = [&] {
        Scalar s = 0;
        for (Eigen::Index p = 0; p < d; ++p)
            for (Eigen::Index q = p + 1; q < d; ++q) s += 2 * a(p, q) * a(p, q);
        return std::sqrt(s);
    };

    int sweeps = 0;
    while (off_norm() > tolerance * scale) {
        if (sweeps == max_sweeps) {
            throw ConvergenceError("jacobi_eigen: no convergence after " +
                                   std::to_string(sweeps) + " sweeps");
        }
        ++sweeps;
        for (Eigen::Index p = 0; p < d - 1; ++p) {
            for (Eigen::Index q = p + 1; q < d; ++q) {
                const Scalar apq = a(p, q);
                if (apq == Scalar(0)) continue;
                const Scalar theta = (a(q, q) - a(p, p)) / (2 * apq);
                const Scalar t = (theta >= 0 ? Scalar(1) : Scalar(-1)) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1));
                const Scalar c = 1 / std::sqrt(t * t + 1);
                const Scalar s = t * c;

                // a <- J^T a J with J = [[c, s], [-s, c]] in the (p, q) plane.
                for (Eigen::Index k = 0; k < d; ++k) {
                    const Scalar akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < d; ++k) {
                    const Scalar apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0;
                for (Eigen::Index k = 0; k < d; ++k) {
                    const Scalar vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });

    SymmetricEigen<Scalar> out;
    out.values.resize(d);
    out.vectors.resize(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const auto src = order[static_cast<std::size_t>(i)];
        out.values(i) = a(src, src);
        out.vectors.col(i) = v.col(src);
    }
    out.sweeps = sweeps;
    return out;
}

/// Population (divide-by-n) covariance of the columns.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> population_covariance(
    const Eigen::MatrixBase<Derived>& x) {
    const auto centered = (x.rowwise() - x.colwise().mean()).eval();
    return (centered.transpose() * centered) / static_cast<typename Derived::Scalar>(x.rows());
}

}  // namespace tabclf
