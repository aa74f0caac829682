#include <doctest.h>

#include "oracles/svm_qp.hpp"
#include "tabclf/errors.hpp"
#include "tabclf/random.hpp"
#include "tabclf/svm.hpp"

using namespace tabclf;

namespace {

struct Instance {
    Matrix X;
    LabelVector y;
};

Instance random_instance(std::uint64_t seed, Eigen::Index n, Eigen::Index d, bool noisy) {
    Rng rng(seed);
    Instance out;
    out.X.resize(n, d);
    Vector normal(d);
    for (Eigen::Index j = 0; j < d; ++j) normal(j) = rng.normal();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) out.X(i, j) = rng.normal();
        double s = out.X.row(i).dot(normal) + 0.2;
        if (noisy) s += rng.normal();
        out.y.labels.push_back(s >= 0 ? 1 : -1);
    }
    if (!out.y.has_both_classes()) out.y.labels[0] = -out.y.labels[0];
    return out;
}

SvmModel symmetric_pair() {
    Matrix X(2, 1);
    X << -1, 1;
    return svm_fit(X, LabelVector{{-1, +1}, ""}, {1000.0});
}

}  // namespace

TEST_CASE("symmetric separable pair") {
    const auto m = symmetric_pair();
    CHECK(m.converged);
    CHECK(m.w(0) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(m.b) < 1e-3);
    CHECK(m.margin == doctest::Approx(2.0).epsilon(1e-3));
    Vector x(1);
    x << 2;
    CHECK(svm_decision(m, x) == doctest::Approx(2.0).epsilon(1e-3));
    x << -3;
    CHECK(svm_predict(m, x) == -1);
}

TEST_CASE("boundary point is positive") {
    SvmModel m;
    m.w = Vector::Ones(2);
    m.b = -1.0;
    Vector x(2);
    x << 0.25, 0.75;
    CHECK(svm_decision(m, x) == 0.0);
    CHECK(svm_predict(m, x) == +1);
}

TEST_CASE("dual feasibility and weight recovery") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = random_instance(seed, 30, 3, seed % 2 == 1);
        const double C = seed % 3 == 0 ? 1.0 : 10.0;
        const auto m = svm_fit(inst.X, inst.y, {C});
        CHECK(m.converged);
        CHECK((m.alpha.array() >= 0.0).all());
        CHECK((m.alpha.array() <= C).all());
        double balance = 0.0;
        Vector w = Vector::Zero(3);
        for (Eigen::Index i = 0; i < inst.X.rows(); ++i) {
            const double ay = m.alpha(i) * inst.y.labels[static_cast<std::size_t>(i)];
            balance += ay;
            w += ay * inst.X.row(i).transpose();
        }
        CHECK(std::abs(balance) <= 1e-6);
        CHECK((w - m.w).cwiseAbs().maxCoeff() <= 1e-6);
        CHECK(m.margin == 2.0 / m.w.norm());
        CHECK(svm_max_kkt_violation(m, inst.X, inst.y) <= 1e-3);
        const double primal = svm_primal_objective(m, inst.X, inst.y);
        const double dual = svm_dual_objective(m, inst.X, inst.y);
        CHECK(primal - dual <= 1e-2 * std::max(1.0, std::abs(primal)));
    }
}

TEST_CASE("agrees with the exact small QP") {
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        const auto inst = random_instance(seed, 10, 2, seed % 2 == 0);
        for (double C : {1.0, 10.0}) {
            const auto m = svm_fit(inst.X, inst.y, {C, 1e-5});
            const auto ref = oracle::solve_svm_qp(inst.X, inst.y.labels, C);
            REQUIRE(ref.has_value());
            CHECK(std::abs(ref->primal - ref->dual) <= 1e-8 * std::max(1.0, ref->dual));
            const double primal = svm_primal_objective(m, inst.X, inst.y);
            CHECK(std::abs(primal - ref->dual) <= 1e-3 * std::max(1.0, std::abs(ref->dual)));
        }
    }
}

TEST_CASE("predict is the sign of the decision, and the decision is affine") {
    const auto inst = random_instance(3, 40, 3, true);
    const auto m = svm_fit(inst.X, inst.y);
    Rng rng(99);
    for (int t = 0; t < 1000; ++t) {
        Vector x(3);
        for (auto& v : x) v = 3 * rng.normal();
        CHECK(svm_predict(m, x) == (svm_decision(m, x) >= 0 ? 1 : -1));
    }
    Vector a(3), b(3);
    a << 1, -2, 0.5;
    b << -4, 1, 2;
    const double lambda = 0.3;
    const Vector mix = lambda * a + (1 - lambda) * b;
    CHECK(svm_decision(m, mix) == doctest::Approx(lambda * svm_decision(m, a) + (1 - lambda) * svm_decision(m, b)));
}

TEST_CASE("translation leaves predictions unchanged") {
    for (std::uint64_t seed = 200; seed < 210; ++seed) {
        const auto inst = random_instance(seed, 12, 3, seed % 2 == 0);
        Vector shift(3);
        shift << 5.0, -2.0, 0.5;
        const Matrix moved = inst.X.rowwise() + shift.transpose();
        const auto a = svm_fit(inst.X, inst.y, {10.0, 1e-6});
        const auto b = svm_fit(moved, inst.y, {10.0, 1e-6});
        Rng rng(seed);
        for (int t = 0; t < 50; ++t) {
            Vector x(3);
            for (auto& v : x) v = rng.normal();
            const double da = svm_decision(a, x);
            const double db = svm_decision(b, x + shift);
            CHECK(std::abs(da - db) <= 1e-3 * std::max(1.0, std::abs(da)));
            if (std::abs(da) > 1e-2) CHECK(svm_predict(a, x) == svm_predict(b, x + shift));
        }
    }
}

TEST_CASE("iteration budget reports non-convergence") {
    const auto inst = random_instance(7, 60, 3, true);
    const auto m = svm_fit(inst.X, inst.y, {10.0, 1e-12, 1});
    CHECK_FALSE(m.converged);
    CHECK(m.iterations <= 60);
}

TEST_CASE("svm errors") {
    Matrix X(3, 1);
    X << 1, 2, 3;
    CHECK_THROWS_AS(svm_fit(X, LabelVector{{1, 1, 1}, ""}), FitError);
    CHECK_THROWS_AS(svm_fit(X, LabelVector{{1, -1, 1}, ""}, {0.0}), InvalidArgument);
    CHECK_THROWS_AS(svm_fit(X, LabelVector{{1, -1}, ""}), InvalidArgument);
    const auto m = svm_fit(X, LabelVector{{-1, 1, 1}, ""});
    CHECK_THROWS_AS(svm_decision(m, Vector::Zero(2)), InvalidArgument);
}
