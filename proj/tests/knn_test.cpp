#include <doctest.h>

#include <numeric>

#include "oracles/brute.hpp"
#include "tabclf/errors.hpp"
#include "tabclf/knn.hpp"
#include "tabclf/random.hpp"

using namespace tabclf;

TEST_CASE("fit contract") {
    Matrix X(3, 1);
    X << 0, 1, 10;
    LabelVector y{{-1, -1, +1}, ""};
    CHECK_THROWS_WITH_AS(knn_fit(X, y, 2), doctest::Contains("k must be odd"), InvalidArgument);
    CHECK_THROWS_AS(knn_fit(X, y, 5), InvalidArgument);
    CHECK_THROWS_AS(knn_fit(Matrix::Zero(1, 1), LabelVector{{1}, ""}, 1), FitError);
    const auto m = knn_fit(X, y, 3);
    CHECK(m.X == X);
    CHECK(m.y == y.labels);
    CHECK(m.k == 3);
}

TEST_CASE("small predictions") {
    Matrix X(3, 1);
    X << 0, 1, 10;
    LabelVector y{{-1, -1, +1}, ""};
    Vector q(1);
    q << 9;
    CHECK(knn_predict(knn_fit(X, y, 3), q) == -1);
    CHECK(knn_predict(knn_fit(X, y, 1), q) == +1);
    q << 1;
    CHECK(knn_predict(knn_fit(X, y, 1), q) == -1);

    Matrix P(4, 1);
    P << 0, 0.5, 1, 5;
    q << 0.4;
    CHECK(knn_predict(knn_fit(P, LabelVector{{+1, +1, -1, -1}, ""}, 3), q) == +1);
    CHECK_THROWS_AS(knn_predict(knn_fit(P, LabelVector{{+1, +1, -1, -1}, ""}, 3), Vector::Zero(2)),
                    InvalidArgument);
}

TEST_CASE("equal distances resolve to the lower index") {
    Matrix X(2, 1);
    X << -1, 1;
    Vector q = Vector::Zero(1);
    CHECK(knn_predict(knn_fit(X, LabelVector{{+1, -1}, ""}, 1), q) == +1);
    CHECK(knn_predict(knn_fit(X, LabelVector{{-1, +1}, ""}, 1), q) == -1);
}

TEST_CASE("manhattan and euclidean can disagree") {
    Matrix X(2, 2);
    X << 3, 0, 2, 2;
    LabelVector y{{+1, -1}, ""};
    Vector q = Vector::Zero(2);
    CHECK(knn_predict(knn_fit(X, y, 1, Metric::Euclidean), q) == -1);  // 3 vs 2.83
    CHECK(knn_predict(knn_fit(X, y, 1, Metric::Manhattan), q) == +1);  // 3 vs 4
    CHECK(parse_metric("manhattan") == Metric::Manhattan);
    CHECK(std::string(to_string(Metric::Euclidean)) == "euclidean");
    CHECK_THROWS_AS(parse_metric("cosine"), InvalidArgument);
}

TEST_CASE("matches a full sort and ignores row order") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        const Eigen::Index n = 40, d = 3;
        Matrix X(n, d);
        LabelVector y;
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) X(i, j) = rng.normal();
            y.labels.push_back(rng.bernoulli(0.5) ? 1 : -1);
        }
        if (!y.has_both_classes()) y.labels[0] = -y.labels[0];
        std::vector<std::size_t> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        rng.shuffle(perm);
        Matrix Xp(n, d);
        LabelVector yp = y.select(perm);
        for (Eigen::Index i = 0; i < n; ++i) Xp.row(i) = X.row(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(i)]));

        for (int k : {1, 3, 7}) {
            for (Metric metric : {Metric::Euclidean, Metric::Manhattan}) {
                const auto a = knn_fit(X, y, k, metric);
                const auto b = knn_fit(Xp, yp, k, metric);
                for (int t = 0; t < 20; ++t) {
                    Vector q(d);
                    for (auto& v : q) v = rng.normal();
                    const int got = knn_predict(a, q);
                    CHECK(got == oracle::knn_full_sort(X, y.labels, k, metric == Metric::Manhattan, q));
                    CHECK(got == knn_predict(b, q));
                }
            }
        }
    }
}
