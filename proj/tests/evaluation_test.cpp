#include <doctest.h>

#include <algorithm>
#include <set>

#include "tabclf/errors.hpp"
#include "tabclf/evaluation.hpp"
#include "tabclf/random.hpp"

using namespace tabclf;

namespace {

LabelVector balanced(std::size_t per_class) {
    LabelVector y;
    for (std::size_t i = 0; i < per_class; ++i) {
        y.labels.push_back(1);
        y.labels.push_back(-1);
    }
    return y;
}

EncodedMatrix separable(std::size_t n, LabelVector& y) {
    Rng rng(21);
    EncodedMatrix m;
    m.values.resize(static_cast<Eigen::Index>(n), 2);
    m.columns = {ColumnMeta{"a"}, ColumnMeta{"b"}};
    y.labels.clear();
    for (std::size_t i = 0; i < n; ++i) {
        const int label = i % 2 == 0 ? 1 : -1;
        m.values(static_cast<Eigen::Index>(i), 0) = 3.0 * label + rng.normal() * 0.3;
        m.values(static_cast<Eigen::Index>(i), 1) = rng.normal();
        y.labels.push_back(label);
    }
    return m;
}

}  // namespace

TEST_CASE("stratified split counts and partition") {
    const auto y = balanced(5);
    const auto s = stratified_split(y, 0.2, 1);
    REQUIRE(s.test.size() == 2);
    CHECK(y.labels[s.test[0]] != y.labels[s.test[1]]);
    std::set<std::size_t> all(s.train.begin(), s.train.end());
    for (auto i : s.test) CHECK(all.insert(i).second);
    CHECK(all.size() == 10);
    CHECK(std::is_sorted(s.test.begin(), s.test.end()));
    const auto again = stratified_split(y, 0.2, 1);
    CHECK(again.test == s.test);
    CHECK_THROWS_AS(stratified_split(LabelVector{{1, -1, -1}, ""}, 0.5, 1), InvalidArgument);
    CHECK_THROWS_AS(stratified_split(y, 1.0, 1), InvalidArgument);
}

TEST_CASE("k-fold balance") {
    const auto y = balanced(5);
    const auto folds = stratified_kfold(y, 5, 3);
    REQUIRE(folds.size() == 5);
    for (const auto& f : folds) {
        REQUIRE(f.size() == 2);
        CHECK(y.labels[f[0]] != y.labels[f[1]]);
    }
    CHECK_THROWS_AS(stratified_kfold(y, 6, 3), InvalidArgument);
    CHECK_THROWS_AS(stratified_kfold(y, 1, 3), InvalidArgument);

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        LabelVector r;
        const auto n = 20 + rng.below(60);
        for (std::size_t i = 0; i < n; ++i) r.labels.push_back(rng.bernoulli(0.3) ? 1 : -1);
        const auto k = 2 + rng.below(4);
        if (r.count(1) < k || r.count(-1) < k) continue;
        const auto fs = stratified_kfold(r, k, seed);
        std::vector<int> seen(n, 0);
        for (int label : {1, -1}) {
            std::size_t lo = n, hi = 0;
            for (const auto& f : fs) {
                const auto c = static_cast<std::size_t>(std::count_if(f.begin(), f.end(), [&](auto i) { return r.labels[i] == label; }));
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            CHECK(hi - lo <= 1);
        }
        for (const auto& f : fs)
            for (auto i : f) ++seen[i];
        CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    }
}

TEST_CASE("accuracy and confusion") {
    const std::vector<int> t{1, 1, -1, -1};
    CHECK(accuracy(t, t) == 1.0);
    CHECK(accuracy({-1, -1, 1, 1}, t) == 0.0);
    std::vector<int> p13(13, 1), t13(13, 1);
    p13[4] = -1;
    CHECK(accuracy(p13, t13) == doctest::Approx(0.9231).epsilon(5e-5));
    CHECK_THROWS_AS(accuracy({1}, t), InvalidArgument);
    CHECK_THROWS_AS(accuracy({}, {}), InvalidArgument);

    const auto all_pos = confusion({1, 1}, {1, 1});
    CHECK(all_pos == ConfusionMatrix{2, 0, 0, 0});
    const std::vector<int> p{1, -1, 1, -1, 1}, q{1, 1, -1, -1, -1};
    const auto a = confusion(p, q), b = confusion(q, p);
    CHECK(a.fp == b.fn);
    CHECK(a.fn == b.fp);
    CHECK(a.total() == 5);
    CHECK(accuracy(p, q) == static_cast<double>(a.tp + a.tn) / a.total());
}

TEST_CASE("algorithm names") {
    CHECK(algorithm_index("rf") == 1);
    CHECK(algorithm_index("naive_bayes") == 3);
    CHECK(std::string(algorithm_name(SvmParams{})) == "svm");
    CHECK_THROWS_AS(algorithm_index("lda"), InvalidArgument);
    CHECK(SplitSpec{}.describe().find("25") != std::string::npos);
}

TEST_CASE("comparison on separable data") {
    LabelVector y;
    const auto x = separable(80, y);
    const auto r = compare_algorithms(x, y, {SvmParams{}}, SplitSpec{}, 5);
    REQUIRE(r.algorithms.size() == 1);
    CHECK(r.algorithms[0].accuracy == 1.0);
    CHECK(r.algorithms[0].confusion.total() == 20);
}

TEST_CASE("four algorithms in report order, deterministic") {
    LabelVector y;
    const auto x = separable(60, y);
    std::vector<AlgorithmSpec> specs{BayesParams{}, SvmParams{}, KnnParams{}, ForestParams{}};
    const auto r = compare_algorithms(x, y, specs, SplitSpec{}, 9);
    REQUIRE(r.algorithms.size() == 4);
    CHECK(r.algorithms[0].name == "knn");
    CHECK(r.algorithms[1].name == "random_forest");
    CHECK(r.algorithms[2].name == "svm");
    CHECK(r.algorithms[3].name == "naive_bayes");
    for (const auto& a : r.algorithms) {
        REQUIRE(a.accuracy);
        CHECK(*a.accuracy >= 0.0);
        CHECK(*a.accuracy <= 1.0);
    }
    CHECK(compare_algorithms(x, y, specs, SplitSpec{}, 9) == r);
    CHECK_THROWS_AS(compare_algorithms(x, y, {SvmParams{}, SvmParams{}}, SplitSpec{}, 9), InvalidArgument);
    CHECK_THROWS_AS(compare_algorithms(x, y, {}, SplitSpec{}, 9), InvalidArgument);
}

TEST_CASE("a failing algorithm does not stop the others") {
    LabelVector y;
    const auto x = separable(40, y);
    KnnParams knn;
    knn.k = 999;
    const auto r = compare_algorithms(x, y, {knn, BayesParams{}}, SplitSpec{}, 1);
    REQUIRE(r.algorithms.size() == 2);
    CHECK_FALSE(r.algorithms[0].accuracy.has_value());
    REQUIRE(r.algorithms[0].error.has_value());
    CHECK(r.algorithms[0].error->find("exceeds") != std::string::npos);
    CHECK(r.algorithms[1].accuracy.has_value());
}

TEST_CASE("k-fold scores every row once") {
    LabelVector y;
    const auto x = separable(50, y);
    SplitSpec split;
    split.kind = SplitSpec::Kind::KFold;
    split.folds = 5;
    const auto r = compare_algorithms(x, y, {KnnParams{3}}, split, 2);
    CHECK(r.algorithms[0].confusion.total() == 50);
}
