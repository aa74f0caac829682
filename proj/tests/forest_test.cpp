#include <doctest.h>

#include <algorithm>

#include "oracles/brute.hpp"
#include "tabclf/errors.hpp"
#include "tabclf/forest.hpp"
#include "tabclf/ingest.hpp"
#include "tabclf/model_io.hpp"
#include "tabclf/random.hpp"
#include "tabclf/synthgen.hpp"

using namespace tabclf;

namespace {

struct Data {
    Matrix X;
    LabelVector y;
};

Data noisy_data(std::uint64_t seed, Eigen::Index n, Eigen::Index d) {
    Rng rng(seed);
    Data out;
    out.X.resize(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) out.X(i, j) = rng.normal();
        out.y.labels.push_back(out.X(i, 0) + 0.5 * rng.normal() > 0 ? 1 : -1);
    }
    return out;
}

ForestModel stub_forest(std::vector<std::pair<std::size_t, std::size_t>> leaves) {
    ForestModel m;
    m.n_features = 1;
    for (auto [pos, neg] : leaves) {
        DecisionTree t;
        TreeNode leaf;
        leaf.positives = pos;
        leaf.negatives = neg;
        t.nodes.push_back(leaf);
        m.trees.push_back(t);
    }
    return m;
}

}  // namespace

TEST_CASE("a single full tree memorizes distinct rows") {
    const auto d = noisy_data(1, 80, 4);
    ForestParams p;
    p.n_trees = 1;
    p.bootstrap = false;
    const auto m = rf_fit(d.X, d.y, p);
    for (Eigen::Index i = 0; i < d.X.rows(); ++i) {
        CHECK(rf_predict(m, d.X.row(i).transpose()) == d.y.labels[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("pure nodes are leaves") {
    Matrix X(4, 1);
    X << 1, 2, 3, 4;
    ForestParams p;
    p.n_trees = 1;
    p.bootstrap = false;
    const auto m = rf_fit(X, LabelVector{{-1, -1, 1, 1}, ""}, p);
    const auto& nodes = m.trees[0].nodes;
    REQUIRE(nodes.size() == 3);
    CHECK(nodes[0].threshold == 2.5);
    CHECK(nodes[1].is_leaf());
    CHECK(nodes[2].is_leaf());
    CHECK(nodes[1].positives + nodes[2].negatives == 0);
}

TEST_CASE("structure invariants and depth limit") {
    const auto d = noisy_data(2, 120, 5);
    ForestParams p;
    p.n_trees = 10;
    p.seed = 4;
    for (std::size_t depth : {0, 1, 3}) {
        p.max_depth = depth;
        const auto m = rf_fit(d.X, d.y, p);
        for (const auto& tree : m.trees) {
            std::vector<std::size_t> level(tree.nodes.size(), 0);
            for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
                const auto& n = tree.nodes[i];
                if (n.is_leaf()) {
                    CHECK(n.positives + n.negatives >= 1);
                } else {
                    REQUIRE(n.left > 0);
                    REQUIRE(n.right > 0);
                    level[static_cast<std::size_t>(n.left)] = level[i] + 1;
                    level[static_cast<std::size_t>(n.right)] = level[i] + 1;
                }
            }
            if (depth > 0) CHECK(*std::max_element(level.begin(), level.end()) <= depth);
        }
    }
}

TEST_CASE("determinism per seed and per tree") {
    const auto d = noisy_data(3, 100, 6);
    ForestParams p;
    p.n_trees = 8;
    p.seed = 42;
    const auto a = rf_fit(d.X, d.y, p);
    const auto b = rf_fit(d.X, d.y, p);
    CHECK(a.trees == b.trees);
    for (std::size_t t = 0; t < p.n_trees; ++t) CHECK(rf_grow_tree(d.X, d.y, p, t) == a.trees[t]);
    p.seed = 43;
    CHECK_FALSE(rf_fit(d.X, d.y, p).trees == a.trees);
}

TEST_CASE("tree order does not change the prediction") {
    const auto d = noisy_data(4, 100, 3);
    ForestParams p;
    p.n_trees = 15;
    auto m = rf_fit(d.X, d.y, p);
    auto r = m;
    std::reverse(r.trees.begin(), r.trees.end());
    for (Eigen::Index i = 0; i < d.X.rows(); ++i) {
        const Vector x = d.X.row(i).transpose();
        CHECK(std::abs(rf_predict_proba(m, x) - rf_predict_proba(r, x)) < 1e-12);
        CHECK(rf_predict(m, x) == rf_predict(r, x));
    }
}

TEST_CASE("posterior averaging and the tie rule") {
    const Vector x = Vector::Zero(1);
    CHECK(rf_predict_proba(stub_forest({{3, 0}, {1, 0}}), x) == 1.0);
    CHECK(rf_predict_proba(stub_forest({{2, 0}, {0, 5}}), x) == 0.5);
    CHECK(rf_predict(stub_forest({{2, 0}, {0, 5}}), x) == +1);
    CHECK(rf_predict(stub_forest({{9, 1}}), x) == +1);
    CHECK(rf_predict(stub_forest({{1, 9}}), x) == -1);
    CHECK_THROWS_AS(rf_predict(stub_forest({{1, 1}}), Vector::Zero(2)), InvalidArgument);
}

TEST_CASE("tree-walk oracle on a planted dataset") {
    const auto schema = synthetic_schema(20, 0, LabelRuleKind::Binary);
    SignalSpec spec;
    spec.informative = {"x1", "x2", "x3"};
    spec.weights = {1.0, -1.0, 0.5};
    spec.noise_rate = 0.05;
    const auto data = generate(schema, 400, spec, 7);
    const auto x = encode(data.table, true);
    ForestParams p;
    p.n_trees = 25;
    p.seed = 7;
    const auto m = rf_fit(x.values, data.labels, p);
    const auto j = to_json(m);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const Vector row = x.values.row(i).transpose();
        const double a = rf_predict_proba(m, row);
        CHECK(a == oracle::forest_walk(j, row));
        CHECK(rf_predict(m, row) == (a >= 1.0 - a ? 1 : -1));
    }
}

TEST_CASE("forest errors") {
    const auto d = noisy_data(5, 10, 2);
    CHECK_THROWS_AS(rf_fit(d.X, LabelVector{std::vector<int>(10, 1), ""}), FitError);
    ForestParams p;
    p.n_trees = 0;
    CHECK_THROWS_AS(rf_fit(d.X, d.y, p), InvalidArgument);
}
