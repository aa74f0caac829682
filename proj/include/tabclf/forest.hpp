#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tabclf/data_model.hpp"

namespace tabclf {

struct ForestParams {
    std::size_t n_trees = 100;
    std::size_t max_depth = 0;           // 0: unlimited
    std::size_t features_per_split = 0;  // 0: ceil(sqrt(d))
    std::size_t min_split = 2;
    bool bootstrap = true;
    std::uint64_t seed = 0;

    bool operator==(const ForestParams&) const = default;
};

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;  // x[feature] <= threshold goes left
    int left = -1;
    int right = -1;
    std::size_t positives = 0;
    std::size_t negatives = 0;

    bool is_leaf() const { return feature < 0; }
    bool operator==(const TreeNode&) const = default;
};

/// Flat CART tree, root at index 0.
struct DecisionTree {
    std::vector<TreeNode> nodes;

    const TreeNode& leaf_for(const Eigen::Ref<const Vector>& x) const;
    bool operator==(const DecisionTree&) const = default;
};

struct ForestModel {
    std::vector<DecisionTree> trees;
    ForestParams params;
    std::size_t n_features = 0;
};

/// Tree t is grown from its own RNG stream, Rng::stream_seed(seed, t): a
/// bootstrap sample of n rows, then at every node a random feature order
/// from which the first `features_per_split` non-constant features are
/// searched for the best Gini decrease over midpoint thresholds.
ForestModel rf_fit(const Matrix& X, const LabelVector& y, const ForestParams& params = {});

DecisionTree rf_grow_tree(const Matrix& X, const LabelVector& y, const ForestParams& params,
                          std::size_t tree_index);

/// Mean over trees of the +1 frequency in the reached leaf.
double rf_predict_proba(const ForestModel& model, const Eigen::Ref<const Vector>& x);

/// +1 iff the posterior is >= 0.5.
int rf_predict(const ForestModel& model, const Eigen::Ref<const Vector>& x);

}  // namespace tabclf
