#include "tabclf/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tabclf/errors.hpp"
#include "tabclf/random.hpp"

namespace tabclf {

namespace {

double gini(double pos, double neg) {
    const double n = pos + neg;
    if (n == 0.0) return 0.0;
    const double p = pos / n, q = neg / n;
    return 1.0 - p * p - q * q;
}

struct Split {
    int feature = -1;
    double threshold = 0.0;
    double gain = -1.0;
};

struct Frame {
    int node;
    std::size_t begin, end;  // range into the sample index buffer
    std::size_t depth;
};

void check_dimension(const ForestModel& model, Eigen::Index d) {
    if (static_cast<std::size_t>(d) != model.n_features) {
        throw InvalidArgument("forest: input has " + std::to_string(d) + " features, model expects " +
                              std::to_string(model.n_features));
    }
}

}  // namespace

const TreeNode& DecisionTree::leaf_for(const Eigen::Ref<const Vector>& x) const {
    const TreeNode* node = &nodes.front();
    while (!node->is_leaf()) {
        node = &nodes[static_cast<std::size_t>(x(node->feature) <= node->threshold ? node->left
                                                                                    : node->right)];
    }
    return *node;
}

DecisionTree rf_grow_tree(const Matrix& X, const LabelVector& y, const ForestParams& params,
                          std::size_t tree_index) {
    const auto n = static_cast<std::size_t>(X.rows());
    const auto d = static_cast<std::size_t>(X.cols());
    const std::size_t per_split =
        params.features_per_split
            ? std::min(params.features_per_split, d)
            : std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(d)))));

    Rng rng(Rng::stream_seed(params.seed, tree_index));
    std::vector<std::size_t> sample(n);
    if (params.bootstrap) {
        for (auto& s : sample) s = static_cast<std::size_t>(rng.below(n));
    } else {
        std::iota(sample.begin(), sample.end(), std::size_t{0});
    }

    DecisionTree tree;
    tree.nodes.emplace_back();
    std::vector<Frame> stack{{0, 0, n, 0}};
    std::vector<std::size_t> features(d);
    std::vector<std::pair<double, int>> column;

    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();

        std::size_t pos = 0;
        for (std::size_t i = f.begin; i < f.end; ++i) pos += y.labels[sample[i]] > 0;
        const std::size_t count = f.end - f.begin;
        {
            auto& node = tree.nodes[static_cast<std::size_t>(f.node)];
            node.positives = pos;
            node.negatives = count - pos;
        }
        const bool pure = pos == 0 || pos == count;
        if (pure || count < params.min_split || (params.max_depth && f.depth >= params.max_depth)) {
            continue;
        }

        const double parent = gini(static_cast<double>(pos), static_cast<double>(count - pos));
        std::iota(features.begin(), features.end(), std::size_t{0});
        rng.shuffle(features);

        Split best;
        std::size_t searched = 0;
        for (std::size_t fi = 0; fi < d && searched < per_split; ++fi) {
            const auto feat = static_cast<Eigen::Index>(features[fi]);
            column.clear();
            for (std::size_t i = f.begin; i < f.end; ++i) {
                column.emplace_back(X(static_cast<Eigen::Index>(sample[i]), feat), y.labels[sample[i]]);
            }
            std::sort(column.begin(), column.end());
            if (column.front().first == column.back().first) continue;  // constant here
            ++searched;

            double left_pos = 0.0, left_neg = 0.0;
            const double total = static_cast<double>(count);
            for (std::size_t i = 0; i + 1 < column.size(); ++i) {
                (column[i].second > 0 ? left_pos : left_neg) += 1.0;
                const double a = column[i].first, b = column[i + 1].first;
                if (a == b) continue;
                const double nl = left_pos + left_neg;
                const double right_pos = static_cast<double>(pos) - left_pos;
                const double right_neg = static_cast<double>(count - pos) - left_neg;
                const double gain = parent - (nl / total) * gini(left_pos, left_neg) -
                                    ((total - nl) / total) * gini(right_pos, right_neg);
                double threshold = a + (b - a) / 2.0;
                if (!(threshold < b)) threshold = a;
                const bool better =
                    gain > best.gain ||
                    (gain == best.gain &&
                     (feat < best.feature || (feat == best.feature && threshold < best.threshold)));
                if (better) best = {static_cast<int>(feat), threshold, gain};
            }
        }
        if (best.feature < 0) continue;

        const auto mid_it = std::stable_partition(
            sample.begin() + static_cast<std::ptrdiff_t>(f.begin),
            sample.begin() + static_cast<std::ptrdiff_t>(f.end),
            [&](std::size_t s) { return X(static_cast<Eigen::Index>(s), best.feature) <= best.threshold; });
        const auto mid = static_cast<std::size_t>(mid_it - sample.begin());

        const int left = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes.emplace_back();
        auto& node = tree.nodes[static_cast<std::size_t>(f.node)];
        node.feature = best.feature;
        node.threshold = best.threshold;
        node.left = left;
        node.right = left + 1;
        // Right pushed first so the left subtree is grown first.
        stack.push_back({left + 1, mid, f.end, f.depth + 1});
        stack.push_back({left, f.begin, mid, f.depth + 1});
    }
    return tree;
}

ForestModel rf_fit(const Matrix& X, const LabelVector& y, const ForestParams& params) {
    if (static_cast<std::size_t>(X.rows()) != y.size()) {
        throw InvalidArgument("forest: row count and label count differ");
    }
    if (params.n_trees == 0) throw InvalidArgument("forest: n_trees must be positive");
    if (params.min_split < 2) throw InvalidArgument("forest: min_split must be at least 2");
    require_both_classes(y, "forest");

    ForestModel model;
    model.params = params;
    model.n_features = static_cast<std::size_t>(X.cols());
    model.trees.reserve(params.n_trees);
    for (std::size_t t = 0; t < params.n_trees; ++t) model.trees.push_back(rf_grow_tree(X, y, params, t));
    return model;
}

double rf_predict_proba(const ForestModel& model, const Eigen::Ref<const Vector>& x) {
    check_dimension(model, x.size());
    double sum = 0.0;
    for (const auto& tree : model.trees) {
        const auto& leaf = tree.leaf_for(x);
        sum += static_cast<double>(leaf.positives) / static_cast<double>(leaf.positives + leaf.negatives);
    }
    return sum / static_cast<double>(model.trees.size());
}

int rf_predict(const ForestModel& model, const Eigen::Ref<const Vector>& x) {
    return rf_predict_proba(model, x) >= 0.5 ? +1 : -1;
}

}  // namespace tabclf
