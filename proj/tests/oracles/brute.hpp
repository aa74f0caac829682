#pragma once

// Brute-force reference computations for classifier outputs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace oracle {

/// Majority label of the k nearest rows after sorting every (distance, index) pair.
inline int knn_full_sort(const Eigen::MatrixXd& X, const std::vector<int>& y, int k, bool manhattan,
                         const Eigen::VectorXd& q) {
    std::vector<std::pair<double, std::size_t>> all;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const Eigen::VectorXd diff = X.row(i).transpose() - q;
        const double dist = manhattan ? diff.cwiseAbs().sum() : diff.norm();
        all.emplace_back(dist, static_cast<std::size_t>(i));
    }
    std::sort(all.begin(), all.end());
    int vote = 0;
    for (int i = 0; i < k; ++i) vote += y[all[static_cast<std::size_t>(i)].second];
    return vote > 0 ? +1 : -1;
}

/// Forest posterior from the serialized model: walk each tree's node array.
inline double forest_walk(const nlohmann::ordered_json& model, const Eigen::VectorXd& x) {
    const auto& trees = model.at("trees");
    double sum = 0.0;
    for (const auto& nodes : trees) {
        // node: [feature, threshold, left, right, positives, negatives]
        std::size_t at = 0;
        while (nodes[at][0].get<int>() >= 0) {
            const auto& node = nodes[at];
            const double v = x(node[0].get<int>());
            at = v <= node[1].get<double>() ? node[2].get<std::size_t>() : node[3].get<std::size_t>();
        }
        const double pos = nodes[at][4].get<double>();
        const double neg = nodes[at][5].get<double>();
        sum += pos / (pos + neg);
    }
    return sum / static_cast<double>(trees.size());
}

/// Best training accuracy of a one-threshold rule on a single column,
/// over both orientations and every cut between sorted values.
inline double stump_accuracy(const Eigen::VectorXd& column, const std::vector<int>& y) {
    std::vector<std::pair<double, int>> v;
    for (Eigen::Index i = 0; i < column.size(); ++i) v.emplace_back(column(i), y[static_cast<std::size_t>(i)]);
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    std::size_t total_pos = 0;
    for (const auto& p : v) total_pos += p.second > 0;
    double best = std::max(total_pos, v.size() - total_pos) / n;
    std::size_t left_pos = 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        left_pos += v[i].second > 0;
        if (v[i].first == v[i + 1].first) continue;
        const std::size_t left = i + 1;
        const std::size_t left_neg = left - left_pos;
        const std::size_t right_pos = total_pos - left_pos;
        const std::size_t right_neg = (v.size() - left) - right_pos;
        // left negative / right positive, or the reverse
        best = std::max(best, static_cast<double>(left_neg + right_pos) / n);
        best = std::max(best, static_cast<double>(left_pos + right_neg) / n);
    }
    return best;
}

}  // namespace oracle
