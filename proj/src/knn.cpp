#include "tabclf/knn.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "tabclf/errors.hpp"

namespace tabclf {

KnnModel knn_fit(const Matrix& X, const LabelVector& y, int k, Metric metric) {
    if (static_cast<std::size_t>(X.rows()) != y.size()) {
        throw InvalidArgument("knn: row count and label count differ");
    }
    if (k < 1 || k % 2 == 0) throw InvalidArgument("knn: k must be odd and positive");
    if (static_cast<Eigen::Index>(k) > X.rows()) {
        throw InvalidArgument("knn: k = " + std::to_string(k) + " exceeds " +
                              std::to_string(X.rows()) + " training rows");
    }
    require_both_classes(y, "knn");
    return KnnModel{X, y.labels, k, metric};
}

int knn_predict(const KnnModel& model, const Eigen::Ref<const Vector>& x) {
    if (x.size() != model.X.cols()) {
        throw InvalidArgument("knn: input has " + std::to_string(x.size()) +
                              " features, model expects " + std::to_string(model.X.cols()));
    }
    const Eigen::Index n = model.X.rows();
    Vector dist(n);
    if (model.metric == Metric::Euclidean) {
        // Squared distance orders identically.
        dist = (model.X.rowwise() - x.transpose()).rowwise().squaredNorm();
    } else {
        dist = (model.X.rowwise() - x.transpose()).cwiseAbs().rowwise().sum();
    }

    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    const auto k = static_cast<std::ptrdiff_t>(model.k);
    std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](Eigen::Index a, Eigen::Index b) {
        return std::pair(dist(a), a) < std::pair(dist(b), b);
    });
    int vote = 0;
    for (std::ptrdiff_t i = 0; i < k; ++i) vote += model.y[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    return vote > 0 ? +1 : -1;
}

const char* to_string(Metric metric) {
    return metric == Metric::Euclidean ? "euclidean" : "manhattan";
}

Metric parse_metric(const std::string& name) {
    if (name == "euclidean") return Metric::Euclidean;
    if (name == "manhattan") return Metric::Manhattan;
    throw InvalidArgument("unknown distance metric '" + name + "'");
}

}  // namespace tabclf
