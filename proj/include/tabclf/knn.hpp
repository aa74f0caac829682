#pragma once

#include <vector>

#include "tabclf/data_model.hpp"

namespace tabclf {

enum class Metric { Euclidean, Manhattan };

struct KnnModel {
    Matrix X;
    std::vector<int> y;
    int k = 1;
    Metric metric = Metric::Euclidean;
};

/// Lazy learner: validates and stores the training set. k must be odd.
KnnModel knn_fit(const Matrix& X, const LabelVector& y, int k, Metric metric = Metric::Euclidean);

/// Majority label of the k nearest rows; equal distances resolve to the lower training index.
int knn_predict(const KnnModel& model, const Eigen::Ref<const Vector>& x);

const char* to_string(Metric metric);
Metric parse_metric(const std::string& name);

}  // namespace tabclf
