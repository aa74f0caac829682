#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tabclf/bayes.hpp"
#include "tabclf/forest.hpp"
#include "tabclf/ingest.hpp"
#include "tabclf/knn.hpp"
#include "tabclf/model_io.hpp"
#include "tabclf/svm.hpp"

namespace tabclf {

struct ConfusionMatrix {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
    bool operator==(const ConfusionMatrix&) const = default;
};

struct TrainTestSplit {
    std::vector<std::size_t> train;  // ascending
    std::vector<std::size_t> test;   // ascending
};

/// Splitters draw from Rng::stream_seed(seed, kSplitStream) so a run seed can
/// also drive synthetic data without the split tracking the feature draws.
inline constexpr std::uint64_t kSplitStream = 0x73706c6974ULL;

/// Per class, round(count * test_fraction) rows go to the test side, chosen
/// by a seeded shuffle. Throws when a class has fewer than two members.
TrainTestSplit stratified_split(const LabelVector& labels, double test_fraction, std::uint64_t seed);

/// k folds (ascending indices each) with per-class fold counts differing by at most one.
std::vector<std::vector<std::size_t>> stratified_kfold(const LabelVector& labels, std::size_t k,
                                                       std::uint64_t seed);

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);
ConfusionMatrix confusion(const std::vector<int>& predicted, const std::vector<int>& truth);

struct KnnParams {
    int k = 5;
    Metric metric = Metric::Euclidean;

    bool operator==(const KnnParams&) const = default;
};

/// Alternative order is the report order: KNN, random forest, SVM, naive Bayes.
using AlgorithmSpec = std::variant<KnnParams, ForestParams, SvmParams, BayesParams>;

const char* algorithm_name(const AlgorithmSpec& spec);
/// Accepts "knn", "random_forest" (or "rf"), "svm", "naive_bayes" (or "nb").
std::size_t algorithm_index(const std::string& name);
Json algorithm_params_json(const AlgorithmSpec& spec);

struct SplitSpec {
    enum class Kind { Holdout, KFold };
    Kind kind = Kind::Holdout;
    double test_fraction = 0.25;
    std::size_t folds = 5;

    std::string describe() const;
    bool operator==(const SplitSpec&) const = default;
};

struct AlgorithmResult {
    std::string name;
    Json params;
    std::optional<double> accuracy;  // empty when the algorithm failed
    ConfusionMatrix confusion;
    std::uint64_t seed = 0;
    std::optional<std::string> error;

    bool operator==(const AlgorithmResult&) const = default;
};

struct ComparisonReport {
    std::string task;
    ReductionLedger ledger;
    SplitSpec split;
    std::uint64_t seed = 0;
    std::size_t n_rows = 0;
    std::size_t n_features = 0;
    std::vector<AlgorithmResult> algorithms;

    bool operator==(const ComparisonReport&) const = default;
};

/// Trains every requested algorithm on the train side of each split and
/// scores it on the held-out rows. With k folds the accuracy is the mean of
/// per-fold accuracies and the confusion matrix is pooled. A failing
/// algorithm records its error; the others still run.
ComparisonReport compare_algorithms(const EncodedMatrix& X, const LabelVector& y,
                                    std::vector<AlgorithmSpec> algorithms, const SplitSpec& split,
                                    std::uint64_t seed);

/// Fits one algorithm and predicts the given rows.
std::vector<int> fit_and_predict(const AlgorithmSpec& spec, const EncodedMatrix& train,
                                 const LabelVector& y_train, const Matrix& test);

}  // namespace tabclf
