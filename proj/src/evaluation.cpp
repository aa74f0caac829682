#include "tabclf/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tabclf/errors.hpp"
#include "tabclf/random.hpp"

namespace tabclf {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<std::size_t> class_members(const LabelVector& labels, int label) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels.labels[i] == label) out.push_back(i);
    }
    return out;
}

template <typename Model, typename Predict>
std::vector<int> predict_rows(const Model& model, const Matrix& X, Predict predict) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(X.rows()));
    for (Eigen::Index r = 0; r < X.rows(); ++r) out.push_back(predict(model, X.row(r).transpose()));
    return out;
}

}  // namespace

TrainTestSplit stratified_split(const LabelVector& labels, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw InvalidArgument("test fraction must lie in (0, 1)");
    }
    Rng rng(Rng::stream_seed(seed, kSplitStream));
    TrainTestSplit out;
    for (int label : {+1, -1}) {
        auto members = class_members(labels, label);
        if (members.size() < 2) {
            throw InvalidArgument("class " + std::to_string(label) + " has " +
                                  std::to_string(members.size()) + " rows, too few to stratify");
        }
        rng.shuffle(members);
        const auto n_test = static_cast<std::size_t>(
            std::lround(static_cast<double>(members.size()) * test_fraction));
        out.test.insert(out.test.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_test));
        out.train.insert(out.train.end(), members.begin() + static_cast<std::ptrdiff_t>(n_test), members.end());
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

std::vector<std::vector<std::size_t>> stratified_kfold(const LabelVector& labels, std::size_t k,
                                                       std::uint64_t seed) {
    if (k < 2) throw InvalidArgument("k-fold needs k >= 2");
    Rng rng(Rng::stream_seed(seed, kSplitStream));
    std::vector<std::vector<std::size_t>> folds(k);
    std::size_t next = 0;  // continue the round robin across classes to balance fold sizes
    for (int label : {+1, -1}) {
        auto members = class_members(labels, label);
        if (members.size() < k) {
            throw InvalidArgument("class " + std::to_string(label) + " has " +
                                  std::to_string(members.size()) + " rows, fewer than " +
                                  std::to_string(k) + " folds");
        }
        rng.shuffle(members);
        for (auto m : members) {
            folds[next].push_back(m);
            next = (next + 1) % k;
        }
    }
    for (auto& f : folds) std::sort(f.begin(), f.end());
    return folds;
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
    if (predicted.size() != truth.size()) throw InvalidArgument("accuracy: length mismatch");
    if (truth.empty()) throw InvalidArgument("accuracy: no rows");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i];
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

ConfusionMatrix confusion(const std::vector<int>& predicted, const std::vector<int>& truth) {
    if (predicted.size() != truth.size()) throw InvalidArgument("confusion: length mismatch");
    ConfusionMatrix m;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool p = predicted[i] > 0, t = truth[i] > 0;
        if (p && t) ++m.tp;
        else if (p) ++m.fp;
        else if (t) ++m.fn;
        else ++m.tn;
    }
    return m;
}

const char* algorithm_name(const AlgorithmSpec& spec) {
    static constexpr const char* names[] = {"knn", "random_forest", "svm", "naive_bayes"};
    return names[spec.index()];
}

std::size_t algorithm_index(const std::string& name) {
    if (name == "knn") return 0;
    if (name == "random_forest" || name == "rf") return 1;
    if (name == "svm") return 2;
    if (name == "naive_bayes" || name == "nb") return 3;
    throw InvalidArgument("unknown algorithm '" + name + "'");
}

Json algorithm_params_json(const AlgorithmSpec& spec) {
    return std::visit(
        Overloaded{
            [](const KnnParams& p) { return Json{{"k", p.k}, {"metric", to_string(p.metric)}}; },
            [](const ForestParams& p) {
                return Json{{"n_trees", p.n_trees},
                            {"max_depth", p.max_depth},
                            {"features_per_split", p.features_per_split},
                            {"min_split", p.min_split},
                            {"bootstrap", p.bootstrap},
                            {"seed", p.seed}};
            },
            [](const SvmParams& p) {
                return Json{{"C", p.C}, {"tol", p.tol}, {"max_passes", p.max_passes}, {"kernel", "linear"}};
            },
            [](const BayesParams& p) {
                return Json{{"laplace_alpha", p.laplace_alpha}, {"variance_floor", p.variance_floor}};
            },
        },
        spec);
}

std::string SplitSpec::describe() const {
    std::ostringstream out;
    if (kind == Kind::Holdout) {
        out << "stratified holdout, test fraction " << test_fraction;
    } else {
        out << "stratified " << folds << "-fold";
    }
    return out.str();
}

std::vector<int> fit_and_predict(const AlgorithmSpec& spec, const EncodedMatrix& train,
                                 const LabelVector& y_train, const Matrix& test) {
    return std::visit(
        Overloaded{
            [&](const KnnParams& p) {
                return predict_rows(knn_fit(train.values, y_train, p.k, p.metric), test, knn_predict);
            },
            [&](const ForestParams& p) {
                return predict_rows(rf_fit(train.values, y_train, p), test, rf_predict);
            },
            [&](const SvmParams& p) {
                return predict_rows(svm_fit(train.values, y_train, p), test, svm_predict);
            },
            [&](const BayesParams& p) {
                return predict_rows(nb_fit(train.values, y_train, train.columns, p), test, nb_predict);
            },
        },
        spec);
}

ComparisonReport compare_algorithms(const EncodedMatrix& X, const LabelVector& y,
                                    std::vector<AlgorithmSpec> algorithms, const SplitSpec& split,
                                    std::uint64_t seed) {
    if (algorithms.empty()) throw InvalidArgument("no algorithms requested");
    if (static_cast<std::size_t>(X.rows()) != y.size()) {
        throw InvalidArgument("row count and label count differ");
    }
    std::stable_sort(algorithms.begin(), algorithms.end(),
                     [](const AlgorithmSpec& a, const AlgorithmSpec& b) { return a.index() < b.index(); });
    for (std::size_t i = 1; i < algorithms.size(); ++i) {
        if (algorithms[i].index() == algorithms[i - 1].index()) {
            throw InvalidArgument(std::string("algorithm '") + algorithm_name(algorithms[i]) +
                                  "' requested twice");
        }
    }

    std::vector<TrainTestSplit> rounds;
    if (split.kind == SplitSpec::Kind::Holdout) {
        rounds.push_back(stratified_split(y, split.test_fraction, seed));
    } else {
        const auto folds = stratified_kfold(y, split.folds, seed);
        for (std::size_t f = 0; f < folds.size(); ++f) {
            TrainTestSplit s;
            s.test = folds[f];
            for (std::size_t g = 0; g < folds.size(); ++g) {
                if (g != f) s.train.insert(s.train.end(), folds[g].begin(), folds[g].end());
            }
            std::sort(s.train.begin(), s.train.end());
            rounds.push_back(std::move(s));
        }
    }

    ComparisonReport report;
    report.split = split;
    report.seed = seed;
    report.n_rows = y.size();
    report.n_features = static_cast<std::size_t>(X.cols());
    for (const auto& spec : algorithms) {
        AlgorithmResult result;
        result.name = algorithm_name(spec);
        result.params = algorithm_params_json(spec);
        result.seed = seed;
        try {
            double acc_sum = 0.0;
            for (const auto& r : rounds) {
                const auto train = X.select_rows(r.train);
                const auto test = X.select_rows(r.test);
                const auto truth = y.select(r.test).labels;
                const auto predicted = fit_and_predict(spec, train, y.select(r.train), test.values);
                acc_sum += accuracy(predicted, truth);
                const auto c = confusion(predicted, truth);
                result.confusion.tp += c.tp;
                result.confusion.fp += c.fp;
                result.confusion.tn += c.tn;
                result.confusion.fn += c.fn;
            }
            result.accuracy = acc_sum / static_cast<double>(rounds.size());
        } catch (const std::exception& e) {
            result.accuracy.reset();
            result.confusion = {};
            result.error = e.what();
        }
        report.algorithms.push_back(std::move(result));
    }
    return report;
}

}  // namespace tabclf
