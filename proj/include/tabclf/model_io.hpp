#pragma once

#include <json.hpp>

#include "tabclf/bayes.hpp"
#include "tabclf/forest.hpp"
#include "tabclf/knn.hpp"
#include "tabclf/svm.hpp"

namespace tabclf {

using Json = nlohmann::ordered_json;

// Structured-text model form: {"algorithm": <tag>, "hyperparameters": {...},
// then the learned arrays}. Tags are "knn", "random_forest", "svm", "naive_bayes".

Json to_json(const KnnModel& model);
Json to_json(const SvmModel& model);
Json to_json(const ForestModel& model);
Json to_json(const BayesModel& model);

KnnModel knn_from_json(const Json& j);
SvmModel svm_from_json(const Json& j);
ForestModel forest_from_json(const Json& j);
BayesModel bayes_from_json(const Json& j);

}  // namespace tabclf
