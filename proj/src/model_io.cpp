#include "tabclf/model_io.hpp"

#include "tabclf/errors.hpp"

namespace tabclf {

namespace {

Json vector_json(const Eigen::Ref<const Vector>& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Vector vector_from(const Json& j) {
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    return v;
}

void expect_tag(const Json& j, const char* tag) {
    if (!j.contains("algorithm") || j["algorithm"] != tag) {
        throw ParseError(std::string("model json: expected algorithm '") + tag + "'");
    }
}

template <typename F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const Json::exception& e) {
        throw ParseError(std::string("model json: ") + e.what());
    }
}

}  // namespace

Json to_json(const KnnModel& model) {
    Json j;
    j["algorithm"] = "knn";
    j["hyperparameters"] = {{"k", model.k}, {"metric", to_string(model.metric)}};
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < model.X.rows(); ++r) rows.push_back(vector_json(model.X.row(r).transpose()));
    j["X"] = std::move(rows);
    j["y"] = model.y;
    return j;
}

KnnModel knn_from_json(const Json& j) {
    expect_tag(j, "knn");
    return guarded([&] {
        KnnModel m;
        m.k = j.at("hyperparameters").at("k").get<int>();
        m.metric = parse_metric(j.at("hyperparameters").at("metric").get<std::string>());
        const auto& rows = j.at("X");
        const auto d = rows.empty() ? 0 : rows[0].size();
        m.X.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
        for (std::size_t r = 0; r < rows.size(); ++r) m.X.row(static_cast<Eigen::Index>(r)) = vector_from(rows[r]).transpose();
        m.y = j.at("y").get<std::vector<int>>();
        return m;
    });
}

Json to_json(const SvmModel& model) {
    Json j;
    j["algorithm"] = "svm";
    j["hyperparameters"] = {{"C", model.C}, {"kernel", "linear"}};
    j["w"] = vector_json(model.w);
    j["b"] = model.b;
    j["alpha"] = vector_json(model.alpha);
    j["converged"] = model.converged;
    j["iterations"] = model.iterations;
    j["margin"] = model.margin;
    return j;
}

SvmModel svm_from_json(const Json& j) {
    expect_tag(j, "svm");
    return guarded([&] {
        SvmModel m;
        m.C = j.at("hyperparameters").at("C").get<double>();
        m.w = vector_from(j.at("w"));
        m.b = j.at("b").get<double>();
        m.alpha = vector_from(j.at("alpha"));
        m.converged = j.at("converged").get<bool>();
        m.iterations = j.at("iterations").get<std::size_t>();
        const double norm = m.w.norm();
        m.margin = norm > 0.0 ? 2.0 / norm : std::numeric_limits<double>::infinity();
        return m;
    });
}

Json to_json(const ForestModel& model) {
    Json j;
    j["algorithm"] = "random_forest";
    const auto& p = model.params;
    j["hyperparameters"] = {{"n_trees", p.n_trees},       {"max_depth", p.max_depth},
                            {"features_per_split", p.features_per_split},
                            {"min_split", p.min_split},   {"bootstrap", p.bootstrap},
                            {"seed", p.seed}};
    j["n_features"] = model.n_features;
    Json trees = Json::array();
    for (const auto& tree : model.trees) {
        Json nodes = Json::array();
        for (const auto& n : tree.nodes) {
            nodes.push_back({n.feature, n.threshold, n.left, n.right, n.positives, n.negatives});
        }
        trees.push_back(std::move(nodes));
    }
    j["trees"] = std::move(trees);
    return j;
}

ForestModel forest_from_json(const Json& j) {
    expect_tag(j, "random_forest");
    return guarded([&] {
        ForestModel m;
        const auto& h = j.at("hyperparameters");
        m.params.n_trees = h.at("n_trees").get<std::size_t>();
        m.params.max_depth = h.at("max_depth").get<std::size_t>();
        m.params.features_per_split = h.at("features_per_split").get<std::size_t>();
        m.params.min_split = h.at("min_split").get<std::size_t>();
        m.params.bootstrap = h.at("bootstrap").get<bool>();
        m.params.seed = h.at("seed").get<std::uint64_t>();
        m.n_features = j.at("n_features").get<std::size_t>();
        for (const auto& nodes : j.at("trees")) {
            DecisionTree tree;
            for (const auto& n : nodes) {
                tree.nodes.push_back({n.at(0).get<int>(), n.at(1).get<double>(), n.at(2).get<int>(),
                                      n.at(3).get<int>(), n.at(4).get<std::size_t>(),
                                      n.at(5).get<std::size_t>()});
            }
            m.trees.push_back(std::move(tree));
        }
        return m;
    });
}

Json to_json(const BayesModel& model) {
    Json j;
    j["algorithm"] = "naive_bayes";
    j["hyperparameters"] = {{"laplace_alpha", model.params.laplace_alpha},
                            {"variance_floor", model.params.variance_floor}};
    j["n_features"] = model.n_features;
    j["prior"] = model.prior;
    Json gs = Json::array();
    for (const auto& g : model.gaussians) {
        gs.push_back({{"column", g.column}, {"mean", g.mean}, {"variance", g.variance}});
    }
    j["gaussian"] = std::move(gs);
    Json cs = Json::array();
    for (const auto& c : model.categoricals) {
        cs.push_back({{"source", c.source},
                      {"columns", c.columns},
                      {"has_other", c.has_other},
                      {"probability", c.probability}});
    }
    j["categorical"] = std::move(cs);
    return j;
}

BayesModel bayes_from_json(const Json& j) {
    expect_tag(j, "naive_bayes");
    return guarded([&] {
        BayesModel m;
        m.params.laplace_alpha = j.at("hyperparameters").at("laplace_alpha").get<double>();
        m.params.variance_floor = j.at("hyperparameters").at("variance_floor").get<double>();
        m.n_features = j.at("n_features").get<std::size_t>();
        m.prior = j.at("prior").get<ClassPair>();
        for (const auto& g : j.at("gaussian")) {
            m.gaussians.push_back({g.at("column").get<std::size_t>(), g.at("mean").get<ClassPair>(),
                                   g.at("variance").get<ClassPair>()});
        }
        for (const auto& c : j.at("categorical")) {
            CategoricalTerm t;
            t.source = c.at("source").get<std::string>();
            t.columns = c.at("columns").get<std::vector<std::size_t>>();
            t.has_other = c.at("has_other").get<bool>();
            t.probability = c.at("probability").get<std::array<std::vector<double>, 2>>();
            m.categoricals.push_back(std::move(t));
        }
        return m;
    });
}

}  // namespace tabclf
