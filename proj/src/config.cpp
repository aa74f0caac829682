#include "tabclf/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "tabclf/errors.hpp"
#include "yaml_util.hpp"

namespace tabclf {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t get_u64(const YAML::Node& node, const std::string& what) {
    const auto text = yaml::as<std::string>(node, what);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        yaml::fail(node, what + " must be a non-negative integer, got '" + text + "'");
    }
    return value;
}

std::size_t get_size(const YAML::Node& node, const std::string& what) {
    return static_cast<std::size_t>(get_u64(node, what));
}

double get_double(const YAML::Node& node, const std::string& what) {
    return yaml::as<double>(node, what);
}

bool get_bool(const YAML::Node& node, const std::string& what) { return yaml::as<bool>(node, what); }

void check_range(const YAML::Node& node, const std::string& what, bool ok, const char* range) {
    if (!ok) yaml::fail(node, what + " = " + node.Scalar() + " is outside " + range);
}

// Reads node[key] into `target` when present.
template <typename T, typename Get>
void read(const YAML::Node& parent, const char* key, T& target, Get get) {
    if (const auto n = parent[key]) target = get(n, key);
}

std::string num(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, res.ptr);
    // Keep YAML from reading integral doubles back as something else.
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

KnnParams parse_knn(const YAML::Node& node) {
    KnnParams p;
    if (node.IsNull()) return p;
    yaml::check_keys(node, "algorithms.knn", {"k", "metric"});
    if (const auto n = node["k"]) {
        const auto k = yaml::as<long long>(n, "knn.k");
        check_range(n, "knn.k", k >= 1 && k % 2 == 1, "the odd positive integers");
        p.k = static_cast<int>(k);
    }
    if (const auto n = node["metric"]) {
        try {
            p.metric = parse_metric(yaml::as<std::string>(n, "knn.metric"));
        } catch (const InvalidArgument& e) {
            yaml::fail(n, e.what());
        }
    }
    return p;
}

ForestParams parse_forest(const YAML::Node& node, std::optional<std::uint64_t>& seed) {
    ForestParams p;
    if (node.IsNull()) return p;
    yaml::check_keys(node, "algorithms.random_forest",
                     {"n_trees", "max_depth", "features_per_split", "min_split", "bootstrap", "seed"});
    read(node, "n_trees", p.n_trees, get_size);
    if (const auto n = node["n_trees"]) check_range(n, "n_trees", p.n_trees >= 1, "[1, inf)");
    read(node, "max_depth", p.max_depth, get_size);
    read(node, "features_per_split", p.features_per_split, get_size);
    read(node, "min_split", p.min_split, get_size);
    if (const auto n = node["min_split"]) check_range(n, "min_split", p.min_split >= 2, "[2, inf)");
    read(node, "bootstrap", p.bootstrap, get_bool);
    if (const auto n = node["seed"]) seed = get_u64(n, "random_forest.seed");
    return p;
}

SvmParams parse_svm(const YAML::Node& node, const std::string& what) {
    SvmParams p;
    if (node.IsNull()) return p;
    yaml::check_keys(node, what, {"C", "tol", "max_passes"});
    if (const auto n = node["C"]) {
        p.C = get_double(n, "C");
        check_range(n, "C", p.C > 0.0, "(0, inf)");
    }
    if (const auto n = node["tol"]) {
        p.tol = get_double(n, "tol");
        check_range(n, "tol", p.tol > 0.0, "(0, inf)");
    }
    read(node, "max_passes", p.max_passes, get_size);
    return p;
}

BayesParams parse_bayes(const YAML::Node& node) {
    BayesParams p;
    if (node.IsNull()) return p;
    yaml::check_keys(node, "algorithms.naive_bayes", {"alpha", "variance_floor"});
    if (const auto n = node["alpha"]) {
        p.laplace_alpha = get_double(n, "alpha");
        check_range(n, "alpha", p.laplace_alpha > 0.0, "(0, inf)");
    }
    if (const auto n = node["variance_floor"]) {
        p.variance_floor = get_double(n, "variance_floor");
        check_range(n, "variance_floor", p.variance_floor > 0.0, "(0, inf)");
    }
    return p;
}

SynthInput parse_synth(const YAML::Node& node) {
    yaml::check_keys(node, "input.synth",
                     {"rows", "seed", "generated_schema", "informative", "weights", "noise_rate",
                      "missing_rate", "missing_rates", "derived"});
    SynthInput s;
    if (!node["rows"]) yaml::fail(node, "input.synth needs rows");
    s.rows = get_size(node["rows"], "rows");
    check_range(node["rows"], "rows", s.rows >= 1, "[1, inf)");
    if (const auto n = node["seed"]) s.seed = get_u64(n, "synth.seed");
    if (const auto g = node["generated_schema"]) {
        yaml::check_keys(g, "generated_schema", {"features", "ignored"});
        GeneratedSchema gs;
        read(g, "features", gs.features, get_size);
        read(g, "ignored", gs.ignored, get_size);
        s.generated_schema = gs;
    }
    auto& sig = s.signal;
    if (const auto n = node["informative"]) {
        if (!n.IsSequence()) yaml::fail(n, "informative must be a list");
        for (const auto& c : n) sig.informative.push_back(yaml::as<std::string>(c, "informative column"));
    }
    if (const auto n = node["weights"]) {
        if (!n.IsSequence()) yaml::fail(n, "weights must be a list");
        for (const auto& c : n) sig.weights.push_back(get_double(c, "weight"));
    }
    if (sig.weights.size() != sig.informative.size()) {
        yaml::fail(node, "informative and weights must have the same length");
    }
    if (const auto n = node["noise_rate"]) {
        sig.noise_rate = get_double(n, "noise_rate");
        check_range(n, "noise_rate", sig.noise_rate >= 0.0 && sig.noise_rate < 1.0, "[0, 1)");
    }
    if (const auto n = node["missing_rate"]) {
        sig.missing_rate = get_double(n, "missing_rate");
        check_range(n, "missing_rate", sig.missing_rate >= 0.0 && sig.missing_rate < 1.0, "[0, 1)");
    }
    if (const auto n = node["missing_rates"]) {
        yaml::require_map(n, "missing_rates");
        for (const auto& kv : n) {
            const double r = get_double(kv.second, "missing rate");
            check_range(kv.second, "missing rate", r >= 0.0 && r < 1.0, "[0, 1)");
            sig.missing_rates[kv.first.as<std::string>()] = r;
        }
    }
    if (const auto n = node["derived"]) {
        if (!n.IsSequence()) yaml::fail(n, "derived must be a list");
        for (const auto& d : n) {
            yaml::check_keys(d, "derived column", {"column", "source", "noise_sd"});
            if (!d["column"] || !d["source"]) yaml::fail(d, "derived column needs column and source");
            DerivedColumn dc;
            dc.column = yaml::as<std::string>(d["column"], "column");
            dc.source = yaml::as<std::string>(d["source"], "source");
            if (d["noise_sd"]) {
                dc.noise_sd = get_double(d["noise_sd"], "noise_sd");
                check_range(d["noise_sd"], "noise_sd", dc.noise_sd >= 0.0, "[0, inf)");
            }
            sig.derived.push_back(std::move(dc));
        }
    }
    return s;
}

}  // namespace

const char* to_string(Task task) {
    switch (task) {
        case Task::Anemia: return "anemia";
        case Task::Malaria: return "malaria";
        case Task::Custom: return "custom";
    }
    return "?";
}

Task parse_task(const std::string& name) {
    if (name == "anemia") return Task::Anemia;
    if (name == "malaria") return Task::Malaria;
    if (name == "custom") return Task::Custom;
    throw InvalidArgument("unknown task '" + name + "' (expected anemia, malaria or custom)");
}

PipelineConfig parse_config(std::string_view text) {
    PipelineConfig c;
    const auto root = yaml::load(std::string(text));
    if (root.IsNull()) return c;
    yaml::check_keys(root, "config",
                     {"task", "seed", "schema", "input", "preprocess", "selection", "algorithms", "split",
                      "output"});

    if (const auto n = root["task"]) {
        try {
            c.task = parse_task(yaml::as<std::string>(n, "task"));
        } catch (const InvalidArgument& e) {
            yaml::fail(n, e.what());
        }
    }
    if (const auto n = root["seed"]) c.seed = get_u64(n, "seed");
    if (const auto n = root["schema"]) c.schema_path = yaml::as<std::string>(n, "schema");
    if (const auto n = root["output"]) c.output = yaml::as<std::string>(n, "output");

    if (const auto in = root["input"]) {
        yaml::check_keys(in, "input", {"csv", "synth"});
        if (const auto n = in["csv"]) c.input_csv = yaml::as<std::string>(n, "input.csv");
        if (const auto n = in["synth"]) c.synth = parse_synth(n);
    }

    if (const auto pre = root["preprocess"]) {
        yaml::check_keys(pre, "preprocess", {"sparse_threshold", "standardize"});
        if (const auto n = pre["sparse_threshold"]) {
            c.sparse_threshold = get_double(n, "sparse_threshold");
            check_range(n, "sparse_threshold", c.sparse_threshold >= 0.0 && c.sparse_threshold <= 1.0, "[0, 1]");
        }
        read(pre, "standardize", c.standardize, get_bool);
    }

    if (const auto sel = root["selection"]) {
        yaml::check_keys(sel, "selection", {"correlation_threshold", "rfe", "pca"});
        if (const auto n = sel["correlation_threshold"]) {
            c.correlation_threshold = get_double(n, "correlation_threshold");
            check_range(n, "correlation_threshold",
                        c.correlation_threshold > 0.0 && c.correlation_threshold <= 1.0, "(0, 1]");
        }
        if (const auto rfe = sel["rfe"]) {
            yaml::check_keys(rfe, "selection.rfe", {"n_keep", "C", "tol", "max_passes"});
            if (const auto n = rfe["n_keep"]) {
                c.rfe_n_keep = get_size(n, "rfe.n_keep");
                check_range(n, "rfe.n_keep", *c.rfe_n_keep >= 1, "[1, inf)");
            }
            YAML::Node svm_part(YAML::NodeType::Map);
            for (const char* k : {"C", "tol", "max_passes"}) {
                if (rfe[k]) svm_part[k] = rfe[k];
            }
            c.rfe_svm = parse_svm(svm_part, "selection.rfe");
        }
        if (const auto pca = sel["pca"]) {
            yaml::check_keys(pca, "selection.pca", {"enabled", "variance_target", "components", "standardize"});
            read(pca, "enabled", c.pca_enabled, get_bool);
            if (const auto n = pca["variance_target"]) {
                c.pca_variance_target = get_double(n, "variance_target");
                check_range(n, "variance_target", c.pca_variance_target > 0.0 && c.pca_variance_target <= 1.0,
                            "(0, 1]");
            }
            if (const auto n = pca["components"]) {
                c.pca_components = get_size(n, "pca.components");
                check_range(n, "pca.components", *c.pca_components >= 1, "[1, inf)");
            }
            read(pca, "standardize", c.pca_standardize, get_bool);
        }
    }

    if (const auto algs = root["algorithms"]) {
        if (!algs.IsMap() && !algs.IsNull()) yaml::fail(algs, "algorithms must be a mapping");
        c.algorithms.clear();
        if (algs.IsMap()) {
            yaml::check_keys(algs, "algorithms", {"knn", "random_forest", "svm", "naive_bayes"});
            if (const auto n = algs["knn"]) c.algorithms.emplace_back(parse_knn(n));
            if (const auto n = algs["random_forest"]) c.algorithms.emplace_back(parse_forest(n, c.forest_seed));
            if (const auto n = algs["svm"]) c.algorithms.emplace_back(parse_svm(n, "algorithms.svm"));
            if (const auto n = algs["naive_bayes"]) c.algorithms.emplace_back(parse_bayes(n));
        }
    }

    if (const auto sp = root["split"]) {
        yaml::check_keys(sp, "split", {"kind", "test_fraction", "folds"});
        if (const auto n = sp["kind"]) {
            const auto kind = yaml::as<std::string>(n, "split.kind");
            if (kind == "holdout") c.split.kind = SplitSpec::Kind::Holdout;
            else if (kind == "kfold") c.split.kind = SplitSpec::Kind::KFold;
            else yaml::fail(n, "unknown split kind '" + kind + "' (expected holdout or kfold)");
        }
        if (const auto n = sp["test_fraction"]) {
            c.split.test_fraction = get_double(n, "test_fraction");
            check_range(n, "test_fraction", c.split.test_fraction > 0.0 && c.split.test_fraction < 1.0, "(0, 1)");
        }
        if (const auto n = sp["folds"]) {
            c.split.folds = get_size(n, "folds");
            check_range(n, "folds", c.split.folds >= 2, "[2, inf)");
        }
    }
    return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string emit_config(const PipelineConfig& c) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    if (c.task) out << YAML::Key << "task" << YAML::Value << to_string(*c.task);
    if (c.seed) out << YAML::Key << "seed" << YAML::Value << std::to_string(*c.seed);
    if (c.schema_path) out << YAML::Key << "schema" << YAML::Value << YAML::DoubleQuoted << *c.schema_path;

    if (c.input_csv || c.synth) {
        out << YAML::Key << "input" << YAML::Value << YAML::BeginMap;
        if (c.input_csv) out << YAML::Key << "csv" << YAML::Value << YAML::DoubleQuoted << *c.input_csv;
        if (c.synth) {
            const auto& s = *c.synth;
            out << YAML::Key << "synth" << YAML::Value << YAML::BeginMap;
            out << YAML::Key << "rows" << YAML::Value << std::to_string(s.rows);
            if (s.seed) out << YAML::Key << "seed" << YAML::Value << std::to_string(*s.seed);
            if (s.generated_schema) {
                out << YAML::Key << "generated_schema" << YAML::Value << YAML::Flow << YAML::BeginMap
                    << YAML::Key << "features" << YAML::Value << std::to_string(s.generated_schema->features)
                    << YAML::Key << "ignored" << YAML::Value << std::to_string(s.generated_schema->ignored)
                    << YAML::EndMap;
            }
            out << YAML::Key << "informative" << YAML::Value << YAML::Flow << YAML::BeginSeq;
            for (const auto& n : s.signal.informative) out << YAML::DoubleQuoted << n;
            out << YAML::EndSeq;
            out << YAML::Key << "weights" << YAML::Value << YAML::Flow << YAML::BeginSeq;
            for (double w : s.signal.weights) out << num(w);
            out << YAML::EndSeq;
            out << YAML::Key << "noise_rate" << YAML::Value << num(s.signal.noise_rate);
            out << YAML::Key << "missing_rate" << YAML::Value << num(s.signal.missing_rate);
            if (!s.signal.missing_rates.empty()) {
                out << YAML::Key << "missing_rates" << YAML::Value << YAML::BeginMap;
                for (const auto& [k, v] : s.signal.missing_rates) {
                    out << YAML::Key << YAML::DoubleQuoted << k << YAML::Value << num(v);
                }
                out << YAML::EndMap;
            }
            if (!s.signal.derived.empty()) {
                out << YAML::Key << "derived" << YAML::Value << YAML::BeginSeq;
                for (const auto& d : s.signal.derived) {
                    out << YAML::Flow << YAML::BeginMap << YAML::Key << "column" << YAML::Value
                        << YAML::DoubleQuoted << d.column << YAML::Key << "source" << YAML::Value
                        << YAML::DoubleQuoted << d.source << YAML::Key << "noise_sd" << YAML::Value
                        << num(d.noise_sd) << YAML::EndMap;
                }
                out << YAML::EndSeq;
            }
            out << YAML::EndMap;
        }
        out << YAML::EndMap;
    }

    out << YAML::Key << "preprocess" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "sparse_threshold" << YAML::Value << num(c.sparse_threshold);
    out << YAML::Key << "standardize" << YAML::Value << (c.standardize ? "true" : "false");
    out << YAML::EndMap;

    out << YAML::Key << "selection" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "correlation_threshold" << YAML::Value << num(c.correlation_threshold);
    out << YAML::Key << "rfe" << YAML::Value << YAML::BeginMap;
    if (c.rfe_n_keep) out << YAML::Key << "n_keep" << YAML::Value << std::to_string(*c.rfe_n_keep);
    out << YAML::Key << "C" << YAML::Value << num(c.rfe_svm.C);
    out << YAML::Key << "tol" << YAML::Value << num(c.rfe_svm.tol);
    out << YAML::Key << "max_passes" << YAML::Value << std::to_string(c.rfe_svm.max_passes);
    out << YAML::EndMap;
    out << YAML::Key << "pca" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "enabled" << YAML::Value << (c.pca_enabled ? "true" : "false");
    out << YAML::Key << "variance_target" << YAML::Value << num(c.pca_variance_target);
    if (c.pca_components) out << YAML::Key << "components" << YAML::Value << std::to_string(*c.pca_components);
    out << YAML::Key << "standardize" << YAML::Value << (c.pca_standardize ? "true" : "false");
    out << YAML::EndMap;
    out << YAML::EndMap;

    out << YAML::Key << "algorithms" << YAML::Value;
    if (c.algorithms.empty()) {
        out << YAML::Flow << YAML::BeginMap << YAML::EndMap;
    } else {
        out << YAML::BeginMap;
        for (const auto& spec : c.algorithms) {
            out << YAML::Key << algorithm_name(spec) << YAML::Value << YAML::BeginMap;
            std::visit(Overloaded{
                           [&](const KnnParams& p) {
                               out << YAML::Key << "k" << YAML::Value << std::to_string(p.k);
                               out << YAML::Key << "metric" << YAML::Value << to_string(p.metric);
                           },
                           [&](const ForestParams& p) {
                               out << YAML::Key << "n_trees" << YAML::Value << std::to_string(p.n_trees);
                               out << YAML::Key << "max_depth" << YAML::Value << std::to_string(p.max_depth);
                               out << YAML::Key << "features_per_split" << YAML::Value
                                   << std::to_string(p.features_per_split);
                               out << YAML::Key << "min_split" << YAML::Value << std::to_string(p.min_split);
                               out << YAML::Key << "bootstrap" << YAML::Value << (p.bootstrap ? "true" : "false");
                               if (c.forest_seed) {
                                   out << YAML::Key << "seed" << YAML::Value << std::to_string(*c.forest_seed);
                               }
                           },
                           [&](const SvmParams& p) {
                               out << YAML::Key << "C" << YAML::Value << num(p.C);
                               out << YAML::Key << "tol" << YAML::Value << num(p.tol);
                               out << YAML::Key << "max_passes" << YAML::Value << std::to_string(p.max_passes);
                           },
                           [&](const BayesParams& p) {
                               out << YAML::Key << "alpha" << YAML::Value << num(p.laplace_alpha);
                               out << YAML::Key << "variance_floor" << YAML::Value << num(p.variance_floor);
                           },
                       },
                       spec);
            out << YAML::EndMap;
        }
        out << YAML::EndMap;
    }

    out << YAML::Key << "split" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "kind" << YAML::Value
        << (c.split.kind == SplitSpec::Kind::Holdout ? "holdout" : "kfold");
    out << YAML::Key << "test_fraction" << YAML::Value << num(c.split.test_fraction);
    out << YAML::Key << "folds" << YAML::Value << std::to_string(c.split.folds);
    out << YAML::EndMap;

    if (c.output) out << YAML::Key << "output" << YAML::Value << YAML::DoubleQuoted << *c.output;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

void validate_config(const PipelineConfig& c) {
    if (!c.task) throw InvalidArgument("config: task is required (anemia, malaria or custom)");
    if (!c.seed) throw InvalidArgument("config: seed is required");
    if (c.algorithms.empty()) throw InvalidArgument("config: no algorithms selected");
    if (c.input_csv && c.synth) throw InvalidArgument("config: give either input.csv or input.synth, not both");
    if (!c.input_csv && !c.synth) throw InvalidArgument("config: input.csv or input.synth is required");
    if (c.input_csv && c.input_csv->empty()) throw InvalidArgument("config: input.csv is empty");
    if (c.schema_path && c.schema_path->empty()) throw InvalidArgument("config: schema path is empty");
    const bool generated = c.synth && c.synth->generated_schema;
    if (generated && c.schema_path) {
        throw InvalidArgument("config: give either schema or input.synth.generated_schema, not both");
    }
    if (*c.task == Task::Custom && !c.schema_path && !generated) {
        throw InvalidArgument("config: task custom needs a schema");
    }
}

void filter_algorithms(PipelineConfig& config, const std::vector<std::string>& names) {
    if (names.empty()) return;
    std::set<std::size_t> wanted;
    for (const auto& n : names) wanted.insert(algorithm_index(n));
    std::erase_if(config.algorithms, [&](const AlgorithmSpec& s) { return !wanted.count(s.index()); });
}

}  // namespace tabclf
