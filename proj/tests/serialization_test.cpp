#include <doctest.h>

#include <filesystem>

#include "tabclf/config.hpp"
#include "tabclf/errors.hpp"
#include "tabclf/fixtures.hpp"
#include "tabclf/model_io.hpp"
#include "tabclf/random.hpp"
#include "tabclf/report.hpp"
#include "tabclf/schema_io.hpp"

using namespace tabclf;

namespace {

const char* kFullConfig = R"(task: custom
seed: 12345678901234
schema: schemas/custom.yaml
input:
  synth:
    rows: 250
    seed: 3
    informative: [x1, "odd: name"]
    weights: [0.1, -2.5e-3]
    noise_rate: 0.05
    missing_rate: 0.01
    missing_rates: {x4: 0.9, x5: 0.25}
    derived:
      - {column: x6, source: x1, noise_sd: 0.2}
preprocess:
  sparse_threshold: 0.4
  standardize: false
selection:
  correlation_threshold: 0.8
  rfe: {n_keep: 7, C: 1, tol: 0.01, max_passes: 5}
  pca: {enabled: true, components: 4, variance_target: 0.9, standardize: false}
algorithms:
  knn: {k: 7, metric: manhattan}
  random_forest: {n_trees: 20, max_depth: 6, features_per_split: 3, min_split: 4, bootstrap: false, seed: 99}
  svm: {C: 0.3, tol: 0.0001, max_passes: 50}
  naive_bayes: {alpha: 0.5, variance_floor: 1e-6}
split:
  kind: kfold
  folds: 4
output: out/report.json
)";

ComparisonReport sample_report() {
    ComparisonReport r;
    r.task = "malaria";
    r.ledger.initial_count = 10;
    r.ledger.encoding_expansion = 4;
    r.ledger.record(ReductionLedger::kSparse, {"a", "b"});
    r.ledger.record(ReductionLedger::kCorrelation, {"c=x"});
    r.ledger.record(ReductionLedger::kRfe, {});
    r.ledger.record(ReductionLedger::kPca, {"PC9", "PC10"});
    r.ledger.final_count = 9;
    r.split.kind = SplitSpec::Kind::Holdout;
    r.split.test_fraction = 0.3;
    r.seed = 18446744073709551615ULL;
    r.n_rows = 62;
    r.n_features = 9;
    AlgorithmResult ok;
    ok.name = "knn";
    ok.params = algorithm_params_json(KnnParams{});
    ok.accuracy = 12.0 / 13.0;
    ok.confusion = {5, 1, 7, 0};
    ok.seed = r.seed;
    AlgorithmResult bad;
    bad.name = "svm";
    bad.params = algorithm_params_json(SvmParams{});
    bad.seed = r.seed;
    bad.error = "svm: labels contain a single class";
    r.algorithms = {ok, bad};
    return r;
}

}  // namespace

TEST_CASE("schema yaml round trip") {
    for (const auto& s : {fixtures::anemia_schema(), fixtures::malaria_schema()}) {
        CHECK(schema_from_yaml(schema_to_yaml(s)) == s);
    }
    Schema odd;
    odd.label_rule = {LabelRuleKind::Binary, "yes: really"};
    odd.variables = {
        {"name, with comma", VariableKind::Categorical, {"- dash", "'quoted'", "null", "true"}},
        {"#hash", VariableKind::Numeric, {}, VariableRole::Ignored, {"-99", "NA", ""}},
        {"out", VariableKind::Categorical, {"yes: really", "no"}, VariableRole::LabelSource, {}},
    };
    CHECK(schema_validate(odd).empty());
    CHECK(schema_from_yaml(schema_to_yaml(odd)) == odd);
}

TEST_CASE("schema yaml errors carry a line") {
    CHECK_THROWS_WITH_AS(schema_from_yaml("label_rule: anemia\nvariables:\n  - name: a\n    colour: red\n"),
                         doctest::Contains("line 4"), ParseError);
    CHECK_THROWS_AS(schema_from_yaml("label_rule: sideways\nvariables: []\n"), ParseError);
    CHECK_THROWS_AS(schema_from_yaml("variables: [\n"), ParseError);
}

TEST_CASE("config defaults") {
    const auto c = parse_config("task: anemia\n");
    CHECK(c.correlation_threshold == 0.75);
    CHECK(c.sparse_threshold == 0.5);
    REQUIRE(c.algorithms.size() == 4);
    CHECK(std::get<SvmParams>(c.algorithms[2]).C == 10.0);
    CHECK(c.split.kind == SplitSpec::Kind::Holdout);
    CHECK(c.split.test_fraction == 0.25);
    CHECK_FALSE(c.rfe_n_keep.has_value());
    CHECK_THROWS_WITH_AS(validate_config(c), doctest::Contains("seed"), InvalidArgument);
    CHECK(parse_config("") == PipelineConfig{});
}

TEST_CASE("config range and key errors") {
    CHECK_THROWS_WITH_AS(parse_config("task: anemia\nselection:\n  correlation_threshold: 1.5\n"),
                         doctest::Contains("line 3"), ParseError);
    CHECK_THROWS_WITH_AS(parse_config("task: anemia\nsplitt: {}\n"), doctest::Contains("unknown key"), ParseError);
    CHECK_THROWS_AS(parse_config("task: flu\n"), ParseError);
    CHECK_THROWS_AS(parse_config("seed: -4\n"), ParseError);
    CHECK_THROWS_AS(parse_config("algorithms:\n  knn: {k: 4}\n"), ParseError);
    CHECK_THROWS_AS(parse_config("split: {kind: holdout, test_fraction: 1}\n"), ParseError);
    CHECK_THROWS_AS(parse_config("task: [anemia\n"), ParseError);
}

TEST_CASE("config validation") {
    auto c = parse_config("task: anemia\nseed: 1\ninput: {csv: data.csv}\nalgorithms: {}\n");
    CHECK_THROWS_WITH_AS(validate_config(c), doctest::Contains("no algorithms"), InvalidArgument);
    c = parse_config("task: anemia\nseed: 1\ninput: {csv: data.csv}\n");
    CHECK_NOTHROW(validate_config(c));
    c = parse_config("task: custom\nseed: 1\ninput: {csv: data.csv}\n");
    CHECK_THROWS_AS(validate_config(c), InvalidArgument);
    c = parse_config("task: anemia\nseed: 1\n");
    CHECK_THROWS_AS(validate_config(c), InvalidArgument);
}

TEST_CASE("config round trip") {
    const auto c = parse_config(kFullConfig);
    CHECK(c.seed == 12345678901234ULL);
    CHECK(c.algorithms.size() == 4);
    CHECK(std::get<KnnParams>(c.algorithms[0]).metric == Metric::Manhattan);
    CHECK(c.forest_seed == 99);
    CHECK(c.synth->signal.informative[1] == "odd: name");
    CHECK(c.split.folds == 4);
    const auto text = emit_config(c);
    CHECK(parse_config(text) == c);
    CHECK(emit_config(parse_config(text)) == text);
    CHECK(parse_config(emit_config(PipelineConfig{})) == PipelineConfig{});

    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        PipelineConfig r;
        r.task = Task::Malaria;
        r.seed = rng.bits();
        r.correlation_threshold = 0.01 + 0.99 * rng.uniform();
        r.pca_variance_target = rng.uniform() * 0.9 + 0.1;
        r.input_csv = "x.csv";
        SvmParams svm;
        svm.C = std::exp(10 * rng.normal());
        r.algorithms = {svm};
        CHECK(parse_config(emit_config(r)) == r);
    }
}

TEST_CASE("filter algorithms") {
    auto c = parse_config("task: anemia\n");
    filter_algorithms(c, {"nb", "knn"});
    REQUIRE(c.algorithms.size() == 2);
    CHECK(std::holds_alternative<KnnParams>(c.algorithms[0]));
    CHECK(std::holds_alternative<BayesParams>(c.algorithms[1]));
}

TEST_CASE("report json layout and round trip") {
    const auto r = sample_report();
    const auto j = report_to_json(r);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"task", "ledger", "split", "seed", "rows", "features", "algorithms"});
    CHECK(j["algorithms"][0]["accuracy_percent"] == "92.31%");
    CHECK(j["algorithms"][1]["accuracy"].is_null());
    CHECK(report_from_json(j) == r);

    const auto path = std::filesystem::temp_directory_path() / "tabclf_report_roundtrip.json";
    emit_report(r, path);
    CHECK(load_report(path) == r);
    std::filesystem::remove(path);
    CHECK_THROWS(emit_report(r, "/nonexistent-dir/x/report.json"));
}

TEST_CASE("percent formatting") {
    CHECK(format_percent(0.9203) == "92.03%");
    CHECK(format_percent(1.0) == "100.0%");
    CHECK(format_percent(0.0) == "0.000%");
    CHECK(format_percent(9.0 / 13.0) == "69.23%");
}

TEST_CASE("model json round trips") {
    Matrix X(6, 2);
    X << 0, 1, 1, 0, 2, 2, -1, 0, 0, -2, -1, -1;
    LabelVector y{{1, 1, 1, -1, -1, -1}, ""};

    const auto knn = knn_fit(X, y, 3, Metric::Manhattan);
    const auto knn2 = knn_from_json(to_json(knn));
    CHECK(knn2.X == knn.X);
    CHECK(knn2.metric == knn.metric);

    const auto svm = svm_fit(X, y);
    const auto svm2 = svm_from_json(Json::parse(to_json(svm).dump()));
    CHECK(svm2.w == svm.w);
    CHECK(svm2.b == svm.b);
    CHECK(svm2.alpha == svm.alpha);

    ForestParams fp;
    fp.n_trees = 5;
    const auto forest = rf_fit(X, y, fp);
    const auto forest2 = forest_from_json(Json::parse(to_json(forest).dump()));
    CHECK(forest2.trees == forest.trees);
    CHECK(forest2.params == forest.params);

    std::vector<ColumnMeta> meta(2);
    meta[0].source = "a";
    meta[1].source = "b";
    const auto nb = nb_fit(X, y, meta);
    const auto nb2 = bayes_from_json(Json::parse(to_json(nb).dump()));
    const Vector q = X.row(0).transpose();
    CHECK(nb_predict_proba(nb2, q) == nb_predict_proba(nb, q));

    CHECK_THROWS_AS(svm_from_json(to_json(knn)), ParseError);
    CHECK_THROWS_AS(knn_from_json(Json{{"algorithm", "knn"}}), ParseError);
}
