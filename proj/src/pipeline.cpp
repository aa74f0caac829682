#include "tabclf/pipeline.hpp"

#include <fstream>

#include "tabclf/feature_select.hpp"
#include "tabclf/fixtures.hpp"
#include "tabclf/labeling.hpp"
#include "tabclf/schema_io.hpp"

namespace tabclf {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

template <typename F>
auto in_stage(Stage stage, F&& f) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, e.what());
    }
}

}  // namespace

const char* to_string(Stage stage) {
    switch (stage) {
        case Stage::Config: return "config";
        case Stage::Ingest: return "ingest";
        case Stage::Label: return "label";
        case Stage::Select: return "select";
        case Stage::Evaluate: return "evaluate";
        case Stage::Output: return "output";
    }
    return "?";
}

int exit_code(Stage stage) { return 2 + static_cast<int>(stage); }

Schema resolve_schema(const PipelineConfig& config, const std::filesystem::path& base_dir) {
    Schema schema;
    if (config.schema_path) {
        schema = load_schema(resolve(base_dir, *config.schema_path));
    } else if (config.synth && config.synth->generated_schema) {
        const auto rule = config.task == Task::Anemia    ? LabelRuleKind::Anemia
                          : config.task == Task::Malaria ? LabelRuleKind::Malaria
                                                         : LabelRuleKind::Binary;
        schema = synthetic_schema(config.synth->generated_schema->features,
                                  config.synth->generated_schema->ignored, rule);
    } else if (config.task == Task::Anemia) {
        schema = fixtures::anemia_schema();
    } else if (config.task == Task::Malaria) {
        schema = fixtures::malaria_schema();
    } else {
        throw InvalidArgument("no schema for task custom");
    }
    if (const auto v = schema_validate(schema); !v.empty()) {
        std::string msg = "invalid schema:";
        for (const auto& x : v) msg += " [" + x.variable + ": " + x.message + "]";
        throw InvalidArgument(msg);
    }
    return schema;
}

SyntheticData synthesize(const PipelineConfig& config, const Schema& schema) {
    if (!config.synth) throw InvalidArgument("config has no input.synth section");
    const auto seed = config.synth->seed ? *config.synth->seed : config.seed.value_or(0);
    return generate(schema, config.synth->rows, config.synth->signal, seed);
}

PipelineResult run_pipeline(const PipelineConfig& config, const std::filesystem::path& base_dir) {
    in_stage(Stage::Config, [&] { validate_config(config); return 0; });
    const std::uint64_t seed = *config.seed;

    const Schema schema = in_stage(Stage::Config, [&] { return resolve_schema(config, base_dir); });

    RawTable raw = in_stage(Stage::Ingest, [&] {
        if (config.synth) return synthesize(config, schema).table;
        const auto path = resolve(base_dir, *config.input_csv);
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error("cannot open input '" + path.string() + "'");
        return parse_csv(in, schema);
    });

    ReductionLedger ledger;
    ledger.initial_count = raw.n_cols() - 1;  // every variable but the label

    auto [sparse_table, sparse_removed] =
        in_stage(Stage::Ingest, [&] { return drop_sparse_columns(raw, config.sparse_threshold); });
    ledger.record(ReductionLedger::kSparse, std::move(sparse_removed));

    const RawTable table = drop_incomplete_rows(sparse_table);
    if (table.n_rows() == 0) {
        throw StageError(Stage::Ingest, "no complete rows remain after dropping sparse columns");
    }
    EncodedMatrix x = in_stage(Stage::Ingest, [&] { return encode(table, config.standardize); });
    ledger.encoding_expansion = x.cols() - static_cast<std::ptrdiff_t>(table.n_cols() - 1);

    const LabelVector y = in_stage(Stage::Label, [&] {
        auto labels = make_labels(table);
        require_both_classes(labels, "labeling");
        return labels;
    });

    x = in_stage(Stage::Select, [&] {
        const auto corr = correlation_filter(x, config.correlation_threshold);
        std::vector<std::string> removed;
        for (auto c : corr.removed) removed.push_back(x.columns[c].label());
        ledger.record(ReductionLedger::kCorrelation, std::move(removed));
        return x.select_columns(corr.kept);
    });

    x = in_stage(Stage::Select, [&] {
        std::vector<std::string> removed;
        EncodedMatrix out = x;
        if (config.rfe_n_keep) {
            const auto n_keep = *config.rfe_n_keep;
            if (n_keep > static_cast<std::size_t>(x.cols())) {
                throw InvalidArgument("rfe n_keep " + std::to_string(n_keep) + " exceeds the " +
                                      std::to_string(x.cols()) + " remaining columns");
            }
            if (n_keep < static_cast<std::size_t>(x.cols())) {
                const auto ranking = rfe_rank(x, y, RankerConfig{config.rfe_svm});
                const auto kept = rfe_select(ranking, n_keep);
                for (std::size_t i = 0; i + n_keep < ranking.order.size(); ++i) {
                    removed.push_back(x.columns[ranking.order[i]].label());
                }
                out = x.select_columns(kept);
            }
        }
        ledger.record(ReductionLedger::kRfe, std::move(removed));
        return out;
    });

    x = in_stage(Stage::Select, [&] {
        std::vector<std::string> removed;
        EncodedMatrix out = x;
        if (config.pca_enabled && x.cols() > 0) {
            PcaOptions options;
            options.standardize = config.pca_standardize;
            const auto model = pca_fit(x, options);
            const auto d = static_cast<std::size_t>(model.n_components());
            std::size_t k = config.pca_components ? *config.pca_components
                                                  : choose_components(model, config.pca_variance_target);
            if (k > d) {
                throw InvalidArgument("pca components " + std::to_string(k) + " exceeds dimension " +
                                      std::to_string(d));
            }
            out.values = pca_transform(model, x.values, k);
            out.columns.clear();
            for (std::size_t c = 0; c < k; ++c) {
                ColumnMeta meta;
                meta.source = "PC" + std::to_string(c + 1);
                out.columns.push_back(std::move(meta));
            }
            for (std::size_t c = k; c < d; ++c) removed.push_back("PC" + std::to_string(c + 1));
        }
        ledger.record(ReductionLedger::kPca, std::move(removed));
        return out;
    });
    ledger.final_count = static_cast<std::size_t>(x.cols());

    auto algorithms = config.algorithms;
    for (auto& spec : algorithms) {
        if (auto* forest = std::get_if<ForestParams>(&spec)) forest->seed = config.forest_seed.value_or(seed);
    }
    auto report = in_stage(Stage::Evaluate, [&] {
        return compare_algorithms(x, y, algorithms, config.split, seed);
    });
    const bool any_ok = std::any_of(report.algorithms.begin(), report.algorithms.end(),
                                    [](const AlgorithmResult& a) { return !a.error; });
    if (!any_ok) {
        throw StageError(Stage::Evaluate, "every algorithm failed; first error: " + *report.algorithms.front().error);
    }
    report.task = to_string(*config.task);
    report.ledger = std::move(ledger);
    return {std::move(report), std::move(x), y};
}

}  // namespace tabclf
