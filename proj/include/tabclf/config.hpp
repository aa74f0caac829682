#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tabclf/evaluation.hpp"
#include "tabclf/synthgen.hpp"

namespace tabclf {

enum class Task { Anemia, Malaria, Custom };

const char* to_string(Task task);
Task parse_task(const std::string& name);

struct GeneratedSchema {
    std::size_t features = 20;
    std::size_t ignored = 0;

    bool operator==(const GeneratedSchema&) const = default;
};

struct SynthInput {
    std::size_t rows = 0;
    std::optional<std::uint64_t> seed;  // defaults to the run seed
    std::optional<GeneratedSchema> generated_schema;
    SignalSpec signal;

    bool operator==(const SynthInput&) const = default;
};

/// Everything a pipeline run needs. The README describes the file format.
struct PipelineConfig {
    std::optional<Task> task;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> schema_path;
    std::optional<std::string> input_csv;
    std::optional<SynthInput> synth;

    double sparse_threshold = 0.5;
    bool standardize = true;

    double correlation_threshold = 0.75;
    std::optional<std::size_t> rfe_n_keep;
    SvmParams rfe_svm{};
    bool pca_enabled = true;
    double pca_variance_target = 0.95;
    std::optional<std::size_t> pca_components;
    bool pca_standardize = true;

    std::vector<AlgorithmSpec> algorithms{KnnParams{}, ForestParams{}, SvmParams{}, BayesParams{}};
    std::optional<std::uint64_t> forest_seed;  // defaults to the run seed
    SplitSpec split{};

    std::optional<std::string> output;

    bool operator==(const PipelineConfig&) const = default;
};

/// Parses the YAML config and applies defaults. Syntax errors, unknown keys
/// and out-of-range values throw ParseError with a line number.
PipelineConfig parse_config(std::string_view text);
PipelineConfig load_config(const std::filesystem::path& path);

/// Emits YAML that parse_config reads back to an equal config.
std::string emit_config(const PipelineConfig& config);

/// Whole-config checks that parsing alone cannot make: a task and seed are
/// set, at least one algorithm, exactly one input source. Throws InvalidArgument.
void validate_config(const PipelineConfig& config);

/// Keeps only the named algorithms (report order is unaffected).
void filter_algorithms(PipelineConfig& config, const std::vector<std::string>& names);

}  // namespace tabclf
