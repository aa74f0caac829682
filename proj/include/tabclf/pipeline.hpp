#pragma once

#include <filesystem>
#include <string>

#include "tabclf/config.hpp"
#include "tabclf/errors.hpp"
#include "tabclf/evaluation.hpp"
#include "tabclf/ingest.hpp"
#include "tabclf/synthgen.hpp"

namespace tabclf {

/// Pipeline stages; each maps to a distinct process exit code.
enum class Stage { Config, Ingest, Label, Select, Evaluate, Output };

const char* to_string(Stage stage);

/// 0 success, 2 config, 3 ingest, 4 label, 5 select, 6 evaluate, 7 output.
int exit_code(Stage stage);

class StageError : public Error {
public:
    StageError(Stage stage, const std::string& message)
        : Error(std::string(to_string(stage)) + ": " + message), stage_(stage) {}
    Stage stage() const { return stage_; }

private:
    Stage stage_;
};

struct PipelineResult {
    ComparisonReport report;
    EncodedMatrix features;  // matrix handed to the classifiers
    LabelVector labels;
};

/// Schema named by the config: a file, a generated all-numeric schema, or
/// the bundled survey schema for the anemia / malaria tasks.
Schema resolve_schema(const PipelineConfig& config, const std::filesystem::path& base_dir = {});

/// The synthetic table described by input.synth.
SyntheticData synthesize(const PipelineConfig& config, const Schema& schema);

/// sparse/ignored drop -> incomplete-row drop -> encode -> label ->
/// correlation filter -> RFE -> PCA -> train/evaluate. Relative paths are
/// resolved against base_dir. Throws StageError.
PipelineResult run_pipeline(const PipelineConfig& config, const std::filesystem::path& base_dir = {});

}  // namespace tabclf
