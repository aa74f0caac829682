// Command-line front end: run | synth | validate | fixtures.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tabclf/fixtures.hpp"
#include "tabclf/ingest.hpp"
#include "tabclf/pipeline.hpp"
#include "tabclf/report.hpp"
#include "tabclf/schema_io.hpp"

namespace fs = std::filesystem;
using namespace tabclf;

namespace {

constexpr const char* kOutputDirEnv = "TABCLF_OUTPUT_DIR";

struct CommonOptions {
    std::string config_path;
    std::string task;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> algorithms;
};

fs::path default_output(const std::string& filename) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) return fs::path(dir) / filename;
    return fs::path(filename);
}

PipelineConfig load_with_overrides(const CommonOptions& opt) {
    PipelineConfig config;
    if (!opt.config_path.empty()) config = load_config(opt.config_path);
    if (!opt.task.empty()) config.task = parse_task(opt.task);
    if (opt.seed) config.seed = *opt.seed;
    filter_algorithms(config, opt.algorithms);
    return config;
}

fs::path config_dir(const CommonOptions& opt) {
    return opt.config_path.empty() ? fs::path() : fs::path(opt.config_path).parent_path();
}

int cmd_run(const CommonOptions& opt) {
    PipelineConfig config;
    try {
        config = load_with_overrides(opt);
    } catch (const std::exception& e) {
        std::cerr << "config: " << e.what() << '\n';
        return exit_code(Stage::Config);
    }
    try {
        const auto result = run_pipeline(config, config_dir(opt));
        fs::path out;
        if (!opt.out.empty()) out = opt.out;
        else if (config.output) out = default_output(*config.output);
        else out = default_output(std::string(to_string(*config.task)) + "_report.json");
        try {
            emit_report(result.report, out);
        } catch (const std::exception& e) {
            throw StageError(Stage::Output, e.what());
        }
        for (const auto& a : result.report.algorithms) {
            std::cout << a.name << ": "
                      << (a.accuracy ? format_percent(*a.accuracy) : "failed (" + *a.error + ")") << '\n';
        }
        std::cout << "report written to " << out.string() << '\n';
        return 0;
    } catch (const StageError& e) {
        std::cerr << e.what() << '\n';
        return exit_code(e.stage());
    }
}

int cmd_synth(const CommonOptions& opt) {
    try {
        const auto config = load_with_overrides(opt);
        if (!config.synth) throw InvalidArgument("config has no input.synth section");
        if (!config.task) throw InvalidArgument("config: task is required");
        const auto schema = resolve_schema(config, config_dir(opt));
        const auto data = synthesize(config, schema);
        const fs::path out = opt.out.empty() ? default_output("synthetic.csv") : fs::path(opt.out);
        std::ofstream file(out, std::ios::binary);
        if (!file) {
            std::cerr << "output: cannot open '" << out.string() << "'\n";
            return exit_code(Stage::Output);
        }
        write_csv(file, data.table);
        std::cout << data.table.n_rows() << " rows written to " << out.string() << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "config: " << e.what() << '\n';
        return exit_code(Stage::Config);
    }
}

int cmd_validate(const CommonOptions& opt, const std::string& schema_path) {
    if (opt.config_path.empty() && schema_path.empty()) {
        std::cerr << "validate: give --config and/or --schema\n";
        return exit_code(Stage::Config);
    }
    bool ok = true;
    if (!schema_path.empty()) {
        try {
            const auto violations = schema_validate(load_schema(schema_path));
            for (const auto& v : violations) std::cout << "schema: " << v.variable << ": " << v.message << '\n';
            ok = ok && violations.empty();
        } catch (const std::exception& e) {
            std::cout << "schema: " << e.what() << '\n';
            ok = false;
        }
    }
    if (!opt.config_path.empty()) {
        try {
            const auto config = load_with_overrides(opt);
            validate_config(config);
            resolve_schema(config, config_dir(opt));
        } catch (const std::exception& e) {
            std::cout << "config: " << e.what() << '\n';
            ok = false;
        }
    }
    std::cout << (ok ? "ok" : "invalid") << '\n';
    return ok ? 0 : exit_code(Stage::Config);
}

int cmd_fixtures(const std::string& out_dir) {
    const fs::path dir = out_dir.empty() ? default_output("fixtures") : fs::path(out_dir);
    try {
        fs::create_directories(dir);
        for (const auto& [name, schema] : {std::pair{"anemia_schema.yaml", fixtures::anemia_schema()},
                                           std::pair{"malaria_schema.yaml", fixtures::malaria_schema()}}) {
            std::ofstream file(dir / name, std::ios::binary);
            file << schema_to_yaml(schema);
            if (!file) throw tabclf::Error("cannot write " + (dir / name).string());
            std::cout << (dir / name).string() << '\n';
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "output: " << e.what() << '\n';
        return exit_code(Stage::Output);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tabular binary classification pipeline for survey data"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string schema_path;

    const auto add_common = [&](CLI::App* sub, bool with_algorithms) {
        sub->add_option("--config", opt.config_path, "Pipeline config (YAML)");
        sub->add_option("--task", opt.task, "anemia | malaria | custom")
            ->check(CLI::IsMember({"anemia", "malaria", "custom"}));
        sub->add_option("--out", opt.out, "Output path");
        sub->add_option("--seed", opt.seed, "Seed, overrides the config");
        if (with_algorithms) {
            sub->add_option("--algorithm", opt.algorithms, "Only run this algorithm (repeatable)")
                ->check(CLI::IsMember({"knn", "random_forest", "rf", "svm", "naive_bayes", "nb"}));
        }
    };

    auto* run = app.add_subcommand("run", "Run the pipeline and write a comparison report");
    add_common(run, true);
    run->get_option("--config")->required();

    auto* synth = app.add_subcommand("synth", "Write the config's synthetic table as CSV");
    add_common(synth, false);
    synth->get_option("--config")->required();

    auto* validate = app.add_subcommand("validate", "Check a config and/or schema file");
    add_common(validate, true);
    validate->add_option("--schema", schema_path, "Schema file (YAML)");

    std::string fixtures_out;
    auto* fixtures_cmd = app.add_subcommand("fixtures", "Write the bundled survey schemas");
    fixtures_cmd->add_option("--out", fixtures_out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_code(Stage::Config);
    }

    if (*run) return cmd_run(opt);
    if (*synth) return cmd_synth(opt);
    if (*validate) return cmd_validate(opt, schema_path);
    return cmd_fixtures(fixtures_out);
}
