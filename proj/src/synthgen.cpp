#include "tabclf/synthgen.hpp"

#include <cstdio>

#include "tabclf/errors.hpp"
#include "tabclf/ingest.hpp"
#include "tabclf/labeling.hpp"
#include "tabclf/random.hpp"

namespace tabclf {

namespace {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string format_tenths(int tenths) {
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

}  // namespace

void validate_signal_spec(const Schema& schema, const SignalSpec& spec) {
    if (spec.informative.size() != spec.weights.size()) {
        throw InvalidArgument("signal spec: informative columns and weights differ in length");
    }
    if (!(spec.noise_rate >= 0.0 && spec.noise_rate < 1.0)) {
        throw InvalidArgument("signal spec: noise_rate must lie in [0, 1)");
    }
    const auto check_rate = [](double r, const std::string& what) {
        if (!(r >= 0.0 && r < 1.0)) throw InvalidArgument("signal spec: missing rate of " + what + " must lie in [0, 1)");
    };
    check_rate(spec.missing_rate, "default");
    const auto feature = [&](const std::string& name, const char* what) -> const VariableSpec& {
        const auto idx = schema.index_of(name);
        if (!idx) throw InvalidArgument(std::string("signal spec: ") + what + " '" + name + "' not in schema");
        const auto& v = schema.variables[*idx];
        if (v.role == VariableRole::LabelSource) {
            throw InvalidArgument(std::string("signal spec: ") + what + " '" + name + "' is the label");
        }
        return v;
    };
    for (const auto& name : spec.informative) {
        if (feature(name, "informative column").role == VariableRole::Ignored) {
            throw InvalidArgument("signal spec: informative column '" + name + "' is ignored by the schema");
        }
    }
    for (const auto& [name, rate] : spec.missing_rates) {
        const auto& v = feature(name, "missing-rate column");
        check_rate(rate, name);
        if (rate > 0.0 && v.missing_codes.empty()) {
            throw InvalidArgument("signal spec: '" + name + "' declares no missing code");
        }
    }
    for (const auto& d : spec.derived) {
        if (feature(d.column, "derived column").is_categorical() ||
            feature(d.source, "derived source").is_categorical()) {
            throw InvalidArgument("signal spec: derived columns must be numeric");
        }
        if (!(d.noise_sd >= 0.0)) throw InvalidArgument("signal spec: derived noise_sd must be >= 0");
        for (const auto& other : spec.derived) {
            if (other.column == d.source) {
                throw InvalidArgument("signal spec: derived source '" + d.source + "' is itself derived");
            }
        }
    }
    if (spec.missing_rate > 0.0) {
        for (const auto& v : schema.variables) {
            if (v.role != VariableRole::LabelSource && v.missing_codes.empty() &&
                !spec.missing_rates.count(v.name)) {
                throw InvalidArgument("signal spec: '" + v.name + "' declares no missing code");
            }
        }
    }
}

SyntheticData generate(const Schema& schema, std::size_t n, const SignalSpec& spec, std::uint64_t seed) {
    if (n == 0) throw InvalidArgument("generate: need at least one row");
    if (const auto v = schema_validate(schema); !v.empty()) {
        throw InvalidArgument("generate: invalid schema: " + v.front().variable + ": " + v.front().message);
    }
    validate_signal_spec(schema, spec);

    const std::size_t n_vars = schema.variables.size();
    const std::size_t label_idx = schema.label_index();
    const auto& label_var = schema.variables[label_idx];
    const auto& rule = schema.label_rule;

    std::vector<std::size_t> informative_idx;
    for (const auto& name : spec.informative) informative_idx.push_back(*schema.index_of(name));
    std::vector<std::pair<std::size_t, std::size_t>> derived_idx;
    for (const auto& d : spec.derived) derived_idx.emplace_back(*schema.index_of(d.column), *schema.index_of(d.source));
    std::vector<double> rates(n_vars, spec.missing_rate);
    rates[label_idx] = 0.0;
    for (const auto& [name, rate] : spec.missing_rates) rates[*schema.index_of(name)] = rate;

    // Anemia levels available on a pre-binned label variable.
    std::vector<std::string> anemic_levels, healthy_levels;
    if (rule.kind == LabelRuleKind::Anemia && label_var.is_categorical()) {
        for (const auto& l : label_var.levels) {
            (parse_anemia_level(l) == AnemiaLevel::NotAnemic ? healthy_levels : anemic_levels).push_back(l);
        }
        if (anemic_levels.empty() || healthy_levels.empty()) {
            throw InvalidArgument("generate: anemia label levels must cover both classes");
        }
    }

    Rng rng(seed);
    SyntheticData out;
    out.table.schema = schema;
    out.table.rows.reserve(n);
    out.labels.labels.reserve(n);

    std::vector<double> code(n_vars, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<Cell> row(n_vars);
        for (std::size_t v = 0; v < n_vars; ++v) {
            if (v == label_idx) continue;
            const auto& var = schema.variables[v];
            if (var.is_categorical()) {
                const auto L = var.levels.size();
                const auto level = static_cast<std::size_t>(rng.below(L));
                row[v] = var.levels[level];
                code[v] = L > 1 ? 2.0 * static_cast<double>(level) / static_cast<double>(L - 1) - 1.0 : 0.0;
            } else {
                row[v] = format_number(rng.normal());
                code[v] = parse_number(*row[v]);
            }
        }
        for (std::size_t k = 0; k < derived_idx.size(); ++k) {
            const auto [target, source] = derived_idx[k];
            row[target] = format_number(code[source] + spec.derived[k].noise_sd * rng.normal());
            code[target] = parse_number(*row[target]);
        }

        double score = 0.0;
        for (std::size_t k = 0; k < informative_idx.size(); ++k) score += spec.weights[k] * code[informative_idx[k]];
        int label = score >= 0.0 ? +1 : -1;
        if (spec.noise_rate > 0.0 && rng.bernoulli(spec.noise_rate)) label = -label;
        out.labels.labels.push_back(label);

        switch (rule.kind) {
            case LabelRuleKind::Malaria:
                row[label_idx] = label > 0 ? "Positive" : "Negative";
                break;
            case LabelRuleKind::Anemia:
                if (label_var.is_categorical()) {
                    const auto& pool = label > 0 ? anemic_levels : healthy_levels;
                    row[label_idx] = pool[static_cast<std::size_t>(rng.below(pool.size()))];
                } else {
                    const int tenths = label > 0 ? 60 + static_cast<int>(rng.below(50))
                                                 : 110 + static_cast<int>(rng.below(41));
                    row[label_idx] = format_tenths(tenths);
                }
                break;
            case LabelRuleKind::Binary:
                if (label > 0) {
                    row[label_idx] = rule.positive_level;
                } else {
                    for (const auto& l : label_var.levels) {
                        if (l != rule.positive_level) { row[label_idx] = l; break; }
                    }
                    if (!row[label_idx]) throw InvalidArgument("generate: binary label needs a second level");
                }
                break;
        }

        for (std::size_t v = 0; v < n_vars; ++v) {
            if (rates[v] > 0.0 && rng.bernoulli(rates[v])) row[v].reset();
        }
        out.table.rows.push_back(std::move(row));
    }
    switch (rule.kind) {
        case LabelRuleKind::Anemia: out.labels.positive_meaning = "anemic"; break;
        case LabelRuleKind::Malaria: out.labels.positive_meaning = "malaria-positive"; break;
        case LabelRuleKind::Binary: out.labels.positive_meaning = label_var.name + "=" + rule.positive_level; break;
    }
    return out;
}

Schema synthetic_schema(std::size_t features, std::size_t ignored, LabelRuleKind task) {
    Schema s;
    for (std::size_t i = 1; i <= features; ++i) {
        s.variables.push_back({"x" + std::to_string(i), VariableKind::Numeric, {}, VariableRole::Feature});
    }
    for (std::size_t i = 1; i <= ignored; ++i) {
        s.variables.push_back({"id" + std::to_string(i), VariableKind::Numeric, {}, VariableRole::Ignored});
    }
    s.label_rule.kind = task;
    switch (task) {
        case LabelRuleKind::Anemia:
            s.variables.push_back({"hemoglobin", VariableKind::Numeric, {}, VariableRole::LabelSource});
            break;
        case LabelRuleKind::Malaria:
            s.variables.push_back({"malaria_test", VariableKind::Categorical, {"Positive", "Negative"},
                                   VariableRole::LabelSource});
            break;
        case LabelRuleKind::Binary:
            s.variables.push_back({"outcome", VariableKind::Categorical, {"Yes", "No"}, VariableRole::LabelSource});
            s.label_rule.positive_level = "Yes";
            break;
    }
    return s;
}

}  // namespace tabclf
