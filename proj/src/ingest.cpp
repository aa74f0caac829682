#include "tabclf/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iterator>
#include <numeric>

#include "tabclf/csv.hpp"
#include "tabclf/errors.hpp"

namespace tabclf {

void ReductionLedger::record(std::string name, std::vector<std::string> removed) {
    Stage stage{std::move(name), std::move(removed), 0};
    stage.count = stage.removed.size();
    stages.push_back(std::move(stage));
}

std::size_t ReductionLedger::total_removed() const {
    std::size_t total = 0;
    for (const auto& s : stages) total += s.count;
    return total;
}

bool ReductionLedger::conserved() const {
    for (const auto& s : stages) {
        if (s.count != s.removed.size()) return false;
    }
    const auto lhs = static_cast<std::ptrdiff_t>(initial_count) + encoding_expansion -
                     static_cast<std::ptrdiff_t>(total_removed());
    return lhs == static_cast<std::ptrdiff_t>(final_count);
}

RawTable parse_csv(std::string_view text, const Schema& schema) {
    const auto records = csv::read(text);
    if (records.empty()) throw ParseError("csv: missing header row");

    const auto& header = records.front();
    std::vector<std::size_t> source(schema.variables.size());
    for (std::size_t v = 0; v < schema.variables.size(); ++v) {
        const auto it = std::find(header.begin(), header.end(), schema.variables[v].name);
        if (it == header.end()) {
            throw ParseError("csv: header lacks variable '" + schema.variables[v].name + "'");
        }
        source[v] = static_cast<std::size_t>(std::distance(header.begin(), it));
    }

    RawTable table;
    table.schema = schema;
    table.rows.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.size() != header.size()) {
            throw ParseError("csv record " + std::to_string(r + 1) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(rec.size()));
        }
        std::vector<Cell> row;
        row.reserve(source.size());
        for (std::size_t v = 0; v < source.size(); ++v) {
            const auto& spec = schema.variables[v];
            const std::string& raw = rec[source[v]];
            if (spec.missing_codes.count(raw)) {
                row.emplace_back(std::nullopt);
                continue;
            }
            if (spec.is_categorical() &&
                std::find(spec.levels.begin(), spec.levels.end(), raw) == spec.levels.end()) {
                throw ParseError("csv record " + std::to_string(r + 1) + ": '" + raw +
                                 "' is not a level of '" + spec.name + "'");
            }
            row.emplace_back(raw);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

RawTable parse_csv(std::istream& in, const Schema& schema) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_csv(text, schema);
}

void write_csv(std::ostream& out, const RawTable& table) {
    csv::Record header;
    std::vector<std::string> missing_repr;
    for (const auto& v : table.schema.variables) {
        header.push_back(v.name);
        if (v.missing_codes.count("NA") || v.missing_codes.empty()) {
            missing_repr.emplace_back("NA");
        } else {
            missing_repr.push_back(*v.missing_codes.begin());
        }
    }
    csv::write_record(out, header);
    csv::Record rec(header.size());
    for (const auto& row : table.rows) {
        for (std::size_t v = 0; v < row.size(); ++v) rec[v] = row[v] ? *row[v] : missing_repr[v];
        csv::write_record(out, rec);
    }
}

SparseDropResult drop_sparse_columns(const RawTable& table, double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw InvalidArgument("sparse threshold must lie in [0, 1]");
    }
    std::vector<std::size_t> keep;
    SparseDropResult out;
    for (std::size_t v = 0; v < table.n_cols(); ++v) {
        const auto& spec = table.schema.variables[v];
        bool drop = false;
        if (spec.role == VariableRole::Ignored) {
            drop = true;
        } else if (spec.role == VariableRole::Feature) {
            drop = column_missing_fraction(table, spec.name) > threshold;
        }
        if (drop) {
            out.removed.push_back(spec.name);
        } else {
            keep.push_back(v);
        }
    }

    out.table.schema.label_rule = table.schema.label_rule;
    for (auto v : keep) out.table.schema.variables.push_back(table.schema.variables[v]);
    out.table.rows.reserve(table.n_rows());
    for (const auto& row : table.rows) {
        std::vector<Cell> kept;
        kept.reserve(keep.size());
        for (auto v : keep) kept.push_back(row[v]);
        out.table.rows.push_back(std::move(kept));
    }
    return out;
}

RawTable drop_incomplete_rows(const RawTable& table) {
    RawTable out;
    out.schema = table.schema;
    for (const auto& row : table.rows) {
        if (std::all_of(row.begin(), row.end(), [](const Cell& c) { return c.has_value(); })) {
            out.rows.push_back(row);
        }
    }
    return out;
}

double parse_number(const std::string& text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last || !std::isfinite(value)) {
        throw ParseError("'" + text + "' is not a number");
    }
    return value;
}

EncodedMatrix encode(const RawTable& table, bool standardize_numeric) {
    const auto n = static_cast<Eigen::Index>(table.n_rows());

    std::vector<ColumnMeta> columns;
    std::vector<std::size_t> col_source;
    for (std::size_t v = 0; v < table.n_cols(); ++v) {
        const auto& spec = table.schema.variables[v];
        if (spec.role != VariableRole::Feature) continue;
        if (spec.is_categorical()) {
            for (const auto& level : spec.levels) {
                ColumnMeta meta;
                meta.source = spec.name;
                meta.level = level;
                meta.level_count = spec.levels.size();
                columns.push_back(std::move(meta));
                col_source.push_back(v);
            }
        } else {
            ColumnMeta meta;
            meta.source = spec.name;
            columns.push_back(std::move(meta));
            col_source.push_back(v);
        }
    }

    EncodedMatrix out;
    out.values = Matrix::Zero(n, static_cast<Eigen::Index>(columns.size()));
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& row = table.rows[static_cast<std::size_t>(r)];
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const auto& cell = row[col_source[c]];
            if (!cell) {
                throw InvalidArgument("encode: row " + std::to_string(r) + " has a missing '" +
                                      columns[c].source + "'");
            }
            const auto j = static_cast<Eigen::Index>(c);
            if (columns[c].level) {
                out.values(r, j) = (*cell == *columns[c].level) ? 1.0 : 0.0;
            } else {
                out.values(r, j) = parse_number(*cell);
            }
        }
    }

    if (standardize_numeric && n > 0) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (columns[c].level) continue;
            auto col = out.values.col(static_cast<Eigen::Index>(c));
            const double mean = col.mean();
            const double stddev = std::sqrt((col.array() - mean).square().sum() / static_cast<double>(n));
            columns[c].standardized = true;
            columns[c].mean = mean;
            columns[c].stddev = stddev;
            if (stddev > 0.0) {
                col = (col.array() - mean) / stddev;
            } else {
                col.setZero();
            }
        }
    }
    out.columns = std::move(columns);
    return out;
}

}  // namespace tabclf
