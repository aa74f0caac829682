#include "tabclf/report.hpp"

#include <cstdio>
#include <fstream>

#include "tabclf/errors.hpp"

namespace tabclf {

std::string format_percent(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%#.4g%%", fraction * 100.0);
    return buf;
}

Json report_to_json(const ComparisonReport& r) {
    Json j;
    j["task"] = r.task;

    Json ledger;
    ledger["initial"] = r.ledger.initial_count;
    ledger["encoding_expansion"] = r.ledger.encoding_expansion;
    Json stages = Json::array();
    for (const auto& s : r.ledger.stages) {
        stages.push_back({{"stage", s.name}, {"count", s.count}, {"removed", s.removed}});
    }
    ledger["stages"] = std::move(stages);
    ledger["final"] = r.ledger.final_count;
    j["ledger"] = std::move(ledger);

    Json split;
    if (r.split.kind == SplitSpec::Kind::Holdout) {
        split["kind"] = "holdout";
        split["test_fraction"] = r.split.test_fraction;
    } else {
        split["kind"] = "kfold";
        split["folds"] = r.split.folds;
    }
    split["description"] = r.split.describe();
    j["split"] = std::move(split);
    j["seed"] = r.seed;
    j["rows"] = r.n_rows;
    j["features"] = r.n_features;

    Json algs = Json::array();
    for (const auto& a : r.algorithms) {
        Json e;
        e["name"] = a.name;
        e["params"] = a.params;
        if (a.accuracy) {
            e["accuracy"] = *a.accuracy;
            e["accuracy_percent"] = format_percent(*a.accuracy);
        } else {
            e["accuracy"] = nullptr;
            e["accuracy_percent"] = nullptr;
        }
        e["confusion"] = {{"tp", a.confusion.tp}, {"fp", a.confusion.fp}, {"tn", a.confusion.tn}, {"fn", a.confusion.fn}};
        e["seed"] = a.seed;
        if (a.error) e["error"] = *a.error;
        algs.push_back(std::move(e));
    }
    j["algorithms"] = std::move(algs);
    return j;
}

ComparisonReport report_from_json(const Json& j) {
    try {
        ComparisonReport r;
        r.task = j.at("task").get<std::string>();
        const auto& l = j.at("ledger");
        r.ledger.initial_count = l.at("initial").get<std::size_t>();
        r.ledger.encoding_expansion = l.at("encoding_expansion").get<std::ptrdiff_t>();
        for (const auto& s : l.at("stages")) {
            r.ledger.stages.push_back({s.at("stage").get<std::string>(),
                                       s.at("removed").get<std::vector<std::string>>(),
                                       s.at("count").get<std::size_t>()});
        }
        r.ledger.final_count = l.at("final").get<std::size_t>();

        const auto& sp = j.at("split");
        if (sp.at("kind") == "holdout") {
            r.split.kind = SplitSpec::Kind::Holdout;
            r.split.test_fraction = sp.at("test_fraction").get<double>();
        } else {
            r.split.kind = SplitSpec::Kind::KFold;
            r.split.folds = sp.at("folds").get<std::size_t>();
        }
        r.seed = j.at("seed").get<std::uint64_t>();
        r.n_rows = j.at("rows").get<std::size_t>();
        r.n_features = j.at("features").get<std::size_t>();

        for (const auto& e : j.at("algorithms")) {
            AlgorithmResult a;
            a.name = e.at("name").get<std::string>();
            a.params = e.at("params");
            if (!e.at("accuracy").is_null()) a.accuracy = e.at("accuracy").get<double>();
            const auto& c = e.at("confusion");
            a.confusion = {c.at("tp").get<std::size_t>(), c.at("fp").get<std::size_t>(),
                           c.at("tn").get<std::size_t>(), c.at("fn").get<std::size_t>()};
            a.seed = e.at("seed").get<std::uint64_t>();
            if (e.contains("error")) a.error = e.at("error").get<std::string>();
            r.algorithms.push_back(std::move(a));
        }
        return r;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("report json: ") + e.what());
    }
}

void emit_report(const ComparisonReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << report_to_json(report).dump(2) << '\n';
    out.flush();
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

ComparisonReport load_report(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open report '" + path.string() + "'");
    try {
        return report_from_json(Json::parse(in));
    } catch (const Json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace tabclf
