#include "tabclf/labeling.hpp"

#include <algorithm>
#include <cctype>

#include "tabclf/errors.hpp"

namespace tabclf {

namespace {

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

AnemiaLevel anemia_level(int hb_tenths) {
    if (hb_tenths < 0 || hb_tenths > 250) {
        throw InvalidArgument("hemoglobin " + std::to_string(hb_tenths) +
                              " tenths g/dl outside [0, 250]");
    }
    if (hb_tenths < 70) return AnemiaLevel::Severe;
    if (hb_tenths < 100) return AnemiaLevel::Moderate;
    if (hb_tenths < 110) return AnemiaLevel::Mild;
    return AnemiaLevel::NotAnemic;
}

int binarize_anemia(AnemiaLevel level) { return level == AnemiaLevel::NotAnemic ? -1 : +1; }

int malaria_label(MalariaResult result) { return result == MalariaResult::Positive ? +1 : -1; }

int parse_hemoglobin_tenths(const std::string& text) {
    const auto bad = [&] { return ParseError("'" + text + "' is not a hemoglobin reading"); };
    if (text.empty()) throw bad();

    std::size_t i = 0;
    int whole = 0;
    std::size_t digits = 0;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i, ++digits) {
        if (digits >= 4) throw bad();
        whole = whole * 10 + (text[i] - '0');
    }
    if (digits == 0) throw bad();
    int tenths = 0;
    if (i < text.size()) {
        if (text[i] != '.') throw bad();
        ++i;
        if (i == text.size()) throw bad();
        if (text.size() - i > 1) {
            throw ParseError("'" + text + "': hemoglobin allows one fractional digit");
        }
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw bad();
        tenths = text[i] - '0';
    }
    return whole * 10 + tenths;
}

AnemiaLevel parse_anemia_level(const std::string& text) {
    const auto s = lowercase(text);
    if (s == "severe") return AnemiaLevel::Severe;
    if (s == "moderate") return AnemiaLevel::Moderate;
    if (s == "mild") return AnemiaLevel::Mild;
    if (s == "not anemic" || s == "not anaemic") return AnemiaLevel::NotAnemic;
    throw ParseError("'" + text + "' is not an anemia level");
}

MalariaResult parse_malaria_result(const std::string& text) {
    if (text == "Positive") return MalariaResult::Positive;
    if (text == "Negative") return MalariaResult::Negative;
    throw ParseError("'" + text + "' is not a malaria test result");
}

const char* to_string(AnemiaLevel level) {
    switch (level) {
        case AnemiaLevel::Severe: return "Severe";
        case AnemiaLevel::Moderate: return "Moderate";
        case AnemiaLevel::Mild: return "Mild";
        case AnemiaLevel::NotAnemic: return "Not anemic";
    }
    return "?";
}

LabelVector make_labels(const RawTable& table) {
    const auto li = table.schema.label_index();
    const auto& spec = table.schema.variables[li];
    const auto& rule = table.schema.label_rule;

    LabelVector y;
    switch (rule.kind) {
        case LabelRuleKind::Anemia: y.positive_meaning = "anemic"; break;
        case LabelRuleKind::Malaria: y.positive_meaning = "malaria-positive"; break;
        case LabelRuleKind::Binary:
            y.positive_meaning = spec.name + "=" + rule.positive_level;
            break;
    }
    y.labels.reserve(table.n_rows());
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
        const auto& cell = table.rows[r][li];
        if (!cell) throw InvalidArgument("row " + std::to_string(r) + " has no label value");
        switch (rule.kind) {
            case LabelRuleKind::Anemia: {
                const auto level = spec.is_categorical()
                                       ? parse_anemia_level(*cell)
                                       : anemia_level(parse_hemoglobin_tenths(*cell));
                y.labels.push_back(binarize_anemia(level));
                break;
            }
            case LabelRuleKind::Malaria:
                y.labels.push_back(malaria_label(parse_malaria_result(*cell)));
                break;
            case LabelRuleKind::Binary:
                y.labels.push_back(*cell == rule.positive_level ? +1 : -1);
                break;
        }
    }
    return y;
}

}  // namespace tabclf
