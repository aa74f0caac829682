#pragma once

#include <string>

#include "tabclf/data_model.hpp"

namespace tabclf {

/// WHO anemia grading, ordered by hemoglobin.
enum class AnemiaLevel { Severe = 0, Moderate = 1, Mild = 2, NotAnemic = 3 };

enum class MalariaResult { Positive, Negative };

/// Hemoglobin is carried in tenths of g/dl (10.9 g/dl -> 109), so the
/// 7 / 10 / 11 g/dl cut points are exact integer comparisons.
AnemiaLevel anemia_level(int hb_tenths);

/// Severe, Moderate and Mild are POSITIVE (+1); NotAnemic is NEGATIVE (-1).
int binarize_anemia(AnemiaLevel level);

int malaria_label(MalariaResult result);

/// Exact decimal parse of a g/dl reading ("10.9" -> 109). At most one
/// fractional digit is accepted.
int parse_hemoglobin_tenths(const std::string& text);

/// Case-insensitive "Severe" / "Moderate" / "Mild" / "Not anemic" (or "Not anaemic").
AnemiaLevel parse_anemia_level(const std::string& text);

MalariaResult parse_malaria_result(const std::string& text);

const char* to_string(AnemiaLevel level);

/// Labels every row of the table using the schema's label rule. The table
/// must not contain missing label cells.
LabelVector make_labels(const RawTable& table);

}  // namespace tabclf
