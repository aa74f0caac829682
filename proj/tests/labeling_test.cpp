#include <doctest.h>

#include "tabclf/errors.hpp"
#include "tabclf/fixtures.hpp"
#include "tabclf/labeling.hpp"

using namespace tabclf;

TEST_CASE("anemia cut points") {
    CHECK(anemia_level(69) == AnemiaLevel::Severe);
    CHECK(anemia_level(70) == AnemiaLevel::Moderate);
    CHECK(anemia_level(99) == AnemiaLevel::Moderate);
    CHECK(anemia_level(100) == AnemiaLevel::Mild);
    CHECK(anemia_level(109) == AnemiaLevel::Mild);
    CHECK(anemia_level(110) == AnemiaLevel::NotAnemic);
    CHECK(anemia_level(0) == AnemiaLevel::Severe);
    CHECK(anemia_level(250) == AnemiaLevel::NotAnemic);
    CHECK_THROWS_AS(anemia_level(-1), InvalidArgument);
    CHECK_THROWS_AS(anemia_level(251), InvalidArgument);
}

TEST_CASE("anemia grading is monotone with three breakpoints") {
    int changes = 0;
    for (int hb = 1; hb <= 250; ++hb) {
        const auto prev = static_cast<int>(anemia_level(hb - 1));
        const auto cur = static_cast<int>(anemia_level(hb));
        CHECK(cur >= prev);
        if (cur != prev) {
            ++changes;
            CHECK((hb == 70 || hb == 100 || hb == 110));
        }
        CHECK(binarize_anemia(anemia_level(hb)) == (hb < 110 ? +1 : -1));
    }
    CHECK(changes == 3);
}

TEST_CASE("binary grouping") {
    CHECK(binarize_anemia(AnemiaLevel::Mild) == +1);
    CHECK(binarize_anemia(AnemiaLevel::Severe) == +1);
    CHECK(binarize_anemia(AnemiaLevel::Moderate) == +1);
    CHECK(binarize_anemia(AnemiaLevel::NotAnemic) == -1);
    CHECK(malaria_label(MalariaResult::Positive) == +1);
    CHECK(malaria_label(MalariaResult::Negative) == -1);
    const int once = malaria_label(parse_malaria_result("Negative"));
    CHECK(once == -1);
    CHECK(malaria_label(parse_malaria_result("Negative")) == once);
}

TEST_CASE("hemoglobin parsing is exact") {
    CHECK(parse_hemoglobin_tenths("10.9") == 109);
    CHECK(parse_hemoglobin_tenths("11") == 110);
    CHECK(parse_hemoglobin_tenths("6.9") == 69);
    CHECK(parse_hemoglobin_tenths("7.0") == 70);
    CHECK_THROWS_AS(parse_hemoglobin_tenths("10.95"), ParseError);
    CHECK_THROWS_AS(parse_hemoglobin_tenths("abc"), ParseError);
    CHECK_THROWS_AS(parse_hemoglobin_tenths("-1.0"), ParseError);
    CHECK_THROWS_AS(parse_hemoglobin_tenths("."), ParseError);
}

TEST_CASE("level names") {
    CHECK(parse_anemia_level("not anaemic") == AnemiaLevel::NotAnemic);
    CHECK(parse_anemia_level("Not anemic") == AnemiaLevel::NotAnemic);
    CHECK(parse_anemia_level("SEVERE") == AnemiaLevel::Severe);
    CHECK_THROWS_AS(parse_anemia_level("borderline"), ParseError);
    CHECK_THROWS_AS(parse_malaria_result("maybe"), ParseError);
    CHECK(std::string(to_string(AnemiaLevel::Mild)) == "Mild");
}

TEST_CASE("labels from a survey table") {
    RawTable t;
    t.schema = fixtures::anemia_schema();
    const auto label = t.schema.label_index();
    for (const char* level : {"Severe", "Not anaemic", "Mild", "Moderate"}) {
        std::vector<Cell> row(t.n_cols(), Cell{"x"});
        row[label] = Cell{level};
        t.rows.push_back(row);
    }
    const auto y = make_labels(t);
    CHECK(y.labels == std::vector<int>{+1, -1, +1, +1});

    RawTable h;
    h.schema.label_rule.kind = LabelRuleKind::Anemia;
    h.schema.variables = {{"hemoglobin", VariableKind::Numeric, {}, VariableRole::LabelSource}};
    h.rows = {{Cell{"10.9"}}, {Cell{"11.0"}}};
    CHECK(make_labels(h).labels == std::vector<int>{+1, -1});
    h.rows.push_back({std::nullopt});
    CHECK_THROWS(make_labels(h));
}

TEST_CASE("binary rule") {
    RawTable t;
    t.schema.label_rule = {LabelRuleKind::Binary, "Yes"};
    t.schema.variables = {{"outcome", VariableKind::Categorical, {"Yes", "No"}, VariableRole::LabelSource}};
    t.rows = {{Cell{"No"}}, {Cell{"Yes"}}};
    CHECK(make_labels(t).labels == std::vector<int>{-1, +1});
}
