#include "tabclf/fixtures.hpp"

namespace tabclf::fixtures {

namespace {

VariableSpec numeric(std::string name) {
    return {std::move(name), VariableKind::Numeric, {}, VariableRole::Feature};
}

VariableSpec categorical(std::string name, std::vector<std::string> levels,
                         VariableRole role = VariableRole::Feature) {
    return {std::move(name), VariableKind::Categorical, std::move(levels), role};
}

const std::vector<std::string> kNoYes{"No", "Yes"};
const std::vector<std::string> kNoYesDontKnow{"No", "Yes", "Don't know"};

std::vector<VariableSpec> common_variables() {
    return {
        categorical("Sex of child", {"Male", "Female"}),
        numeric("Child height"),
        categorical("Currently amenorrhic", kNoYes),
        numeric("Number of antenatal visits during pregnancy"),
        categorical("Region", {"Dakar", "Ziguinchor", "Diourbel", "Matam", "Saint-Louis", "Tambacounda",
                               "Thies", "Kaolack", "Louga", "Fatick", "Kolda", "Kaffrine", "Kedougou",
                               "Sedhiou"}),
        categorical("Type place of residence", {"Urban", "Rural"}),
        categorical("Highest educational level", {"No education", "Primary", "Secondary", "Higher"}),
        categorical("Source of drinking water",
                    {"Piped into dwelling", "Piped to yard", "Public tap", "Tube well", "Protected well",
                     "Unprotected well", "River or lake", "Cart with small tank", "Bottled water"}),
        categorical("Respondent's occupation",
                    {"Not working", "Sales", "Agricultural self-employed", "Household and domestic",
                     "Services", "Skilled manual", "Unskilled manual"}),
    };
}

}  // namespace

Schema anemia_schema() {
    Schema s;
    s.label_rule.kind = LabelRuleKind::Anemia;
    s.variables = common_variables();
    const std::vector<VariableSpec> supplement{
        categorical("Received Measles",
                    {"No", "Vaccination date on card", "Reported by mother", "Marked on card", "Don't know"}),
        categorical("Vitamin A in last 6 months", kNoYesDontKnow),
        categorical("Currently breastfeeding", kNoYes),
        categorical("Drugs for intestinal parasites in last 6 months", kNoYesDontKnow),
        categorical("Anaemia level", {"Severe", "Moderate", "Mild", "Not anaemic"}, VariableRole::LabelSource),
        categorical("Drank from bottle with nipple last night", kNoYesDontKnow),
        categorical("Number of times ate solid, semi solid or soft food yesterday",
                    {"None", "1", "2", "3", "4", "5", "6", "7+", "Don't know"}),
        categorical("First 3 days given infant formula", kNoYes),
        categorical("First 3 days given tea, infusions", kNoYes),
        categorical("First 3 days given other", kNoYes),
        categorical("Has health card", {"No card", "Yes, seen", "Yes, not seen", "No longer has card"}),
    };
    s.variables.insert(s.variables.end(), supplement.begin(), supplement.end());
    return s;
}

Schema malaria_schema() {
    Schema s;
    s.label_rule.kind = LabelRuleKind::Malaria;
    s.variables = common_variables();
    const std::vector<VariableSpec> supplement{
        numeric("Respondent's current age"),
        categorical("Currently pregnant", kNoYes),
        categorical("Received Vitamin A dose in first 2 months", kNoYesDontKnow),
        categorical("Had fever in last two weeks", kNoYes),
        categorical("Had cough in last two weeks", kNoYes),
        categorical("Result of Malaria test", {"Positive", "Negative"}, VariableRole::LabelSource),
        categorical("Season of Interview", {"Rainy season (Sep to January)", "Dry season (February to August)"}),
        categorical("Household has Electricity", kNoYes),
    };
    s.variables.insert(s.variables.end(), supplement.begin(), supplement.end());
    return s;
}

}  // namespace tabclf::fixtures
