#pragma once

#include "json.hpp"

#include "bgb/classify.hpp"
#include "bgb/experiments.hpp"
#include "bgb/oracle.hpp"
#include "bgb/verify.hpp"

namespace bgb::io {

using json = nlohmann::ordered_json;

json matrix_json(const Mat& m); // {"ring": "...", "rows": [[...]]}
Mat matrix_from_json(const json& j);

// {"W": [...], "r": [[...]], "profile": {"i,j": [parts...]}}
json invariants_json(const Mat& a);

json label_json(const N3Label& label);               // {"fiber": ..., "payload": {...}}
json label_json(const N2Label& label);
json report_json(const OrbitReport& rep);
std::string report_csv(const OrbitReport& rep);       // fiber census rows
std::string dependence_text(const DependenceTable& table);
std::string growth_text(const std::vector<GrowthRow>& rows);
std::vector<std::string> text_lines(const std::string& block);
json criteria_json(const std::vector<CriterionResult>& results);

} // namespace bgb::io
