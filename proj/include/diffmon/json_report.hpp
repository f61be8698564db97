/*
   Copyright 2026 The diffmon authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef DIFFMON_JSON_REPORT_HPP
#define DIFFMON_JSON_REPORT_HPP

#include <json.hpp>

#include "diffmon/campaign.hpp"
#include "diffmon/monomial_spec.hpp"
#include "diffmon/numeric.hpp"
#include "diffmon/ppoint.hpp"

namespace diffmon {

using Json = nlohmann::ordered_json;

inline Json to_json(const Complex& c) {
    return Json{{"re", c.real()}, {"im", c.imag()}};
}

inline Json to_json(const ZeroReport& r) {
    Json profile = Json::array();
    for (const auto& [multiplicity, count] : r.multiplicity_profile)
        profile.push_back(Json::array({multiplicity, count}));
    return Json{{"target_description", r.target_description},
                {"distinct_count", r.distinct_count},
                {"multiplicity_profile", profile},
                {"numerator_degree", r.numerator_degree},
                {"numerator", to_expression_string(r.numerator)}};
}

inline Json to_json(const FactorProfile& p) {
    return Json{{"distinct_zeros", p.distinct_zeros},
                {"distinct_poles", p.distinct_poles},
                {"zero_multiplicities", p.zero_multiplicities},
                {"pole_multiplicities", p.pole_multiplicities},
                {"base_zero_weight", p.base_zero_weight},
                {"base_pole_weight", p.base_pole_weight},
                {"factor_zero_weights", p.factor_zero_weights},
                {"factor_pole_weights", p.factor_pole_weights}};
}

inline Json to_json(const ShareVerdict& v) {
    return Json{{"shared", v.shared},
                {"zero_set_left", to_expression_string(v.zero_set_left)},
                {"zero_set_right", to_expression_string(v.zero_set_right)}};
}

inline Json to_json(const SpecProfile& p) {
    return Json{{"lower_degree", p.lower_degree},
                {"theta", p.theta},
                {"zalcman_alpha", to_string(p.zalcman_alpha)},
                {"condition_a", p.condition_a},
                {"admissible_meromorphic", p.admissible_meromorphic},
                {"admissible_holomorphic", p.admissible_holomorphic}};
}

inline Json to_json(const ExpImage& image) {
    return Json{{"coefficient", image.coefficient.to_string()},
                {"rate", image.rate.to_string()},
                {"offset_scale", image.offset_scale}};
}

inline Json to_json(const MartyReport& r) {
    Json entries = Json::array();
    for (const MartyEntry& e : r.per_parameter)
        entries.push_back(Json{{"m", e.m},
                               {"max_spherical_derivative", e.max_spherical},
                               {"argmax", to_json(e.argmax)}});
    return Json{{"grid_radius", r.grid_radius},
                {"grid_resolution", r.grid_resolution},
                {"threshold", r.threshold},
                {"per_parameter", entries},
                {"growth_ratio", r.growth_ratio},
                {"non_normal_flag", r.non_normal_flag}};
}

inline Json to_json(const CampaignConfig& c) {
    return Json{{"seed", c.seed},
                {"trials", c.trials},
                {"max_poly_degree", c.max_poly_degree},
                {"max_k", c.max_k},
                {"max_exponent", c.max_exponent},
                {"coefficient_height", c.coefficient_height}};
}

inline Json to_json(const TrialRecord& record) {
    Json j;
    j["trial"] = record.trial;
    for (const auto& [key, value] : record.data) j[key] = value;
    return j;
}

inline Json to_json(const CampaignReport& r) {
    Json violations = Json::array();
    for (const TrialRecord& record : r.violations)
        violations.push_back(to_json(record));
    Json j{{"campaign_name", r.campaign_name},
           {"config", to_json(r.config)},
           {"trials_run", r.trials_run},
           {"violations", violations},
           {"verdict", r.pass ? "pass" : "fail"}};
    if (!r.distinct_count_distribution.empty()) {
        Json histogram;
        for (const auto& [count, occurrences] : r.distinct_count_distribution)
            histogram[std::to_string(count)] = occurrences;
        j["distinct_count_distribution"] = histogram;
    }
    if (r.negative_controls) {
        Json records = Json::array();
        for (const TrialRecord& record : r.control_records)
            records.push_back(to_json(record));
        j["negative_controls"] = Json{{"below_two_count", r.below_two_count},
                                      {"records", records}};
    }
    if (r.campaign_name == "exp-identity")
        j["max_relative_error"] = r.max_relative_error;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

} // namespace diffmon

#endif // DIFFMON_JSON_REPORT_HPP
