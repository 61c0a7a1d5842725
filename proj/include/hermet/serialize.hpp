#pragma once

// JSON (de)serialization of field and form literals, with exact round-trip
// of every numeric value, plus the report fragments shared by the scenario
// runner and the test suites.

#include <json.hpp>

#include "hermet/characterize.hpp"

namespace hermet {

using json = nlohmann::json; // std::map-backed: object keys serialize sorted

json to_json(const cplx& c);
cplx cplx_from_json(const json& j);

/// {"modes": [{"k": [...2n ints], "amp": [re, im]}, ...]}
json to_json(const FourierField& f);
FourierField fourier_from_json(const json& j, int n);

/// {"poly": [{"z": [...n], "zbar": [...n], "coeff": [re, im]}, ...]}
json to_json(const PolyField& f);
PolyField poly_from_json(const json& j, int n);

/// {"value": [re, im]}
json to_json(const CoframeConstant& c);
CoframeConstant coframe_from_json(const json& j);

/// {"terms": [{"dz": [...], "dzbar": [...], "coeff": <field>}, ...]}
template <Coefficient K>
json form_to_json(const Form<K>& f) {
    json terms = json::array();
    for (const auto& [key, c] : f.terms()) {
        json t;
        t["dz"] = key.first;
        t["dzbar"] = key.second;
        t["coeff"] = to_json(c);
        terms.push_back(std::move(t));
    }
    json out;
    out["n"] = f.dim();
    out["p"] = f.bidegree().p;
    out["q"] = f.bidegree().q;
    out["terms"] = std::move(terms);
    return out;
}

Form<FourierField> fourier_form_from_json(const json& j);
Form<CoframeConstant> coframe_form_from_json(const json& j);

json to_json(const ConditionResult& r);
json to_json(const Witness& w);
json to_json(const ConditionReport& rep);
json to_json(const ComparisonIntegrals& ci, int n);
json to_json(const ThreefoldDecomposition& d);
json to_json(const TorsionBalance& tb);
json to_json(const ExpansionProbe& p);

} // namespace hermet
