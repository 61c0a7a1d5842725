#include "hermet/serialize.hpp"

namespace hermet {

json to_json(const cplx& c) { return json::array({c.real(), c.imag()}); }

cplx cplx_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw InvalidInput("complex literal must be a two-element array [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const FourierField& f) {
    json modes = json::array();
    for (const auto& [k, amp] : f.modes()) {
        json m;
        std::vector<int> kv(2 * f.dim());
        for (int a = 0; a < 2 * f.dim(); ++a) kv[a] = k.k[a];
        m["k"] = kv;
        m["amp"] = to_json(amp);
        modes.push_back(std::move(m));
    }
    return json{{"modes", std::move(modes)}};
}

FourierField fourier_from_json(const json& j, int n) {
    if (!j.is_object() || !j.contains("modes"))
        throw InvalidInput("Fourier field literal must be {\"modes\": [...]}");
    FourierField f = FourierField::zero(n);
    for (const auto& m : j.at("modes")) {
        const auto kv = m.at("k").get<std::vector<int>>();
        f = f + FourierField::mode(n, kv, cplx_from_json(m.at("amp")));
    }
    return f;
}

json to_json(const PolyField& f) {
    json terms = json::array();
    for (const auto& [e, c] : f.terms()) {
        json t;
        std::vector<int> ez(f.dim()), ezb(f.dim());
        for (int a = 0; a < f.dim(); ++a) {
            ez[a] = e.z[a];
            ezb[a] = e.zb[a];
        }
        t["z"] = ez;
        t["zbar"] = ezb;
        t["coeff"] = to_json(c);
        terms.push_back(std::move(t));
    }
    return json{{"poly", std::move(terms)}};
}

PolyField poly_from_json(const json& j, int n) {
    if (!j.is_object() || !j.contains("poly"))
        throw InvalidInput("polynomial field literal must be {\"poly\": [...]}");
    PolyField f = PolyField::zero(n);
    for (const auto& t : j.at("poly")) {
        const auto ez = t.at("z").get<std::vector<int>>();
        const auto ezb = t.at("zbar").get<std::vector<int>>();
        if (static_cast<int>(ez.size()) != n || static_cast<int>(ezb.size()) != n)
            throw InvalidInput("polynomial exponent vectors must have length n");
        PolyField mono = PolyField::constant(n, cplx_from_json(t.at("coeff")));
        for (int a = 0; a < n; ++a) {
            for (int r = 0; r < ez[a]; ++r) mono = mono * PolyField::variable(n, a + 1);
            for (int r = 0; r < ezb[a]; ++r) mono = mono * PolyField::covariable(n, a + 1);
        }
        f = f + mono;
    }
    return f;
}

json to_json(const CoframeConstant& c) { return json{{"value", to_json(c.value())}}; }

CoframeConstant coframe_from_json(const json& j) {
    if (!j.is_object() || !j.contains("value"))
        throw InvalidInput("coframe coefficient literal must be {\"value\": [re, im]}");
    return CoframeConstant(cplx_from_json(j.at("value")));
}

namespace {

template <Coefficient K, class FromJson>
Form<K> form_from_json_impl(const json& j, FromJson&& coeff_from) {
    const int n = j.at("n").get<int>();
    const Bidegree deg{j.at("p").get<int>(), j.at("q").get<int>()};
    Form<K> out(n, deg);
    for (const auto& t : j.at("terms")) {
        out.add_term(t.at("dz").get<MultiIndex>(), t.at("dzbar").get<MultiIndex>(),
                     coeff_from(t.at("coeff"), n));
    }
    out.prune();
    return out;
}

} // namespace

Form<FourierField> fourier_form_from_json(const json& j) {
    return form_from_json_impl<FourierField>(
        j, [](const json& c, int n) { return fourier_from_json(c, n); });
}

Form<CoframeConstant> coframe_form_from_json(const json& j) {
    return form_from_json_impl<CoframeConstant>(
        j, [](const json& c, int) { return coframe_from_json(c); });
}

json to_json(const ConditionResult& r) {
    json out;
    out["verdict"] = to_string(r.verdict);
    out["defect"] = r.defect;
    if (!r.per_power.empty()) {
        json pk = json::object();
        for (const auto& [k, d] : r.per_power) pk[std::to_string(k)] = d;
        out["defect_per_power"] = std::move(pk);
    }
    if (!r.note.empty()) out["note"] = r.note;
    if (!r.evidence.empty()) out["evidence"] = r.evidence;
    return out;
}

json to_json(const Witness& w) {
    json out;
    out["u"] = to_json(w.u);
    out["epsilon0"] = w.epsilon0;
    out["gap"] = w.gap;
    if (w.predicted_gap) out["predicted_gap"] = *w.predicted_gap;
    return out;
}

json to_json(const ConditionReport& rep) {
    json conditions = json::object();
    for (const auto& [name, res] : rep.conditions) conditions[name] = to_json(res);
    json out;
    out["conditions"] = std::move(conditions);
    out["consistent"] = rep.consistent;
    if (!rep.inconsistency_note.empty()) out["inconsistency"] = rep.inconsistency_note;
    if (rep.witness) out["witness"] = to_json(*rep.witness);
    return out;
}

json to_json(const ComparisonIntegrals& ci, int n) {
    json out;
    out["grid"] = ci.grid;
    out["lhs"] = ci.lhs;
    out["rhs"] = ci.rhs;
    out["margin"] = ci.margin();
    out["boundary_fraction"] = ci.boundary_fraction;
    out["density_bound"] = ci.density_bound;
    out["allowance"] = ci.allowance(n);
    out["region_fraction"] = ci.region_fraction;
    return out;
}

json to_json(const ThreefoldDecomposition& d) {
    json out;
    out["t0"] = d.t0;
    out["t1"] = d.t1;
    out["t2"] = d.t2;
    out["t3"] = d.t3;
    out["volume"] = d.volume;
    out["t2_by_parts"] = d.t2_by_parts;
    out["residual_t3"] = d.residual_t3;
    out["residual_reassembly"] = d.residual_reassembly;
    out["residual_by_parts"] = d.residual_by_parts;
    out["hessian_semipositive"] = d.hessian_semipositive;
    out["t2_sign_consistent"] = d.t2_sign_consistent;
    return out;
}

json to_json(const TorsionBalance& tb) {
    json out;
    out["identity_residual"] = tb.identity_residual;
    out["torsion_integral"] = tb.torsion_integral;
    out["pluriclosed_integral"] = tb.pluriclosed_integral;
    out["integral_sum"] = tb.integral_sum;
    return out;
}

json to_json(const ExpansionProbe& p) {
    json out;
    out["epsilon0"] = p.epsilon0;
    out["epsilon0_capped"] = p.epsilon0_capped;
    out["epsilons"] = p.epsilons;
    out["volumes"] = p.volumes;
    out["fitted_coeffs"] = p.fitted_coeffs;
    out["fit_residual"] = p.fit_residual;
    return out;
}

} // namespace hermet
