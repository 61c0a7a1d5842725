#pragma once

// Dolbeault operators del, delbar, d = del + delbar and u -> i del delbar u.
// Coordinate backends differentiate coefficients exactly; the invariant
// coframe backend distributes d over basis monomials through stored
// structure constants (coefficients are constants, so no coefficient
// derivatives arise).
//
// Sign anchor for the whole toolkit: i del delbar |z_1|^2 = +i dz_1 ^ dzbar_1,
// a positive (1,1)-form. Every other sign follows from the wedge convention.

#include <vector>

#include "hermet/form.hpp"

namespace hermet {

// ---------------------------------------------------------------------------
// Coordinate backends (Fourier, polynomial)
// ---------------------------------------------------------------------------

template <Coefficient K>
    requires coordinate_backend<K>
Form<K> del(const Form<K>& a) {
    const int n = a.dim();
    const Bidegree d = a.bidegree();
    Form<K> out(n, {d.p + 1, d.q});
    if (d.p + 1 > n) return out;
    for (const auto& [key, c] : a.terms()) {
        for (int j = 1; j <= n; ++j) {
            const auto ins = insert_index(key.first, j);
            if (!ins) continue;
            K dc = c.deriv(z_axis(j));
            if (dc.is_zero()) continue;
            if (ins->second < 0) dc = -dc;
            out.add_term(ins->first, key.second, dc);
        }
    }
    out.prune();
    return out;
}

template <Coefficient K>
    requires coordinate_backend<K>
Form<K> delbar(const Form<K>& a) {
    const int n = a.dim();
    const Bidegree d = a.bidegree();
    Form<K> out(n, {d.p, d.q + 1});
    if (d.q + 1 > n) return out;
    const int past_dz = d.p % 2 == 0 ? 1 : -1; // dzbar_j crosses the dz block
    for (const auto& [key, c] : a.terms()) {
        for (int j = 1; j <= n; ++j) {
            const auto ins = insert_index(key.second, j);
            if (!ins) continue;
            K dc = c.deriv(zbar_axis(j));
            if (dc.is_zero()) continue;
            if (past_dz * ins->second < 0) dc = -dc;
            out.add_term(key.first, ins->first, dc);
        }
    }
    out.prune();
    return out;
}

template <Coefficient K>
    requires coordinate_backend<K>
GradedForm<K> exterior_d(const Form<K>& a) {
    GradedForm<K> out(a.dim());
    out.add(del(a));
    out.add(delbar(a));
    return out;
}

template <Coefficient K>
    requires coordinate_backend<K>
GradedForm<K> exterior_d(const GradedForm<K>& a) {
    GradedForm<K> out(a.dim());
    for (const auto& [key, f] : a.parts()) {
        out.add(del(f));
        out.add(delbar(f));
    }
    return out;
}

/// i del delbar u for a real scalar field u; the result is a real (1,1)-form,
/// linear in u, vanishing on constants.
template <Coefficient K>
    requires coordinate_backend<K>
Form<K> i_ddbar(const K& u) {
    if (!u.real_flag()) throw InvalidInput("i_ddbar requires a real scalar field");
    const int n = u.dim();
    return del(delbar(Form<K>::scalar(n, u))).scaled(cplx(0.0, 1.0));
}

// ---------------------------------------------------------------------------
// Invariant coframe backend
// ---------------------------------------------------------------------------

class CoframeCalculus;

/// Exterior derivatives of an invariant coframe phi_1..phi_n, each stored as
/// a degree-2 form in the coframe basis. Construction validates that the
/// induced d squares to zero and that no dphi_m carries a (0,2) component,
/// so that d = del + delbar on every form.
class StructureConstants {
public:
    StructureConstants(int n, std::vector<GradedForm<CoframeConstant>> dphi);

    /// dphi_1 = dphi_2 = 0, dphi_3 = -phi_1 ^ phi_2.
    static StructureConstants iwasawa();

    /// All dphi_m = 0: the coframe of a complex torus in constant algebra.
    static StructureConstants abelian(int n);

    int dim() const { return n_; }
    const GradedForm<CoframeConstant>& dphi(int m) const { return dphi_.at(m - 1); }
    const GradedForm<CoframeConstant>& dphibar(int m) const { return dphibar_.at(m - 1); }

private:
    int n_;
    std::vector<GradedForm<CoframeConstant>> dphi_;
    std::vector<GradedForm<CoframeConstant>> dphibar_;
};

/// Leibniz-extension of the structure-constant d to arbitrary coframe forms.
class CoframeCalculus {
public:
    explicit CoframeCalculus(const StructureConstants& sc) : sc_(&sc) {}

    using F = Form<CoframeConstant>;
    using G = GradedForm<CoframeConstant>;

    G d(const F& a) const {
        const int n = a.dim();
        G out(n);
        for (const auto& [key, c] : a.terms()) {
            const auto& I = key.first;
            const auto& J = key.second;
            const int r = static_cast<int>(I.size() + J.size());
            for (int s = 0; s < r; ++s) {
                const bool in_dzbar = s >= static_cast<int>(I.size());
                const int label = in_dzbar ? J[s - I.size()] : I[s];
                const G& repl = in_dzbar ? sc_->dphibar(label) : sc_->dphi(label);
                if (repl.is_zero()) continue;
                // prefix ^ d(phi_s) ^ suffix with the Leibniz sign (-1)^s
                MultiIndex pre_I, pre_J, suf_I, suf_J;
                if (in_dzbar) {
                    pre_I = I;
                    pre_J.assign(J.begin(), J.begin() + (s - I.size()));
                    suf_J.assign(J.begin() + (s - I.size()) + 1, J.end());
                } else {
                    pre_I.assign(I.begin(), I.begin() + s);
                    suf_I.assign(I.begin() + s + 1, I.end());
                    suf_J = J;
                }
                F prefix = F::monomial(n, pre_I, pre_J,
                                       s % 2 == 0 ? c : -c);
                F suffix = F::monomial(n, suf_I, suf_J, CoframeConstant::one(n));
                out = out + wedge(GradedForm<CoframeConstant>::from(prefix), wedge(repl, suffix));
            }
        }
        return out;
    }

    G d(const G& a) const {
        G out(a.dim());
        for (const auto& [key, f] : a.parts()) out = out + d(f);
        return out;
    }

    F del(const F& a) const {
        const Bidegree deg = a.bidegree();
        return d(a).part({deg.p + 1, deg.q});
    }

    F delbar(const F& a) const {
        const Bidegree deg = a.bidegree();
        return d(a).part({deg.p, deg.q + 1});
    }

private:
    const StructureConstants* sc_;
};

inline StructureConstants::StructureConstants(int n, std::vector<GradedForm<CoframeConstant>> tables)
    : n_(n), dphi_(std::move(tables)) {
    detail::check_complex_dim(n);
    if (static_cast<int>(dphi_.size()) != n)
        throw InvalidInput("expected one dphi per coframe element");
    dphibar_.reserve(dphi_.size());
    for (const auto& g : dphi_) {
        GradedForm<CoframeConstant> bar(n_);
        for (const auto& [key, f] : g.parts()) {
            if (key.first + key.second != 2)
                throw InvalidInput("dphi must have total degree 2");
            if (key.first == 0 && key.second == 2)
                throw InvalidInput("dphi with a (0,2) component: coframe is not complex-integrable");
            bar.add(conjugate(f));
        }
        dphibar_.push_back(std::move(bar));
    }
    CoframeCalculus calc(*this);
    for (int m = 1; m <= n_; ++m) {
        if (!calc.d(dphi(m)).is_zero())
            throw InvalidInput("structure constants violate d^2 = 0 on phi_" + std::to_string(m));
        if (!calc.d(dphibar(m)).is_zero())
            throw InvalidInput("structure constants violate d^2 = 0 on phibar_" + std::to_string(m));
    }
}

inline StructureConstants StructureConstants::iwasawa() {
    const int n = 3;
    std::vector<GradedForm<CoframeConstant>> dphi;
    dphi.emplace_back(n);
    dphi.emplace_back(n);
    dphi.push_back(GradedForm<CoframeConstant>::from(
        Form<CoframeConstant>::monomial(n, {1, 2}, {}, CoframeConstant(-1.0))));
    return StructureConstants(n, std::move(dphi));
}

inline StructureConstants StructureConstants::abelian(int n) {
    std::vector<GradedForm<CoframeConstant>> dphi;
    for (int m = 0; m < n; ++m) dphi.emplace_back(n);
    return StructureConstants(n, std::move(dphi));
}

} // namespace hermet
