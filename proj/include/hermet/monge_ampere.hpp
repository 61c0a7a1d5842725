#pragma once

// The Monge-Ampere side of the toolkit: admissible perturbations g + i ddbar u,
// total volumes, mixed terms, the epsilon-polynomial expansion with its
// polarization, sublevel-set comparison integrals, and the n = 3 volume
// decomposition.

#include <optional>
#include <vector>

#include "hermet/grid_eval.hpp"
#include "hermet/model.hpp"

namespace hermet {

/// A certified g-plurisubharmonic function: g + i ddbar u >= 0 over the
/// sampling spec, witnessed by the recorded minimum eigenvalue.
template <class Model>
struct PshFunction {
    typename Model::Coeff u;
    double certificate = 0.0;
    const HermitianMetric<Model>* admissible_for = nullptr;
};

template <class Model>
Form<typename Model::Coeff> perturbed(const HermitianMetric<Model>& g,
                                      const typename Model::Coeff& u) {
    if (u.dim() >= 0 && u.dim() != g.model().dim())
        throw BackendMismatch("perturbation field lives on a different model");
    return g.form() + g.model().i_ddbar_(u);
}

template <class Model>
PshFunction<Model> certify_psh(const HermitianMetric<Model>& g, typename Model::Coeff u) {
    const auto pert = perturbed(g, u);
    const auto rep = is_positive_11(g.model(), pert);
    if (rep.verdict != Positivity::SemiPositive)
        throw InvalidInput("function is not g-plurisubharmonic: min eigenvalue " +
                           std::to_string(rep.min_eigenvalue));
    return {std::move(u), rep.min_eigenvalue, &g};
}

struct Epsilon0 {
    double value = 0.0;
    bool capped = false;
};

/// Largest epsilon with both g + i ddbar(+eps u) and g + i ddbar(-eps u)
/// semipositive over the sample set. Computed exactly per sample point from
/// the eigenvalues of the pencil g(x) + s H(x), rather than by a bisection
/// sweep; the two agree to line-search resolution and this form is exact.
template <class Model>
Epsilon0 psh_epsilon0(const HermitianMetric<Model>& g, const typename Model::Coeff& u,
                      double epsilon_max = 1e6) {
    if (!u.real_flag()) throw InvalidInput("psh_epsilon0 requires a real field");
    const auto hess = g.model().i_ddbar_(u);
    double radius = std::numeric_limits<double>::infinity();
    if (!hess.is_zero()) {
        for (const auto& x : g.model().points()) {
            const Matrix a = detail::coefficient_matrix_at(g.model(), g.form(), x);
            const Matrix b = detail::coefficient_matrix_at(g.model(), hess, x);
            radius = std::min(radius, psd_pencil_radius(a, b));
        }
    }
    if (radius > epsilon_max) return {epsilon_max, true};
    return {radius, false};
}

/// Total Monge-Ampere volume of the perturbed metric.
template <class Model>
double ma_volume(const HermitianMetric<Model>& g, const typename Model::Coeff& u) {
    const int n = g.model().dim();
    return g.model().integrate_top(power(perturbed(g, u), n)).real();
}

/// The integral of g^k ^ (i ddbar u)^{n-k}.
template <class Model>
double mixed_term(const HermitianMetric<Model>& g, const typename Model::Coeff& u, int k) {
    const int n = g.model().dim();
    if (k < 0 || k > n) throw InvalidInput("mixed term index outside 0..n");
    const auto a = wedge(power(g.form(), k), power(g.model().i_ddbar_(u), n - k));
    return g.model().integrate_top(a).real();
}

/// The polarized integral g^k ^ i ddbar u_1 ^ ... ^ i ddbar u_{n-k};
/// symmetric and multilinear in the fields, equal to mixed_term when all
/// arguments coincide.
template <class Model>
double polarized_mixed_term(const HermitianMetric<Model>& g,
                            const std::vector<typename Model::Coeff>& us, int k) {
    const int n = g.model().dim();
    if (k < 0 || k > n) throw InvalidInput("mixed term index outside 0..n");
    if (static_cast<int>(us.size()) != n - k)
        throw InvalidInput("polarized mixed term expects n-k fields");
    auto a = power(g.form(), k);
    for (const auto& u : us) a = wedge(a, g.model().i_ddbar_(u));
    return g.model().integrate_top(a).real();
}

struct ExpansionProbe {
    double epsilon0 = 0.0;
    bool epsilon0_capped = false;
    std::vector<double> epsilons;
    std::vector<double> volumes;
    std::vector<double> fitted_coeffs; // c_0..c_n of eps -> volume(g + eps i ddbar u)
    double fit_residual = 0.0;
};

/// Sample eps -> volume(g, eps u) symmetrically inside (-eps0, eps0) and fit
/// a degree-n polynomial. The fitted c_k must match binom(n,k) times the
/// mixed term of order k, which callers verify by direct wedge.
template <class Model>
ExpansionProbe epsilon_expansion(const HermitianMetric<Model>& g,
                                 const typename Model::Coeff& u, int num_eps = 0) {
    const int n = g.model().dim();
    if (num_eps == 0) num_eps = n + 5;
    if (num_eps < n + 3) throw InvalidInput("epsilon expansion needs at least n+3 samples");
    ExpansionProbe probe;
    const auto eps0 = psh_epsilon0(g, u);
    probe.epsilon0 = eps0.value;
    probe.epsilon0_capped = eps0.capped;
    const double reach = 0.9 * std::min(eps0.value, 1e3); // keep capped cases finite
    const int half = (num_eps + 1) / 2;
    for (int j = 1; j <= half; ++j) {
        const double e = reach * double(j) / double(half);
        probe.epsilons.push_back(-e);
        probe.epsilons.push_back(e);
    }
    std::sort(probe.epsilons.begin(), probe.epsilons.end());
    probe.volumes.reserve(probe.epsilons.size());
    for (double e : probe.epsilons)
        probe.volumes.push_back(ma_volume(g, u.scaled(e)));
    const PolyFit fit = fit_polynomial(probe.epsilons, probe.volumes, n);
    probe.fitted_coeffs = fit.coeffs;
    probe.fit_residual = fit.rel_residual;
    if (!(probe.fit_residual <= 1e-9))
        throw Error("epsilon expansion fit residual " + std::to_string(probe.fit_residual) +
                    " exceeds 1e-9: numerical failure");
    return probe;
}

// ---------------------------------------------------------------------------
// Comparison principle integrals (torus only)
// ---------------------------------------------------------------------------

struct ComparisonIntegrals {
    double lhs = 0.0;  // mass of (g + i ddbar v)^n over {u < v}
    double rhs = 0.0;  // mass of (g + i ddbar u)^n over {u < v}
    double boundary_fraction = 0.0;
    double density_bound = 0.0; // max |density_u - density_v| over the grid
    int grid = 0;
    double cell_count = 0.0;
    double region_fraction = 0.0;

    double margin() const { return rhs - lhs; }
    /// Mass that midpoint indicators near {u = v} could misattribute.
    double allowance(int n) const {
        return boundary_fraction * density_bound * std::pow(2.0, n);
    }
};

/// Midpoint-cell integration of both Monge-Ampere densities over the cells
/// whose center satisfies u < v. The fraction of cells within one cell of
/// the interface is returned as the honest error proxy.
inline ComparisonIntegrals comparison_integrals(const HermitianMetric<TorusModel>& g,
                                                const PshFunction<TorusModel>& u,
                                                const PshFunction<TorusModel>& v,
                                                int grid_per_axis) {
    const TorusModel& model = g.model();
    const int n = model.dim();
    const int axes = 2 * n;
    const int N = grid_per_axis;

    ComparisonIntegrals out;
    out.grid = N;

    std::size_t total = 1;
    for (int a = 0; a < axes; ++a) total *= static_cast<std::size_t>(N);
    out.cell_count = double(total);

    // Pass 1: sign of u - v at cell centers.
    std::vector<std::uint8_t> below(total, 0);
    const FourierField w = u.u - v.u;
    std::size_t below_count = 0;
    for_each_grid_value(w, N, [&](std::size_t idx, cplx val) {
        if (val.real() < 0.0) {
            below[idx] = 1;
            ++below_count;
        }
    });
    out.region_fraction = double(below_count) / double(total);

    // Boundary cells: any axis neighbor (with wraparound) on the other side.
    std::vector<std::size_t> stride(axes);
    stride[axes - 1] = 1;
    for (int a = axes - 2; a >= 0; --a) stride[a] = stride[a + 1] * static_cast<std::size_t>(N);
    std::size_t boundary = 0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        bool edge = false;
        for (int a = 0; a < axes && !edge; ++a) {
            const std::size_t coord = (idx / stride[a]) % static_cast<std::size_t>(N);
            const std::size_t up =
                coord + 1 == static_cast<std::size_t>(N) ? idx - coord * stride[a] : idx + stride[a];
            if (below[up] != below[idx]) edge = true;
        }
        if (edge) ++boundary;
    }
    out.boundary_fraction = double(boundary) / double(total);

    // Passes 2-4: masked mass of both densities, and their pointwise gap.
    const double lebesgue_cell = std::pow(2.0, n) / double(total);
    const FourierField dens_u = model.density(power(perturbed(g, u.u), n));
    const FourierField dens_v = model.density(power(perturbed(g, v.u), n));
    double mass_u = 0.0, mass_v = 0.0;
    for_each_grid_value(dens_u, N, [&](std::size_t idx, cplx val) {
        if (below[idx]) mass_u += val.real();
    });
    for_each_grid_value(dens_v, N, [&](std::size_t idx, cplx val) {
        if (below[idx]) mass_v += val.real();
    });
    out.rhs = mass_u * lebesgue_cell;
    out.lhs = mass_v * lebesgue_cell;
    double gap = 0.0;
    for_each_grid_value(dens_u - dens_v, N,
                        [&](std::size_t, cplx val) { gap = std::max(gap, std::abs(val.real())); });
    out.density_bound = gap;
    return out;
}

// ---------------------------------------------------------------------------
// n = 3 decomposition
// ---------------------------------------------------------------------------

struct ThreefoldDecomposition {
    double t0 = 0.0; // integral of g^3
    double t1 = 0.0; // integral of g^2 ^ i ddbar u
    double t2 = 0.0; // integral of g ^ (i ddbar u)^2
    double t3 = 0.0; // integral of (i ddbar u)^3, zero by Stokes
    double volume = 0.0;
    double t2_by_parts = 0.0;        // -integral of i ddbar g ^ i del u ^ delbar u
    double residual_t3 = 0.0;        // |t3|
    double residual_reassembly = 0.0; // |volume - (t0 + 3 t1 + 3 t2 + t3)|, relative
    double residual_by_parts = 0.0;   // |t2 - t2_by_parts|, relative
    bool hessian_semipositive = false; // i ddbar g >= 0 over the weak test
    bool t2_sign_consistent = true;    // hessian_semipositive forces t2 <= slack
};

template <class Model>
ThreefoldDecomposition threefold_decomposition(const HermitianMetric<Model>& g,
                                               const typename Model::Coeff& u,
                                               int weak_trials = 24, std::uint64_t seed = 99) {
    const Model& model = g.model();
    if (model.dim() != 3) throw InvalidInput("threefold decomposition requires n = 3");
    ThreefoldDecomposition d;
    d.t0 = mixed_term(g, u, 3);
    d.t1 = mixed_term(g, u, 2);
    d.t2 = mixed_term(g, u, 1);
    d.t3 = mixed_term(g, u, 0);
    d.volume = ma_volume(g, u);
    const auto i_ddbar_g = model.del_(model.delbar_(g.form())).scaled(cplx(0.0, 1.0));
    const auto u0 = Form<typename Model::Coeff>::scalar(3, u);
    const auto grad_pair =
        wedge(model.del_(u0), model.delbar_(u0)).scaled(cplx(0.0, 1.0));
    d.t2_by_parts = -model.integrate_top(wedge(i_ddbar_g, grad_pair)).real();
    const double vol_scale = std::max({std::abs(d.t0), std::abs(d.volume), 1.0});
    d.residual_t3 = std::abs(d.t3);
    d.residual_reassembly =
        std::abs(d.volume - (d.t0 + 3.0 * d.t1 + 3.0 * d.t2 + d.t3)) / vol_scale;
    // floored relative residual: a t2 below 1% of the volume scale is zero
    // territory where only absolute dust remains
    d.residual_by_parts = std::abs(d.t2 - d.t2_by_parts) /
                          std::max({std::abs(d.t2), std::abs(d.t2_by_parts), 0.01 * vol_scale});
    const auto weak = is_weakly_positive_kk(model, i_ddbar_g, weak_trials, seed);
    d.hessian_semipositive = weak.verdict == WeakPositivity::WeaklyPositive;
    d.t2_sign_consistent = !d.hessian_semipositive || d.t2 <= 1e-10 * vol_scale;
    return d;
}

} // namespace hermet
