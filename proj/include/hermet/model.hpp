#pragma once

// Compact-model bookkeeping: the torus and nilmanifold backends, top-form
// integration, the Stokes validator, and the positivity testers shared by
// everything downstream.
//
// Volume convention, frozen once: the orientation form
//   omega_std = (i dz_1 ^ dzbar_1) ^ ... ^ (i dz_n ^ dzbar_n)
// integrates to 2^n on the unit torus (i dz ^ dzbar = 2 dx ^ dy per axis
// pair) and to 1 on a nilmanifold quotient of unit volume.

#include <optional>
#include <string>
#include <vector>

#include "hermet/calculus.hpp"
#include "hermet/form.hpp"
#include "hermet/linalg.hpp"
#include "hermet/rng.hpp"

namespace hermet {

/// Deterministic evaluation points: a uniform lattice plus seeded random
/// points, identical across runs and thread counts.
struct SamplingSpec {
    int grid_per_axis = 5;
    int random_points = 256;
    std::uint64_t seed = 1234;
};

using SamplePoint = std::vector<double>; // 2n real coordinates in [0,1)

inline std::vector<SamplePoint> sample_points(int n, const SamplingSpec& spec) {
    std::vector<SamplePoint> pts;
    const int axes = 2 * n;
    const int g = std::max(1, spec.grid_per_axis);
    std::size_t total = 1;
    for (int a = 0; a < axes; ++a) total *= static_cast<std::size_t>(g);
    pts.reserve(total + spec.random_points);
    for (std::size_t idx = 0; idx < total; ++idx) {
        SamplePoint p(axes);
        std::size_t rem = idx;
        for (int a = 0; a < axes; ++a) {
            p[a] = double(rem % g) / double(g);
            rem /= g;
        }
        pts.push_back(std::move(p));
    }
    Rng rng(spec.seed);
    for (int i = 0; i < spec.random_points; ++i) {
        SamplePoint p(axes);
        for (int a = 0; a < axes; ++a) p[a] = rng.uniform();
        pts.push_back(std::move(p));
    }
    return pts;
}

/// i^(n^2): the coefficient of omega_std on the basis monomial
/// dz_1..dz_n ^ dzbar_1..dzbar_n after re-blocking.
inline cplx omega_std_coefficient(int n) {
    switch (((n * n) % 4 + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

enum class Positivity { SemiPositive, Indefinite };
enum class WeakPositivity { WeaklyPositive, Rejected };

struct PositivityReport {
    Positivity verdict = Positivity::SemiPositive;
    double min_eigenvalue = 0.0;
    SamplePoint argmin;
};

struct WeakPositivityReport {
    WeakPositivity verdict = WeakPositivity::WeaklyPositive;
    double worst_pairing = 0.0;
    int trial = -1;
    SamplePoint argmin;
    bool exhaustive = false; // true when the form was identically zero
};

/// Scale-relative tolerance for pointwise eigenvalue tests.
inline double psd_tolerance(double pointwise_trace, double form_scale) {
    return 1e-10 * std::abs(pointwise_trace) + 1e-14 * form_scale;
}

namespace detail {

template <class Model, Coefficient K>
Matrix coefficient_matrix_at(const Model& model, const Form<K>& a, const SamplePoint& x) {
    // a = i sum a_{j kbar} dz_j ^ dzbar_k, so a_{j kbar} = -i c_{jk}.
    const int n = model.dim();
    Matrix m(n, n);
    FormCoefficientTable<K> table(a);
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
            m(j - 1, k - 1) = cplx(0.0, -1.0) * model.coefficient_value(table.lookup({j}, {k}), x);
    return m;
}

} // namespace detail

// ---------------------------------------------------------------------------
// TorusModel
// ---------------------------------------------------------------------------

/// The complex torus with unit lattice: 2n real axes, fundamental domain
/// [0,1)^{2n}, coefficients bandlimited Fourier fields.
class TorusModel {
public:
    using Coeff = FourierField;

    explicit TorusModel(int n, SamplingSpec sampling = {}) : n_(n), sampling_(sampling) {
        detail::check_complex_dim(n);
    }

    int dim() const { return n_; }
    const SamplingSpec& sampling() const { return sampling_; }
    void set_sampling(const SamplingSpec& s) { sampling_ = s; }
    std::string kind() const { return "torus"; }

    Form<Coeff> omega_std() const {
        MultiIndex full(n_);
        for (int j = 0; j < n_; ++j) full[j] = j + 1;
        return Form<Coeff>::monomial(n_, full, full,
                                     Coeff::constant(n_, omega_std_coefficient(n_)));
    }

    Form<Coeff> flat_metric_form() const {
        Form<Coeff> g(n_, {1, 1});
        for (int j = 1; j <= n_; ++j)
            g.add_term({j}, {j}, Coeff::constant(n_, cplx(0.0, 1.0)));
        g.prune();
        return g;
    }

    /// Exact integral of a top form: the zero mode of its density times 2^n.
    cplx integrate_top(const Form<Coeff>& a) const {
        check_top(a.bidegree());
        if (a.is_zero()) return 0.0;
        MultiIndex full(n_);
        for (int j = 0; j < n_; ++j) full[j] = j + 1;
        const Coeff* f = a.find(full, full);
        if (!f) return 0.0;
        return f->mean() * std::pow(2.0, n_) / omega_std_coefficient(n_);
    }

    /// Density of a top form against omega_std, as a Fourier field.
    Coeff density(const Form<Coeff>& a) const {
        check_top(a.bidegree());
        MultiIndex full(n_);
        for (int j = 0; j < n_; ++j) full[j] = j + 1;
        const Coeff* f = a.find(full, full);
        if (!f) return Coeff::zero(n_);
        return f->scaled(1.0 / omega_std_coefficient(n_));
    }

    GradedForm<Coeff> d(const Form<Coeff>& a) const { return exterior_d(a); }
    Form<Coeff> del_(const Form<Coeff>& a) const { return del(a); }
    Form<Coeff> delbar_(const Form<Coeff>& a) const { return delbar(a); }
    Form<Coeff> i_ddbar_(const Coeff& u) const { return i_ddbar(u); }

    cplx coefficient_value(const Coeff& c, const SamplePoint& x) const { return c.value_at(x); }

    std::vector<SamplePoint> points() const { return sample_points(n_, sampling_); }

private:
    void check_top(Bidegree d) const {
        if (d.p != n_ || d.q != n_)
            throw InvalidInput("integration requires bidegree (n,n), got " + to_string(d));
    }

    int n_;
    SamplingSpec sampling_;
};

// ---------------------------------------------------------------------------
// NilmanifoldModel
// ---------------------------------------------------------------------------

/// Compact quotient carrying an invariant coframe with the given structure
/// constants; total volume normalized to 1 and all coefficients constant.
class NilmanifoldModel {
public:
    using Coeff = CoframeConstant;

    explicit NilmanifoldModel(StructureConstants sc, SamplingSpec sampling = {})
        : sc_(std::move(sc)), calc_(sc_), sampling_(sampling) {}

    // calc_ aims at this object's own table, so copies and moves rebind it
    NilmanifoldModel(const NilmanifoldModel& o) : sc_(o.sc_), calc_(sc_), sampling_(o.sampling_) {}
    NilmanifoldModel(NilmanifoldModel&& o) noexcept
        : sc_(std::move(o.sc_)), calc_(sc_), sampling_(o.sampling_) {}
    NilmanifoldModel& operator=(const NilmanifoldModel& o) {
        sc_ = o.sc_;
        calc_ = CoframeCalculus(sc_);
        sampling_ = o.sampling_;
        return *this;
    }
    NilmanifoldModel& operator=(NilmanifoldModel&& o) noexcept {
        sc_ = std::move(o.sc_);
        calc_ = CoframeCalculus(sc_);
        sampling_ = o.sampling_;
        return *this;
    }

    int dim() const { return sc_.dim(); }
    const SamplingSpec& sampling() const { return sampling_; }
    const StructureConstants& structure() const { return sc_; }
    std::string kind() const { return "nilmanifold"; }

    Form<Coeff> omega_std() const {
        const int n = dim();
        MultiIndex full(n);
        for (int j = 0; j < n; ++j) full[j] = j + 1;
        return Form<Coeff>::monomial(n, full, full, CoframeConstant(omega_std_coefficient(n)));
    }

    Form<Coeff> flat_metric_form() const {
        const int n = dim();
        Form<Coeff> g(n, {1, 1});
        for (int j = 1; j <= n; ++j) g.add_term({j}, {j}, CoframeConstant(cplx(0.0, 1.0)));
        g.prune();
        return g;
    }

    cplx integrate_top(const Form<Coeff>& a) const {
        const int n = dim();
        if (a.bidegree().p != n || a.bidegree().q != n)
            throw InvalidInput("integration requires bidegree (n,n), got " + to_string(a.bidegree()));
        if (a.is_zero()) return 0.0;
        MultiIndex full(n);
        for (int j = 0; j < n; ++j) full[j] = j + 1;
        const Coeff* f = a.find(full, full);
        if (!f) return 0.0;
        return f->value() / omega_std_coefficient(n);
    }

    Coeff density(const Form<Coeff>& a) const {
        const int n = dim();
        MultiIndex full(n);
        for (int j = 0; j < n; ++j) full[j] = j + 1;
        const Coeff* f = a.find(full, full);
        if (!f) return Coeff::zero(n);
        return f->scaled(1.0 / omega_std_coefficient(n));
    }

    GradedForm<Coeff> d(const Form<Coeff>& a) const { return calc_.d(a); }
    Form<Coeff> del_(const Form<Coeff>& a) const { return calc_.del(a); }
    Form<Coeff> delbar_(const Form<Coeff>& a) const { return calc_.delbar(a); }
    Form<Coeff> i_ddbar_(const Coeff& u) const {
        if (!u.real_flag()) throw InvalidInput("i_ddbar requires a real scalar field");
        return Form<Coeff>::zero(dim(), {1, 1}); // constants have no Hessian
    }

    cplx coefficient_value(const Coeff& c, const SamplePoint&) const { return c.value(); }

    /// Constant coefficients need a single evaluation point.
    std::vector<SamplePoint> points() const { return {SamplePoint(2 * dim(), 0.0)}; }

private:
    StructureConstants sc_;
    CoframeCalculus calc_;
    SamplingSpec sampling_;
};

// ---------------------------------------------------------------------------
// Shared operations
// ---------------------------------------------------------------------------

/// |integral of d(a)| for a (2n-1)-form; vanishes on compact models.
template <class Model>
double stokes_residual(const Model& model, const Form<typename Model::Coeff>& a) {
    const int n = model.dim();
    if (a.bidegree().total() != 2 * n - 1)
        throw InvalidInput("stokes residual requires total degree 2n-1");
    const auto da = model.d(a);
    cplx total = 0.0;
    for (const auto& [key, f] : da.parts())
        if (key.first == n && key.second == n) total += model.integrate_top(f);
    return std::abs(total);
}

/// Pointwise eigenvalue test of a real (1,1)-form through the convention
/// a = i sum a_{j kbar} dz_j ^ dzbar_k. A sound rejector; acceptance is over
/// the deterministic sample set only.
template <class Model>
PositivityReport is_positive_11(const Model& model, const Form<typename Model::Coeff>& a) {
    if (!(a.bidegree() == Bidegree{1, 1}))
        throw InvalidInput("positivity test requires a (1,1)-form");
    if (!is_real(a)) throw InvalidInput("positivity test requires a real form");
    const double scale = a.max_term_norm();
    PositivityReport rep;
    rep.min_eigenvalue = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (const auto& x : model.points()) {
        const Matrix m = detail::coefficient_matrix_at(model, a, x);
        const double lam = hermitian_min_eigenvalue(m);
        if (lam < rep.min_eigenvalue) {
            rep.min_eigenvalue = lam;
            rep.argmin = x;
        }
        if (lam < -psd_tolerance(m.real().trace(), scale)) ok = false;
    }
    rep.verdict = ok ? Positivity::SemiPositive : Positivity::Indefinite;
    return rep;
}

/// Weak positivity of a real (k,k)-form: pair against seeded random simple
/// positive (n-k,n-k)-forms at the sample points. Rejection is sound; a
/// clean pass is statistical evidence, and callers report it as such.
template <class Model>
WeakPositivityReport is_weakly_positive_kk(const Model& model,
                                           const Form<typename Model::Coeff>& a, int trials,
                                           std::uint64_t seed) {
    using K = typename Model::Coeff;
    const int n = model.dim();
    const Bidegree deg = a.bidegree();
    if (deg.p != deg.q) throw InvalidInput("weak positivity requires bidegree (k,k)");
    if (!is_real(a)) throw InvalidInput("weak positivity requires a real form");
    const int k = deg.p;

    WeakPositivityReport rep;
    rep.worst_pairing = std::numeric_limits<double>::infinity();
    if (a.is_zero()) {
        rep.worst_pairing = 0.0;
        rep.exhaustive = true;
        return rep;
    }
    if (k > n) throw InvalidInput("bidegree exceeds the model dimension");

    const auto pts = model.points();
    const double scale = a.max_term_norm();
    Rng rng(seed);
    const int simple_factors = n - k;
    const int effective_trials = simple_factors == 0 ? 1 : trials;
    bool ok = true;
    for (int t = 0; t < effective_trials; ++t) {
        Form<K> pairing = a;
        double sigma_scale = 1.0;
        for (int s = 0; s < simple_factors; ++s) {
            Form<K> sigma(n, {1, 0});
            double nrm = 0.0;
            for (int j = 1; j <= n; ++j) {
                const cplx c = rng.complex_in_disk();
                nrm += std::norm(c);
                sigma.add_term({j}, {}, K::constant(n, c));
            }
            sigma.prune();
            sigma_scale *= nrm;
            pairing = wedge(pairing, wedge(sigma, conjugate(sigma)).scaled(cplx(0.0, 1.0)));
        }
        const K dens = model.density(pairing);
        for (const auto& x : pts) {
            const double v = model.coefficient_value(dens, x).real();
            if (v < rep.worst_pairing) {
                rep.worst_pairing = v;
                rep.trial = t;
                rep.argmin = x;
            }
            if (v < -psd_tolerance(v, scale * std::max(1.0, sigma_scale))) ok = false;
        }
    }
    rep.verdict = ok ? WeakPositivity::WeaklyPositive : WeakPositivity::Rejected;
    return rep;
}

// ---------------------------------------------------------------------------
// HermitianMetric
// ---------------------------------------------------------------------------

/// A positive real (1,1)-form on a model. Construction validates reality,
/// Hermitian symmetry of the coefficient matrix and positive definiteness
/// over the sampling spec.
template <class Model>
class HermitianMetric {
public:
    using Coeff = typename Model::Coeff;
    static constexpr double pd_tol = 1e-8;

    HermitianMetric(const Model& model, Form<Coeff> form)
        : model_(&model), form_(std::move(form)) {
        if (form_.dim() != model.dim()) throw InvalidInput("metric dimension mismatch");
        if (!(form_.bidegree() == Bidegree{1, 1}))
            throw InvalidInput("a Hermitian metric is a (1,1)-form");
        if (!is_real(form_)) throw InvalidInput("metric form is not real");
        min_eigenvalue_ = std::numeric_limits<double>::infinity();
        for (const auto& x : model.points()) {
            const Matrix m = detail::coefficient_matrix_at(model, form_, x);
            const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
            if (herm > 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff()))
                throw InvalidInput("metric coefficient matrix is not Hermitian");
            min_eigenvalue_ = std::min(min_eigenvalue_, hermitian_min_eigenvalue(m));
        }
        if (!(min_eigenvalue_ > pd_tol))
            throw InvalidInput("metric is not positive definite: min eigenvalue " +
                               std::to_string(min_eigenvalue_));
    }

    const Model& model() const { return *model_; }
    const Form<Coeff>& form() const { return form_; }
    double min_eigenvalue() const { return min_eigenvalue_; }

    /// Reference magnitude for scale-relative defect tolerances.
    double scale() const { return std::max(1.0, form_.max_term_norm()); }

private:
    const Model* model_;
    Form<Coeff> form_;
    double min_eigenvalue_ = 0.0;
};

} // namespace hermet
