#include "hermet/presets.hpp"

namespace hermet::presets {

Form<FourierField> flat(const TorusModel& model) { return model.flat_metric_form(); }

Form<FourierField> conformal(const TorusModel& model, double amplitude) {
    if (std::abs(amplitude) >= 1.0)
        throw InvalidInput("conformal amplitude must satisfy |a| < 1 for positivity");
    const int n = model.dim();
    std::vector<int> k(2 * n, 0);
    k[0] = 1; // the x_1 axis
    const FourierField factor =
        FourierField::one(n) + FourierField::cosine(n, k, amplitude);
    return model.flat_metric_form().scaled_by(factor);
}

Form<FourierField> kahler_perturbed(const TorusModel& model, std::uint64_t seed, int band,
                                    double fraction) {
    const int n = model.dim();
    Rng rng(seed);
    const FourierField rho = random_real_field(n, rng, band, 3 + n);
    const HermitianMetric<TorusModel> g0(model, flat(model));
    const auto eps0 = psh_epsilon0(g0, rho);
    return flat(model) + i_ddbar(rho.scaled(fraction * eps0.value));
}

Form<FourierField> gauduchon_surface(const TorusModel& model, double amplitude) {
    if (model.dim() != 2) throw InvalidInput("the Gauduchon surface preset lives on a 2-torus");
    if (std::abs(amplitude) >= 1.0) throw InvalidInput("off-diagonal amplitude must be < 1");
    // f depends on the z_2 axes only, so every second derivative entering
    // i ddbar of the off-diagonal block vanishes identically while dg != 0.
    std::vector<int> k = {0, 0, 1, 0}; // the x_2 axis
    const FourierField f = FourierField::cosine(2, k, amplitude);
    Form<FourierField> g = flat(model);
    g.add_term({1}, {2}, f.scaled(cplx(0.0, 1.0)));
    g.add_term({2}, {1}, f.scaled(cplx(0.0, 1.0)));
    g.prune();
    return g;
}

Form<CoframeConstant> iwasawa_standard(const NilmanifoldModel& model) {
    return model.flat_metric_form();
}

Form<FourierField> random_metric(const TorusModel& model, Rng& rng, int band,
                                 double amplitude) {
    const int n = model.dim();
    Form<FourierField> pert(n, {1, 1});
    for (int j = 1; j <= n; ++j) {
        const FourierField diag = random_real_field(n, rng, band, 2, amplitude);
        pert.add_term({j}, {j}, diag.scaled(cplx(0.0, 1.0)));
        for (int k = j + 1; k <= n; ++k) {
            FourierField off = FourierField::zero(n);
            for (int m = 0; m < 2; ++m) {
                std::vector<int> freq(2 * n, 0);
                bool nonzero = false;
                for (int a = 0; a < 2 * n; ++a) {
                    freq[a] = rng.uniform_int(-band, band);
                    nonzero = nonzero || freq[a] != 0;
                }
                if (!nonzero) freq[0] = 1;
                off = off + FourierField::mode(n, freq, rng.complex_in_disk(amplitude / 2.0));
            }
            // Hermitian pairing: a_{k jbar} = conj(a_{j kbar})
            pert.add_term({j}, {k}, off.scaled(cplx(0.0, 1.0)));
            pert.add_term({k}, {j}, off.conjugated().scaled(cplx(0.0, 1.0)));
        }
    }
    pert.prune();

    // Shrink the perturbation until the metric stays uniformly positive.
    double radius = std::numeric_limits<double>::infinity();
    const auto g0 = flat(model);
    if (!pert.is_zero()) {
        for (const auto& x : model.points()) {
            const Matrix a = detail::coefficient_matrix_at(model, g0, x);
            const Matrix b = detail::coefficient_matrix_at(model, pert, x);
            radius = std::min(radius, psd_pencil_radius(a, b));
        }
    }
    const double s = std::min(1.0, 0.8 * radius);
    return g0 + pert.scaled(s);
}

Form<CoframeConstant> random_coframe_metric(const NilmanifoldModel& model, Rng& rng,
                                            double amplitude) {
    const int n = model.dim();
    Matrix h(n, n);
    for (int j = 0; j < n; ++j) {
        h(j, j) = rng.uniform(-1.0, 1.0);
        for (int k = j + 1; k < n; ++k) {
            h(j, k) = rng.complex_in_disk();
            h(k, j) = std::conj(h(j, k));
        }
    }
    const double s = amplitude / std::max(1.0, h.norm());
    Form<CoframeConstant> g(n, {1, 1});
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
            const cplx a = (j == k ? 1.0 : 0.0) + s * h(j - 1, k - 1);
            g.add_term({j}, {k}, CoframeConstant(cplx(0.0, 1.0) * a));
        }
    g.prune();
    return g;
}

FourierField random_real_field(int n, Rng& rng, int band, int num_modes, double amplitude) {
    FourierField f = FourierField::zero(n);
    for (int m = 0; m < num_modes; ++m) {
        std::vector<int> k(2 * n, 0);
        bool nonzero = false;
        for (int a = 0; a < 2 * n; ++a) {
            k[a] = rng.uniform_int(-band, band);
            nonzero = nonzero || k[a] != 0;
        }
        if (!nonzero) k[rng.uniform_int(0, 2 * n - 1)] = 1;
        f = f + FourierField::harmonic(n, k, rng.complex_in_disk(amplitude / 2.0));
    }
    return f;
}

Form<FourierField> random_form(const TorusModel& model, Bidegree deg, Rng& rng, int band,
                               int terms, int modes_per_coeff) {
    const int n = model.dim();
    Form<FourierField> out(n, deg);
    if (deg.p > n || deg.q > n) return out;
    auto random_index = [&](int len) {
        MultiIndex mi;
        while (static_cast<int>(mi.size()) < len) {
            const int v = rng.uniform_int(1, n);
            if (std::find(mi.begin(), mi.end(), v) == mi.end()) mi.push_back(v);
        }
        std::sort(mi.begin(), mi.end());
        return mi;
    };
    for (int t = 0; t < terms; ++t) {
        FourierField c = FourierField::zero(n);
        for (int m = 0; m < modes_per_coeff; ++m) {
            std::vector<int> k(2 * n, 0);
            for (int a = 0; a < 2 * n; ++a) k[a] = rng.uniform_int(-band, band);
            c = c + FourierField::mode(n, k, rng.complex_in_disk());
        }
        out.add_term(random_index(deg.p), random_index(deg.q), c);
    }
    out.prune();
    return out;
}

std::vector<PshFunction<TorusModel>> psh_family(const HermitianMetric<TorusModel>& g, int count,
                                                int band, std::uint64_t seed, double fraction) {
    std::vector<PshFunction<TorusModel>> family;
    family.reserve(count);
    Rng rng(seed);
    const int n = g.model().dim();
    for (int i = 0; i < count; ++i) {
        const FourierField raw = random_real_field(n, rng, band, 3 + n);
        const auto eps0 = psh_epsilon0(g, raw);
        family.push_back(certify_psh(g, raw.scaled(fraction * eps0.value)));
    }
    return family;
}

} // namespace hermet::presets
