#pragma once

// Shipped models and metric presets spanning the HOLDS and FAILS regimes of
// every condition, plus the seeded generators behind sampled families.

#include "hermet/characterize.hpp"

namespace hermet::presets {

/// i sum dz_j ^ dzbar_j: flat, Kahler, every condition holds exactly.
Form<FourierField> flat(const TorusModel& model);

/// (1 + a cos 2 pi x_1) times the flat metric: positive for |a| < 1 and not
/// Gauduchon; condition iii fails with an order-a defect.
Form<FourierField> conformal(const TorusModel& model, double amplitude = 0.5);

/// g_0 + i ddbar rho for a seeded random profile rho, scaled until positive:
/// d-closed, so condition iii holds exactly.
Form<FourierField> kahler_perturbed(const TorusModel& model, std::uint64_t seed = 7,
                                    int band = 2, double fraction = 0.5);

/// Surface preset with i ddbar g = 0 but dg != 0: Gauduchon, not Kahler.
Form<FourierField> gauduchon_surface(const TorusModel& model, double amplitude = 0.3);

/// i sum phi_j ^ phibar_j on the Iwasawa structure constants; i ddbar g has
/// a single nonvanishing component, so condition iii fails exactly.
Form<CoframeConstant> iwasawa_standard(const NilmanifoldModel& model);

/// Seeded random positive perturbation of the flat metric.
Form<FourierField> random_metric(const TorusModel& model, Rng& rng, int band = 1,
                                 double amplitude = 0.6);

/// Seeded random constant-coefficient metric on a coframe model.
Form<CoframeConstant> random_coframe_metric(const NilmanifoldModel& model, Rng& rng,
                                            double amplitude = 0.5);

/// Zero-mean real field with `num_modes` seeded harmonics of bandwidth
/// <= band per real axis.
FourierField random_real_field(int n, Rng& rng, int band, int num_modes,
                               double amplitude = 0.5);

/// Random (p,q)-form with sparse Fourier coefficients; test fodder.
Form<FourierField> random_form(const TorusModel& model, Bidegree deg, Rng& rng, int band,
                               int terms, int modes_per_coeff = 2);

/// Seeded admissible perturbations scaled to `fraction` of their own
/// admissibility radius.
std::vector<PshFunction<TorusModel>> psh_family(const HermitianMetric<TorusModel>& g,
                                                int count, int band, std::uint64_t seed,
                                                double fraction = 0.8);

} // namespace hermet::presets
