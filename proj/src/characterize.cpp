#include "hermet/characterize.hpp"

#include "hermet/presets.hpp"

namespace hermet {

namespace {

std::vector<int> default_comparison_grids(int n) {
    if (n <= 2) return {16, 24, 32};
    return {6, 8, 10};
}

} // namespace

ConditionReport equivalence_report(const HermitianMetric<TorusModel>& g,
                                   const EquivalenceOptions& opts) {
    ConditionReport rep;
    rep.conditions["i"] = condition_i(g, opts.tol_scale);
    rep.conditions["ii"] = condition_ii(g, opts.tol_scale);
    rep.conditions["iii"] = condition_iii(g, opts.tol_scale);
    rep.conditions["iv"] = condition_iv(g, opts.positivity_trials, opts.seed, opts.tol_scale);

    const auto family = presets::psh_family(g, opts.family_size, opts.family_band, opts.seed);
    rep.conditions["vi"] = condition_vi(g, family, &rep.witness);

    // Sampled pairs, plus the constant-shift pairs derived from a witness:
    // a volume gap makes the sublevel-set inequality fail over the whole
    // fundamental domain, where midpoint integration is exact.
    std::vector<std::pair<PshFunction<TorusModel>, PshFunction<TorusModel>>> pairs;
    const int np = std::min<int>(opts.comparison_pairs, int(family.size()) - 1);
    for (int i = 0; i < np; ++i) pairs.push_back({family[i], family[i + 1]});
    if (rep.witness) {
        const auto& w = *rep.witness;
        const FourierField zero_field = FourierField::zero(g.model().dim());
        const double c = w.u.norm1() + 1.0;
        const PshFunction<TorusModel> psh_zero = certify_psh(g, zero_field);
        if (w.gap > 0.0) {
            pairs.push_back({psh_zero,
                             certify_psh(g, w.u + FourierField::constant(g.model().dim(), c))});
        } else {
            pairs.push_back({certify_psh(g, w.u - FourierField::constant(g.model().dim(), c)),
                             psh_zero});
        }
    }
    const auto grids = opts.comparison_grids.empty() ? default_comparison_grids(g.model().dim())
                                                     : opts.comparison_grids;
    rep.conditions["v"] = condition_v(g, pairs, grids);

    detail::check_consistency(rep);
    return rep;
}

} // namespace hermet
