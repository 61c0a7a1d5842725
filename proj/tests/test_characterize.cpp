#include <doctest.h>

#include "hermet/presets.hpp"
#include "oracles.hpp"

using namespace hermet;

TEST_CASE("exact conditions on the shipped presets") {
    TorusModel t2(2);
    HermitianMetric<TorusModel> flat(t2, presets::flat(t2));
    CHECK(condition_i(flat).verdict == Verdict::Holds);
    CHECK(condition_ii(flat).verdict == Verdict::Holds);
    CHECK(condition_iii(flat).verdict == Verdict::Holds);
    CHECK(condition_iii(flat).defect == 0.0);

    HermitianMetric<TorusModel> kp(t2, presets::kahler_perturbed(t2));
    CHECK(condition_iii(kp).verdict == Verdict::Holds);

    HermitianMetric<TorusModel> gd(t2, presets::gauduchon_surface(t2));
    CHECK(condition_iii(gd).verdict == Verdict::Holds);
    CHECK_FALSE(exterior_d(gd.form()).is_zero()); // Gauduchon yet non-Kahler

    HermitianMetric<TorusModel> conf(t2, presets::conformal(t2, 0.5));
    const auto c3 = condition_iii(conf);
    CHECK(c3.verdict == Verdict::Fails);
    // the single-cosine conformal factor has an exactly computable defect
    const double pi2 = std::numbers::pi * std::numbers::pi;
    CHECK(c3.defect == doctest::Approx(0.5 * pi2).epsilon(1e-12));

    // hand-expansion oracle: with g = (1 + a cos 2 pi x_1) g_0 the (2,2) form
    // i ddbar g carries the Hessian of the conformal factor, two modes of
    // amplitude -a pi^2 / 2 on the key ({1,2},{1,2})
    TorusModel t3(3);
    HermitianMetric<TorusModel> conf3(t3, presets::conformal(t3, 0.5));
    const auto hess = i_ddbar_form(t3, conf3.form());
    const auto* c = hess.find({1, 2}, {1, 2});
    REQUIRE(c != nullptr);
    REQUIRE(c->modes().size() == 2);
    CHECK(std::abs(c->modes()[0].second - cplx(-0.25 * pi2, 0.0)) <= 1e-12);
    CHECK(std::abs(c->modes()[1].second - cplx(-0.25 * pi2, 0.0)) <= 1e-12);
}

TEST_CASE("conformal threefolds fail at every power") {
    TorusModel t3(3);
    HermitianMetric<TorusModel> conf(t3, presets::conformal(t3, 0.5));
    const auto c3 = condition_iii(conf);
    CHECK(c3.verdict == Verdict::Fails);
    REQUIRE(c3.per_power.size() == 2);
    CHECK(c3.per_power[0].second > 1e-3);
    CHECK(c3.per_power[1].second > 1e-3);
}

TEST_CASE("the bridge identity i ddbar g^2 = 2(g ^ i ddbar g + i del g ^ delbar g)") {
    TorusModel t3(3);
    Rng rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        HermitianMetric<TorusModel> g(t3, presets::random_metric(t3, rng));
        const auto lhs = i_ddbar_form(t3, power(g.form(), 2));
        const auto rhs = (wedge(g.form(), i_ddbar_form(t3, g.form())) +
                          torsion_form(t3, g.form()))
                             .scaled(2.0);
        const double scale = std::max(1.0, std::pow(g.form().max_term_norm(), 2)) * 40.0;
        CHECK(form_residual(lhs, rhs) <= 1e-13 * scale);

        // a deliberate sign error must break it
        const auto wrong = (wedge(g.form(), i_ddbar_form(t3, g.form())) -
                            torsion_form(t3, g.form()))
                               .scaled(2.0);
        if (!torsion_form(t3, g.form()).is_zero())
            CHECK(form_residual(lhs, wrong) > 1e-6);
    }
    // exact on the coframe backend
    NilmanifoldModel nil(StructureConstants::iwasawa());
    HermitianMetric<NilmanifoldModel> gi(nil, presets::iwasawa_standard(nil));
    const auto lhs = i_ddbar_form(nil, power(gi.form(), 2));
    const auto rhs = (wedge(gi.form(), i_ddbar_form(nil, gi.form())) +
                      torsion_form(nil, gi.form()))
                         .scaled(2.0);
    CHECK(form_residual(lhs, rhs) <= 1e-14);
}

TEST_CASE("chart extraction is the exact inverse of coefficient storage") {
    // single-term: complement pair picks out the lone coefficient
    Form<PolyField> f(3, {2, 2});
    f.add_term({1, 2}, {1, 2}, PolyField::constant(3, cplx(0.0, 1.0)));
    f.prune();
    const auto table = extract_coefficient_table(f);
    CHECK(table.at({{1, 2}, {1, 2}}) == PolyField::constant(3, cplx(0.0, 1.0)));
    CHECK(table.at({{1, 3}, {1, 2}}).is_zero());

    // random sparse forms, n = 4, both k = 1 and k = 2
    Rng rng(62);
    for (const int kp1 : {2, 3}) {
        Form<PolyField> g(4, {kp1, kp1});
        for (int t = 0; t < 5; ++t) {
            MultiIndex I, J;
            while (static_cast<int>(I.size()) < kp1) {
                const int v = rng.uniform_int(1, 4);
                if (std::find(I.begin(), I.end(), v) == I.end()) I.push_back(v);
            }
            while (static_cast<int>(J.size()) < kp1) {
                const int v = rng.uniform_int(1, 4);
                if (std::find(J.begin(), J.end(), v) == J.end()) J.push_back(v);
            }
            std::sort(I.begin(), I.end());
            std::sort(J.begin(), J.end());
            PolyField c = PolyField::constant(4, rng.complex_in_disk());
            c = c + PolyField::variable(4, rng.uniform_int(1, 4)).scaled(rng.complex_in_disk());
            g.add_term(I, J, c);
        }
        g.prune();
        const auto tab = extract_coefficient_table(g);
        FormCoefficientTable<PolyField> direct(g);
        for (const auto& [key, value] : tab)
            CHECK(value == direct.lookup(key.first, key.second));
    }

    // zero form extracts an all-zero table
    const auto zt = extract_coefficient_table(Form<PolyField>::zero(3, {2, 2}));
    for (const auto& [key, value] : zt) CHECK(value.is_zero());

    CHECK_THROWS_AS(extract_coefficient_table(Form<PolyField>::zero(2, {3, 3})), InvalidInput);
}

TEST_CASE("witness search on surfaces follows the double-Stokes identity") {
    TorusModel t2(2);
    HermitianMetric<TorusModel> flat(t2, presets::flat(t2));
    CHECK_FALSE(witness_search(flat).witness.has_value());

    HermitianMetric<TorusModel> conf(t2, presets::conformal(t2, 0.5));
    const auto res = witness_search(conf);
    REQUIRE(res.witness.has_value());
    const auto& w = *res.witness;
    CHECK(std::abs(w.gap) > 1e-6);
    REQUIRE(w.predicted_gap.has_value());
    CHECK(std::abs(w.gap - *w.predicted_gap) <= 1e-9 * std::abs(w.gap));

    // the witness is admissible by construction
    CHECK(is_positive_11(t2, perturbed(conf, w.u)).verdict == Positivity::SemiPositive);
}

TEST_CASE("witness search on threefolds through the expansion route") {
    TorusModel t3(3);
    HermitianMetric<TorusModel> conf(t3, presets::conformal(t3, 0.5));
    const auto res = witness_search(conf);
    REQUIRE(res.witness.has_value());
    CHECK(std::abs(res.witness->gap) > 1e-6);
}

TEST_CASE("torsion balance identity, random and homogeneous") {
    TorusModel t3(3);
    Rng rng(63);
    for (int trial = 0; trial < 5; ++trial) {
        HermitianMetric<TorusModel> g(t3, presets::random_metric(t3, rng));
        const auto tb = torsion_balance(g);
        const double scale = std::max(1.0, std::pow(g.scale(), 2)) * 40.0;
        CHECK(tb.identity_residual <= 1e-12 * scale);
        CHECK(std::abs(tb.integral_sum) <= 1e-12 * scale);
    }
    NilmanifoldModel nil(StructureConstants::iwasawa());
    HermitianMetric<NilmanifoldModel> gi(nil, presets::iwasawa_standard(nil));
    const auto tb = torsion_balance(gi);
    CHECK(tb.identity_residual <= 1e-14);
    CHECK(tb.torsion_integral == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(tb.pluriclosed_integral == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(tb.integral_sum) <= 1e-14);

    TorusModel t2(2);
    HermitianMetric<TorusModel> g2(t2, presets::flat(t2));
    CHECK_THROWS_AS(torsion_balance(g2), InvalidInput);
}

TEST_CASE("products preserve and propagate the exact conditions") {
    TorusModel t2(2), t1(1);
    HermitianMetric<TorusModel> flat1(t1, presets::flat(t1));

    // flat x flat stays flat
    HermitianMetric<TorusModel> flat2(t2, presets::flat(t2));
    const auto prod_ff = product_model(t2, t1);
    HermitianMetric<TorusModel> gff(prod_ff, product_metric_form(prod_ff, flat2, flat1));
    CHECK(condition_iii(gff).verdict == Verdict::Holds);

    // Gauduchon non-Kahler surface x flat line: still holds on the 3-fold
    HermitianMetric<TorusModel> gd(t2, presets::gauduchon_surface(t2));
    const auto prod_gf = product_model(t2, t1);
    HermitianMetric<TorusModel> ggf(prod_gf, product_metric_form(prod_gf, gd, flat1));
    CHECK(condition_iii(ggf).verdict == Verdict::Holds);

    // conformal x flat: the defect survives pullback
    HermitianMetric<TorusModel> conf(t2, presets::conformal(t2, 0.5));
    const auto prod_cf = product_model(t2, t1);
    HermitianMetric<TorusModel> gcf(prod_cf, product_metric_form(prod_cf, conf, flat1));
    const auto c3 = condition_iii(gcf);
    CHECK(c3.verdict == Verdict::Fails);
    CHECK(c3.per_power[0].second ==
          doctest::Approx(condition_iii(conf).defect).epsilon(1e-12));
}

TEST_CASE("equivalence reports are internally consistent") {
    TorusModel t2(2);
    EquivalenceOptions opts;
    opts.family_size = 4;
    opts.comparison_pairs = 2;

    HermitianMetric<TorusModel> flat(t2, presets::flat(t2));
    const auto rep_flat = equivalence_report(flat, opts);
    CHECK(rep_flat.consistent);
    CHECK(rep_flat.conditions.at("i").verdict == Verdict::Holds);
    CHECK(rep_flat.conditions.at("vi").verdict == Verdict::Holds);
    CHECK_FALSE(rep_flat.witness.has_value());

    HermitianMetric<TorusModel> conf(t2, presets::conformal(t2, 0.5));
    const auto rep_conf = equivalence_report(conf, opts);
    CHECK(rep_conf.consistent);
    for (const char* c : {"i", "ii", "iii", "iv", "v", "vi"})
        CHECK(rep_conf.conditions.at(c).verdict == Verdict::Fails);
    REQUIRE(rep_conf.witness.has_value());

    NilmanifoldModel nil(StructureConstants::iwasawa());
    HermitianMetric<NilmanifoldModel> gi(nil, presets::iwasawa_standard(nil));
    const auto rep_iwa = equivalence_report(gi);
    CHECK(rep_iwa.consistent);
    CHECK(rep_iwa.conditions.at("iii").verdict == Verdict::Fails);
    CHECK(rep_iwa.conditions.at("iv").verdict == Verdict::Fails);
    CHECK(rep_iwa.conditions.at("v").verdict == Verdict::Undecided);
    CHECK(rep_iwa.conditions.at("vi").verdict == Verdict::Undecided);
}
