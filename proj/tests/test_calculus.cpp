#include <doctest.h>

#include "hermet/calculus.hpp"
#include "hermet/presets.hpp"

using namespace hermet;

TEST_CASE("i_ddbar of |z|^2 is the positive unit (1,1)-form") {
    const PolyField u = PolyField::variable(2, 1) * PolyField::covariable(2, 1);
    const auto h = i_ddbar(u);
    CHECK(h.bidegree() == Bidegree{1, 1});
    REQUIRE(h.find({1}, {1}) != nullptr);
    CHECK(*h.find({1}, {1}) == PolyField::constant(2, cplx(0.0, 1.0)));
    CHECK(is_real(h));

    const PolyField mixed = PolyField::variable(2, 1) * PolyField::covariable(2, 2) +
                            PolyField::variable(2, 2) * PolyField::covariable(2, 1);
    const auto hm = i_ddbar(mixed);
    CHECK(*hm.find({1}, {2}) == PolyField::constant(2, cplx(0.0, 1.0)));
    CHECK(is_real(hm));
}

TEST_CASE("i_ddbar rejects non-real fields and kills constants") {
    CHECK_THROWS_AS(i_ddbar(PolyField::variable(2, 1)), InvalidInput);
    CHECK(i_ddbar(FourierField::constant(2, 5.0)).is_zero());
    Rng rng(2);
    const auto u = presets::random_real_field(2, rng, 2, 4);
    CHECK(is_real(i_ddbar(u)));
}

TEST_CASE("operator identities on random Fourier forms") {
    TorusModel t3(3);
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = presets::random_form(t3, {rng.uniform_int(0, 2), rng.uniform_int(0, 2)},
                                            rng, 2, 3);
        const double scale = std::max(1.0, a.max_term_norm());
        CHECK(del(del(a)).max_term_norm() <= 1e-12 * scale);
        CHECK(delbar(delbar(a)).max_term_norm() <= 1e-12 * scale);
        const auto anticomm = del(delbar(a)) + delbar(del(a));
        CHECK(anticomm.max_term_norm() <= 1e-12 * scale);
        CHECK(form_residual(conjugate(del(a)), delbar(conjugate(a))) <= 1e-12 * scale);
        CHECK(graded_residual(exterior_d(exterior_d(a)), GradedForm<FourierField>(3)) <=
              1e-12 * scale);
    }
}

TEST_CASE("Leibniz rule with Koszul signs") {
    TorusModel t3(3);
    Rng rng(78);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = presets::random_form(t3, {1, rng.uniform_int(0, 1)}, rng, 2, 2);
        const auto b = presets::random_form(t3, {rng.uniform_int(0, 1), 1}, rng, 2, 2);
        const int sign = a.bidegree().total() % 2 == 0 ? 1 : -1;
        const auto lhs = exterior_d(wedge(a, b));
        const auto rhs = wedge(exterior_d(a), b) + wedge(a, exterior_d(b)).scaled(double(sign));
        CHECK(graded_residual(lhs, rhs) <=
              1e-12 * std::max(1.0, a.max_term_norm() * b.max_term_norm()));
    }
}

TEST_CASE("d of a constant vanishes") {
    const auto c = Form<FourierField>::scalar(2, FourierField::constant(2, cplx(2.0, -1.0)));
    CHECK(exterior_d(c).is_zero());
}

TEST_CASE("iwasawa structure constants") {
    const auto sc = StructureConstants::iwasawa();
    CoframeCalculus calc(sc);
    const auto phi3 = Form<CoframeConstant>::monomial(3, {3}, {}, CoframeConstant(1.0));
    const auto d3 = calc.del(phi3);
    REQUIRE(d3.find({1, 2}, {}) != nullptr);
    CHECK(d3.find({1, 2}, {})->value() == cplx(-1.0, 0.0));
    CHECK(calc.delbar(phi3).is_zero());
    CHECK(calc.del(Form<CoframeConstant>::monomial(3, {1}, {}, CoframeConstant(1.0))).is_zero());

    // conjugate coframe element picks up the conjugated table
    const auto phib3 = Form<CoframeConstant>::monomial(3, {}, {3}, CoframeConstant(1.0));
    const auto db3 = calc.delbar(phib3);
    REQUIRE(db3.find({}, {1, 2}) != nullptr);
    CHECK(db3.find({}, {1, 2})->value() == cplx(-1.0, 0.0));
}

TEST_CASE("coframe d is a differential and obeys Leibniz") {
    const auto sc = StructureConstants::iwasawa();
    CoframeCalculus calc(sc);
    Rng rng(9);
    auto random_coframe_form = [&](Bidegree deg) {
        Form<CoframeConstant> out(3, deg);
        auto idx = [&](int len) {
            MultiIndex mi;
            while (static_cast<int>(mi.size()) < len) {
                const int v = rng.uniform_int(1, 3);
                if (std::find(mi.begin(), mi.end(), v) == mi.end()) mi.push_back(v);
            }
            std::sort(mi.begin(), mi.end());
            return mi;
        };
        for (int t = 0; t < 3; ++t)
            out.add_term(idx(deg.p), idx(deg.q), CoframeConstant(rng.complex_in_disk()));
        out.prune();
        return out;
    };
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_coframe_form({rng.uniform_int(0, 2), rng.uniform_int(0, 2)});
        CHECK(calc.d(calc.d(a)).max_term_norm() <= 1e-14 * std::max(1.0, a.max_term_norm()));
        const auto b = random_coframe_form({rng.uniform_int(0, 1), rng.uniform_int(0, 1)});
        const int sign = a.bidegree().total() % 2 == 0 ? 1 : -1;
        const auto lhs = calc.d(wedge(a, b));
        const auto rhs = wedge(calc.d(a), b) + wedge(GradedForm<CoframeConstant>::from(a),
                                                     calc.d(b).scaled(double(sign)));
        CHECK(graded_residual(lhs, rhs) <= 1e-14 * std::max(1.0, a.max_term_norm()));
        // del/delbar split reassembles d
        const auto dd = calc.d(a);
        const Bidegree deg = a.bidegree();
        const auto split = GradedForm<CoframeConstant>::from(calc.del(a)) +
                           GradedForm<CoframeConstant>::from(calc.delbar(a));
        CHECK(graded_residual(dd, split) == 0.0);
        (void)deg;
    }
}

TEST_CASE("corrupted structure tables are rejected") {
    // d(phi_2) = phi_3 ^ phibar_1 breaks d^2 = 0 through d(phi_3)
    std::vector<GradedForm<CoframeConstant>> tables;
    tables.emplace_back(3);
    tables.push_back(GradedForm<CoframeConstant>::from(
        Form<CoframeConstant>::monomial(3, {3}, {1}, CoframeConstant(1.0))));
    tables.push_back(GradedForm<CoframeConstant>::from(
        Form<CoframeConstant>::monomial(3, {1, 2}, {}, CoframeConstant(-1.0))));
    CHECK_THROWS_AS(StructureConstants(3, std::move(tables)), InvalidInput);

    // a (0,2) component makes the coframe non-integrable
    std::vector<GradedForm<CoframeConstant>> bad;
    bad.emplace_back(3);
    bad.emplace_back(3);
    bad.push_back(GradedForm<CoframeConstant>::from(
        Form<CoframeConstant>::monomial(3, {}, {1, 2}, CoframeConstant(1.0))));
    CHECK_THROWS_AS(StructureConstants(3, std::move(bad)), InvalidInput);
}
