#include <doctest.h>

#include "hermet/form.hpp"
#include "hermet/presets.hpp"
#include "oracles.hpp"

using namespace hermet;

namespace {

Form<CoframeConstant> random_const_form(int n, Bidegree deg, Rng& rng, int terms) {
    Form<CoframeConstant> out(n, deg);
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
    for (int t = 0; t < terms; ++t)
        out.add_term(random_index(deg.p), random_index(deg.q),
                     CoframeConstant(rng.complex_in_disk()));
    out.prune();
    return out;
}

} // namespace

TEST_CASE("wedge antisymmetry on basis one-forms") {
    const auto dz1 = Form<CoframeConstant>::monomial(2, {1}, {}, CoframeConstant(1.0));
    const auto dz2 = Form<CoframeConstant>::monomial(2, {2}, {}, CoframeConstant(1.0));
    const auto w12 = wedge(dz1, dz2);
    const auto w21 = wedge(dz2, dz1);
    REQUIRE(w12.terms().size() == 1);
    CHECK(w12.find({1, 2}, {})->value() == cplx(1.0, 0.0));
    CHECK(w21.find({1, 2}, {})->value() == cplx(-1.0, 0.0));
    CHECK(wedge(dz1, dz1).is_zero());
}

TEST_CASE("re-blocking sign of (dz1^dzb1)^(dz2^dzb2)") {
    // moving dzbar_1 past dz2 costs one transposition
    const auto a = Form<CoframeConstant>::monomial(2, {1}, {1}, CoframeConstant(1.0));
    const auto b = Form<CoframeConstant>::monomial(2, {2}, {2}, CoframeConstant(1.0));
    const auto w = wedge(a, b);
    REQUIRE(w.find({1, 2}, {1, 2}) != nullptr);
    CHECK(w.find({1, 2}, {1, 2})->value() == cplx(-1.0, 0.0));

    // the brute-force expansion agrees
    CHECK(oracle::matches_engine(w, oracle::wedge(oracle::from_engine(a), oracle::from_engine(b))));
}

TEST_CASE("wedge matches the brute-force permutation expansion") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = rng.uniform_int(1, 3);
        const Bidegree da{rng.uniform_int(0, n), rng.uniform_int(0, n)};
        const Bidegree db{rng.uniform_int(0, n), rng.uniform_int(0, n)};
        const auto a = random_const_form(n, da, rng, 3);
        const auto b = random_const_form(n, db, rng, 3);
        CAPTURE(trial);
        CHECK(oracle::matches_engine(
            wedge(a, b), oracle::wedge(oracle::from_engine(a), oracle::from_engine(b)), 1e-15));
    }
}

TEST_CASE("graded commutativity and associativity") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = rng.uniform_int(2, 4);
        const auto a = random_const_form(n, {rng.uniform_int(0, 2), rng.uniform_int(0, 2)}, rng, 3);
        const auto b = random_const_form(n, {rng.uniform_int(0, 2), rng.uniform_int(0, 2)}, rng, 3);
        const auto c = random_const_form(n, {rng.uniform_int(0, 1), rng.uniform_int(0, 1)}, rng, 2);
        const int sign = (a.bidegree().total() * b.bidegree().total()) % 2 == 0 ? 1 : -1;
        CHECK(form_residual(wedge(a, b), wedge(b, a).scaled(double(sign))) == 0.0);
        CHECK(form_residual(wedge(wedge(a, b), c), wedge(a, wedge(b, c))) <= 1e-15);
    }
}

TEST_CASE("forms beyond the ambient degree vanish") {
    Rng rng(37);
    const auto a = random_const_form(2, {2, 1}, rng, 2);
    const auto b = random_const_form(2, {1, 2}, rng, 2);
    CHECK(wedge(a, b).is_zero()); // (3,3) on a 2-fold
    CHECK(Form<CoframeConstant>::zero(2, {3, 0}).is_zero());
}

TEST_CASE("conjugation fixes real basis elements and is an involution") {
    const auto re = Form<CoframeConstant>::monomial(2, {1}, {1}, CoframeConstant(cplx(0.0, 1.0)));
    CHECK(conjugate(re) == re);
    CHECK(is_real(re));

    const auto f = Form<CoframeConstant>::monomial(2, {1, 2}, {}, CoframeConstant(1.0));
    const auto cf = conjugate(f);
    CHECK(cf.bidegree() == Bidegree{0, 2});
    REQUIRE(cf.find({}, {1, 2}) != nullptr);

    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_const_form(3, {rng.uniform_int(0, 2), rng.uniform_int(0, 2)}, rng, 3);
        CHECK(conjugate(conjugate(a)) == a);
    }
}

TEST_CASE("reality of the Hermitian pairing") {
    auto f = Form<CoframeConstant>::zero(2, {1, 1});
    f.add_term({1}, {2}, CoframeConstant(cplx(0.0, 1.0)));
    f.add_term({2}, {1}, CoframeConstant(cplx(0.0, 1.0)));
    f.prune();
    CHECK(is_real(f));
    const auto g = Form<CoframeConstant>::monomial(2, {1}, {2}, CoframeConstant(1.0));
    CHECK_FALSE(is_real(g));
    CHECK_THROWS_AS(is_real(Form<CoframeConstant>::monomial(2, {1}, {}, CoframeConstant(1.0))),
                    InvalidInput);
}

TEST_CASE("wedge powers") {
    auto g = Form<CoframeConstant>::zero(2, {1, 1});
    g.add_term({1}, {1}, CoframeConstant(cplx(0.0, 1.0)));
    g.add_term({2}, {2}, CoframeConstant(cplx(0.0, 1.0)));
    g.prune();
    const auto g2 = power(g, 2);
    REQUIRE(g2.find({1, 2}, {1, 2}) != nullptr);
    CHECK(g2.find({1, 2}, {1, 2})->value() == cplx(2.0, 0.0));

    CHECK(power(g, 1) == g);
    CHECK(power(g, 0) == Form<CoframeConstant>::unit(2));

    Rng rng(7);
    const auto h = random_const_form(3, {1, 1}, rng, 4);
    CHECK(form_residual(power(h, 3), wedge(wedge(h, h), h)) == 0.0);

    const auto odd = random_const_form(3, {2, 1}, rng, 2);
    CHECK_THROWS_AS(power(odd, 2), InvalidInput);
    CHECK(power(odd, 1) == odd);
}

TEST_CASE("coefficient table: permuted and repeated lookups") {
    Rng rng(13);
    const auto f = random_const_form(4, {3, 2}, rng, 5);
    FormCoefficientTable<CoframeConstant> table(f);
    for (const auto& [key, c] : f.terms()) {
        // every permutation pair must return the signed stored coefficient
        MultiIndex I = key.first;
        std::vector<std::pair<MultiIndex, int>> i_perms;
        std::sort(I.begin(), I.end());
        do {
            MultiIndex probe = I;
            const int sign = sort_with_sign(probe);
            i_perms.push_back({I, sign});
        } while (std::next_permutation(I.begin(), I.end()));
        for (const auto& [pI, si] : i_perms) {
            MultiIndex J = key.second;
            CHECK(table.lookup(pI, J).value() == double(si) * c.value());
            std::swap(J[0], J[1]);
            CHECK(table.lookup(pI, J).value() == -double(si) * c.value());
        }
    }
    CHECK(table.lookup({1, 1, 2}, {1, 2}).is_zero());
    CHECK_THROWS_AS(table.lookup({1}, {1, 2}), InvalidInput);
}

TEST_CASE("term validation and pruning") {
    Form<CoframeConstant> f(2, {1, 1});
    CHECK_THROWS_AS(f.add_term({1, 2}, {1}, CoframeConstant(1.0)), InvalidInput);
    CHECK_THROWS_AS(f.add_term({0}, {1}, CoframeConstant(1.0)), InvalidInput);
    f.add_term({1}, {1}, CoframeConstant(1.0));
    f.add_term({1}, {1}, CoframeConstant(-1.0));
    f.prune();
    CHECK(f.is_zero());

    // Fourier terms below the relative threshold are dust, not structure
    Form<FourierField> h(2, {1, 1});
    h.add_term({1}, {1}, FourierField::constant(2, 1.0));
    Form<FourierField> dust(2, {1, 1});
    dust.add_term({2}, {2}, FourierField::constant(2, 1e-16));
    auto sum = h + dust;
    CHECK(sum.terms().size() == 1);
    CHECK(sum.find({2}, {2}) == nullptr);

    CHECK_THROWS_AS(wedge(h, Form<FourierField>::unit(3)), BackendMismatch);
}
