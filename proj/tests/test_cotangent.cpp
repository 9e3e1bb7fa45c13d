#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fns/cotangent.hpp"

using namespace fns;

namespace {
Polynomial one(const ChartPtr& chart) { return Polynomial::constant(chart, Rational(1)); }
} // namespace

TEST_CASE("canonical structures on the cotangent chart") {
    auto cot = Chart::cotangent(Chart::base_of_dim(2));
    auto can = canonical_structures(cot);
    CHECK(can.liouville.to_string() == "p1 * dq1 + p2 * dq2");
    CHECK(can.symplectic == -exterior_d(can.liouville));
    CHECK(can.symplectic.to_string() == "dq1^dp1 + dq2^dp2");
    // the canonical bracket convention: {q1, p1} = -1
    auto q1 = Polynomial::variable(cot, 0);
    auto p1 = Polynomial::variable(cot, 2);
    auto p2 = Polynomial::variable(cot, 3);
    CHECK(poisson_fn(can.rho, q1, p1) == -one(cot));
    CHECK(poisson_fn(can.rho, p1, q1) == one(cot));
    CHECK(poisson_fn(can.rho, p1, p2).is_zero());
}

TEST_CASE("poisson bivector validation") {
    auto cot = Chart::cotangent(Chart::base_of_dim(1));
    // non-skew component table must be rejected
    std::vector<std::vector<Polynomial>> bad(2, std::vector<Polynomial>(2, Polynomial(cot)));
    bad[0][1] = one(cot);
    bad[1][0] = one(cot);
    CHECK_THROWS_AS(PoissonBivector::make(cot, bad), Error);
    // the canonical one passes and exposes components
    auto rho = PoissonBivector::canonical(cot);
    CHECK(rho.component(0, 1) == -one(cot));
    CHECK(rho.component(1, 0) == one(cot));
}

TEST_CASE("hamiltonian fields of the coordinates") {
    auto cot = Chart::cotangent(Chart::base_of_dim(1));
    auto rho = PoissonBivector::canonical(cot);
    // H(q1) = rho(dq1) = -d/dp1, H(p1) = rho(dp1) = d/dq1
    MixedField Hq = hamiltonian(rho, MixedField::scalar(Polynomial::variable(cot, 0)));
    CHECK(Hq == -MixedField::basis_vector(cot, 1));
    MixedField Hp = hamiltonian(rho, MixedField::scalar(Polynomial::variable(cot, 1)));
    CHECK(Hp == MixedField::basis_vector(cot, 0));
}

TEST_CASE("pullback is multiplicative and injective") {
    auto base = Chart::base_of_dim(2);
    auto cot = Chart::cotangent(base);
    std::mt19937_64 rng(23);
    for (int t = 0; t < 10; ++t) {
        MixedField A = random_field(base, 1, 1, 2, rng);
        MixedField B = random_field(base, 0, 1, 2, rng);
        CHECK(pullback(cot, A * B) == pullback(cot, A) * pullback(cot, B));
        CHECK(pullback_inverse(pullback(cot, A), 1) == A);
    }
    // pinned: pi*(dx1 (x) v2) = p2 dq1
    MixedField K(base, 1, 1);
    K.add_term({0}, {1}, one(base));
    CHECK(pullback(cot, K).to_string() == "p2 * dq1");
}

TEST_CASE("pullback inversion rejects bad input") {
    auto cot = Chart::cotangent(Chart::base_of_dim(2));
    MixedField dp1(cot, 1, 0);
    dp1.add_term({2}, {}, one(cot));
    CHECK_THROWS_AS(pullback_inverse(dp1, 0), NotHorizontal);
    MixedField inhom(cot, 1, 0);
    inhom.add_term({0}, {}, Polynomial::variable(cot, 2) + one(cot));
    CHECK_THROWS_AS(pullback_inverse(inhom, 1), NotHomogeneous);
}

TEST_CASE("vertical Euler field measures fiber degree") {
    auto base = Chart::base_of_dim(2);
    auto cot = Chart::cotangent(base);
    std::mt19937_64 rng(29);
    for (int l = 0; l <= 2; ++l) {
        MixedField A = random_field(base, 1, l, 2, rng);
        MixedField lifted = pullback(cot, A);
        CHECK(lie_derivative(vertical_euler(cot), lifted) == Rational(l) * lifted);
    }
}

TEST_CASE("h on pinned fields") {
    auto base = Chart::base_of_dim(2);
    auto cot = Chart::cotangent(base);
    auto x1 = Polynomial::variable(base, 0);
    CHECK(h_map(cot, MixedField::basis_vector(base, 0)) == MixedField::basis_vector(cot, 0));
    // h(x1 v1) = q1 d/dq1 - p1 d/dp1
    MixedField expect(cot, 0, 1);
    expect.add_term({}, {0}, Polynomial::variable(cot, 0));
    expect.add_term({}, {2}, -Polynomial::variable(cot, 2));
    CHECK(h_map(cot, x1 * MixedField::basis_vector(base, 0)) == expect);
    // h(v1 v v2) = p2 d/dq1 + p1 d/dq2
    MixedField u(base, 0, 2);
    u.add_term({}, {0, 1}, one(base));
    MixedField expect2(cot, 0, 1);
    expect2.add_term({}, {0}, Polynomial::variable(cot, 3));
    expect2.add_term({}, {1}, Polynomial::variable(cot, 2));
    CHECK(h_map(cot, u) == expect2);
    // h kills constants
    CHECK(h_map(cot, MixedField::scalar(Polynomial::constant(base, Rational(5)))).is_zero());
}

TEST_CASE("poincare primitive inverts d on closed forms") {
    std::mt19937_64 rng(31);
    for (int dim = 1; dim <= 2; ++dim) {
        auto cot = Chart::cotangent(Chart::base_of_dim(dim));
        for (int q = 0; q <= 2; ++q) {
            MixedField w = exterior_d(random_field(cot, q, 0, 2, rng));
            if (w.is_zero()) continue;
            CHECK(exterior_d(poincare_primitive(w)) == w);
        }
    }
    auto cot = Chart::cotangent(Chart::base_of_dim(1));
    MixedField notclosed(cot, 1, 0);
    notclosed.add_term({0}, {}, Polynomial::variable(cot, 1));
    CHECK_THROWS_AS(poincare_primitive(notclosed), NotClosed);
    // pinned: the primitive of dq1^dp1 is (q1 dp1 - p1 dq1)/2
    MixedField omega(cot, 2, 0);
    omega.add_term({0, 1}, {}, one(cot));
    CHECK(poincare_primitive(omega).to_string() == "-1/2 * p1 * dq1 + 1/2 * q1 * dp1");
}

TEST_CASE("the two graded brackets on functions agree with the Poisson bracket") {
    auto cot = Chart::cotangent(Chart::base_of_dim(2));
    auto rho = PoissonBivector::canonical(cot);
    std::mt19937_64 rng(37);
    for (int t = 0; t < 8; ++t) {
        MixedField f = random_field(cot, 0, 0, 2, rng);
        MixedField g = random_field(cot, 0, 0, 2, rng);
        MixedField pb = MixedField::scalar(poisson_fn(rho, f.as_polynomial(), g.as_polynomial()));
        CHECK(graded_poisson_1(rho, f, g) == pb);
        CHECK(graded_poisson_2(rho, f, g) == pb);
    }
}

TEST_CASE("the bracket of lifted fields escapes the horizontal image") {
    auto base = Chart::base_of_dim(2);
    auto cot = Chart::cotangent(base);
    auto rho = PoissonBivector::canonical(cot);
    MixedField A1(base, 1, 1);
    A1.add_term({0}, {0}, one(base));  // dx1 (x) v1, lift p1 dq1
    MixedField A2(base, 0, 2);
    A2.add_term({}, {0, 1}, one(base));  // v1.v2, lift p1 p2
    MixedField bracket = graded_poisson_1(rho, pullback(cot, A1), pullback(cot, A2));
    CHECK(bracket.to_string() == "p2 * dp1");
    CHECK(exterior_d(bracket).to_string() == "-1 * dp1^dp2");
    auto rep = horizontal_representative(bracket, 2);
    REQUIRE(std::holds_alternative<Obstruction>(rep));
    CHECK(std::get<Obstruction>(rep).reason == "candidate is not horizontal");
    // sanity: lifted fields themselves do have representatives
    auto ok = horizontal_representative(pullback(cot, A2), 2);
    REQUIRE(std::holds_alternative<MixedField>(ok));
    CHECK(std::get<MixedField>(ok) == A2);
}
