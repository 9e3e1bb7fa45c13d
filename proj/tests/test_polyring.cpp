#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fns/polynomial.hpp"

using namespace fns;

TEST_CASE("rational normalization") {
    CHECK(rational_to_string(make_rational(6, -4)) == "-3/2");
    CHECK(rational_to_string(make_rational(0, 7)) == "0");
    CHECK(rational_to_string(make_rational(-2, -8)) == "1/4");
    CHECK(make_rational(1, 3) + make_rational(1, 6) == make_rational(1, 2));
    CHECK_THROWS_AS(make_rational(1, 0), Error);
    CHECK(parse_rational("7/21") == make_rational(1, 3));
    CHECK(parse_rational("-5") == Rational(-5));
}

TEST_CASE("polynomial arithmetic and canonical order") {
    auto chart = Chart::base_of_dim(2);
    auto x1 = Polynomial::variable(chart, 0);
    auto x2 = Polynomial::variable(chart, 1);
    auto one = Polynomial::constant(chart, Rational(1));

    CHECK((x1 + one) * (x1 - one) == x1 * x1 - one);
    CHECK((x1 * x2).to_string() == "x1 * x2");
    // graded lex, highest total degree first
    CHECK((x1 * x1 + x2 + one).to_string() == "x1^2 + x2 + 1");
    CHECK((x1 + x2).to_string() == "x1 + x2");
    CHECK((-(x1 * x2)).to_string() == "-1 * x1 * x2");
    CHECK((x1 - x1).is_zero());
}

TEST_CASE("derivative is a derivation") {
    auto chart = Chart::base_of_dim(3);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        auto rnd_poly = [&]() {
            Polynomial p(chart);
            for (int m = 0; m < 3; ++m) {
                ExponentVector e(3, 0u);
                for (int d = 0; d < 2; ++d) ++e[rng() % 3];
                p.add_term(std::move(e), Rational(static_cast<int>(rng() % 7) - 3));
            }
            return p;
        };
        Polynomial f = rnd_poly(), g = rnd_poly();
        int v = static_cast<int>(rng() % 3);
        CHECK((f * g).derivative(v) == f.derivative(v) * g + f * g.derivative(v));
    }
}

TEST_CASE("evaluate agrees with expand-and-substitute") {
    auto chart = Chart::base_of_dim(2);
    auto x1 = Polynomial::variable(chart, 0);
    auto x2 = Polynomial::variable(chart, 1);
    Polynomial p = x1 * x1 * x2 - Rational(3) * x2 + Polynomial::constant(chart, Rational(1, 2u));
    std::vector<Rational> pt = {Rational(2), Rational(-1, 3u)};
    // 4 * (-1/3) - 3 * (-1/3) + 1/2 = -4/3 + 1 + 1/2 = 1/6
    CHECK(p.evaluate(pt) == make_rational(1, 6));
}

TEST_CASE("fiber component split by degree") {
    auto chart = Chart::base_of_dim(2);
    auto x1 = Polynomial::variable(chart, 0);
    auto x2 = Polynomial::variable(chart, 1);
    Polynomial p = x1 + x1 * x2 + x2 * x2 * x1;
    auto comps = p.fiber_components({false, true});
    REQUIRE(comps.size() == 3);
    CHECK(comps.at(0) == x1);
    CHECK(comps.at(1) == x1 * x2);
    CHECK(comps.at(2) == x1 * x2 * x2);
}

TEST_CASE("parse round trips") {
    auto chart = Chart::base_of_dim(2);
    for (const char* text : {"x1^2 + x2 + 1", "-3/2 * x1 * x2", "x1 + x2", "0", "7"}) {
        Polynomial p = Polynomial::parse(chart, text);
        CHECK(Polynomial::parse(chart, p.to_string()) == p);
    }
    CHECK(Polynomial::parse(chart, "x1^2+x2+1").to_string() == "x1^2 + x2 + 1");
    CHECK_THROWS_AS(Polynomial::parse(chart, "x3 + 1"), ParseError);
}

TEST_CASE("chart identity and mismatch") {
    auto a = Chart::base_of_dim(2);
    auto b = Chart::base_of_dim(2);
    auto c = Chart::base({"u", "w"});
    CHECK(same_chart(a, b));
    CHECK_FALSE(same_chart(a, c));
    CHECK(Chart::cotangent(a)->dimension() == 4);
    CHECK(Chart::cotangent(a)->variables()[2] == "p1");
    CHECK(a->index_of("x2") == 1);
    CHECK(a->index_of("q1") == -1);
}
