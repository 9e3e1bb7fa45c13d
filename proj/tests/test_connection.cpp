#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fns/connection.hpp"

using namespace fns;

namespace {

Polynomial one(const ChartPtr& chart) { return Polynomial::constant(chart, Rational(1)); }

/// g = [[1, f], [f, 1 + f^2]] has det 1 and the exact polynomial inverse
/// [[1 + f^2, -f], [-f, 1]].
MetricData unimodular_metric(const ChartPtr& chart, const Polynomial& f) {
    MetricData m;
    m.chart = chart;
    m.g = {{one(chart), f}, {f, one(chart) + f * f}};
    m.ginv = {{one(chart) + f * f, -f}, {-f, one(chart)}};
    return m;
}

} // namespace

TEST_CASE("metric validation accepts exact pairs and rejects broken ones") {
    auto c = Chart::base_of_dim(2);
    Polynomial f = Polynomial::variable(c, 1);
    MetricData m = unimodular_metric(c, f);
    ConnectionData conn = levi_civita(m);
    CHECK(validate(m, conn).ok());

    MetricData broken = m;
    broken.ginv[0][0] = one(c);  // no longer the exact inverse
    auto report = validate(broken, levi_civita(broken));
    CHECK_FALSE(report.ok());

    ConnectionData torsion = conn;
    torsion.gamma[0][0][1] = torsion.gamma[0][0][1] + one(c);
    CHECK_FALSE(validate(m, torsion).ok());
}

TEST_CASE("flat identity metric has vanishing coefficients") {
    auto c = Chart::base_of_dim(3);
    MetricData m = MetricData::identity(c);
    ConnectionData conn = levi_civita(m);
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(conn.gamma_at(k, i, j).is_zero());
    CHECK(validate(m, conn).ok());
}

TEST_CASE("covariant differential extends d and squares to curvature") {
    auto c = Chart::base_of_dim(2);
    MetricData m = unimodular_metric(c, Polynomial::variable(c, 0));
    ConnectionData conn = levi_civita(m);
    std::mt19937_64 rng(41);
    // on scalar forms the connection does not act
    MixedField w = random_field(c, 1, 0, 2, rng);
    CHECK(cov_exterior_diff(conn, w) == exterior_d(w));
    // on the flat chart it is d in every valence
    ConnectionData flat = ConnectionData::flat(c);
    MixedField A = random_field(c, 1, 2, 2, rng);
    MixedField dA(c, 2, 2);
    for (const auto& [key, coeff] : A.terms()) {
        MixedField part(c, 1, 0);
        part.add_term(key.first, {}, coeff);
        MixedField dpart = exterior_d(part);
        for (const auto& [dkey, dcoeff] : dpart.terms()) dA.add_term(dkey.first, key.second, dcoeff);
    }
    CHECK(cov_exterior_diff(flat, A) == dA);
}

TEST_CASE("metric contraction and expansion on pinned fields") {
    auto c = Chart::base_of_dim(2);
    MetricData m = MetricData::identity(c);
    // delta_g(v1.v2) = dx2 (x) v1 + dx1 (x) v2
    MixedField vv(c, 0, 2);
    vv.add_term({}, {0, 1}, one(c));
    MixedField expect(c, 1, 1);
    expect.add_term({1}, {0}, one(c));
    expect.add_term({0}, {1}, one(c));
    CHECK(delta_g(m, vv) == expect);
    // delta'_g(dx1^dx2) = dx2 (x) v1 - dx1 (x) v2
    MixedField ww(c, 2, 0);
    ww.add_term({0, 1}, {}, one(c));
    MixedField expect2(c, 1, 1);
    expect2.add_term({1}, {0}, one(c));
    expect2.add_term({0}, {1}, -one(c));
    CHECK(delta_g_prime(m, ww) == expect2);
}

TEST_CASE("operator identities for a curved exact metric") {
    auto c = Chart::base_of_dim(2);
    MetricData m = unimodular_metric(c, Polynomial::variable(c, 0) * Polynomial::variable(c, 1));
    ConnectionData conn = levi_civita(m);
    REQUIRE(validate(m, conn).ok());
    std::mt19937_64 rng(43);
    for (int t = 0; t < 6; ++t) {
        MixedField A = random_field(c, 1, 2, 2, rng);
        CHECK(delta_g(m, delta_g(m, A)).is_zero());
        CHECK(delta_g_prime(m, delta_g_prime(m, A)).is_zero());
        CHECK(delta_g(m, delta_g_prime(m, A)) + delta_g_prime(m, delta_g(m, A)) == Rational(3) * A);
        CHECK((cov_exterior_diff(conn, delta_g(m, A)) + delta_g(m, cov_exterior_diff(conn, A))).is_zero());
    }
}

TEST_CASE("the defect operator is half the bracket with the inverse metric") {
    auto c = Chart::base_of_dim(2);
    MetricData m = unimodular_metric(c, Polynomial::variable(c, 1));
    ConnectionData conn = levi_civita(m);
    std::mt19937_64 rng(47);
    for (int l = 1; l <= 2; ++l) {
        MixedField S = random_field(c, 0, l, 2, rng);
        CHECK(schouten_with_metric_defect(conn, S) ==
              Rational(1, 2u) * schouten(m.contravariant_field(), S));
    }
    // the constant 1/2 pinned on the line: D(x1 v1) = v1.v1, [g^-1, x1 v1] = 2 v1.v1
    auto r1 = Chart::base_of_dim(1);
    MetricData m1 = MetricData::identity(r1);
    ConnectionData c1 = ConnectionData::flat(r1, m1);
    MixedField S = Polynomial::variable(r1, 0) * MixedField::basis_vector(r1, 0);
    MixedField d = schouten_with_metric_defect(c1, S);
    CHECK(d.to_string() == "v1.v1");
    CHECK(schouten(m1.contravariant_field(), S).to_string() == "2 * v1.v1");
}

TEST_CASE("covariant bracket restricts to both classical brackets") {
    auto c = Chart::base_of_dim(2);
    MetricData m = unimodular_metric(c, Polynomial::variable(c, 0));
    ConnectionData conn = levi_civita(m);
    std::mt19937_64 rng(53);
    for (int t = 0; t < 5; ++t) {
        MixedField K = random_field(c, 1, 1, 2, rng);
        MixedField L = random_field(c, 0, 1, 2, rng);
        CHECK(nabla_bracket(conn, K, L) == fn_bracket(K, L));
        MixedField U = random_field(c, 0, 2, 2, rng);
        MixedField V = random_field(c, 0, 1, 2, rng);
        CHECK(nabla_bracket(conn, U, V) == schouten(U, V));
    }
}
