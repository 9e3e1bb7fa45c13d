#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fns/suites.hpp"

using namespace fns;

TEST_CASE("expression parsing round trips modulo whitespace") {
    for (const char* text : {
             "gp1(p1 * dq1, p1 * p2)",
             "FN(h(K), h(L))",
             "2/3 * q1^2 + -p1",
             "d(gp1(p1 * dq1, p1 * p2))",
             "i(dx1|v1.v2, dx2)",
             "L(I(), pb(dx1|v2)) - P(dq1^dp1)",
         }) {
        ExpressionAst ast = parse_expression(text);
        CHECK(print_expression(ast) == text);
        // printing is a fixed point
        CHECK(print_expression(parse_expression(print_expression(ast))) == print_expression(ast));
    }
    // whitespace-only normalization
    CHECK(print_expression(parse_expression("gp1(p1*dq1,p1*p2)")) == "gp1(p1 * dq1, p1 * p2)");
}

TEST_CASE("expression errors carry positions and kinds") {
    CHECK_THROWS_AS(parse_expression("d("), ParseError);
    try {
        parse_expression("d(");
    } catch (const ParseError& e) {
        CHECK(e.position == 2);
    }
    CHECK_THROWS_AS(parse_expression("frob(x1)"), UnknownOperator);
    CHECK_THROWS_AS(parse_expression("d(dx1, dx2)"), ArityError);
    auto ctx = EvalContext::over_base(2);
    CHECK_THROWS_AS(evaluate_expression(parse_expression("K + 1"), ctx), UnboundSymbol);
}

TEST_CASE("expression evaluation matches the direct API") {
    auto ctx = EvalContext::over_base(2);
    CHECK(evaluate_expression("gp1(p1*dq1, p1*p2)", ctx).to_string() == "p2 * dp1");
    CHECK(evaluate_expression("d(gp1(p1*dq1, p1*p2))", ctx).to_string() == "-1 * dp1^dp2");
    CHECK(evaluate_expression("P(dq1^dp1)", ctx).to_string() == "-1/2 * p1 * dq1 + 1/2 * q1 * dp1");
    // FN(X, X) = 0
    ctx.env.emplace("X", evaluate_expression(parse_expression("q2 * v1"), ctx));
    CHECK(evaluate_expression("FN(X, X)", ctx).is_zero());
    // environment binding feeds h() with base-chart arguments
    MixedField direct = h_map(ctx.cot, MixedField::basis_vector(ctx.base, 0));
    CHECK(evaluate_expression("h(v1)", ctx) == direct);
    // unicode alias for basis vectors
    CHECK(evaluate_expression("∂1", ctx) == MixedField::basis_vector(ctx.cot, 0));
}

TEST_CASE("report json round trips") {
    CaseConfig cfg;
    cfg.cases = 3;
    Report rep = run_suite("T35-1", cfg);
    CHECK(rep.suite_ok());
    Report back = Report::from_json(rep.to_json());
    CHECK(back.suite == rep.suite);
    CHECK(back.cases.size() == rep.cases.size());
    CHECK(back.config.seed == rep.config.seed);
    for (std::size_t i = 0; i < rep.cases.size(); ++i) {
        CHECK(back.cases[i].id == rep.cases[i].id);
        CHECK(back.cases[i].pass == rep.cases[i].pass);
    }
    CHECK(rep.to_text().find("T35-1") == 0);
}

TEST_CASE("suite runs are deterministic for a fixed seed") {
    CaseConfig cfg;
    cfg.cases = 4;
    Report a = run_suite("FN-JACOBI", cfg);
    Report b = run_suite("FN-JACOBI", cfg);
    Json ja = a.to_json(), jb = b.to_json();
    ja.erase("elapsed_ms");
    jb.erase("elapsed_ms");
    CHECK(ja == jb);
}

TEST_CASE("catalog is complete and typed") {
    const auto& cat = suite_catalog();
    for (int i = 1; i <= 16; ++i) CHECK(cat.count("L33-" + std::to_string(i)) == 1);
    for (const char* id : {"L34-1", "L34-2", "T35-1", "T35-2", "T35-3", "T35-4", "T35-5", "D21-1", "D21-2",
                           "D21-3", "D21-4", "D21-5", "NR-REP", "FN-ORACLE", "FN-ANTICOMM", "FN-JACOBI",
                           "SCH-X", "SCH-JACOBI", "SCH-LEIBNIZ", "HOM-EULER", "HOM-ROUNDTRIP", "HOM-KERNEL",
                           "HOM-SYMPL", "GP-HOM", "GP1-ANTICOMM", "GP2-JACOBI", "GP-EXACT", "GP1-JACOBI",
                           "CONN-DG2", "CONN-DGP2", "CONN-TOTALDEG", "CONN-NABLA-DG", "NB-FN", "NB-SCH",
                           "NB-ANTISYM", "NB-DEFECT", "NB-JACOBI"})
        CHECK(cat.count(id) == 1);
    CHECK(cat.at("GP1-JACOBI").expected_failure);
    CHECK(cat.at("NB-JACOBI").expected_failure);
    CHECK_FALSE(cat.at("T35-5").expected_failure);
    CHECK_THROWS_AS(run_suite("NOPE", CaseConfig{}), UnknownSuite);
}

TEST_CASE("expected-failure suites report pinned nonzero witnesses") {
    CaseConfig cfg;
    cfg.cases = 2;
    Report gp = run_suite("GP1-JACOBI", cfg);
    CHECK(gp.expected_failure);
    CHECK(gp.suite_ok());
    REQUIRE(gp.failures() > 0);
    bool found = false;
    for (const auto& c : gp.cases)
        if (!c.pass && !c.witness.is_null() && c.witness.contains("lhs") &&
            c.witness.at("lhs").get<std::string>() != "0")
            found = true;
    CHECK(found);
    Report nb = run_suite("NB-JACOBI", cfg);
    CHECK(nb.suite_ok());
    CHECK(nb.failures() > 0);
}

TEST_CASE("witness minimization shrinks to small counterexamples") {
    auto c = Chart::base_of_dim(1);
    auto x = Polynomial::variable(c, 0);
    Identity id;
    // deliberately broken identity: d(f) == 0 for a polynomial with many terms
    MixedField f = MixedField::scalar(x * x + x + Polynomial::constant(c, Rational(3)));
    id.inputs = {{"f", f}};
    id.sides = [c](const std::vector<MixedField>& in) {
        return std::pair{exterior_d(in[0]), MixedField::zero(c)};
    };
    auto w = check_identity(id);
    REQUIRE(w.has_value());
    // only a single monomial with nonvanishing differential survives
    std::string shrunk = w->at("inputs").at("f").get<std::string>();
    CHECK((shrunk == "x1" || shrunk == "x1^2"));
}
