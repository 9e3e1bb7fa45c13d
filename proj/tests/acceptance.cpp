// Acceptance gate: one line of output per criterion, exit status 0 only if
// every criterion holds. All equality checks are exact; there are no
// tolerances anywhere.

#include <chrono>
#include <iostream>

#include "fns/suites.hpp"

using namespace fns;

namespace {

int failures = 0;

void line(int criterion, bool ok, const std::string& what) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what << "\n";
    if (!ok) ++failures;
}

bool suites_ok(const std::vector<std::string>& ids, const CaseConfig& cfg) {
    for (const auto& id : ids) {
        Report rep = run_suite(id, cfg);
        if (!rep.suite_ok()) {
            std::cout << rep.to_text();
            return false;
        }
    }
    return true;
}

} // namespace

int main() {
    using clock = std::chrono::steady_clock;
    CaseConfig cfg;  // dims 1-3 cycled, degrees <= 2, exact arithmetic
    cfg.dim = 3;
    cfg.cases = 25;

    // 1. counterexample reproduction: exact values and the obstruction, < 1 s
    {
        auto t0 = clock::now();
        auto base = Chart::base_of_dim(2);
        auto cot = Chart::cotangent(base);
        auto rho = PoissonBivector::canonical(cot);
        MixedField phi(cot, 1, 0);
        phi.add_term({0}, {}, Polynomial::variable(cot, 2));  // p1 dq1
        MixedField chi = MixedField::scalar(Polynomial::variable(cot, 2) * Polynomial::variable(cot, 3));
        MixedField bracket = graded_poisson_1(rho, phi, chi);
        MixedField expect(cot, 1, 0);
        expect.add_term({2}, {}, Polynomial::variable(cot, 3));  // p2 dp1
        MixedField dexpect(cot, 2, 0);
        dexpect.add_term({2, 3}, {}, Polynomial::constant(cot, Rational(-1)));  // -dp1^dp2
        bool values = bracket == expect && exterior_d(bracket) == dexpect;
        auto rep = horizontal_representative(bracket, 2);
        bool obstructed = std::holds_alternative<Obstruction>(rep);
        double secs = std::chrono::duration<double>(clock::now() - t0).count();
        line(1, values && obstructed && secs < 1.0,
             "bracket of the lifted pair is p2*dp1 with differential -dp1^dp2 and no horizontal "
             "representative (" +
                 std::to_string(secs) + " s)");
    }

    // 2. homomorphism suites, >= 25 cases each, dims 1-3, degrees <= 2, < 2 min
    {
        auto t0 = clock::now();
        bool ok = suites_ok({"T35-1", "T35-2", "T35-3", "T35-4"}, cfg);
        double secs = std::chrono::duration<double>(clock::now() - t0).count();
        line(2, ok && secs < 120.0,
             "lift homomorphism suites T35-1..4 exact on 25 cases each (" + std::to_string(secs) + " s)");
    }

    // 3. lifted-calculus suites, >= 25 cases each
    {
        std::vector<std::string> ids;
        for (int i = 1; i <= 16; ++i) ids.push_back("L33-" + std::to_string(i));
        ids.push_back("L34-1");
        ids.push_back("L34-2");
        line(3, suites_ok(ids, cfg), "lifted calculus suites L33-1..16 and L34-1..2 exact on 25 cases each");
    }

    // 4. insertion/Lie calculus laws; bracket oracle; Jacobi and
    //    anticommutativity on >= 50 triples/pairs
    {
        bool ok = suites_ok({"D21-1", "D21-2", "D21-3", "D21-4", "D21-5", "NR-REP", "FN-ORACLE"}, cfg);
        CaseConfig big = cfg;
        big.cases = 50;
        ok = ok && suites_ok({"FN-JACOBI", "FN-ANTICOMM"}, big);
        line(4, ok, "derivation-calculus laws exact; bracket Jacobi/anticommutativity exact on 50 cases");
    }

    // 5. graded Poisson suites; GP1-JACOBI must fail with a pinned witness
    {
        bool ok = suites_ok({"GP-HOM", "GP1-ANTICOMM", "GP2-JACOBI", "GP-EXACT"}, cfg);
        Report xfail = run_suite("GP1-JACOBI", cfg);
        bool witnessed = xfail.expected_failure && xfail.failures() > 0 && xfail.suite_ok();
        line(5, ok && witnessed,
             "graded Poisson suites exact; GP1-JACOBI produced " + std::to_string(xfail.failures()) +
                 " nonzero Jacobi witnesses");
    }

    // 6. homogeneous-function model suites
    {
        line(6, suites_ok({"HOM-EULER", "HOM-ROUNDTRIP", "HOM-KERNEL", "HOM-SYMPL"}, cfg),
             "lift/inversion model suites exact on 25 cases each");
    }

    // 7. connection suites; the 1/2 constant asserted; NB-JACOBI must fail
    {
        bool ok = suites_ok({"CONN-DG2", "CONN-DGP2", "CONN-TOTALDEG", "CONN-NABLA-DG", "NB-FN", "NB-SCH",
                             "NB-DEFECT"},
                            cfg);
        // pin the constant: on the flat line D(x1 v1) equals exactly half of
        // the symmetric bracket with the inverse metric
        auto r1 = Chart::base_of_dim(1);
        MetricData m1 = MetricData::identity(r1);
        ConnectionData c1 = ConnectionData::flat(r1, m1);
        MixedField S = Polynomial::variable(r1, 0) * MixedField::basis_vector(r1, 0);
        MixedField D = schouten_with_metric_defect(c1, S);
        MixedField half = Rational(1, 2u) * schouten(m1.contravariant_field(), S);
        bool constant_ok = D == half && !D.is_zero();
        Report xfail = run_suite("NB-JACOBI", cfg);
        bool witnessed = xfail.expected_failure && xfail.failures() > 0 && xfail.suite_ok();
        line(7, ok && constant_ok && witnessed,
             "connection suites exact with the 1/2 constant pinned; NB-JACOBI produced " +
                 std::to_string(xfail.failures()) + " nonzero Jacobi witnesses");
    }

    // 8. cross-oracle for the symmetric bracket on >= 50 pairs, degree <= 3
    {
        CaseConfig big = cfg;
        big.cases = 50;
        big.sym_degree = 3;
        line(8, suites_ok({"SCH-X"}, big),
             "symmetric bracket equals the transported Poisson bracket on 50 pairs, degree <= 3");
    }

    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria pass\n"
                                : "ACCEPTANCE: " + std::to_string(failures) + " criteria failed\n");
    return failures == 0 ? 0 : 1;
}
