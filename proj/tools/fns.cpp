// Command line front end: evaluate expressions, run verification suites,
// and demonstrate the two worked constructions.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fns/suites.hpp"

namespace {

using namespace fns;

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

/// Environment files bind names to expressions, one per line:
///   K = FN(v1, x1*v2)
///   base: S = x1 * v1.v1        (evaluate on the base chart)
void load_env(EvalContext& ctx, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open environment file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        bool on_base = false;
        if (t.rfind("base:", 0) == 0) {
            on_base = true;
            t = trim(t.substr(5));
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw Error(path + ":" + std::to_string(lineno) + ": expected 'name = expression'");
        std::string name = trim(t.substr(0, eq));
        std::string expr = trim(t.substr(eq + 1));
        ExpressionAst ast = parse_expression(expr);
        MixedField value = evaluate_expression(ast, ctx, on_base ? ctx.base : ctx.default_chart());
        ctx.env.insert_or_assign(name, std::move(value));
    }
}

/// Metric files:
///   vars x1 x2
///   g 1 1 : 1            g entries (1-based indices; symmetry implied)
///   ginv 1 1 : 1         exact inverse entries
///   gamma 1 1 2 : x2     optional coefficients; omitted => Levi-Civita
ConnectionData load_metric(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open metric file: " + path);
    std::string line;
    ChartPtr chart;
    std::vector<std::vector<Polynomial>> g, ginv;
    std::vector<std::vector<std::vector<Polynomial>>> gamma;
    bool has_gamma = false;
    int lineno = 0;
    auto need_chart = [&]() {
        if (!chart) throw Error(path + ":" + std::to_string(lineno) + ": 'vars' line must come first");
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream ls(t);
        std::string head;
        ls >> head;
        if (head == "vars") {
            std::vector<std::string> names;
            std::string v;
            while (ls >> v) names.push_back(v);
            chart = Chart::base(names);
            int n = chart->dimension();
            g.assign(static_cast<std::size_t>(n),
                     std::vector<Polynomial>(static_cast<std::size_t>(n), Polynomial(chart)));
            ginv = g;
            gamma.assign(static_cast<std::size_t>(n), g);
        } else if (head == "g" || head == "ginv") {
            need_chart();
            int i = 0, j = 0;
            char colon = 0;
            ls >> i >> j >> colon;
            if (colon != ':') throw Error(path + ":" + std::to_string(lineno) + ": expected 'g i j : poly'");
            std::string poly;
            std::getline(ls, poly);
            Polynomial p = Polynomial::parse(chart, trim(poly));
            auto& m = head == "g" ? g : ginv;
            m.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(j - 1)) = p;
            m.at(static_cast<std::size_t>(j - 1)).at(static_cast<std::size_t>(i - 1)) = p;
        } else if (head == "gamma") {
            need_chart();
            has_gamma = true;
            int k = 0, i = 0, j = 0;
            char colon = 0;
            ls >> k >> i >> j >> colon;
            if (colon != ':') throw Error(path + ":" + std::to_string(lineno) + ": expected 'gamma k i j : poly'");
            std::string poly;
            std::getline(ls, poly);
            Polynomial p = Polynomial::parse(chart, trim(poly));
            auto& G = gamma.at(static_cast<std::size_t>(k - 1));
            G.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(j - 1)) = p;
            G.at(static_cast<std::size_t>(j - 1)).at(static_cast<std::size_t>(i - 1)) = p;
        } else {
            throw Error(path + ":" + std::to_string(lineno) + ": unknown directive '" + head + "'");
        }
    }
    if (!chart) throw Error(path + ": no 'vars' line");
    MetricData metric{chart, std::move(g), std::move(ginv)};
    ConnectionData conn = has_gamma ? ConnectionData{chart, std::move(gamma), metric} : levi_civita(metric);
    ValidationReport report = validate(metric, conn);
    if (!report.ok()) {
        std::string msg = path + ": invalid metric/connection data:";
        for (const auto& v : report.violations) msg += "\n  " + v;
        throw Error(msg);
    }
    return conn;
}

int cmd_eval(const std::string& expr, int chart_dim, const std::string& env_path, bool on_base,
             const std::string& metric_path) {
    EvalContext ctx = EvalContext::over_base(chart_dim);
    if (!metric_path.empty()) {
        ctx.connection = load_metric(metric_path);
        ctx.base = ctx.connection->chart;
        ctx.cot = Chart::cotangent(ctx.base);
        ctx.rho = PoissonBivector::canonical(ctx.cot);
    }
    if (!env_path.empty()) load_env(ctx, env_path);
    MixedField value = evaluate_expression(parse_expression(expr), ctx, on_base ? ctx.base : ctx.default_chart());
    std::cout << value.to_string() << "\n";
    return 0;
}

int cmd_verify(const std::string& which, const CaseConfig& cfg, const std::string& json_path) {
    std::vector<std::string> ids;
    if (which == "all") {
        ids = suite_names();
    } else {
        ids.push_back(which);
    }
    Json all = Json::array();
    bool ok = true;
    for (const auto& id : ids) {
        Report rep = run_suite(id, cfg);
        std::cout << rep.to_text();
        all.push_back(rep.to_json());
        ok = ok && rep.suite_ok();
    }
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        out << all.dump(2) << "\n";
    }
    std::cout << (ok ? "ALL SUITES OK\n" : "SUITE FAILURES PRESENT\n");
    return ok ? 0 : 1;
}

int cmd_demo_counterexample() {
    auto base = Chart::base_of_dim(2);
    auto cot = Chart::cotangent(base);
    auto rho = PoissonBivector::canonical(cot);

    MixedField A1(base, 1, 1);
    A1.add_term({0}, {0}, Polynomial::constant(base, Rational(1)));  // dx1 (x) v1
    MixedField A2(base, 0, 2);
    A2.add_term({}, {0, 1}, Polynomial::constant(base, Rational(1)));  // v1 . v2

    MixedField phi = pullback(cot, A1);
    MixedField chi = pullback(cot, A2);
    std::cout << "A1                = " << A1.to_string() << "\n";
    std::cout << "A2                = " << A2.to_string() << "\n";
    std::cout << "lift(A1)          = " << phi.to_string() << "\n";
    std::cout << "lift(A2)          = " << chi.to_string() << "\n";

    MixedField bracket = graded_poisson_1(rho, phi, chi);
    std::cout << "{lift A1, lift A2} = " << bracket.to_string() << "\n";
    std::cout << "d{lift A1, lift A2} = " << exterior_d(bracket).to_string() << "\n";

    auto rep = horizontal_representative(bracket, 2);
    if (std::holds_alternative<Obstruction>(rep)) {
        const auto& ob = std::get<Obstruction>(rep);
        std::cout << "candidate primitive = " << ob.candidate.to_string() << "\n";
        std::cout << "obstruction: " << ob.reason << "\n";
        std::cout << "no mixed field maps onto this bracket: a common extension of the\n"
                     "two brackets to all graded fields cannot exist.\n";
        return 0;
    }
    std::cout << "unexpected: found horizontal representative "
              << std::get<MixedField>(rep).to_string() << "\n";
    return 1;
}

int cmd_demo_killing(const std::string& metric_path, const std::string& tensor_expr) {
    ConnectionData conn = load_metric(metric_path);
    EvalContext ctx;
    ctx.base = conn.chart;
    ctx.cot = Chart::cotangent(ctx.base);
    ctx.rho = PoissonBivector::canonical(ctx.cot);
    ctx.connection = conn;
    MixedField S = evaluate_expression(parse_expression(tensor_expr), ctx, ctx.base);
    if (S.form_degree() != 0) throw BadValence("killing demo expects a purely symmetric tensor field");
    std::cout << "S           = " << S.to_string() << "\n";
    MixedField defect = schouten_with_metric_defect(conn, S);
    std::cout << "D(S)        = " << defect.to_string() << "\n";
    const MetricData& metric = *conn.metric;
    MixedField bracket = schouten(metric.contravariant_field(), S);
    std::cout << "[g^-1, S]   = " << bracket.to_string() << "\n";
    // cross-check on the cotangent chart: the lift of S must Poisson-commute
    // with the energy function of the metric exactly when S is Killing
    Polynomial energy(ctx.cot);
    int n = ctx.base->dimension();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            energy += detail::lift_polynomial(ctx.cot, metric.ginv_at(i, j)) *
                      Polynomial::variable(ctx.cot, n + i) * Polynomial::variable(ctx.cot, n + j);
    Polynomial pb = poisson_fn(*ctx.rho, pullback(ctx.cot, S).as_polynomial(), energy);
    std::cout << "{lift S, E} = " << pb.to_string() << "\n";
    bool killing = bracket.is_zero();
    if (killing != pb.is_zero()) {
        std::cout << "internal inconsistency between the two characterizations\n";
        return 2;
    }
    std::cout << (killing ? "S is a Killing tensor for g\n" : "S is not a Killing tensor for g\n");
    return killing ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculus of graded tensor fields on polynomial charts"};
    app.require_subcommand(1);

    std::string expr, env_path, metric_path, json_path, suite = "all", tensor_expr;
    int chart_dim = 2;
    bool on_base = false;
    CaseConfig cfg;

    auto* eval = app.add_subcommand("eval", "evaluate an expression");
    eval->add_option("expression", expr, "expression to evaluate")->required();
    eval->add_option("--chart", chart_dim, "base chart dimension (default 2)");
    eval->add_option("--env", env_path, "environment file with named bindings");
    eval->add_option("--metric", metric_path, "metric file enabling the connection operators");
    eval->add_flag("--base", on_base, "evaluate on the base chart instead of the cotangent chart");

    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("suite", suite, "suite id, or 'all'");
    verify->add_option("--dim", cfg.dim, "max base dimension (cases cycle 1..dim)");
    verify->add_option("--deg", cfg.coeff_degree, "max coefficient degree");
    verify->add_option("--form-deg", cfg.form_degree, "max form degree of random fields");
    verify->add_option("--sym-deg", cfg.sym_degree, "max symmetric degree of random fields");
    verify->add_option("--cases", cfg.cases, "cases per suite");
    verify->add_option("--seed", cfg.seed, "master seed");
    verify->add_option("--json", json_path, "write the full reports as JSON");

    auto* demo = app.add_subcommand("demo", "worked constructions");
    demo->require_subcommand(1);
    auto* counter = demo->add_subcommand("counterexample", "the bracket-extension obstruction");
    auto* killing = demo->add_subcommand("killing", "Killing tensor check for a metric");
    killing->add_option("--metric", metric_path, "metric file")->required();
    killing->add_option("--tensor", tensor_expr, "symmetric tensor field expression")->required();

    auto* list = app.add_subcommand("list", "list available suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*eval) return cmd_eval(expr, chart_dim, env_path, on_base, metric_path);
        if (*verify) return cmd_verify(suite, cfg, json_path);
        if (*counter) return cmd_demo_counterexample();
        if (*killing) return cmd_demo_killing(metric_path, tensor_expr);
        if (*list) {
            for (const auto& [id, def] : fns::suite_catalog())
                std::cout << id << (def.expected_failure ? " [expected-failure]" : "") << "  -  "
                          << def.description << "\n";
            return 0;
        }
    } catch (const fns::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
