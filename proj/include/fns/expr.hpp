#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fns/connection.hpp"
#include "fns/cotangent.hpp"

namespace fns {

/// Parsed DSL term. Binary operators keep the spelling they were written
/// with ('*', '^', '.', '|' are all the graded product; '^' before an
/// integer is a power).
struct ExpressionAst {
    enum class Kind { Symbol, Number, Apply };
    Kind kind = Kind::Number;
    std::string name;               // symbol name or operator/op-name
    Rational value{0};              // Kind::Number payload
    std::vector<ExpressionAst> args;

    static ExpressionAst symbol(std::string n) {
        ExpressionAst e;
        e.kind = Kind::Symbol;
        e.name = std::move(n);
        return e;
    }
    static ExpressionAst number(Rational v) {
        ExpressionAst e;
        e.kind = Kind::Number;
        e.value = std::move(v);
        return e;
    }
    static ExpressionAst apply(std::string op, std::vector<ExpressionAst> args) {
        ExpressionAst e;
        e.kind = Kind::Apply;
        e.name = std::move(op);
        e.args = std::move(args);
        return e;
    }
};

namespace detail {

/// name -> (min arity, max arity) for the named operators.
inline const std::map<std::string, std::pair<int, int>>& op_table() {
    static const std::map<std::string, std::pair<int, int>> table = {
        {"d", {1, 1}},    {"i", {2, 2}},    {"L", {2, 2}},     {"FN", {2, 2}},   {"NR", {2, 2}},
        {"SCH", {2, 2}},  {"XI", {2, 2}},   {"rho", {1, 1}},   {"H", {1, 1}},    {"h", {1, 1}},
        {"pb", {1, 1}},   {"pbinv", {2, 2}}, {"gp1", {2, 2}},  {"gp2", {2, 2}},  {"I", {0, 0}},
        {"P", {1, 1}},    {"nabla", {1, 1}}, {"dg", {1, 1}},   {"dgp", {1, 1}},  {"Dop", {1, 1}},
        {"NB", {2, 2}},
    };
    return table;
}

struct ExprParser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    ExpressionAst parse_full() {
        ExpressionAst e = parse_sum();
        skip_ws();
        if (pos != text.size()) throw ParseError("unexpected trailing input", pos);
        return e;
    }

    ExpressionAst parse_sum() {
        ExpressionAst lhs = parse_product();
        while (true) {
            char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos;
            ExpressionAst rhs = parse_product();
            lhs = ExpressionAst::apply(std::string(1, c), {std::move(lhs), std::move(rhs)});
        }
    }

    ExpressionAst parse_product() {
        ExpressionAst lhs = parse_unary();
        while (true) {
            char c = peek();
            if (c != '*' && c != '^' && c != '.' && c != '|') return lhs;
            ++pos;
            ExpressionAst rhs = parse_unary();
            lhs = ExpressionAst::apply(std::string(1, c), {std::move(lhs), std::move(rhs)});
        }
    }

    ExpressionAst parse_unary() {
        if (eat('-')) return ExpressionAst::apply("neg", {parse_unary()});
        ExpressionAst e = parse_atom();
        // atom '^' integer is a power and binds tighter than any product
        while (true) {
            std::size_t save = pos;
            if (!eat('^')) break;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                pos = save;
                break;
            }
            ExpressionAst exp = parse_atom();
            e = ExpressionAst::apply("pow", {std::move(e), std::move(exp)});
        }
        return e;
    }

    ExpressionAst parse_atom() {
        skip_ws();
        if (pos >= text.size()) throw ParseError("unexpected end of expression", pos);
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t at = pos;
            std::string num = read_digits();
            if (pos < text.size() && text[pos] == '/') {
                ++pos;
                num += "/" + read_digits();
            }
            return ExpressionAst::number(parse_rational(num, at));
        }
        if (c == '(') {
            ++pos;
            ExpressionAst e = parse_sum();
            if (!eat(')')) throw ParseError("expected ')'", pos);
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || static_cast<unsigned char>(c) >= 0x80) {
            std::size_t at = pos;
            std::string name = read_name();
            if (peek() == '(') {
                ++pos;
                std::vector<ExpressionAst> args;
                if (peek() != ')') {
                    args.push_back(parse_sum());
                    while (eat(',')) args.push_back(parse_sum());
                }
                if (!eat(')')) throw ParseError("expected ')' or ','", pos);
                auto it = op_table().find(name);
                if (it == op_table().end()) throw UnknownOperator("unknown operator '" + name + "'");
                int n = static_cast<int>(args.size());
                if (n < it->second.first || n > it->second.second)
                    throw ArityError("operator '" + name + "' takes " + std::to_string(it->second.first) +
                                     " argument(s), got " + std::to_string(n));
                return ExpressionAst::apply(name, std::move(args));
            }
            (void)at;
            return ExpressionAst::symbol(name);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }

    std::string read_digits() {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected digits", pos);
        return std::string(text.substr(start, pos - start));
    }

    std::string read_name() {
        std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
                                     static_cast<unsigned char>(text[pos]) >= 0x80))
            ++pos;
        return std::string(text.substr(start, pos - start));
    }
};

inline int precedence(const std::string& op) {
    if (op == "+" || op == "-") return 1;
    if (op == "*" || op == "^" || op == "." || op == "|") return 2;
    if (op == "neg") return 3;
    if (op == "pow") return 4;
    return 5;
}

inline void print_ast(const ExpressionAst& e, std::string& out, int parent_prec) {
    switch (e.kind) {
        case ExpressionAst::Kind::Number:
            out += rational_to_string(e.value);
            return;
        case ExpressionAst::Kind::Symbol:
            out += e.name;
            return;
        case ExpressionAst::Kind::Apply:
            break;
    }
    const std::string& op = e.name;
    if (op == "+" || op == "-" || op == "*" || op == "^" || op == "." || op == "|" || op == "pow" || op == "neg") {
        int prec = precedence(op);
        bool parens = prec < parent_prec;
        if (parens) out += "(";
        if (op == "neg") {
            out += "-";
            print_ast(e.args[0], out, prec + 1);
        } else if (op == "pow") {
            print_ast(e.args[0], out, prec + 1);
            out += "^";
            print_ast(e.args[1], out, prec + 1);
        } else if (op == "+" || op == "-") {
            print_ast(e.args[0], out, prec);
            out += " " + op + " ";
            print_ast(e.args[1], out, prec + 1);
        } else {
            print_ast(e.args[0], out, prec);
            if (op == "*") {
                out += " * ";
            } else {
                out += op;
            }
            print_ast(e.args[1], out, prec + 1);
        }
        if (parens) out += ")";
        return;
    }
    out += op + "(";
    for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        print_ast(e.args[i], out, 0);
    }
    out += ")";
}

} // namespace detail

inline ExpressionAst parse_expression(std::string_view text) {
    detail::ExprParser parser{text};
    return parser.parse_full();
}

/// Round-trip printer; differs from the input only in whitespace.
inline std::string print_expression(const ExpressionAst& e) {
    std::string out;
    detail::print_ast(e, out, 0);
    return out;
}

/// Everything an expression may refer to: the charts, the canonical Poisson
/// structure, an optional metric/connection pair, and named bindings.
struct EvalContext {
    ChartPtr base;
    ChartPtr cot;                                // may be null for base-only work
    std::optional<PoissonBivector> rho;          // canonical structure on cot
    std::optional<ConnectionData> connection;    // lives on base
    std::map<std::string, MixedField> env;

    static EvalContext over_base(int m) {
        EvalContext ctx;
        ctx.base = Chart::base_of_dim(m);
        ctx.cot = Chart::cotangent(ctx.base);
        ctx.rho = PoissonBivector::canonical(ctx.cot);
        return ctx;
    }

    /// Default working chart: the cotangent chart when present.
    const ChartPtr& default_chart() const { return cot ? cot : base; }
};

namespace detail {

inline std::optional<MixedField> resolve_builtin(const std::string& name, const ChartPtr& chart) {
    int idx = chart->index_of(name);
    if (idx >= 0) return MixedField::scalar(Polynomial::variable(chart, idx));
    if (name.size() > 1 && name[0] == 'd') {
        int fi = chart->index_of(name.substr(1));
        if (fi >= 0) return MixedField::basis_form(chart, fi);
    }
    auto positional = [&](std::size_t digits_at) -> std::optional<MixedField> {
        const std::string digits = name.substr(digits_at);
        if (digits.empty()) return std::nullopt;
        for (char c : digits)
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        int vi = std::stoi(digits) - 1;
        if (vi < 0 || vi >= chart->dimension()) return std::nullopt;
        return MixedField::basis_vector(chart, vi);
    };
    if (name[0] == 'v') return positional(1);
    static const std::string partial = "∂"; // unicode alias for v
    if (name.rfind(partial, 0) == 0) return positional(partial.size());
    return std::nullopt;
}

} // namespace detail

inline MixedField evaluate_expression(const ExpressionAst& ast, const EvalContext& ctx, const ChartPtr& chart);

namespace detail {

inline int expect_integer(const ExpressionAst& e, const char* op) {
    if (e.kind != ExpressionAst::Kind::Number || denominator(e.value) != 1)
        throw ArityError(std::string(op) + ": expected an integer literal argument");
    return static_cast<int>(numerator(e.value));
}

inline MixedField eval_apply(const ExpressionAst& ast, const EvalContext& ctx, const ChartPtr& chart) {
    const std::string& op = ast.name;
    auto arg = [&](std::size_t i) { return evaluate_expression(ast.args[i], ctx, chart); };
    auto base_arg = [&](std::size_t i) {
        if (!ctx.base) throw UnboundSymbol(op + ": no base chart in context");
        return evaluate_expression(ast.args[i], ctx, ctx.base);
    };
    auto need_rho = [&]() -> const PoissonBivector& {
        if (!ctx.rho) throw UnboundSymbol(op + ": no Poisson structure in context");
        return *ctx.rho;
    };
    auto need_conn = [&]() -> const ConnectionData& {
        if (!ctx.connection) throw UnboundSymbol(op + ": no metric/connection loaded");
        return *ctx.connection;
    };

    if (op == "+") return arg(0) + arg(1);
    if (op == "-") return arg(0) - arg(1);
    if (op == "neg") return -arg(0);
    if (op == "*" || op == "^" || op == "." || op == "|") return arg(0) * arg(1);
    if (op == "pow") {
        int n = expect_integer(ast.args[1], "pow");
        if (n < 0) throw ArityError("pow: negative exponent");
        MixedField acc = MixedField::scalar(Polynomial::constant(chart, Rational(1)));
        MixedField b = arg(0);
        for (int i = 0; i < n; ++i) acc = acc * b;
        return acc;
    }
    if (op == "d") return exterior_d(arg(0));
    if (op == "i") {
        MixedField A = arg(0), B = arg(1);
        if (A.sym_degree() > 1) return extended_insert(A, B);
        if (B.sym_degree() == 0) return insert(A, B);
        return form_insert(A, B);
    }
    if (op == "L") return lie_derivative(arg(0), arg(1));
    if (op == "FN") return fn_bracket(arg(0), arg(1));
    if (op == "NR") return nr_bracket(arg(0), arg(1));
    if (op == "SCH") return schouten(arg(0), arg(1));
    if (op == "XI") return extended_insert(arg(0), arg(1));
    if (op == "rho") return rho_extend(need_rho(), arg(0));
    if (op == "H") return hamiltonian(need_rho(), arg(0));
    if (op == "h") {
        need_rho();
        return h_map(ctx.cot, base_arg(0));
    }
    if (op == "pb") {
        if (!ctx.cot) throw UnboundSymbol("pb: no cotangent chart in context");
        return pullback(ctx.cot, base_arg(0));
    }
    if (op == "pbinv") return pullback_inverse(arg(0), expect_integer(ast.args[1], "pbinv"));
    if (op == "gp1") return graded_poisson_1(need_rho(), arg(0), arg(1));
    if (op == "gp2") return graded_poisson_2(need_rho(), arg(0), arg(1));
    if (op == "I") {
        if (!ctx.cot) throw UnboundSymbol("I: no cotangent chart in context");
        return vertical_euler(ctx.cot);
    }
    if (op == "P") return poincare_primitive(arg(0));
    if (op == "nabla") return cov_exterior_diff(need_conn(), evaluate_expression(ast.args[0], ctx, need_conn().chart));
    if (op == "dg") {
        const ConnectionData& conn = need_conn();
        if (!conn.metric) throw UnboundSymbol("dg: connection has no metric");
        return delta_g(*conn.metric, evaluate_expression(ast.args[0], ctx, conn.chart));
    }
    if (op == "dgp") {
        const ConnectionData& conn = need_conn();
        if (!conn.metric) throw UnboundSymbol("dgp: connection has no metric");
        return delta_g_prime(*conn.metric, evaluate_expression(ast.args[0], ctx, conn.chart));
    }
    if (op == "Dop") {
        const ConnectionData& conn = need_conn();
        return schouten_with_metric_defect(conn, evaluate_expression(ast.args[0], ctx, conn.chart));
    }
    if (op == "NB") {
        const ConnectionData& conn = need_conn();
        return nabla_bracket(conn, evaluate_expression(ast.args[0], ctx, conn.chart),
                             evaluate_expression(ast.args[1], ctx, conn.chart));
    }
    throw UnknownOperator("unknown operator '" + op + "'");
}

} // namespace detail

/// Evaluates a parsed expression on the given chart. Free symbols resolve
/// first in the environment, then as chart variables / basis words.
inline MixedField evaluate_expression(const ExpressionAst& ast, const EvalContext& ctx, const ChartPtr& chart) {
    switch (ast.kind) {
        case ExpressionAst::Kind::Number:
            return MixedField::scalar(Polynomial::constant(chart, ast.value));
        case ExpressionAst::Kind::Symbol: {
            auto it = ctx.env.find(ast.name);
            if (it != ctx.env.end()) return it->second;
            if (auto f = detail::resolve_builtin(ast.name, chart)) return *f;
            throw UnboundSymbol("unbound symbol '" + ast.name + "'");
        }
        case ExpressionAst::Kind::Apply:
            return detail::eval_apply(ast, ctx, chart);
    }
    throw Error("unreachable");
}

inline MixedField evaluate_expression(const ExpressionAst& ast, const EvalContext& ctx) {
    return evaluate_expression(ast, ctx, ctx.default_chart());
}

inline MixedField evaluate_expression(std::string_view text, const EvalContext& ctx) {
    return evaluate_expression(parse_expression(text), ctx);
}

} // namespace fns
