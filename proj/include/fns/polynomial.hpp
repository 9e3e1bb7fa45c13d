#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "fns/chart.hpp"
#include "fns/rational.hpp"

namespace fns {

/// Dense per-variable exponents; length equals the chart dimension.
using ExponentVector = std::vector<unsigned>;

inline unsigned total_degree(const ExponentVector& e) {
    return std::accumulate(e.begin(), e.end(), 0u);
}

/// Graded lexicographic monomial order (total degree first, then lex).
struct GradedLexLess {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const {
        unsigned da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

/// Exact multivariate polynomial over the rationals on a fixed chart.
/// Canonical form: no zero coefficients, one entry per exponent vector.
class Polynomial {
public:
    using TermMap = std::map<ExponentVector, Rational, GradedLexLess>;

    explicit Polynomial(ChartPtr chart) : chart_(std::move(chart)) {}

    static Polynomial constant(ChartPtr chart, Rational c) {
        Polynomial p(std::move(chart));
        p.add_term(ExponentVector(static_cast<std::size_t>(p.chart_->dimension()), 0u), std::move(c));
        return p;
    }

    static Polynomial variable(ChartPtr chart, int index) {
        if (index < 0 || index >= chart->dimension())
            throw DimensionMismatch("variable index out of range");
        Polynomial p(std::move(chart));
        ExponentVector e(static_cast<std::size_t>(p.chart_->dimension()), 0u);
        e[static_cast<std::size_t>(index)] = 1;
        p.add_term(std::move(e), Rational(1));
        return p;
    }

    static Polynomial monomial(ChartPtr chart, ExponentVector e, Rational c) {
        Polynomial p(std::move(chart));
        if (e.size() != static_cast<std::size_t>(p.chart_->dimension()))
            throw DimensionMismatch("exponent vector length mismatch");
        p.add_term(std::move(e), std::move(c));
        return p;
    }

    const ChartPtr& chart() const { return chart_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        return terms_.begin()->second;
    }

    void add_term(ExponentVector e, Rational c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        require_same_chart(a.chart_, b.chart_, "poly add");
        Polynomial r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        require_same_chart(a.chart_, b.chart_, "poly sub");
        Polynomial r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }

    Polynomial operator-() const {
        Polynomial r(chart_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        require_same_chart(a.chart_, b.chart_, "poly mul");
        Polynomial r(a.chart_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                ExponentVector e = ea;
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(std::move(e), ca * cb);
            }
        return r;
    }

    friend Polynomial operator*(const Rational& c, const Polynomial& p) {
        Polynomial r(p.chart_);
        if (c == 0) return r;
        for (const auto& [e, pc] : p.terms_) r.terms_.emplace(e, c * pc);
        return r;
    }

    Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
    Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return same_chart(a.chart_, b.chart_) && a.terms_ == b.terms_;
    }

    /// Exact formal partial derivative with respect to one chart variable.
    Polynomial derivative(int var) const {
        if (var < 0 || var >= chart_->dimension())
            throw DimensionMismatch("derivative: variable index out of range");
        Polynomial r(chart_);
        auto v = static_cast<std::size_t>(var);
        for (const auto& [e, c] : terms_) {
            if (e[v] == 0) continue;
            ExponentVector d = e;
            --d[v];
            r.add_term(std::move(d), c * Rational(e[v]));
        }
        return r;
    }

    Rational evaluate(std::span<const Rational> point) const {
        if (point.size() != static_cast<std::size_t>(chart_->dimension()))
            throw DimensionMismatch("evaluate: point length mismatch");
        Rational acc(0);
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (unsigned j = 0; j < e[i]; ++j) t *= point[i];
            acc += t;
        }
        return acc;
    }

    /// Regroups monomials by their total degree in the given variables.
    /// The values sum back to *this; zero yields an empty map.
    std::map<unsigned, Polynomial> fiber_components(const std::vector<bool>& fiber_vars) const {
        if (fiber_vars.size() != static_cast<std::size_t>(chart_->dimension()))
            throw DimensionMismatch("fiber_components: variable mask length mismatch");
        std::map<unsigned, Polynomial> out;
        for (const auto& [e, c] : terms_) {
            unsigned d = 0;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (fiber_vars[i]) d += e[i];
            auto it = out.find(d);
            if (it == out.end()) it = out.emplace(d, Polynomial(chart_)).first;
            it->second.add_term(e, c);
        }
        return out;
    }

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }

    /// Canonical text form, highest graded-lex monomial first, e.g.
    /// "1/2 * q1^2 * p2 + q1 + -3".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!s.empty()) s += " + ";
            s += monomial_to_string(it->first, it->second);
        }
        return s;
    }

    static Polynomial parse(const ChartPtr& chart, std::string_view text);

private:
    std::string monomial_to_string(const ExponentVector& e, const Rational& c) const {
        std::string s;
        bool unit = (c == 1) && total_degree(e) > 0;
        if (!unit) s = rational_to_string(c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!s.empty()) s += " * ";
            s += chart_->variable(static_cast<int>(i));
            if (e[i] > 1) s += "^" + std::to_string(e[i]);
        }
        return s;
    }

    ChartPtr chart_;
    TermMap terms_;
};

namespace detail {

/// Tokenizing cursor shared by the polynomial grammar.
struct PolyCursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool peek_is(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }
};

inline std::string read_number(PolyCursor& cur) {
    cur.skip_ws();
    std::size_t start = cur.pos;
    if (cur.pos < cur.text.size() && (cur.text[cur.pos] == '-' || cur.text[cur.pos] == '+')) ++cur.pos;
    while (cur.pos < cur.text.size() && std::isdigit(static_cast<unsigned char>(cur.text[cur.pos]))) ++cur.pos;
    if (cur.pos == start) throw ParseError("expected number", cur.pos);
    return std::string(cur.text.substr(start, cur.pos - start));
}

inline std::string read_identifier(PolyCursor& cur) {
    cur.skip_ws();
    std::size_t start = cur.pos;
    while (cur.pos < cur.text.size() &&
           (std::isalnum(static_cast<unsigned char>(cur.text[cur.pos])) || cur.text[cur.pos] == '_'))
        ++cur.pos;
    if (cur.pos == start) throw ParseError("expected identifier", cur.pos);
    return std::string(cur.text.substr(start, cur.pos - start));
}

} // namespace detail

/// Parses the canonical polynomial grammar: a sum of terms, each a '*'
/// separated product of a rational coefficient and var^exp factors.
inline Polynomial Polynomial::parse(const ChartPtr& chart, std::string_view text) {
    detail::PolyCursor cur{text};
    Polynomial result(chart);
    bool first = true;
    while (true) {
        cur.skip_ws();
        if (cur.at_end()) {
            if (first) throw ParseError("empty polynomial", cur.pos);
            break;
        }
        int sign = 1;
        if (!first) {
            if (cur.eat('+')) {
            } else if (cur.eat('-')) {
                sign = -1;
            } else {
                throw ParseError("expected '+' or '-'", cur.pos);
            }
        }
        Rational coeff(1);
        ExponentVector e(static_cast<std::size_t>(chart->dimension()), 0u);
        bool saw_factor = false;
        while (true) {
            cur.skip_ws();
            if (cur.pos < cur.text.size() &&
                (std::isdigit(static_cast<unsigned char>(cur.text[cur.pos])) || cur.text[cur.pos] == '-' ||
                 cur.text[cur.pos] == '+')) {
                std::size_t at = cur.pos;
                std::string num = detail::read_number(cur);
                if (cur.peek_is('/')) {
                    ++cur.pos;
                    num += "/" + detail::read_number(cur);
                }
                coeff *= parse_rational(num, at);
            } else {
                std::size_t at = cur.pos;
                std::string name = detail::read_identifier(cur);
                int idx = chart->index_of(name);
                if (idx < 0) throw ParseError("unknown variable '" + name + "'", at);
                unsigned exp = 1;
                if (cur.eat('^')) exp = static_cast<unsigned>(std::stoul(detail::read_number(cur)));
                e[static_cast<std::size_t>(idx)] += exp;
            }
            saw_factor = true;
            if (!cur.eat('*')) break;
        }
        if (!saw_factor) throw ParseError("expected term", cur.pos);
        result.add_term(std::move(e), sign < 0 ? -coeff : coeff);
        first = false;
    }
    return result;
}

} // namespace fns
