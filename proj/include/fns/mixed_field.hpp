#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fns/polynomial.hpp"

namespace fns {

/// Strictly increasing variable indices (wedge word), length = form degree.
using FormIndex = std::vector<int>;
/// Weakly increasing variable indices (symmetric word), length = sym degree.
using SymIndex = std::vector<int>;

namespace detail {

/// Sorts a wedge word in place. Returns 0 if an index repeats, else the
/// permutation sign.
inline int sort_form_word(FormIndex& w) {
    int sign = 1;
    // insertion sort, counting transpositions
    for (std::size_t i = 1; i < w.size(); ++i) {
        int v = w[i];
        std::size_t j = i;
        while (j > 0 && w[j - 1] > v) {
            w[j] = w[j - 1];
            --j;
            sign = -sign;
        }
        w[j] = v;
    }
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == w[i - 1]) return 0;
    return sign;
}

} // namespace detail

/// One un-normalized term: arbitrary-order wedge word, arbitrary-order
/// symmetric word, polynomial coefficient.
struct RawTerm {
    std::vector<int> form_word;
    std::vector<int> sym_word;
    Polynomial coeff;
};

/// Element of Omega^k(chart; S^l T chart) in canonical form. k = l = 0
/// degenerates to a polynomial. The zero field keeps its (k,l) tag but is
/// accepted as neutral at any degree; all zeros compare equal.
class MixedField {
public:
    using Key = std::pair<FormIndex, SymIndex>;
    using TermMap = std::map<Key, Polynomial>;

    MixedField(ChartPtr chart, int k, int l) : chart_(std::move(chart)), k_(k), l_(l) {
        if (k_ < 0) k_ = 0;
        if (l_ < 0) l_ = 0;
    }

    static MixedField zero(ChartPtr chart, int k = 0, int l = 0) { return MixedField(std::move(chart), k, l); }

    static MixedField scalar(Polynomial p) {
        MixedField f(p.chart(), 0, 0);
        if (!p.is_zero()) f.terms_.emplace(Key{{}, {}}, std::move(p));
        return f;
    }

    static MixedField basis_form(const ChartPtr& chart, int var) {
        return normalize(chart, {RawTerm{{var}, {}, Polynomial::constant(chart, Rational(1))}});
    }

    static MixedField basis_vector(const ChartPtr& chart, int var) {
        return normalize(chart, {RawTerm{{}, {var}, Polynomial::constant(chart, Rational(1))}});
    }

    /// Canonicalizes raw terms: wedge words sorted with sign, repeated wedge
    /// index annihilates, symmetric words sorted, like terms combined.
    static MixedField normalize(const ChartPtr& chart, const std::vector<RawTerm>& raw) {
        int k = -1, l = -1;
        MixedField f(chart, 0, 0);
        for (const auto& t : raw) {
            if (t.coeff.is_zero()) continue;
            require_same_chart(chart, t.coeff.chart(), "normalize");
            int tk = static_cast<int>(t.form_word.size());
            int tl = static_cast<int>(t.sym_word.size());
            if (k == -1) {
                k = tk;
                l = tl;
            } else if (tk != k || tl != l) {
                throw MixedDegrees("normalize: terms disagree on bidegree");
            }
            for (int v : t.form_word) check_var(chart, v);
            for (int v : t.sym_word) check_var(chart, v);
            FormIndex fw = t.form_word;
            int sign = detail::sort_form_word(fw);
            if (sign == 0) continue;
            SymIndex sw = t.sym_word;
            std::sort(sw.begin(), sw.end());
            Polynomial c = sign < 0 ? -t.coeff : t.coeff;
            f.add_term(std::move(fw), std::move(sw), std::move(c));
        }
        if (k >= 0) {
            f.k_ = k;
            f.l_ = l;
        }
        return f;
    }

    const ChartPtr& chart() const { return chart_; }
    int form_degree() const { return k_; }
    int sym_degree() const { return l_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds one already-canonical term.
    void add_term(FormIndex fw, SymIndex sw, Polynomial c) {
        if (c.is_zero()) return;
        Key key{std::move(fw), std::move(sw)};
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(std::move(key), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    const Polynomial* coefficient(const FormIndex& fw, const SymIndex& sw) const {
        auto it = terms_.find(Key{fw, sw});
        return it == terms_.end() ? nullptr : &it->second;
    }

    /// The k = l = 0 coefficient as a polynomial (zero field allowed).
    Polynomial as_polynomial() const {
        if (k_ != 0 || l_ != 0)
            if (!is_zero()) throw BadValence("as_polynomial: field is not scalar");
        if (is_zero()) return Polynomial(chart_);
        return terms_.begin()->second;
    }

    friend MixedField operator+(const MixedField& a, const MixedField& b) {
        if (a.is_zero() && b.is_zero()) return a;
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        require_same_chart(a.chart_, b.chart_, "field add");
        if (a.k_ != b.k_ || a.l_ != b.l_) throw MixedDegrees("field add: bidegrees differ");
        MixedField r = a;
        for (const auto& [key, c] : b.terms_) r.add_term(key.first, key.second, c);
        return r;
    }

    friend MixedField operator-(const MixedField& a, const MixedField& b) { return a + (-b); }

    MixedField operator-() const {
        MixedField r(chart_, k_, l_);
        for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
        return r;
    }

    MixedField& operator+=(const MixedField& b) { return *this = *this + b; }
    MixedField& operator-=(const MixedField& b) { return *this = *this - b; }

    /// Graded product: wedge on form words, symmetric merge on sym words.
    /// A*B = (-1)^{kA kB} B*A.
    friend MixedField operator*(const MixedField& a, const MixedField& b) {
        if (a.is_zero() || b.is_zero()) return zero(a.chart_, a.k_ + b.k_, a.l_ + b.l_);
        require_same_chart(a.chart_, b.chart_, "field product");
        MixedField r(a.chart_, a.k_ + b.k_, a.l_ + b.l_);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                FormIndex fw = ka.first;
                fw.insert(fw.end(), kb.first.begin(), kb.first.end());
                int sign = detail::sort_form_word(fw);
                if (sign == 0) continue;
                SymIndex sw = ka.second;
                sw.insert(sw.end(), kb.second.begin(), kb.second.end());
                std::sort(sw.begin(), sw.end());
                Polynomial c = ca * cb;
                r.add_term(std::move(fw), std::move(sw), sign < 0 ? -c : c);
            }
        return r;
    }

    friend MixedField operator*(const Polynomial& p, const MixedField& f) {
        MixedField r(f.chart_, f.k_, f.l_);
        for (const auto& [key, c] : f.terms_) r.add_term(key.first, key.second, p * c);
        return r;
    }

    friend MixedField operator*(const Rational& s, const MixedField& f) {
        MixedField r(f.chart_, f.k_, f.l_);
        if (s == 0) return r;
        for (const auto& [key, c] : f.terms_) r.terms_.emplace(key, s * c);
        return r;
    }

    friend bool operator==(const MixedField& a, const MixedField& b) {
        if (a.is_zero() && b.is_zero()) return true;
        if (a.is_zero() != b.is_zero()) return false;
        return same_chart(a.chart_, b.chart_) && a.k_ == b.k_ && a.l_ == b.l_ && a.terms_ == b.terms_;
    }

    /// "coeff * dq1^dq2 | v1.v2"; form part omitted when k=0, sym part when
    /// l=0; compound coefficients parenthesized. Deterministic term order.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [key, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += term_to_string(key, c);
        }
        return s;
    }

private:
    static void check_var(const ChartPtr& chart, int v) {
        if (v < 0 || v >= chart->dimension()) throw DimensionMismatch("variable index out of range");
    }

    std::string term_to_string(const Key& key, const Polynomial& c) const {
        std::string s;
        bool have_word = !key.first.empty() || !key.second.empty();
        if (!have_word) return c.to_string();
        if (!(c.is_constant() && c.constant_value() == 1)) {
            bool simple = c.terms().size() == 1;
            s = simple ? c.to_string() : "(" + c.to_string() + ")";
            s += " * ";
        }
        for (std::size_t i = 0; i < key.first.size(); ++i) {
            if (i) s += "^";
            s += "d" + chart_->variable(key.first[i]);
        }
        if (!key.second.empty()) {
            if (!key.first.empty()) s += " | ";
            for (std::size_t i = 0; i < key.second.size(); ++i) {
                if (i) s += ".";
                s += "v" + std::to_string(key.second[i] + 1);
            }
        }
        return s;
    }

    ChartPtr chart_;
    int k_, l_;
    TermMap terms_;
};

namespace detail {

inline void enumerate_form_words(int dim, int k, std::vector<FormIndex>& out) {
    FormIndex cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < dim; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}

inline void enumerate_sym_words(int dim, int l, std::vector<SymIndex>& out) {
    SymIndex cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == l) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < dim; ++v) {
            cur.push_back(v);
            self(self, v);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}

} // namespace detail

/// Deterministic pseudo-random field: every (form word, sym word) pair is
/// populated with probability 1/2; coefficients are short polynomials with
/// small integer entries.
inline MixedField random_field(const ChartPtr& chart, int k, int l, int max_coeff_degree, std::mt19937_64& rng) {
    if (k > chart->dimension()) throw DegreeTooHigh("random_field: form degree exceeds chart dimension");
    if (k < 0 || l < 0) throw BadValence("random_field: negative degree");
    std::vector<FormIndex> fws;
    std::vector<SymIndex> sws;
    detail::enumerate_form_words(chart->dimension(), k, fws);
    detail::enumerate_sym_words(chart->dimension(), l, sws);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> nmon(1, 2);
    std::uniform_int_distribution<int> var(0, chart->dimension() - 1);
    MixedField f(chart, k, l);
    for (const auto& fw : fws)
        for (const auto& sw : sws) {
            if (coin(rng) == 0) continue;
            Polynomial c(chart);
            int monomials = nmon(rng);
            for (int m = 0; m < monomials; ++m) {
                int a = coef(rng);
                if (a == 0) a = 1;
                ExponentVector e(static_cast<std::size_t>(chart->dimension()), 0u);
                int deg = max_coeff_degree > 0 ? std::uniform_int_distribution<int>(0, max_coeff_degree)(rng) : 0;
                for (int d = 0; d < deg; ++d) ++e[static_cast<std::size_t>(var(rng))];
                c.add_term(std::move(e), Rational(a));
            }
            f.add_term(fw, sw, std::move(c));
        }
    return f;
}

inline MixedField random_field(const ChartPtr& chart, int k, int l, int max_coeff_degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_field(chart, k, l, max_coeff_degree, rng);
}

} // namespace fns
