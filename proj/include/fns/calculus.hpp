#pragma once

#include <functional>
#include <utility>

#include "fns/mixed_field.hpp"

namespace fns {
namespace detail {

/// dx^a wedged onto a sorted strict word. False if a already occurs;
/// otherwise sign = (-1)^(number of word entries below a).
inline bool wedge_prepend(int a, FormIndex& w, int& sign) {
    std::size_t pos = 0;
    while (pos < w.size() && w[pos] < a) ++pos;
    if (pos < w.size() && w[pos] == a) return false;
    w.insert(w.begin() + static_cast<std::ptrdiff_t>(pos), a);
    sign = (pos % 2 == 0) ? 1 : -1;
    return true;
}

/// Contraction i_{v_j} of a sorted wedge word. False if j does not occur;
/// otherwise sign = (-1)^(position of j).
inline bool contract(int j, FormIndex& w, int& sign) {
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
        if (w[pos] == j) {
            w.erase(w.begin() + static_cast<std::ptrdiff_t>(pos));
            sign = (pos % 2 == 0) ? 1 : -1;
            return true;
        }
    }
    return false;
}

/// Merge of two sorted strict wedge words a ^ b. False on a repeated index.
inline bool wedge_merge(const FormIndex& a, const FormIndex& b, FormIndex& out, int& sign) {
    out.clear();
    out.reserve(a.size() + b.size());
    sign = 1;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            if ((a.size() - i) % 2 == 1) sign = -sign;
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return true;
}

/// Sorted symmetric merge.
inline SymIndex sym_merge(const SymIndex& a, const SymIndex& b) {
    SymIndex out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline SymIndex sym_erase_at(const SymIndex& w, std::size_t pos) {
    SymIndex out = w;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(pos));
    return out;
}

} // namespace detail

/// Exterior derivative of a scalar form.
inline MixedField exterior_d(const MixedField& w) {
    if (w.sym_degree() != 0 && !w.is_zero()) throw NotScalarForm("exterior_d: sym degree must be 0");
    MixedField r(w.chart(), w.form_degree() + 1, 0);
    for (const auto& [key, c] : w.terms()) {
        for (int a = 0; a < w.chart()->dimension(); ++a) {
            Polynomial dc = c.derivative(a);
            if (dc.is_zero()) continue;
            FormIndex fw = key.first;
            int sign = 1;
            if (!detail::wedge_prepend(a, fw, sign)) continue;
            r.add_term(std::move(fw), {}, sign < 0 ? -dc : dc);
        }
    }
    return r;
}

/// i_K acting on the form factor only: i_K(psi (x) X) = i_K(psi) (x) X.
/// K must have sym degree 1; the target may carry any sym degree.
inline MixedField form_insert(const MixedField& K, const MixedField& B) {
    if (K.sym_degree() != 1 && !K.is_zero()) throw BadValence("form_insert: K must be vector valued");
    if (K.is_zero() || B.is_zero() || B.form_degree() == 0)
        return MixedField::zero(K.chart(), K.form_degree() + B.form_degree() - 1, B.sym_degree());
    require_same_chart(K.chart(), B.chart(), "form_insert");
    MixedField r(K.chart(), K.form_degree() + B.form_degree() - 1, B.sym_degree());
    for (const auto& [kk, f] : K.terms()) {
        int j = kk.second[0];
        for (const auto& [kb, g] : B.terms()) {
            FormIndex contracted = kb.first;
            int s1 = 1, s2 = 1;
            if (!detail::contract(j, contracted, s1)) continue;
            FormIndex word;
            if (!detail::wedge_merge(kk.first, contracted, word, s2)) continue;
            Polynomial c = f * g;
            r.add_term(std::move(word), kb.second, (s1 * s2) < 0 ? -c : c);
        }
    }
    return r;
}

/// Insertion operator i_K on scalar forms; a graded derivation of degree
/// k-1 vanishing on 0-forms.
inline MixedField insert(const MixedField& K, const MixedField& w) {
    if (w.sym_degree() != 0 && !w.is_zero()) throw BadValence("insert: target must be a scalar form");
    return form_insert(K, w);
}

/// Lie derivation along a vector valued form: [i_K, d].
inline MixedField lie_derivative(const MixedField& K, const MixedField& w) {
    if (K.sym_degree() != 1 && !K.is_zero()) throw BadValence("lie_derivative: K must be vector valued");
    if (w.sym_degree() != 0 && !w.is_zero()) throw BadValence("lie_derivative: target must be a scalar form");
    MixedField a = insert(K, exterior_d(w));
    MixedField b = exterior_d(insert(K, w));
    bool minus = ((K.form_degree() - 1) % 2 + 2) % 2 == 0;
    return minus ? a - b : a + b;
}

/// Nijenhuis-Richardson bracket: i_K L - (-1)^{(k-1)(l-1)} i_L K.
inline MixedField nr_bracket(const MixedField& K, const MixedField& L) {
    if ((K.sym_degree() != 1 && !K.is_zero()) || (L.sym_degree() != 1 && !L.is_zero()))
        throw BadValence("nr_bracket: both arguments must be vector valued forms");
    MixedField a = form_insert(K, L);
    MixedField b = form_insert(L, K);
    int sign = ((K.form_degree() - 1) * (L.form_degree() - 1)) % 2 == 0 ? 1 : -1;
    return sign > 0 ? a - b : a + b;
}

namespace detail {

/// Per-variable derivative of every coefficient, words untouched.
inline MixedField coeff_derivative(const MixedField& f, int var) {
    MixedField r(f.chart(), f.form_degree(), f.sym_degree());
    for (const auto& [key, c] : f.terms()) r.add_term(key.first, key.second, c.derivative(var));
    return r;
}

} // namespace detail

/// Froelicher-Nijenhuis bracket, computed by expanding the decomposable
/// formula over basis terms f dx^I (x) v_x. The dphi terms of the formula
/// are kept since basis forms are generally not closed.
inline MixedField fn_bracket(const MixedField& K, const MixedField& L) {
    if ((K.sym_degree() != 1 && !K.is_zero()) || (L.sym_degree() != 1 && !L.is_zero()))
        throw BadValence("fn_bracket: both arguments must be vector valued forms");
    int k = K.form_degree(), l = L.form_degree();
    MixedField r(K.chart(), k + l, 1);
    if (K.is_zero() || L.is_zero()) return r;
    require_same_chart(K.chart(), L.chart(), "fn_bracket");
    const ChartPtr& chart = K.chart();
    int n = chart->dimension();
    int ksign = (k % 2 == 0) ? 1 : -1;
    for (const auto& [ka, f] : K.terms()) {
        const FormIndex& I = ka.first;
        int x = ka.second[0];
        for (const auto& [kb, g] : L.terms()) {
            const FormIndex& J = kb.first;
            int y = kb.second[0];
            FormIndex word;
            int s = 1;
            // phi ^ L_X psi (x) Y  and  - L_Y phi ^ psi (x) X
            if (detail::wedge_merge(I, J, word, s)) {
                Polynomial c1 = f * g.derivative(x);
                if (!c1.is_zero()) r.add_term(word, {y}, s < 0 ? -c1 : c1);
                Polynomial c2 = f.derivative(y) * g;
                if (!c2.is_zero()) r.add_term(word, {x}, s < 0 ? c2 : -c2);
            }
            // (-1)^k dphi ^ i_X psi (x) Y
            {
                FormIndex Jc = J;
                int sc = 1;
                if (detail::contract(x, Jc, sc)) {
                    for (int a = 0; a < n; ++a) {
                        Polynomial df = f.derivative(a);
                        if (df.is_zero()) continue;
                        FormIndex Ia = I;
                        int sp = 1;
                        if (!detail::wedge_prepend(a, Ia, sp)) continue;
                        FormIndex w2;
                        int sm = 1;
                        if (!detail::wedge_merge(Ia, Jc, w2, sm)) continue;
                        Polynomial c = df * g;
                        int sign = ksign * sc * sp * sm;
                        r.add_term(std::move(w2), {y}, sign < 0 ? -c : c);
                    }
                }
            }
            // (-1)^k i_Y phi ^ dpsi (x) X
            {
                FormIndex Ic = I;
                int sc = 1;
                if (detail::contract(y, Ic, sc)) {
                    for (int a = 0; a < n; ++a) {
                        Polynomial dg = g.derivative(a);
                        if (dg.is_zero()) continue;
                        FormIndex Ja = J;
                        int sp = 1;
                        if (!detail::wedge_prepend(a, Ja, sp)) continue;
                        FormIndex w2;
                        int sm = 1;
                        if (!detail::wedge_merge(Ic, Ja, w2, sm)) continue;
                        Polynomial c = f * dg;
                        int sign = ksign * sc * sp * sm;
                        r.add_term(std::move(w2), {x}, sign < 0 ? -c : c);
                    }
                }
            }
        }
    }
    return r;
}

/// A graded derivation of scalar forms given by an opaque action. The
/// Leibniz property is the caller's responsibility; nothing is verified.
struct DerivationHandle {
    int degree;
    std::function<MixedField(const MixedField&)> action;
};

inline DerivationHandle lie_handle(const MixedField& K) {
    return {K.form_degree(), [K](const MixedField& w) { return lie_derivative(K, w); }};
}

inline DerivationHandle insert_handle(const MixedField& L) {
    return {L.form_degree() - 1, [L](const MixedField& w) { return insert(L, w); }};
}

/// Graded commutator of two derivation handles.
inline DerivationHandle graded_commutator(const DerivationHandle& a, const DerivationHandle& b) {
    int sign = (a.degree * b.degree) % 2 == 0 ? 1 : -1;
    auto fa = a.action, fb = b.action;
    return {a.degree + b.degree, [fa, fb, sign](const MixedField& w) {
                MixedField lhs = fa(fb(w));
                MixedField rhs = fb(fa(w));
                return sign > 0 ? lhs - rhs : lhs + rhs;
            }};
}

/// Splits a degree-k graded derivation D into (K, L) with D = L_K + i_L.
/// K is read off coordinate functions, L off coordinate differentials.
/// Garbage in, garbage out: D must genuinely be a derivation.
inline std::pair<MixedField, MixedField> derivation_extract(const DerivationHandle& D, const ChartPtr& chart) {
    int n = chart->dimension();
    MixedField K(chart, D.degree, 1);
    for (int a = 0; a < n; ++a) {
        MixedField da = D.action(MixedField::scalar(Polynomial::variable(chart, a)));
        for (const auto& [key, c] : da.terms()) K.add_term(key.first, {a}, c);
    }
    MixedField L(chart, D.degree + 1, 1);
    for (int a = 0; a < n; ++a) {
        MixedField dxa = MixedField::basis_form(chart, a);
        MixedField rem = D.action(dxa) - lie_derivative(K, dxa);
        for (const auto& [key, c] : rem.terms()) L.add_term(key.first, {a}, c);
    }
    return {std::move(K), std::move(L)};
}

/// Redundant second route to the FN bracket: form the graded commutator
/// [L_K, L_L] and extract its Lie part.
inline MixedField fn_bracket_oracle(const MixedField& K, const MixedField& L) {
    if ((K.sym_degree() != 1 && !K.is_zero()) || (L.sym_degree() != 1 && !L.is_zero()))
        throw BadValence("fn_bracket_oracle: both arguments must be vector valued forms");
    if (K.is_zero() || L.is_zero())
        return MixedField::zero(K.chart(), K.form_degree() + L.form_degree(), 1);
    DerivationHandle D = graded_commutator(lie_handle(K), lie_handle(L));
    return derivation_extract(D, K.chart()).first;
}

/// Symmetric Schouten bracket on Gamma(STM). The function case carries the
/// sign that makes the cotangent lift a Poisson homomorphism:
/// [f, Y_1 v ... v Y_l] = -sum_j df(Y_j) (rest).
inline MixedField schouten(const MixedField& U, const MixedField& V) {
    if ((U.form_degree() != 0 && !U.is_zero()) || (V.form_degree() != 0 && !V.is_zero()))
        throw BadValence("schouten: both arguments must have form degree 0");
    int lu = U.sym_degree(), lv = V.sym_degree();
    MixedField r(U.chart(), 0, lu + lv - 1);
    if (U.is_zero() || V.is_zero() || (lu == 0 && lv == 0)) return r;
    require_same_chart(U.chart(), V.chart(), "schouten");
    for (const auto& [ku, f] : U.terms()) {
        const SymIndex& P = ku.second;
        for (const auto& [kv, g] : V.terms()) {
            const SymIndex& Q = kv.second;
            for (std::size_t rpos = 0; rpos < P.size(); ++rpos) {
                Polynomial c = f * g.derivative(P[rpos]);
                if (c.is_zero()) continue;
                r.add_term({}, detail::sym_merge(detail::sym_erase_at(P, rpos), Q), std::move(c));
            }
            for (std::size_t spos = 0; spos < Q.size(); ++spos) {
                Polynomial c = f.derivative(Q[spos]) * g;
                if (c.is_zero()) continue;
                r.add_term({}, detail::sym_merge(P, detail::sym_erase_at(Q, spos)), -c);
            }
        }
    }
    return r;
}

/// Insertion of a symmetric-multivector valued form into a mixed field:
/// i(phi (x) X_1 v...v X_l)(psi (x) V) =
///   phi ^ sum_j i_{X_j} psi (x) X_1 v...^X_j...v X_l v V.
/// A graded derivation of degree k-1 vanishing on Gamma(STM).
inline MixedField extended_insert(const MixedField& A, const MixedField& B) {
    if (A.sym_degree() < 1) throw BadValence("extended_insert: A must have sym degree >= 1");
    int k = A.form_degree(), l = A.sym_degree();
    MixedField r(A.chart(), B.form_degree() + k - 1, B.sym_degree() + l - 1);
    if (A.is_zero() || B.is_zero() || B.form_degree() == 0) return r;
    require_same_chart(A.chart(), B.chart(), "extended_insert");
    for (const auto& [ka, f] : A.terms()) {
        const SymIndex& W = ka.second;
        for (const auto& [kb, g] : B.terms()) {
            for (std::size_t j = 0; j < W.size(); ++j) {
                FormIndex contracted = kb.first;
                int s1 = 1, s2 = 1;
                if (!detail::contract(W[j], contracted, s1)) continue;
                FormIndex word;
                if (!detail::wedge_merge(ka.first, contracted, word, s2)) continue;
                Polynomial c = f * g;
                r.add_term(std::move(word), detail::sym_merge(detail::sym_erase_at(W, j), kb.second),
                           (s1 * s2) < 0 ? -c : c);
            }
        }
    }
    return r;
}

} // namespace fns
