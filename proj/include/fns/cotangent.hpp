#pragma once

#include <optional>
#include <variant>

#include "fns/calculus.hpp"

namespace fns {

/// Skew 2-field rho given by polynomial components rho^{ab}, viewed as a
/// bundle map from covectors to vectors: rho(dx^a) = sum_b rho^{ab} v_b.
/// Construction checks skewness and the Jacobi identity on coordinate
/// function triples, which for polynomial components is the full Poisson
/// condition.
class PoissonBivector {
public:
    static PoissonBivector make(ChartPtr chart, std::vector<std::vector<Polynomial>> components) {
        PoissonBivector rho(std::move(chart), std::move(components));
        rho.validate();
        return rho;
    }

    /// Canonical structure on a cotangent chart: rho(dq^i) = -d/dp_i,
    /// rho(dp_i) = d/dq^i.
    static PoissonBivector canonical(const ChartPtr& chart) {
        if (chart->kind() != ChartKind::Cotangent) throw NotCotangent("canonical Poisson bivector");
        int m = chart->base_dimension();
        int n = 2 * m;
        std::vector<std::vector<Polynomial>> comp(static_cast<std::size_t>(n),
                                                  std::vector<Polynomial>(static_cast<std::size_t>(n), Polynomial(chart)));
        for (int i = 0; i < m; ++i) {
            comp[static_cast<std::size_t>(i)][static_cast<std::size_t>(m + i)] =
                Polynomial::constant(chart, Rational(-1));
            comp[static_cast<std::size_t>(m + i)][static_cast<std::size_t>(i)] =
                Polynomial::constant(chart, Rational(1));
        }
        return PoissonBivector(chart, std::move(comp));
    }

    const ChartPtr& chart() const { return chart_; }

    const Polynomial& component(int a, int b) const {
        return comp_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }

    /// rho(dx^a) as a vector field.
    MixedField of_basis_covector(int a) const {
        MixedField r(chart_, 0, 1);
        for (int b = 0; b < chart_->dimension(); ++b) r.add_term({}, {b}, component(a, b));
        return r;
    }

private:
    PoissonBivector(ChartPtr chart, std::vector<std::vector<Polynomial>> comp)
        : chart_(std::move(chart)), comp_(std::move(comp)) {
        int n = chart_->dimension();
        if (comp_.size() != static_cast<std::size_t>(n))
            throw DimensionMismatch("Poisson bivector: component matrix size");
        for (auto& row : comp_)
            if (row.size() != static_cast<std::size_t>(n))
                throw DimensionMismatch("Poisson bivector: component matrix size");
    }

    void validate() const {
        int n = chart_->dimension();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (!(component(a, b) == -component(b, a)))
                    throw Error("Poisson bivector: components are not skew");
        // Jacobi on coordinate functions:
        // sum_d rho^{da} d_d rho^{bc} + cyclic = 0.
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c) {
                    Polynomial acc(chart_);
                    for (int d = 0; d < n; ++d) {
                        acc += component(d, a) * component(b, c).derivative(d);
                        acc += component(d, b) * component(c, a).derivative(d);
                        acc += component(d, c) * component(a, b).derivative(d);
                    }
                    if (!acc.is_zero()) throw Error("Poisson bivector: Jacobi identity fails");
                }
    }

    ChartPtr chart_;
    std::vector<std::vector<Polynomial>> comp_;
};

/// Module valued degree -1 extension of rho to forms:
/// rho(phi_1 ^...^ phi_k) = sum_i (-1)^{i-1} (omit phi_i) (x) rho(phi_i),
/// zero on 0-forms.
inline MixedField rho_extend(const PoissonBivector& rho, const MixedField& w) {
    if (w.sym_degree() != 0 && !w.is_zero()) throw BadValence("rho_extend: target must be a scalar form");
    MixedField r(rho.chart(), w.form_degree() - 1, 1);
    if (w.is_zero() || w.form_degree() == 0) return r;
    require_same_chart(rho.chart(), w.chart(), "rho_extend");
    int n = rho.chart()->dimension();
    for (const auto& [key, c] : w.terms()) {
        const FormIndex& I = key.first;
        for (std::size_t i = 0; i < I.size(); ++i) {
            int sign = (i % 2 == 0) ? 1 : -1;
            FormIndex rest = I;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            for (int b = 0; b < n; ++b) {
                Polynomial coeff = c * rho.component(I[i], b);
                if (coeff.is_zero()) continue;
                r.add_term(rest, {b}, sign < 0 ? -coeff : coeff);
            }
        }
    }
    return r;
}

/// Hamiltonian mapping H(psi) = rho(d psi); on functions this is the
/// Hamiltonian vector field.
inline MixedField hamiltonian(const PoissonBivector& rho, const MixedField& w) {
    return rho_extend(rho, exterior_d(w));
}

/// {f,g} = i_{H_f} dg = sum rho^{ab} d_a f d_b g.
inline Polynomial poisson_fn(const PoissonBivector& rho, const Polynomial& f, const Polynomial& g) {
    require_same_chart(rho.chart(), f.chart(), "poisson_fn");
    require_same_chart(rho.chart(), g.chart(), "poisson_fn");
    int n = rho.chart()->dimension();
    Polynomial acc(rho.chart());
    for (int a = 0; a < n; ++a) {
        Polynomial da = f.derivative(a);
        if (da.is_zero()) continue;
        for (int b = 0; b < n; ++b) acc += rho.component(a, b) * (da * g.derivative(b));
    }
    return acc;
}

/// Liouville form, canonical symplectic form, canonical Poisson structure.
struct CanonicalData {
    MixedField liouville;
    MixedField symplectic;
    PoissonBivector rho;
};

inline CanonicalData canonical_structures(const ChartPtr& chart) {
    if (chart->kind() != ChartKind::Cotangent) throw NotCotangent("canonical_structures");
    int m = chart->base_dimension();
    MixedField theta(chart, 1, 0);
    MixedField omega(chart, 2, 0);
    for (int i = 0; i < m; ++i) {
        theta.add_term({i}, {}, Polynomial::variable(chart, m + i));
        omega.add_term({i, m + i}, {}, Polynomial::constant(chart, Rational(1)));
    }
    CanonicalData data{std::move(theta), std::move(omega), PoissonBivector::canonical(chart)};
    // omega = -d theta; rho inverts omega on basis covectors. Both are
    // structural and cheap to confirm at construction.
    if (!(data.symplectic == -exterior_d(data.liouville)))
        throw Error("canonical_structures: omega != -d theta");
    return data;
}

/// Vertical Euler field sum_i p_i d/dp_i on a cotangent chart.
inline MixedField vertical_euler(const ChartPtr& chart) {
    if (chart->kind() != ChartKind::Cotangent) throw NotCotangent("vertical_euler");
    int m = chart->base_dimension();
    MixedField r(chart, 0, 1);
    for (int i = 0; i < m; ++i) r.add_term({}, {m + i}, Polynomial::variable(chart, m + i));
    return r;
}

namespace detail {

/// Base-chart polynomial reinterpreted on the cotangent chart (x_i -> q_i).
inline Polynomial lift_polynomial(const ChartPtr& cot, const Polynomial& f) {
    int m = cot->base_dimension();
    Polynomial r(cot);
    for (const auto& [e, c] : f.terms()) {
        ExponentVector le(static_cast<std::size_t>(2 * m), 0u);
        std::copy(e.begin(), e.end(), le.begin());
        r.add_term(std::move(le), c);
    }
    return r;
}

/// Cotangent polynomial with no p dependence, dropped back to the base.
inline Polynomial drop_polynomial(const ChartPtr& base, const Polynomial& f) {
    int m = base->dimension();
    Polynomial r(base);
    for (const auto& [e, c] : f.terms()) {
        ExponentVector be(e.begin(), e.begin() + m);
        r.add_term(std::move(be), c);
    }
    return r;
}

} // namespace detail

/// pi^* on mixed fields over the base: f dx^I (x) v_{j_1} v...v v_{j_l}
/// maps to f(q) p_{j_1}...p_{j_l} dq^I. Multiplicative for the graded
/// products by the choice of pairing (no multinomial factor).
inline MixedField pullback(const ChartPtr& cot, const MixedField& A) {
    if (cot->kind() != ChartKind::Cotangent) throw NotCotangent("pullback");
    require_same_chart(cot->base_chart(), A.chart(), "pullback");
    int m = cot->base_dimension();
    MixedField r(cot, A.form_degree(), 0);
    for (const auto& [key, c] : A.terms()) {
        Polynomial coeff = detail::lift_polynomial(cot, c);
        for (int j : key.second) coeff *= Polynomial::variable(cot, m + j);
        r.add_term(key.first, {}, std::move(coeff));
    }
    return r;
}

inline MixedField pullback(const MixedField& A) {
    return pullback(Chart::cotangent(A.chart()), A);
}

/// Inverse of pullback on its image: requires a horizontal form whose
/// coefficients are p-homogeneous of degree l.
inline MixedField pullback_inverse(const MixedField& Phi, int l) {
    const ChartPtr& cot = Phi.chart();
    if (cot->kind() != ChartKind::Cotangent) throw NotCotangent("pullback_inverse");
    if (Phi.sym_degree() != 0 && !Phi.is_zero()) throw BadValence("pullback_inverse: scalar form expected");
    int m = cot->base_dimension();
    const ChartPtr& base = cot->base_chart();
    MixedField r(base, Phi.form_degree(), l);
    for (const auto& [key, c] : Phi.terms()) {
        for (int v : key.first)
            if (v >= m) throw NotHorizontal("pullback_inverse: dp factor present");
        for (const auto& [e, coeff] : c.terms()) {
            unsigned pdeg = 0;
            for (int i = 0; i < m; ++i) pdeg += e[static_cast<std::size_t>(m + i)];
            if (pdeg != static_cast<unsigned>(l))
                throw NotHomogeneous("pullback_inverse: coefficient not p-homogeneous of the stated degree");
            SymIndex word;
            ExponentVector qe(static_cast<std::size_t>(m), 0u);
            for (int i = 0; i < m; ++i) {
                qe[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(i)];
                for (unsigned rep = 0; rep < e[static_cast<std::size_t>(m + i)]; ++rep) word.push_back(i);
            }
            r.add_term(key.first, std::move(word), Polynomial::monomial(base, std::move(qe), coeff));
        }
    }
    return r;
}

/// h = H o pi^*: the lift of a mixed field on the base to a tangent-valued
/// form on the cotangent chart.
inline MixedField h_map(const ChartPtr& cot, const MixedField& A) {
    return rho_extend(PoissonBivector::canonical(cot), exterior_d(pullback(cot, A)));
}

inline MixedField h_map(const MixedField& A) {
    return h_map(Chart::cotangent(A.chart()), A);
}

/// {phi,psi}^1 = i(H phi) d psi. Graded anticommutative; no graded Jacobi.
inline MixedField graded_poisson_1(const PoissonBivector& rho, const MixedField& phi, const MixedField& psi) {
    return insert(hamiltonian(rho, phi), exterior_d(psi));
}

/// {phi,psi}^2 = L_{H phi} psi. Satisfies graded Jacobi; not anticommutative.
inline MixedField graded_poisson_2(const PoissonBivector& rho, const MixedField& phi, const MixedField& psi) {
    return lie_derivative(hamiltonian(rho, phi), psi);
}

/// Constructive primitive of a closed form on a star-shaped chart:
/// the radial homotopy integral, exact rational term by term.
inline MixedField poincare_primitive(const MixedField& w) {
    if (w.sym_degree() != 0 && !w.is_zero()) throw BadValence("poincare_primitive: scalar form expected");
    int q = w.form_degree();
    if (q < 1) throw BadValence("poincare_primitive: degree must be >= 1");
    if (!exterior_d(w).is_zero()) throw NotClosed("poincare_primitive: form is not closed");
    MixedField r(w.chart(), q - 1, 0);
    for (const auto& [key, c] : w.terms()) {
        const FormIndex& J = key.first;
        for (const auto& [e, coeff] : c.terms()) {
            Rational factor = coeff / Rational(static_cast<unsigned>(q) + total_degree(e));
            for (std::size_t i = 0; i < J.size(); ++i) {
                int sign = (i % 2 == 0) ? 1 : -1;
                ExponentVector me = e;
                ++me[static_cast<std::size_t>(J[i])];
                FormIndex rest = J;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
                r.add_term(std::move(rest), {},
                           Polynomial::monomial(w.chart(), std::move(me), sign < 0 ? -factor : factor));
            }
        }
    }
    return r;
}

/// Why a lift cannot exist, together with the candidate that failed.
struct Obstruction {
    MixedField candidate;
    std::string reason;
};

/// Decides whether chi agrees with pi^* of some A in Omega^k(M;S^l TM)
/// modulo exact forms. If pi^*A = chi + dB then L_I pi^*A = l pi^*A and
/// i_I pi^*A = 0 force pi^*A = (1/l) i_I d chi; the candidate either passes
/// all three checks (horizontal, p-homogeneous of degree l, same
/// differential as chi) or no such A exists.
inline std::variant<MixedField, Obstruction> horizontal_representative(const MixedField& chi, int l) {
    const ChartPtr& cot = chi.chart();
    if (cot->kind() != ChartKind::Cotangent) throw NotCotangent("horizontal_representative");
    if (l < 1) throw BadValence("horizontal_representative: l must be >= 1");
    MixedField dchi = exterior_d(chi);
    MixedField candidate = Rational(1, static_cast<unsigned>(l)) * insert(vertical_euler(cot), dchi);
    int m = cot->base_dimension();
    for (const auto& [key, c] : candidate.terms())
        for (int v : key.first)
            if (v >= m) return Obstruction{candidate, "candidate is not horizontal"};
    for (const auto& [key, c] : candidate.terms())
        for (const auto& [e, coeff] : c.terms()) {
            unsigned pdeg = 0;
            for (int i = 0; i < m; ++i) pdeg += e[static_cast<std::size_t>(m + i)];
            if (pdeg != static_cast<unsigned>(l))
                return Obstruction{candidate, "candidate is not p-homogeneous of the stated degree"};
        }
    if (!(exterior_d(candidate) == dchi))
        return Obstruction{candidate, "candidate differential does not match"};
    return pullback_inverse(candidate, l);
}

} // namespace fns
