#pragma once

#include <optional>
#include <sstream>

#include "fns/calculus.hpp"

namespace fns {

/// Validation outcome for metric/connection data; empty means valid.
struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Metric with its exact contravariant inverse, supplied rather than
/// computed: polynomial inverses do not exist in general.
struct MetricData {
    ChartPtr chart;
    std::vector<std::vector<Polynomial>> g;
    std::vector<std::vector<Polynomial>> ginv;

    static MetricData identity(const ChartPtr& chart) {
        int n = chart->dimension();
        std::vector<std::vector<Polynomial>> m(static_cast<std::size_t>(n),
                                               std::vector<Polynomial>(static_cast<std::size_t>(n), Polynomial(chart)));
        for (int i = 0; i < n; ++i)
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Polynomial::constant(chart, Rational(1));
        return MetricData{chart, m, m};
    }

    const Polynomial& g_at(int i, int j) const { return g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    const Polynomial& ginv_at(int i, int j) const {
        return ginv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

    /// The contravariant two-tensor as a (0,2) mixed field.
    MixedField contravariant_field() const {
        MixedField r(chart, 0, 2);
        int n = chart->dimension();
        for (int i = 0; i < n; ++i) {
            r.add_term({}, {i, i}, ginv_at(i, i));
            for (int j = i + 1; j < n; ++j) {
                // ginv^{ij} v_i v v_j appears once per unordered pair, with
                // both (i,j) and (j,i) components landing on the same word.
                r.add_term({}, {i, j}, ginv_at(i, j) + ginv_at(j, i));
            }
        }
        return r;
    }
};

/// Torsion-free connection coefficients, optionally tied to a metric.
struct ConnectionData {
    ChartPtr chart;
    /// gamma[k][i][j] = Gamma^k_{ij}
    std::vector<std::vector<std::vector<Polynomial>>> gamma;
    std::optional<MetricData> metric;

    static ConnectionData flat(const ChartPtr& chart, std::optional<MetricData> metric = std::nullopt) {
        int n = chart->dimension();
        std::vector<std::vector<std::vector<Polynomial>>> G(
            static_cast<std::size_t>(n),
            std::vector<std::vector<Polynomial>>(static_cast<std::size_t>(n),
                                                 std::vector<Polynomial>(static_cast<std::size_t>(n), Polynomial(chart))));
        return ConnectionData{chart, std::move(G), std::move(metric)};
    }

    const Polynomial& gamma_at(int k, int i, int j) const {
        return gamma[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
};

/// Levi-Civita coefficients from a metric with exact polynomial inverse:
/// Gamma^k_{ij} = 1/2 ginv^{km} (d_i g_{jm} + d_j g_{im} - d_m g_{ij}).
inline ConnectionData levi_civita(const MetricData& metric) {
    const ChartPtr& chart = metric.chart;
    int n = chart->dimension();
    ConnectionData conn = ConnectionData::flat(chart, metric);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Polynomial acc(chart);
                for (int m = 0; m < n; ++m)
                    acc += metric.ginv_at(k, m) * (metric.g_at(j, m).derivative(i) + metric.g_at(i, m).derivative(j) -
                                                   metric.g_at(i, j).derivative(m));
                conn.gamma[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    Rational(1, 2u) * acc;
            }
    return conn;
}

/// Exact structural checks: g symmetric, ginv the exact inverse, torsion
/// freeness, and metric compatibility when a metric is attached.
inline ValidationReport validate(const MetricData& metric, const ConnectionData& conn) {
    ValidationReport report;
    require_same_chart(metric.chart, conn.chart, "validate");
    const ChartPtr& chart = metric.chart;
    int n = chart->dimension();
    auto note = [&](const std::string& s) { report.violations.push_back(s); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!(metric.g_at(i, j) == metric.g_at(j, i)))
                note("g_{" + std::to_string(i + 1) + std::to_string(j + 1) + "} not symmetric");
            if (!(metric.ginv_at(i, j) == metric.ginv_at(j, i)))
                note("ginv^{" + std::to_string(i + 1) + std::to_string(j + 1) + "} not symmetric");
        }
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            Polynomial acc(chart);
            for (int j = 0; j < n; ++j) acc += metric.g_at(i, j) * metric.ginv_at(j, k);
            Polynomial expect =
                i == k ? Polynomial::constant(chart, Rational(1)) : Polynomial(chart);
            if (!(acc == expect))
                note("g * ginv differs from identity at (" + std::to_string(i + 1) + "," + std::to_string(k + 1) + ")");
        }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!(conn.gamma_at(k, i, j) == conn.gamma_at(k, j, i)))
                    note("torsion: Gamma^" + std::to_string(k + 1) + "_{" + std::to_string(i + 1) +
                         std::to_string(j + 1) + "} asymmetric");
    // nabla g = 0: d_a g_{ij} - Gamma^k_{ai} g_{kj} - Gamma^k_{aj} g_{ik} = 0
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Polynomial acc = metric.g_at(i, j).derivative(a);
                for (int k = 0; k < n; ++k) {
                    acc = acc - conn.gamma_at(k, a, i) * metric.g_at(k, j);
                    acc = acc - conn.gamma_at(k, a, j) * metric.g_at(i, k);
                }
                if (!(acc.is_zero()))
                    note("metric compatibility fails at a=" + std::to_string(a + 1) + " (i,j)=(" +
                         std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
            }
    return report;
}

/// Exterior covariant differential: d on the form factor plus the
/// connection acting as a derivation of the symmetric factor.
inline MixedField cov_exterior_diff(const ConnectionData& conn, const MixedField& A) {
    require_same_chart(conn.chart, A.chart(), "cov_exterior_diff");
    const ChartPtr& chart = A.chart();
    int n = chart->dimension();
    int k = A.form_degree();
    MixedField r(chart, k + 1, A.sym_degree());
    for (const auto& [key, c] : A.terms()) {
        for (int a = 0; a < n; ++a) {
            Polynomial dc = c.derivative(a);
            if (!dc.is_zero()) {
                FormIndex fw = key.first;
                int sp = 1;
                if (detail::wedge_prepend(a, fw, sp)) r.add_term(std::move(fw), key.second, sp < 0 ? -dc : dc);
            }
        }
        const SymIndex& W = key.second;
        for (std::size_t rpos = 0; rpos < W.size(); ++rpos) {
            for (int a = 0; a < n; ++a) {
                FormIndex fw = key.first;
                int sp = 1;
                // (-1)^k alpha ^ dx^a = dx^a ^ alpha; the crossing signs
                // cancel, leaving the insertion sign only.
                if (!detail::wedge_prepend(a, fw, sp)) continue;
                for (int t = 0; t < n; ++t) {
                    Polynomial coeff = c * conn.gamma_at(t, a, W[rpos]);
                    if (coeff.is_zero()) continue;
                    SymIndex sw = detail::sym_erase_at(W, rpos);
                    sw.insert(std::upper_bound(sw.begin(), sw.end(), t), t);
                    r.add_term(fw, std::move(sw), sp < 0 ? -coeff : coeff);
                }
            }
        }
    }
    return r;
}

/// delta_g: the C^infty-linear antiderivation with delta_g X = g(X,.) and
/// delta_g = 0 on forms. Raises form degree, lowers sym degree.
inline MixedField delta_g(const MetricData& metric, const MixedField& A) {
    require_same_chart(metric.chart, A.chart(), "delta_g");
    const ChartPtr& chart = A.chart();
    int n = chart->dimension();
    int k = A.form_degree();
    MixedField r(chart, k + 1, A.sym_degree() - 1);
    if (A.sym_degree() == 0) return r;
    for (const auto& [key, c] : A.terms()) {
        const SymIndex& W = key.second;
        for (std::size_t rpos = 0; rpos < W.size(); ++rpos)
            for (int b = 0; b < n; ++b) {
                Polynomial coeff = c * metric.g_at(W[rpos], b);
                if (coeff.is_zero()) continue;
                FormIndex fw = key.first;
                int sp = 1;
                // (-1)^k from crossing dx^I cancels against reordering
                // dx^I ^ dx^b back to sorted form.
                if (!detail::wedge_prepend(b, fw, sp)) continue;
                r.add_term(std::move(fw), detail::sym_erase_at(W, rpos), sp < 0 ? -coeff : coeff);
            }
    }
    return r;
}

/// delta'_g: the C^infty-linear antiderivation with delta'_g = 0 on vector
/// fields and delta'_g(omega) the contraction of ginv with omega.
inline MixedField delta_g_prime(const MetricData& metric, const MixedField& A) {
    require_same_chart(metric.chart, A.chart(), "delta_g_prime");
    const ChartPtr& chart = A.chart();
    int n = chart->dimension();
    MixedField r(chart, A.form_degree() - 1, A.sym_degree() + 1);
    if (A.form_degree() == 0) return r;
    for (const auto& [key, c] : A.terms()) {
        const FormIndex& I = key.first;
        for (std::size_t rpos = 0; rpos < I.size(); ++rpos) {
            int sign = (rpos % 2 == 0) ? 1 : -1;
            FormIndex rest = I;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(rpos));
            for (int b = 0; b < n; ++b) {
                Polynomial coeff = c * metric.ginv_at(I[rpos], b);
                if (coeff.is_zero()) continue;
                SymIndex sw = key.second;
                sw.insert(std::upper_bound(sw.begin(), sw.end(), b), b);
                r.add_term(rest, std::move(sw), sign < 0 ? -coeff : coeff);
            }
        }
    }
    return r;
}

/// D = nabla delta'_g + delta'_g nabla. On Gamma(STM) this computes (half
/// of) the Schouten bracket with the contravariant metric; zero output on
/// a symmetric multivector identifies a Killing tensor.
inline MixedField schouten_with_metric_defect(const ConnectionData& conn, const MixedField& S) {
    if (!conn.metric) throw Error("schouten_with_metric_defect: connection has no metric attached");
    const MetricData& metric = *conn.metric;
    return cov_exterior_diff(conn, delta_g_prime(metric, S)) + delta_g_prime(metric, cov_exterior_diff(conn, S));
}

/// L^nabla_A(omega) = i_A nabla omega + (-1)^a nabla i_A omega, with the
/// generalized insertion. omega is a scalar form, so nabla omega = d omega.
inline MixedField nabla_lie(const ConnectionData& conn, const MixedField& A, const MixedField& w) {
    if (A.sym_degree() < 1) throw BadValence("nabla_lie: A must have sym degree >= 1");
    if (w.sym_degree() != 0 && !w.is_zero()) throw BadValence("nabla_lie: target must be a scalar form");
    MixedField first = extended_insert(A, exterior_d(w));
    MixedField second = cov_exterior_diff(conn, extended_insert(A, w));
    return (A.form_degree() % 2 == 0) ? first + second : first - second;
}

/// [alpha (x) F, beta (x) G]_nabla =
///   L^nabla_{alpha (x) F}(beta) G - (-1)^{ab} L^nabla_{beta (x) G}(alpha) F
///   + alpha ^ beta (x) [F,G],
/// expanded over basis terms (the coordinate words have vanishing Schouten
/// bracket, so the last summand drops out term by term).
inline MixedField nabla_bracket(const ConnectionData& conn, const MixedField& A, const MixedField& B) {
    int a = A.form_degree(), b = B.form_degree();
    int la = A.sym_degree(), lb = B.sym_degree();
    MixedField r(A.chart(), a + b, la + lb - 1);
    if (A.is_zero() || B.is_zero() || (la == 0 && lb == 0)) return r;
    require_same_chart(A.chart(), B.chart(), "nabla_bracket");
    require_same_chart(conn.chart, A.chart(), "nabla_bracket");
    const ChartPtr& chart = A.chart();
    int absign = (a * b) % 2 == 0 ? 1 : -1;
    for (const auto& [ka, f] : A.terms()) {
        MixedField alpha(chart, a, 0);
        alpha.add_term(ka.first, {}, f);
        MixedField F(chart, 0, la);
        F.add_term({}, ka.second, Polynomial::constant(chart, Rational(1)));
        for (const auto& [kb, g] : B.terms()) {
            MixedField beta(chart, b, 0);
            beta.add_term(kb.first, {}, g);
            MixedField G(chart, 0, lb);
            G.add_term({}, kb.second, Polynomial::constant(chart, Rational(1)));
            if (la >= 1) {
                MixedField termA(chart, a, la);
                termA.add_term(ka.first, ka.second, f);
                r += nabla_lie(conn, termA, beta) * G;
            }
            if (lb >= 1) {
                MixedField termB(chart, b, lb);
                termB.add_term(kb.first, kb.second, g);
                MixedField t = nabla_lie(conn, termB, alpha) * F;
                r += absign < 0 ? t : -t;
            }
        }
    }
    return r;
}

} // namespace fns
