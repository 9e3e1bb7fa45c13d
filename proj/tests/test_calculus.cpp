#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fns/calculus.hpp"

using namespace fns;

namespace {

Polynomial one(const ChartPtr& chart) { return Polynomial::constant(chart, Rational(1)); }

/// Sign of the permutation taking `idxs` to the sorted word `sorted`,
/// zero if they differ as sets or repeat.
int align_sign(FormIndex idxs, const FormIndex& sorted) {
    int s = detail::sort_form_word(idxs);
    if (s == 0 || idxs != sorted) return 0;
    return s;
}

/// Evaluates a scalar form on a tuple of coordinate vector fields.
Polynomial form_eval(const MixedField& w, const FormIndex& idxs) {
    Polynomial acc(w.chart());
    for (const auto& [key, c] : w.terms()) {
        int s = align_sign(idxs, key.first);
        if (s == 1) acc += c;
        if (s == -1) acc += -c;
    }
    return acc;
}

/// Evaluates a vector-valued form on a tuple, returning components.
std::map<int, Polynomial> vv_eval(const MixedField& K, const FormIndex& idxs) {
    std::map<int, Polynomial> comp;
    for (const auto& [key, c] : K.terms()) {
        int s = align_sign(idxs, key.first);
        if (s == 0) continue;
        Polynomial v = s == 1 ? c : -c;
        auto [it, fresh] = comp.emplace(key.second.at(0), v);
        if (!fresh) it->second += v;
    }
    return comp;
}

Rational factorial(int n) {
    Rational r(1);
    for (int i = 2; i <= n; ++i) r *= Rational(i);
    return r;
}

/// The classical definition of the insertion of K in Omega^k(M;TM) into a
/// q-form: the alternating permutation sum with weight 1/(k! (q-1)!).
Polynomial insert_oracle(const MixedField& K, const MixedField& w, const FormIndex& idxs) {
    int k = K.form_degree();
    int q = w.form_degree();
    int n = k + q - 1;
    REQUIRE(static_cast<int>(idxs.size()) == n);
    std::vector<int> perm(idxs.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    Polynomial acc(K.chart());
    do {
        FormIndex arranged;
        for (int pos : perm) arranged.push_back(idxs[static_cast<std::size_t>(pos)]);
        int sigma = align_sign(FormIndex(perm.begin(), perm.end()),
                               [&] { FormIndex s(perm.begin(), perm.end()); std::sort(s.begin(), s.end()); return s; }());
        FormIndex head(arranged.begin(), arranged.begin() + k);
        FormIndex tail(arranged.begin() + k, arranged.end());
        for (const auto& [dir, comp] : vv_eval(K, head)) {
            FormIndex full = tail;
            full.insert(full.begin(), dir);
            Polynomial val = form_eval(w, full);
            Polynomial term = comp * val;
            if (sigma < 0) term = -term;
            acc += term;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    Rational weight = Rational(1) / (factorial(k) * factorial(q - 1));
    Polynomial out(K.chart());
    for (const auto& [e, c] : acc.terms()) out.add_term(e, c * weight);
    return out;
}

void enumerate_tuples(int dim, int n, std::vector<FormIndex>& out) {
    FormIndex cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == n) {
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

} // namespace

TEST_CASE("exterior differential squares to zero") {
    std::mt19937_64 rng(3);
    for (int dim = 1; dim <= 3; ++dim) {
        auto c = Chart::base_of_dim(dim);
        for (int k = 0; k <= dim; ++k) {
            MixedField w = random_field(c, k, 0, 2, rng);
            CHECK(exterior_d(exterior_d(w)).is_zero());
        }
    }
}

TEST_CASE("exterior differential satisfies the graded Leibniz rule") {
    std::mt19937_64 rng(5);
    auto c = Chart::base_of_dim(3);
    for (int t = 0; t < 15; ++t) {
        int p = static_cast<int>(rng() % 3);
        int q = static_cast<int>(rng() % 3);
        MixedField a = random_field(c, p, 0, 2, rng);
        MixedField b = random_field(c, q, 0, 2, rng);
        MixedField sign = p % 2 == 0 ? exterior_d(b) : -exterior_d(b);
        CHECK(exterior_d(a * b) == exterior_d(a) * b + a * sign);
    }
}

TEST_CASE("insertion agrees with the permutation-sum definition") {
    std::mt19937_64 rng(9);
    for (int dim = 2; dim <= 3; ++dim) {
        auto c = Chart::base_of_dim(dim);
        for (int k = 1; k <= 2; ++k)
            for (int q = 1; q <= 2; ++q) {
                if (k > dim || q > dim || k + q - 1 > dim) continue;
                MixedField K = random_field(c, k, 1, 2, rng);
                MixedField w = random_field(c, q, 0, 2, rng);
                MixedField direct = insert(K, w);
                std::vector<FormIndex> tuples;
                enumerate_tuples(dim, k + q - 1, tuples);
                for (const auto& idxs : tuples)
                    CHECK(form_eval(direct, idxs) == insert_oracle(K, w, idxs));
            }
    }
}

TEST_CASE("Lie derivative on functions is directional derivative") {
    auto c = Chart::base_of_dim(2);
    auto x1 = Polynomial::variable(c, 0);
    auto x2 = Polynomial::variable(c, 1);
    MixedField X = x2 * MixedField::basis_vector(c, 0);  // x2 d/dx1
    MixedField f = MixedField::scalar(x1 * x1 + x2);
    CHECK(lie_derivative(X, f) == MixedField::scalar(Rational(2) * x1 * x2));
}

TEST_CASE("algebraic bracket on pinned fields") {
    auto c = Chart::base_of_dim(2);
    MixedField n1(c, 1, 1);
    n1.add_term({0}, {1}, one(c));  // dx1 (x) v2
    MixedField n2(c, 1, 1);
    n2.add_term({1}, {0}, one(c));  // dx2 (x) v1
    MixedField expect(c, 1, 1);
    expect.add_term({0}, {0}, one(c));
    expect.add_term({1}, {1}, -one(c));
    CHECK(nr_bracket(n1, n2) == expect);
}

TEST_CASE("differential bracket against the derivation-commutator oracle") {
    std::mt19937_64 rng(13);
    for (int dim = 1; dim <= 3; ++dim) {
        auto c = Chart::base_of_dim(dim);
        for (int t = 0; t < 4; ++t) {
            int k = static_cast<int>(rng() % static_cast<unsigned>(dim + 1));
            int l = static_cast<int>(rng() % static_cast<unsigned>(dim + 1));
            MixedField K = random_field(c, k, 1, 2, rng);
            MixedField L = random_field(c, l, 1, 2, rng);
            CHECK(fn_bracket(K, L) == fn_bracket_oracle(K, L));
        }
    }
}

TEST_CASE("differential bracket extends the Lie bracket of vector fields") {
    auto c = Chart::base_of_dim(2);
    auto x1 = Polynomial::variable(c, 0);
    MixedField X = MixedField::basis_vector(c, 0);
    MixedField Y = x1 * MixedField::basis_vector(c, 1);
    CHECK(fn_bracket(X, Y) == MixedField::basis_vector(c, 1));
    CHECK(fn_bracket(Y, X) == -MixedField::basis_vector(c, 1));
    CHECK(fn_bracket(X, X).is_zero());
}

TEST_CASE("derivation extraction splits Lie and algebraic parts") {
    auto c = Chart::base_of_dim(2);
    std::mt19937_64 rng(17);
    MixedField K = random_field(c, 1, 1, 2, rng);
    auto [lie_part, alg_part] = derivation_extract(lie_handle(K), c);
    CHECK(lie_part == K);
    CHECK(alg_part.is_zero());
}

TEST_CASE("symmetric bracket on pinned fields") {
    auto c = Chart::base_of_dim(2);
    auto x1 = Polynomial::variable(c, 0);
    MixedField v1 = MixedField::basis_vector(c, 0);
    MixedField V(c, 0, 2);
    V.add_term({}, {1, 1}, x1);  // x1 v2.v2
    MixedField expect(c, 0, 2);
    expect.add_term({}, {1, 1}, one(c));
    CHECK(schouten(v1, V) == expect);
    // function case: [f, Y1 v Y2] = -df(Y1) Y2 - df(Y2) Y1
    MixedField W(c, 0, 2);
    W.add_term({}, {0, 1}, one(c));  // v1.v2
    CHECK(schouten(MixedField::scalar(x1), W) == -MixedField::basis_vector(c, 1));
}

TEST_CASE("extended insertion on pinned fields") {
    auto c = Chart::base_of_dim(2);
    MixedField A(c, 1, 2);
    A.add_term({0}, {0, 1}, one(c));  // dx1 (x) v1.v2
    MixedField expectA(c, 1, 1);
    expectA.add_term({0}, {0}, one(c));
    CHECK(extended_insert(A, MixedField::basis_form(c, 1)) == expectA);
    MixedField B(c, 1, 1);
    B.add_term({1}, {0}, one(c));  // dx2 (x) v1
    MixedField expectB(c, 1, 2);
    expectB.add_term({0}, {0, 0}, one(c));
    CHECK(extended_insert(A, B) == expectB);
}
