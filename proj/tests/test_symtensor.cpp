#include <shlr/random.hpp>
#include <shlr/symtensor.hpp>

#include <gtest/gtest.h>

using namespace shlr;

namespace {

struct Fixture {
    AlgebraPtr A;
    std::shared_ptr<FreeModule> L;
    std::shared_ptr<SymAlgebra> S;
};

// Mixed-parity module over Lambda[e1,e2] with d e1 = e1 e2.
Fixture mixed_setup(int W = 4) {
    Fixture s;
    s.A = exterior_algebra(2, "e", {{0, {{{0, 1}, Scalar(1)}}}});
    // d h = g, d k = e2 k
    std::vector<ModuleElement> d(3);
    d[1] = ModuleElement({0, 0}, Scalar(1));
    d[2] = ModuleElement({2, s.A->index_of("e2")}, Scalar(1));
    s.L = std::make_shared<FreeModule>(s.A, std::vector<std::string>{"g", "h", "k"}, std::vector<int>{0, -1, 1}, d);
    s.S = std::make_shared<SymAlgebra>(*s.L, W);
    return s;
}

int mod_degree(const FreeModule& L, const ModuleElement& v) { return *L.degree_of(v); }

// xi^i(c e_b g_j) = (-1)^{|b||xi^i|} c e_b delta_ij
AlgebraElement letter_value(const SymAlgebra& S, int i, const ModuleElement& v) {
    AlgebraElement r;
    for (const auto& [k, c] : v)
        if (k.first == i) r.add(k.second, c * Scalar(minus_one_pow(long(S.base().degree(k.second)) * S.letter_degree(i))));
    return r;
}

// Recursive product-formula evaluation of a sorted word, peeling one letter at a time.
AlgebraElement word_oracle(const SymAlgebra& S, const FreeModule& L, const Monomial& m,
                           const std::vector<ModuleElement>& v) {
    const auto& A = S.base();
    if (m.empty()) return v.empty() ? A.one() : AlgebraElement();
    if (m.size() != v.size()) return {};
    Monomial rest(m.begin() + 1, m.end());
    int rest_deg = S.monomial_degree(rest);
    const int r = static_cast<int>(v.size());
    std::vector<int> degs(r);
    for (int i = 0; i < r; ++i) degs[i] = mod_degree(L, v[i]);
    AlgebraElement total;
    for (const auto& sg : unshuffles(1, r - 1)) {
        std::vector<ModuleElement> tail;
        for (int i = 1; i < r; ++i) tail.push_back(v[sg(i)]);
        AlgebraElement head = letter_value(S, m[0], v[sg(0)]);
        if (head.is_zero()) continue;
        AlgebraElement t = A.mul(head, word_oracle(S, L, rest, tail));
        int sign = sym_sign(sg, degs) * minus_one_pow(long(rest_deg) * degs[sg(0)]);
        total += Scalar(sign) * t;
    }
    return total;
}

AlgebraElement eval_oracle(const SymAlgebra& S, const FreeModule& L, const SymElement& eta,
                           const std::vector<ModuleElement>& v) {
    AlgebraElement total;
    for (const auto& [k, c] : eta) {
        if (k.m.size() != v.size()) continue;
        total += c * S.base().mul(S.base().basis(k.a), word_oracle(S, L, k.m, v));
    }
    return total;
}

std::vector<ModuleElement> random_args(Sampler& rng, const FreeModule& L, int r) {
    std::vector<ModuleElement> v;
    while (static_cast<int>(v.size()) < r) {
        ModuleElement x = rng.module_element(L, rng.uniform(-1, 3));
        if (!x.is_zero()) v.push_back(x);
    }
    return v;
}

}  // namespace

TEST(SymProduct, UnitAndCommutativity) {
    auto s = mixed_setup();
    ASSERT_TRUE(validate_base_algebra(*s.A).empty());
    ASSERT_TRUE(validate_module(*s.L).empty());
    Sampler rng(1);
    for (int t = 0; t < 30; ++t) {
        int d1 = rng.uniform(-2, 3), d2 = rng.uniform(-2, 3);
        SymElement x = rng.sym_element(*s.S, d1, 0, 3), y = rng.sym_element(*s.S, d2, 0, 3);
        EXPECT_EQ(s.S->mul(s.S->one(), x), x);
        EXPECT_EQ(s.S->mul(x, s.S->one()), x);
        EXPECT_EQ(s.S->mul(x, y), Scalar(minus_one_pow(long(d1) * d2)) * s.S->mul(y, x));
    }
}

TEST(SymProduct, OddLetterSquaresToZero) {
    auto s = mixed_setup();
    int h = 1;  // generator of degree -1, letter of degree 1
    ASSERT_EQ(s.S->letter_degree(h) & 1, 1);
    EXPECT_TRUE(s.S->mul(s.S->letter(h), s.S->letter(h)).is_zero());
    EXPECT_FALSE(s.S->mul(s.S->letter(0), s.S->letter(0)).is_zero());
}

TEST(SymProduct, Associative) {
    auto s = mixed_setup();
    Sampler rng(2);
    for (int t = 0; t < 20; ++t) {
        SymElement x = rng.sym_element(*s.S, rng.uniform(-1, 2), 0, 2);
        SymElement y = rng.sym_element(*s.S, rng.uniform(-1, 2), 0, 2);
        SymElement z = rng.sym_element(*s.S, rng.uniform(-1, 2), 0, 2);
        EXPECT_EQ(s.S->mul(s.S->mul(x, y), z), s.S->mul(x, s.S->mul(y, z)));
    }
}

TEST(SymEvaluate, DualGeneratorOnGenerator) {
    auto s = mixed_setup();
    for (int i = 0; i < 3; ++i) EXPECT_EQ(s.S->evaluate(s.S->letter(i), {s.L->gen(i)}), s.A->one());
    EXPECT_TRUE(s.S->evaluate(s.S->letter(0), {s.L->gen(1)}).is_zero());
}

TEST(SymEvaluate, SwapOfOddArguments) {
    auto s = mixed_setup();
    // letters 0 (even) and 2 (odd, dual to k of degree 1); k and e1*g are both odd
    SymElement eta = s.S->mul(s.S->letter(0), s.S->letter(2));
    ModuleElement v1 = s.L->gen(2), v2 = s.L->act(s.A->basis(s.A->index_of("e1")), s.L->gen(0));
    AlgebraElement a = s.S->evaluate(eta, {v1, v2}), b = s.S->evaluate(eta, {v2, v1});
    EXPECT_FALSE(a.is_zero());
    EXPECT_EQ(b, -a);
}

TEST(SymEvaluate, MatchesProductFormulaOracle) {
    auto s = mixed_setup();
    Sampler rng(3);
    int checked = 0;
    for (int t = 0; t < 60; ++t) {
        int r = rng.uniform(1, 4);
        auto v = random_args(rng, *s.L, r);
        int total = 0;
        for (const auto& a : v) total += mod_degree(*s.L, a);
        SymElement eta = rng.sym_element(*s.S, rng.uniform(0, 2) - total, r, r, 0.7);
        AlgebraElement fast = s.S->evaluate(eta, v), slow = eval_oracle(*s.S, *s.L, eta, v);
        EXPECT_EQ(fast, slow);
        if (!fast.is_zero()) ++checked;
    }
    EXPECT_GT(checked, 10);
}

TEST(SymEvaluate, ProductUnshuffleExpansion) {
    auto s = mixed_setup();
    Sampler rng(4);
    for (int t = 0; t < 40; ++t) {
        int r1 = rng.uniform(1, 2), r2 = rng.uniform(1, 2);
        int d2 = rng.uniform(-2, 2);
        SymElement x = rng.sym_element(*s.S, rng.uniform(-2, 2), r1, r1, 0.5);
        SymElement y = rng.sym_element(*s.S, d2, r2, r2, 0.5);
        auto v = random_args(rng, *s.L, r1 + r2);
        std::vector<int> degs;
        for (const auto& a : v) degs.push_back(mod_degree(*s.L, a));
        AlgebraElement expect;
        for (const auto& sg : unshuffles(r1, r2)) {
            std::vector<ModuleElement> p, q;
            long sum = 0;
            for (int i = 0; i < r1; ++i) {
                p.push_back(v[sg(i)]);
                sum += degs[sg(i)];
            }
            for (int i = r1; i < r1 + r2; ++i) q.push_back(v[sg(i)]);
            Scalar sign(sym_sign(sg, degs) * minus_one_pow(sum * d2));
            expect += sign * s.A->mul(s.S->evaluate(x, p), s.S->evaluate(y, q));
        }
        EXPECT_EQ(s.S->evaluate(s.S->mul(x, y), v), expect);
    }
}

TEST(SymEvaluate, GradedSymmetricAndMultilinear) {
    auto s = mixed_setup();
    Sampler rng(5);
    for (int t = 0; t < 40; ++t) {
        int r = rng.uniform(2, 3);
        int d = rng.uniform(-2, 2);
        SymElement eta = rng.sym_element(*s.S, d, r, r, 0.6);
        auto v = random_args(rng, *s.L, r);
        std::vector<int> degs;
        for (const auto& a : v) degs.push_back(mod_degree(*s.L, a));
        // swap first two
        auto w = v;
        std::swap(w[0], w[1]);
        EXPECT_EQ(s.S->evaluate(eta, w),
                  Scalar(minus_one_pow(long(degs[0]) * degs[1])) * s.S->evaluate(eta, v));
        // A-linearity in the first slot
        int b = rng.uniform(0, s.A->dim() - 1);
        auto u = v;
        u[0] = s.L->act(s.A->basis(b), v[0]);
        EXPECT_EQ(s.S->evaluate(eta, u), Scalar(minus_one_pow(long(s.A->degree(b)) * d)) *
                                            s.A->mul(s.A->basis(b), s.S->evaluate(eta, v)));
        // and in the second: (-1)^{|b|(|v1|+|eta|)}
        auto u2 = v;
        u2[1] = s.L->act(s.A->basis(b), v[1]);
        EXPECT_EQ(s.S->evaluate(eta, u2), Scalar(minus_one_pow(long(s.A->degree(b)) * (d + degs[0]))) *
                                             s.A->mul(s.A->basis(b), s.S->evaluate(eta, v)));
    }
}

TEST(SymEvaluate, RepresentationDuality) {
    auto s = mixed_setup();
    Sampler rng(6);
    for (int t = 0; t < 20; ++t) {
        int r = rng.uniform(0, 4);
        SymElement eta = rng.sym_element(*s.S, rng.uniform(-2, 3), r, r, 0.5);
        SymElement back = s.S->from_values(r, [&](const Monomial& m) { return s.S->evaluate_generators(eta, m); });
        EXPECT_EQ(back, eta);
    }
}

TEST(SymEvaluate, ArityAboveCapRejected) {
    auto s = mixed_setup(2);
    std::vector<ModuleElement> v(3, s.L->gen(0));
    EXPECT_THROW(s.S->evaluate(s.S->one(), v), std::invalid_argument);
}

TEST(Derivations, D0OnAlgebraIsDifferential) {
    auto s = mixed_setup();
    Derivation D0 = d0_derivation(*s.S, *s.L);
    for (int a = 0; a < s.A->dim(); ++a)
        EXPECT_EQ(apply(*s.S, D0, s.S->from_algebra(s.A->basis(a))), s.S->from_algebra(s.A->d_basis(a)));
    EXPECT_TRUE(square_components(*s.S, D0).empty());
}

TEST(Derivations, ZeroDerivation) {
    auto s = mixed_setup();
    Sampler rng(7);
    SymElement x = rng.sym_element(*s.S, 1, 0, 4);
    EXPECT_TRUE(apply(*s.S, zero_derivation(*s.S), x).is_zero());
}

TEST(Derivations, GradedLeibniz) {
    auto s = mixed_setup();
    Sampler rng(8);
    for (int t = 0; t < 15; ++t) {
        Derivation D = rng.derivation(*s.S, 1, 0, 2);
        ASSERT_TRUE(derivation_consistency(*s.S, D).empty());
        ASSERT_TRUE(derivation_degree_check(*s.S, D).empty());
        int dx = rng.uniform(-1, 2);
        SymElement x = rng.sym_element(*s.S, dx, 0, 2), y = rng.sym_element(*s.S, rng.uniform(-1, 2), 0, 2);
        SymElement lhs = apply(*s.S, D, s.S->mul(x, y));
        SymElement rhs = s.S->mul(apply(*s.S, D, x), y);
        rhs += Scalar(minus_one_pow(dx)) * s.S->mul(x, apply(*s.S, D, y));
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(Derivations, SingleShiftOneComponentOnWeightTwoWord) {
    // D xi^0 = xi^1 xi^2 (a degree-1 shift-1 component) and zero elsewhere
    auto s = mixed_setup();
    Derivation D = zero_derivation(*s.S, 1);
    // letters: 0 even (deg 0), 1 odd (deg 1), 2 odd (deg -1); xi1 xi2 has degree 0, need degree 1:
    // use e1 * xi1 * xi2 which has degree 1
    D.on_letter[0] = s.S->monomial({1, 2}, s.A->basis(s.A->index_of("e1")));
    // word xi0 xi2: D(xi0 xi2) = D(xi0) xi2 + (-1)^{|xi0|} xi0 D(xi2) = e1 xi1 xi2 xi2 = 0 (xi2 odd)
    EXPECT_TRUE(apply(*s.S, D, s.S->monomial({0, 2}, s.A->one())).is_zero());
    // word xi0 xi0: D = 2 xi0 (e1 xi1 xi2) = 2 e1 xi0 xi1 xi2
    EXPECT_EQ(apply(*s.S, D, s.S->monomial({0, 0}, s.A->one())),
              s.S->monomial({0, 1, 2}, Scalar(2) * s.A->basis(s.A->index_of("e1"))));
    // word xi1 xi0: D(xi1 xi0) = (-1)^{|xi1|} xi1 D(xi0) = -xi1 e1 xi1 xi2 = 0 since xi1 odd
    EXPECT_TRUE(apply(*s.S, D, s.S->monomial({0, 1}, s.A->one())).is_zero());
}

TEST(Derivations, TruncationCompatible) {
    auto s4 = mixed_setup(3);
    Fixture s5 = s4;
    s5.S = std::make_shared<SymAlgebra>(*s4.L, 4);
    Sampler rng(9);
    for (int t = 0; t < 10; ++t) {
        Derivation D5 = rng.derivation(*s5.S, 1, 0, 3);
        Derivation D4 = truncate(*s4.S, D5, 2);
        SymElement x = rng.sym_element(*s4.S, 0, 0, 3);
        EXPECT_EQ(apply(*s4.S, D4, x), s4.S->truncate(apply(*s5.S, D5, x), 3));
    }
}

TEST(Automorphisms, InverseAndIdentity) {
    auto s = mixed_setup();
    Sampler rng(10);
    auto f = rng.unipotent(*s.S);
    ASSERT_TRUE(is_unipotent(*s.S, f));
    auto g = inverse(*s.S, f);
    for (int j = 0; j < s.S->letters(); ++j) EXPECT_EQ(apply(*s.S, f, g.on_letter[j]), s.S->letter(j));
    for (int a = 0; a < s.A->dim(); ++a)
        EXPECT_EQ(apply(*s.S, f, g.on_basis[a]), s.S->from_algebra(s.A->basis(a)));
    Derivation D = rng.derivation(*s.S, 1, 0, 2);
    EXPECT_EQ(conjugate(*s.S, identity_automorphism(*s.S), D), D);
    EXPECT_TRUE(conjugate(*s.S, f, zero_derivation(*s.S)).is_zero());
}

TEST(Automorphisms, NonUnipotentRejected) {
    auto s = mixed_setup();
    auto f = identity_automorphism(*s.S);
    f.on_letter[0] = Scalar(2) * s.S->letter(0);
    EXPECT_THROW(inverse(*s.S, f), std::invalid_argument);
}

TEST(Conjugation, PreservesSquareZeroAndGradedPart) {
    auto s = mixed_setup();
    Derivation D0 = d0_derivation(*s.S, *s.L);
    Sampler rng(11);
    for (int t = 0; t < 5; ++t) {
        auto f = rng.unipotent(*s.S);
        Derivation D = conjugate(*s.S, f, D0);
        EXPECT_TRUE(square_components(*s.S, D).empty());
        EXPECT_EQ(shift_part(*s.S, D, 0), D0);
    }
}

TEST(MaurerCartan, IdentityGivesZero) {
    auto s = mixed_setup();
    Derivation D0 = d0_derivation(*s.S, *s.L);
    auto rep = mc_residual(*s.S, D0, identity_automorphism(*s.S));
    EXPECT_TRUE(rep.omega.is_zero());
    EXPECT_TRUE(rep.residual.empty());
}

TEST(MaurerCartan, RandomUnipotentSolvesEquation) {
    auto s = mixed_setup();
    Derivation D0 = d0_derivation(*s.S, *s.L);
    Sampler rng(12);
    for (int t = 0; t < 5; ++t) {
        auto rep = mc_residual(*s.S, D0, rng.unipotent(*s.S));
        EXPECT_FALSE(rep.omega.is_zero());
        EXPECT_TRUE(rep.residual.empty());
    }
}

TEST(MaurerCartan, PlantedTermGivesCommutator) {
    auto s = mixed_setup();
    Derivation D0 = d0_derivation(*s.S, *s.L);
    // planted X: xi0 -> xi0 xi0 (weight 2), zero elsewhere; f = id + X on that letter
    Derivation X = zero_derivation(*s.S, 0);
    X.on_letter[0] = s.S->monomial({0, 0}, s.A->one());
    auto f = identity_automorphism(*s.S);
    f.on_letter[0] += X.on_letter[0];
    auto rep = mc_residual(*s.S, D0, f);
    EXPECT_TRUE(rep.residual.empty());
    Derivation expect = shift_part(*s.S, commutator(*s.S, X, D0), 1);
    EXPECT_EQ(shift_part(*s.S, rep.omega, 1), expect);
    EXPECT_TRUE(shift_part(*s.S, rep.omega, 0).is_zero());
}
