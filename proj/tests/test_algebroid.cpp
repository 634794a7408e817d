#include <shlr/algebroid.hpp>

#include <gtest/gtest.h>

using namespace shlr;

namespace {

struct Fixture {
    ModulePtr L;
    std::shared_ptr<SymAlgebra> S;
};

// Lambda[e1,e2] with d e1 = e1 e2; g, h, k in degrees 0, -1, 1 with d h = g, d k = e2 k.
Fixture mixed(int W = 3) {
    auto A = exterior_algebra(2, "e", {{0, {{{0, 1}, Scalar(1)}}}});
    std::vector<ModuleElement> d(3);
    d[1] = ModuleElement({0, A->unit()}, Scalar(1));
    d[2] = ModuleElement({2, A->index_of("e2")}, Scalar(1));
    auto L = std::make_shared<FreeModule>(A, std::vector<std::string>{"g", "h", "k"}, std::vector<int>{0, -1, 1}, d);
    return {L, std::make_shared<SymAlgebra>(*L, W)};
}

// Plain L-infinity[1] algebra: A is the ground field.
Fixture plain(int W = 4) {
    auto A = ground_field();
    std::vector<ModuleElement> d(3);
    d[0] = ModuleElement({1, 0}, Scalar(1));
    auto L = std::make_shared<FreeModule>(A, std::vector<std::string>{"x", "y", "z"}, std::vector<int>{-1, 0, 0}, d);
    return {L, std::make_shared<SymAlgebra>(*L, W)};
}

// K[x]/x^3 (x even of degree 0) with eps odd, d x^j = j eps x^j; a rank-2 module in degrees 0, -1.
Fixture truncated(int W = 3) {
    auto A = truncated_poly_algebra(2);
    auto L = std::make_shared<FreeModule>(A, std::vector<std::string>{"u", "w"}, std::vector<int>{0, -1});
    return {L, std::make_shared<SymAlgebra>(*L, W)};
}

std::vector<Fixture> all_fixtures() { return {mixed(), plain(), truncated()}; }

TEST(CE, ZeroStructureGivesD0) {
    for (const auto& f : all_fixtures()) {
        AlgebroidStructure st(f.L, f.S->cap());
        Derivation D = ce_differential(*f.S, st);
        EXPECT_EQ(D, d0_derivation(*f.S, *f.L));
        const auto& A = f.S->base();
        for (int a = 0; a < A.dim(); ++a) EXPECT_EQ(f.S->weight_part(D.on_basis[a], 0), f.S->from_algebra(A.d_basis(a)));
    }
}

TEST(CE, CapTooSmallThrows) {
    auto f = mixed(3);
    AlgebroidStructure st(f.L, 4);
    EXPECT_THROW(ce_differential(*f.S, st), std::invalid_argument);
}

TEST(CE, ExtractFromD0IsTrivial) {
    for (const auto& f : all_fixtures()) {
        auto st = extract_structure(*f.S, d0_derivation(*f.S, *f.L));
        for (int n = 2; n <= st.cap; ++n) EXPECT_TRUE(st.brackets[n].empty());
        for (int n = 1; n <= st.cap; ++n) EXPECT_TRUE(st.anchors[n].empty());
        for (int i = 0; i < f.L->rank(); ++i) EXPECT_EQ(st.module().d_gen(i), f.L->d_gen(i));
    }
}

TEST(CE, ExtractRejectsWrongBaseDifferential) {
    auto f = mixed();
    Derivation D = d0_derivation(*f.S, *f.L);
    D.on_basis[f.S->base().index_of("e2")] += f.S->from_algebra(f.S->base().basis(f.S->base().index_of("e1e2")));
    EXPECT_THROW(extract_structure(*f.S, D), std::invalid_argument);
}

TEST(CE, StructureRoundTrip) {
    Sampler rng(21);
    for (const auto& f : all_fixtures())
        for (int trial = 0; trial < 8; ++trial) {
            auto st = random_structure(rng, f.L, f.S->cap());
            EXPECT_TRUE(validate_structure(st).empty());
            auto back = extract_structure(*f.S, ce_differential(*f.S, st));
            EXPECT_TRUE(back == st) << format_structure(st) << "---\n" << format_structure(back);
        }
}

TEST(CE, DerivationRoundTrip) {
    Sampler rng(22);
    for (const auto& f : all_fixtures())
        for (int trial = 0; trial < 8; ++trial) {
            const auto& A = f.S->base();
            Derivation D = rng.derivation(*f.S, 1, 0, f.S->cap(), 0.4);
            for (int a = 0; a < A.dim(); ++a)
                D.on_basis[a] = f.S->from_algebra(A.d_basis(a)) + (D.on_basis[a] - f.S->weight_part(D.on_basis[a], 0));
            auto st = extract_structure(*f.S, D);
            EXPECT_EQ(ce_differential(*f.S, st), D);
        }
}

// Bracket values on non-generator tuples read off the CE differential agree with the Leibniz extension.
TEST(CE, DualBracketMatchesLeibnizExtension) {
    Sampler rng(23);
    int checked = 0;
    for (const auto& f : {mixed(), truncated()}) {
        const auto& S = *f.S;
        const auto& L = *f.L;
        const auto& A = S.base();
        for (int trial = 0; trial < 4; ++trial) {
            auto st = random_structure(rng, f.L, S.cap(), 0.6);
            Derivation D = ce_differential(S, st);
            for (int n = 1; n <= S.cap(); ++n)
                for (const auto& head : multisets(L.rank(), n - 1))
                    for (int g = 0; g < L.rank(); ++g)
                        for (int b = 0; b < A.dim(); ++b) {
                            std::vector<ModuleElement> v;
                            for (int i : head) v.push_back(L.gen(i));
                            v.push_back(L.act(A.basis(b), L.gen(g)));
                            ModuleElement direct = st.bracket(v);
                            long before = st.tuple_degree(head);
                            for (int j = 0; j < L.rank(); ++j) {
                                int xd = S.letter_degree(j);
                                AlgebraElement lhs = S.evaluate(S.weight_part(D.on_letter[j], n), v);
                                std::vector<ModuleElement> rest(v.begin(), v.end() - 1);
                                lhs -= Scalar(minus_one_pow(long(xd) * before)) * st.anchor(rest, dual_pairing(S, j, v.back()));
                                lhs *= Scalar(-minus_one_pow(xd));
                                EXPECT_EQ(lhs, dual_pairing(S, j, direct));
                                ++checked;
                            }
                        }
        }
    }
    EXPECT_GT(checked, 100);
}

TEST(Residuals, ConjugatedStructuresPassEverything) {
    Sampler rng(24);
    for (const auto& f : all_fixtures())
        for (int trial = 0; trial < 4; ++trial) {
            auto st = conjugated_structure(rng, *f.S, *f.L);
            auto r = equivalence_report(*f.S, st);
            EXPECT_TRUE(r.square_empty());
            EXPECT_TRUE(r.jacobi.empty()) << r.jacobi.entries.front().site << " " << r.jacobi.entries.front().value;
            EXPECT_TRUE(r.leibniz.empty());
            EXPECT_TRUE(r.anchor.empty()) << r.anchor.entries.front().site << " " << r.anchor.entries.front().value;
        }
}

TEST(Residuals, ConjugatedStructuresAreNontrivial) {
    Sampler rng(25);
    auto f = mixed();
    int nontrivial = 0;
    for (int trial = 0; trial < 4; ++trial) {
        auto st = conjugated_structure(rng, *f.S, *f.L);
        for (int n = 2; n <= st.cap; ++n) nontrivial += !st.brackets[n].empty();
        for (int n = 1; n <= st.cap; ++n) nontrivial += !st.anchors[n].empty();
    }
    EXPECT_GT(nontrivial, 4);
}

// Random single-entry perturbations of valid structures: both sides fail or neither does.
TEST(Residuals, EquivalenceUnderPerturbation) {
    Sampler rng(26);
    int broken = 0, total = 0;
    for (const auto& f : all_fixtures()) {
        const auto& A = f.S->base();
        for (int trial = 0; trial < 12; ++trial) {
            auto st = conjugated_structure(rng, *f.S, *f.L);
            int n = rng.uniform(1, st.cap);
            auto ts = multisets(f.L->rank(), n);
            Tuple t = ts[rng.uniform(0, static_cast<int>(ts.size()) - 1)];
            if (!f.S->admissible(t)) continue;
            const int deg = st.tuple_degree(t) + 1;
            if (n >= 2 && rng.coin()) {
                ModuleElement v = rng.module_element(*f.L, deg, 0.7);
                if (v.is_zero()) continue;
                st.brackets[n][t] += v;
            } else {
                auto ders = derivations_of_degree(A, deg);
                if (ders.empty()) continue;
                AMap x = st.anchor_on_generators(t) + rng.scalar() * ders[rng.uniform(0, static_cast<int>(ders.size()) - 1)];
                st.set_anchor(t, x);
            }
            auto r = equivalence_report(*f.S, st);
            EXPECT_EQ(r.square_empty(), r.residuals_empty());
            ++total;
            broken += !r.square_empty();
        }
    }
    EXPECT_GT(total, 10);
    EXPECT_GT(3 * broken, total) << broken << "/" << total;
}

TEST(Residuals, RandomStructuresAgree) {
    Sampler rng(27);
    for (const auto& f : all_fixtures())
        for (int trial = 0; trial < 4; ++trial) {
            auto st = random_structure(rng, f.L, f.S->cap(), 0.3);
            auto r = equivalence_report(*f.S, st);
            EXPECT_EQ(r.square_empty(), r.residuals_empty());
        }
}

TEST(Leibniz, UnaryCaseIsModuleLeibniz) {
    auto f = mixed();
    AlgebroidStructure st(f.L, f.S->cap());
    EXPECT_TRUE(leibniz_residual(st, 1).empty());
}

TEST(Leibniz, NonDerivationAnchorFails) {
    auto f = mixed();
    const auto& A = f.S->base();
    AlgebroidStructure st(f.L, f.S->cap());
    // {h | -} with e1 -> e1 and e1 e2 -> 0: not a derivation
    AMap x = zero_map(A, 0);
    x.values[A.index_of("e1")] = A.basis(A.index_of("e1"));
    st.set_anchor({1}, x);
    EXPECT_FALSE(anchor_derivation_defect(st).empty());
    EXPECT_FALSE(leibniz_residual(st, 2).empty());
    EXPECT_TRUE(leibniz_residual(st, 1).empty());
}

TEST(Leibniz, DerivationAnchorsPass) {
    Sampler rng(28);
    for (const auto& f : all_fixtures()) {
        auto st = random_structure(rng, f.L, f.S->cap(), 0.5);
        EXPECT_TRUE(anchor_derivation_defect(st).empty());
        for (int n = 1; n <= st.cap; ++n) EXPECT_TRUE(leibniz_residual(st, n).empty()) << n;
    }
}

TEST(Anchor, ZeroAnchorsAndBrackets) {
    for (const auto& f : all_fixtures()) {
        AlgebroidStructure st(f.L, f.S->cap());
        for (int n = 1; n <= st.cap; ++n) EXPECT_TRUE(anchor_morphism_residual(st, n).empty());
    }
}

TEST(Anchor, NonCommutingAnchorsFail) {
    // p, q of degree -1 over Lambda[e1,e2]; {p|-} = e2 d/de1 and {q|-} = e1 d/de2 do not commute
    auto A = exterior_algebra(2);
    auto L = std::make_shared<FreeModule>(A, std::vector<std::string>{"p", "q"}, std::vector<int>{-1, -1});
    AlgebroidStructure st(L, 2);
    int e1 = A->index_of("e1"), e2 = A->index_of("e2");
    st.set_anchor({0}, AMap{0, extend_on_basis(*A, {{e1, A->basis(e2)}, {e2, {}}}, 0)});
    st.set_anchor({1}, AMap{0, extend_on_basis(*A, {{e1, {}}, {e2, A->basis(e1)}}, 0)});
    EXPECT_TRUE(anchor_derivation_defect(st).empty());
    EXPECT_TRUE(anchor_morphism_residual(st, 1).empty());
    auto r = anchor_morphism_residual(st, 2);
    ASSERT_FALSE(r.empty());
    EXPECT_EQ(r.lowest_weight(), 2);
    // the CE side sees the same failure
    SymAlgebra S(*L, 2);
    EXPECT_FALSE(square_components(S, ce_differential(S, st)).empty());
}

TEST(Structure, ValidationFlagsDegree) {
    auto f = mixed();
    AlgebroidStructure st(f.L, f.S->cap());
    st.brackets[2][{0, 0}] = f.L->gen(0);
    EXPECT_FALSE(validate_structure(st).empty());
}

TEST(Structure, SymmetricStorage) {
    auto f = mixed();
    AlgebroidStructure st(f.L, f.S->cap());
    // l(h, k) set through the reversed tuple
    st.set_bracket({2, 1}, f.L->gen(1));
    // (k, h) -> (h, k) swaps two odd generators? |h| = -1, |k| = 1: sign -1
    EXPECT_EQ(st.brackets[2].at({1, 2}), Scalar(-1) * f.L->gen(1));
    EXPECT_EQ(st.bracket_on_generators({2, 1}), f.L->gen(1));
}

}  // namespace
