#pragma once

#include "symtensor.hpp"

#include <random>

namespace shlr {

// Small-integer random data for fixtures and property tests.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& engine() { return rng_; }
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
    Scalar scalar(int range = 3) {
        int v = 0;
        while (v == 0) v = uniform(-range, range);
        return Scalar(v);
    }
    Scalar gaussian_scalar(int range = 2) {
        Scalar s = scalar(range);
        if (coin(0.25)) s += Scalar(0, 1) * Scalar(uniform(-range, range));
        if (s.is_zero()) s = Scalar(1);
        return s;
    }

    // Random element of A of the given degree (may be zero if the degree is empty).
    AlgebraElement algebra_element(const BaseAlgebra& A, int degree, double density = 0.6) {
        AlgebraElement x;
        for (int a = 0; a < A.dim(); ++a)
            if (A.degree(a) == degree && coin(density)) x.add(a, scalar());
        return x;
    }

    ModuleElement module_element(const FreeModule& L, int degree, double density = 0.5) {
        ModuleElement v;
        for (int i = 0; i < L.rank(); ++i)
            for (int a = 0; a < L.base().dim(); ++a)
                if (L.degree(i) + L.base().degree(a) == degree && coin(density)) v.add({i, a}, scalar());
        return v;
    }

    // Random homogeneous element with weights in [wmin, wmax].
    SymElement sym_element(const SymAlgebra& S, int degree, int wmin, int wmax, double density = 0.3) {
        SymElement x;
        for (int w = wmin; w <= std::min(wmax, S.cap()); ++w)
            for (const auto& m : multisets(S.letters(), w)) {
                if (!S.admissible(m)) continue;
                for (int a = 0; a < S.base().dim(); ++a)
                    if (S.term_degree({m, a}) == degree && coin(density)) x.add({m, a}, scalar());
            }
        return x;
    }

    // Random combination of a basis of Der^k(A).
    AMap derivation_of_A(const BaseAlgebra& A, int k, double density = 0.7) {
        AMap D = zero_map(A, k);
        for (const auto& b : derivations_of_degree(A, k))
            if (coin(density)) D = D + scalar() * b;
        return D;
    }

    // Random degree-k derivation of the symmetric algebra raising weight by shifts in [smin, smax].
    Derivation derivation(const SymAlgebra& S, int k, int smin, int smax, double density = 0.3) {
        Derivation D = zero_derivation(S, k);
        const auto& A = S.base();
        for (int s = smin; s <= std::min(smax, S.cap()); ++s)
            for (const auto& m : multisets(S.letters(), s)) {
                if (!S.admissible(m)) continue;
                if (!coin(density)) continue;
                AMap delta = derivation_of_A(A, k - S.monomial_degree(m));
                if (delta.is_zero()) continue;
                SymElement word = S.monomial(m, A.one());
                for (int a = 0; a < A.dim(); ++a)
                    D.on_basis[a] += S.mul(word, S.from_algebra(delta.values[a]));
            }
        for (int j = 0; j < S.letters(); ++j)
            D.on_letter[j] = sym_element(S, S.letter_degree(j) + k, std::max(1, smin + 1), smax + 1, density);
        return D;
    }

    // exp(X) with X a random degree-0 derivation of positive shift.
    FilteredAutomorphism unipotent(const SymAlgebra& S, double density = 0.3) {
        return exponential(S, derivation(S, 0, 1, S.cap(), density));
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace shlr
