#pragma once

#include "module.hpp"
#include "perm.hpp"

#include <functional>

namespace shlr {

// Sorted multiset of dual-generator (letter) indices.
using Monomial = std::vector<int>;

// c * e_a * xi^{m_1} ... xi^{m_r}: algebra coefficient on the left.
struct SymKey {
    Monomial m;
    int a = 0;
    friend bool operator<(const SymKey& x, const SymKey& y) {
        if (x.m.size() != y.m.size()) return x.m.size() < y.m.size();
        if (x.m != y.m) return x.m < y.m;
        return x.a < y.a;
    }
    friend bool operator==(const SymKey& x, const SymKey& y) { return x.a == y.a && x.m == y.m; }
};

using SymElement = SparseVec<SymKey>;

// All sorted multisets of size r over {0..n-1}.
inline std::vector<Monomial> multisets(int n, int r) {
    std::vector<Monomial> out;
    Monomial cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == r) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

inline long factorial(int k) {
    long r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

// Weight-truncated completed symmetric algebra over A on letters dual to a free module.
// Letter i is dual to generator i, of degree -|g_i|.
class SymAlgebra {
public:
    SymAlgebra(AlgebraPtr A, std::vector<int> generator_degrees, int weight_cap,
               std::vector<std::string> generator_names = {})
        : A_(std::move(A)), gen_deg_(std::move(generator_degrees)), W_(weight_cap),
          names_(std::move(generator_names)) {
        if (W_ < 0) throw std::invalid_argument("SymAlgebra: negative weight cap");
        if (names_.empty())
            for (std::size_t i = 0; i < gen_deg_.size(); ++i) names_.push_back("g" + std::to_string(i + 1));
        if (names_.size() != gen_deg_.size()) throw std::invalid_argument("SymAlgebra: names/degrees mismatch");
    }
    SymAlgebra(const FreeModule& L, int weight_cap) : SymAlgebra(L.base_ptr(), L.degrees(), weight_cap, L.names()) {}

    const BaseAlgebra& base() const { return *A_; }
    const AlgebraPtr& base_ptr() const { return A_; }
    int cap() const { return W_; }
    int letters() const { return static_cast<int>(gen_deg_.size()); }
    int generator_degree(int i) const { return gen_deg_[i]; }
    int letter_degree(int i) const { return -gen_deg_[i]; }
    const std::vector<int>& generator_degrees() const { return gen_deg_; }
    const std::vector<std::string>& generator_names() const { return names_; }

    bool compatible(const SymAlgebra& o) const { return A_ == o.A_ && gen_deg_ == o.gen_deg_ && W_ == o.W_; }

    int monomial_degree(const Monomial& m) const {
        int d = 0;
        for (int i : m) d += letter_degree(i);
        return d;
    }
    int term_degree(const SymKey& k) const { return monomial_degree(k.m) + A_->degree(k.a); }
    bool admissible(const Monomial& m) const {
        for (std::size_t p = 1; p < m.size(); ++p)
            if (m[p] == m[p - 1] && (letter_degree(m[p]) & 1)) return false;
        return true;
    }

    // ---- constructors ----
    SymElement from_algebra(const AlgebraElement& x) const {
        SymElement r;
        for (const auto& [a, c] : x) r.add({{}, a}, c);
        return r;
    }
    SymElement one() const { return from_algebra(A_->one()); }
    SymElement letter(int i) const { return SymElement({{i}, A_->unit()}, Scalar(1)); }
    SymElement monomial(Monomial m, const AlgebraElement& coeff) const {
        std::sort(m.begin(), m.end());
        SymElement r;
        if (static_cast<int>(m.size()) > W_ || !admissible(m)) return r;
        for (const auto& [a, c] : coeff) r.add({m, a}, c);
        return r;
    }

    // ---- structure ----
    // sign of sorting the concatenated word m1 m2; 0 if an odd letter repeats
    std::pair<int, Monomial> merge(const Monomial& m1, const Monomial& m2) const {
        Monomial out;
        out.reserve(m1.size() + m2.size());
        int odd = 0;
        std::size_t p = 0, q = 0;
        while (p < m1.size() || q < m2.size()) {
            if (q == m2.size() || (p < m1.size() && m1[p] <= m2[q])) {
                if (q < m2.size() && m1[p] == m2[q] && (letter_degree(m1[p]) & 1)) return {0, {}};
                out.push_back(m1[p++]);
            } else {
                // m2[q] jumps over the remaining m1[p..]
                if (letter_degree(m2[q]) & 1)
                    for (std::size_t t = p; t < m1.size(); ++t)
                        if (letter_degree(m1[t]) & 1) ++odd;
                out.push_back(m2[q++]);
            }
        }
        return {odd % 2 ? -1 : 1, std::move(out)};
    }

    SymElement mul(const SymElement& x, const SymElement& y) const {
        SymElement r;
        for (const auto& [kx, cx] : x)
            for (const auto& [ky, cy] : y) {
                if (static_cast<int>(kx.m.size() + ky.m.size()) > W_) continue;
                auto [s, m] = merge(kx.m, ky.m);
                if (s == 0) continue;
                if ((monomial_degree(kx.m) & 1) && (A_->degree(ky.a) & 1)) s = -s;
                Scalar c = cx * cy * Scalar(s);
                for (const auto& [g, cg] : A_->product(kx.a, ky.a)) r.add({m, g}, c * cg);
            }
        return r;
    }

    SymElement weight_part(const SymElement& x, int w) const {
        SymElement r;
        for (const auto& [k, c] : x)
            if (static_cast<int>(k.m.size()) == w) r.add(k, c);
        return r;
    }
    SymElement truncate(const SymElement& x, int w) const {
        SymElement r;
        for (const auto& [k, c] : x)
            if (static_cast<int>(k.m.size()) <= w) r.add(k, c);
        return r;
    }
    std::optional<int> degree_of(const SymElement& x) const {
        std::optional<int> deg;
        for (const auto& [k, c] : x) {
            if (deg && *deg != term_degree(k)) throw std::invalid_argument("inhomogeneous symmetric element");
            deg = term_degree(k);
        }
        return deg;
    }
    std::map<int, SymElement> homogeneous_parts(const SymElement& x) const {
        std::map<int, SymElement> parts;
        for (const auto& [k, c] : x) parts[term_degree(k)].add(k, c);
        return parts;
    }
    // Coefficient of a given monomial as an algebra element.
    AlgebraElement coefficient(const SymElement& x, const Monomial& m) const {
        AlgebraElement r;
        for (const auto& [k, c] : x)
            if (k.m == m) r.add(k.a, c);
        return r;
    }

    // ---- multilinear-map view ----
    // Value of the monomial on its own sorted generator tuple.
    Scalar self_pairing(const Monomial& m) const {
        long mult = 1;
        int run = 1;
        for (std::size_t p = 1; p <= m.size(); ++p) {
            if (p < m.size() && m[p] == m[p - 1]) ++run;
            else {
                mult *= factorial(run);
                run = 1;
            }
        }
        int odd = 0;
        for (std::size_t p = 0; p < m.size(); ++p)
            for (std::size_t q = p + 1; q < m.size(); ++q)
                if ((gen_deg_[m[p]] & 1) && (gen_deg_[m[q]] & 1)) ++odd;
        return Scalar(odd % 2 ? -mult : mult);
    }

    // eta(g_{t_1}, ..., g_{t_r}) for a tuple of generator indices.
    AlgebraElement evaluate_generators(const SymElement& eta, const std::vector<int>& tuple) const {
        if (static_cast<int>(tuple.size()) > W_) throw std::invalid_argument("evaluate: arity exceeds weight cap");
        Permutation s = sorting_permutation(tuple);
        Monomial sorted(tuple.size());
        std::vector<int> degs(tuple.size());
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            sorted[i] = tuple[s(i)];
            degs[i] = gen_deg_[tuple[i]];
        }
        AlgebraElement r = coefficient(eta, sorted);
        if (r.is_zero()) return r;
        r *= self_pairing(sorted) * Scalar(sym_sign(s, degs));
        return r;
    }

    // eta(v_1, ..., v_r) for module elements, pulling coefficients out with the Koszul rule.
    AlgebraElement evaluate(const SymElement& eta, const std::vector<ModuleElement>& args) const {
        const int r = static_cast<int>(args.size());
        if (r > W_) throw std::invalid_argument("evaluate: arity exceeds weight cap");
        AlgebraElement total;
        for (const auto& [deg_eta, part] : homogeneous_parts(weight_part(eta, r))) {
            std::vector<std::pair<std::pair<int, int>, Scalar>> pick(r);
            std::function<void(int)> rec = [&](int k) {
                if (k == r) {
                    std::vector<int> tuple(r);
                    AlgebraElement coeff = A_->one();
                    Scalar c(1);
                    long sign_exp = 0, before = deg_eta;
                    for (int i = 0; i < r; ++i) {
                        const auto& [key, ci] = pick[i];
                        tuple[i] = key.first;
                        c *= ci;
                        sign_exp += long(A_->degree(key.second)) * before;
                        before += gen_deg_[key.first];
                        coeff = A_->mul(coeff, A_->basis(key.second));
                    }
                    if (coeff.is_zero()) return;
                    AlgebraElement val = evaluate_generators(part, tuple);
                    if (val.is_zero()) return;
                    total += (c * Scalar(minus_one_pow(sign_exp))) * A_->mul(coeff, val);
                    return;
                }
                for (const auto& kv : args[k]) {
                    pick[k] = {kv.first, kv.second};
                    rec(k + 1);
                }
            };
            rec(0);
        }
        return total;
    }

    // Element of weight r whose values on sorted generator tuples are given.
    SymElement from_values(int r, const std::function<AlgebraElement(const Monomial&)>& value) const {
        SymElement out;
        for (const auto& m : multisets(letters(), r)) {
            AlgebraElement v = value(m);
            if (v.is_zero()) continue;
            if (!admissible(m)) throw std::invalid_argument("from_values: nonzero value on a tuple repeating an odd generator");
            v *= Scalar(1) / self_pairing(m);
            for (const auto& [a, c] : v) out.add({m, a}, c);
        }
        return out;
    }

    std::string letter_name(int i) const { return names_[i] + "^"; }
    std::string format_key(const SymKey& k) const {
        std::string s = k.a == A_->unit() ? std::string() : A_->name(k.a);
        for (int i : k.m) s += (s.empty() ? "" : "*") + letter_name(i);
        return s.empty() ? "1" : s;
    }
    std::string format(const SymElement& x) const {
        if (x.is_zero()) return "0";
        std::string out;
        for (const auto& [k, c] : x) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")*" + format_key(k);
        }
        return out;
    }

private:
    AlgebraPtr A_;
    std::vector<int> gen_deg_;
    int W_;
    std::vector<std::string> names_;
};

// Graded derivation of the symmetric algebra, stored by its values on the A-basis and on letters.
struct Derivation {
    int degree = 1;
    std::vector<SymElement> on_basis;
    std::vector<SymElement> on_letter;

    friend bool operator==(const Derivation& x, const Derivation& y) {
        return x.degree == y.degree && x.on_basis == y.on_basis && x.on_letter == y.on_letter;
    }
    bool is_zero() const {
        for (const auto& v : on_basis)
            if (!v.is_zero()) return false;
        for (const auto& v : on_letter)
            if (!v.is_zero()) return false;
        return true;
    }
};

inline Derivation zero_derivation(const SymAlgebra& S, int degree = 1) {
    return {degree, std::vector<SymElement>(S.base().dim()), std::vector<SymElement>(S.letters())};
}

// D restricted to the base is d_A; on letters it is the dual of d_L.
inline Derivation d0_derivation(const SymAlgebra& S, const FreeModule& L) {
    Derivation D = zero_derivation(S, 1);
    const auto& A = S.base();
    for (int a = 0; a < A.dim(); ++a) D.on_basis[a] = S.from_algebra(A.d_basis(a));
    for (int j = 0; j < S.letters(); ++j) {
        // (D xi^j)(g_i) = -(-1)^{|xi^j|} xi^j(d_L g_i)
        Scalar s(-minus_one_pow(S.letter_degree(j)));
        D.on_letter[j] = S.from_values(1, [&](const Monomial& m) {
            AlgebraElement v = L.coefficient(L.d_gen(m[0]), j);
            AlgebraElement out;
            for (const auto& [deg, part] : A.homogeneous_parts(v))
                out += Scalar(minus_one_pow(long(deg) * S.letter_degree(j))) * part;
            return s * out;
        });
    }
    return D;
}

inline Derivation operator+(Derivation x, const Derivation& y) {
    for (std::size_t i = 0; i < x.on_basis.size(); ++i) x.on_basis[i] += y.on_basis[i];
    for (std::size_t i = 0; i < x.on_letter.size(); ++i) x.on_letter[i] += y.on_letter[i];
    return x;
}
inline Derivation operator-(Derivation x, const Derivation& y) {
    for (std::size_t i = 0; i < x.on_basis.size(); ++i) x.on_basis[i] -= y.on_basis[i];
    for (std::size_t i = 0; i < x.on_letter.size(); ++i) x.on_letter[i] -= y.on_letter[i];
    return x;
}
inline Derivation operator*(const Scalar& s, Derivation x) {
    for (auto& v : x.on_basis) v *= s;
    for (auto& v : x.on_letter) v *= s;
    return x;
}

// Part of D raising weight by exactly n.
inline Derivation shift_part(const SymAlgebra& S, const Derivation& D, int n) {
    Derivation r = zero_derivation(S, D.degree);
    for (std::size_t a = 0; a < D.on_basis.size(); ++a) r.on_basis[a] = S.weight_part(D.on_basis[a], n);
    for (std::size_t j = 0; j < D.on_letter.size(); ++j) r.on_letter[j] = S.weight_part(D.on_letter[j], n + 1);
    return r;
}

inline Derivation truncate(const SymAlgebra& S, const Derivation& D, int max_shift) {
    Derivation r = zero_derivation(S, D.degree);
    for (std::size_t a = 0; a < D.on_basis.size(); ++a) r.on_basis[a] = S.truncate(D.on_basis[a], max_shift);
    for (std::size_t j = 0; j < D.on_letter.size(); ++j) r.on_letter[j] = S.truncate(D.on_letter[j], max_shift + 1);
    return r;
}

// D(eta), extended from generators by the graded Leibniz rule; truncated at the cap.
inline SymElement apply(const SymAlgebra& S, const Derivation& D, const SymElement& eta) {
    SymElement out;
    const auto& A = S.base();
    for (const auto& [k, c] : eta) {
        SymElement word = S.monomial(k.m, A.one());
        // D(e_a) * m
        if (!D.on_basis[k.a].is_zero()) out += c * S.mul(D.on_basis[k.a], word);
        // (-1)^{|D||a|} e_a * D(m)
        Scalar sa = c * Scalar(minus_one_pow(long(D.degree) * A.degree(k.a)));
        SymElement ea = S.from_algebra(A.basis(k.a));
        long before = 0;
        for (std::size_t p = 0; p < k.m.size(); ++p) {
            const SymElement& dv = D.on_letter[k.m[p]];
            if (!dv.is_zero()) {
                Monomial pre(k.m.begin(), k.m.begin() + p), post(k.m.begin() + p + 1, k.m.end());
                SymElement t = S.mul(S.mul(S.monomial(pre, A.basis(k.a)), dv), S.monomial(post, A.one()));
                out += (sa * Scalar(minus_one_pow(long(D.degree) * before))) * t;
            }
            before += S.letter_degree(k.m[p]);
        }
    }
    return out;
}

// Composite D o E on generators (not a derivation in general).
inline Derivation compose_on_generators(const SymAlgebra& S, const Derivation& D, const Derivation& E) {
    Derivation r = zero_derivation(S, D.degree + E.degree);
    for (std::size_t a = 0; a < E.on_basis.size(); ++a) r.on_basis[a] = apply(S, D, E.on_basis[a]);
    for (std::size_t j = 0; j < E.on_letter.size(); ++j) r.on_letter[j] = apply(S, D, E.on_letter[j]);
    return r;
}

// Graded commutator [D, E] = DE - (-1)^{|D||E|} ED, itself a derivation.
inline Derivation commutator(const SymAlgebra& S, const Derivation& D, const Derivation& E) {
    Derivation de = compose_on_generators(S, D, E), ed = compose_on_generators(S, E, D);
    return de - Scalar(minus_one_pow(long(D.degree) * E.degree)) * ed;
}

// Check that D restricted to the base satisfies Leibniz into the symmetric algebra.
inline Residual derivation_consistency(const SymAlgebra& S, const Derivation& D) {
    Residual res{"derivation_consistency", {}};
    const auto& A = S.base();
    for (int a = 0; a < A.dim(); ++a)
        for (int b = 0; b < A.dim(); ++b) {
            SymElement lhs = apply(S, D, S.from_algebra(A.product(a, b)));
            lhs -= S.mul(D.on_basis[a], S.from_algebra(A.basis(b)));
            lhs -= Scalar(minus_one_pow(long(D.degree) * A.degree(a))) *
                   S.mul(S.from_algebra(A.basis(a)), D.on_basis[b]);
            if (!lhs.is_zero()) res.add(0, A.name(a) + "," + A.name(b), S.format(lhs));
        }
    return res;
}

// Degree bookkeeping of stored values.
inline Residual derivation_degree_check(const SymAlgebra& S, const Derivation& D) {
    Residual res{"derivation_degree", {}};
    const auto& A = S.base();
    for (int a = 0; a < A.dim(); ++a)
        for (const auto& [k, c] : D.on_basis[a])
            if (S.term_degree(k) != A.degree(a) + D.degree) {
                res.add(static_cast<int>(k.m.size()), A.name(a), "value of wrong degree: " + S.format_key(k));
                break;
            }
    for (int j = 0; j < S.letters(); ++j)
        for (const auto& [k, c] : D.on_letter[j]) {
            if (S.term_degree(k) != S.letter_degree(j) + D.degree) {
                res.add(static_cast<int>(k.m.size()) - 1, S.letter_name(j), "value of wrong degree: " + S.format_key(k));
                break;
            }
            if (k.m.empty()) {
                res.add(-1, S.letter_name(j), "letter mapped to weight zero");
                break;
            }
        }
    return res;
}

// Components of D o D: entry weight n holds the shift-n part on each generator.
inline Residual square_components(const SymAlgebra& S, const Derivation& D) {
    Residual res{"square", {}};
    Derivation sq = compose_on_generators(S, D, D);
    const auto& A = S.base();
    for (int n = 0; n <= S.cap(); ++n) {
        for (int a = 0; a < A.dim(); ++a) {
            SymElement v = S.weight_part(sq.on_basis[a], n);
            if (!v.is_zero()) res.add(n, A.name(a), S.format(v));
        }
        if (n + 1 > S.cap()) continue;
        for (int j = 0; j < S.letters(); ++j) {
            SymElement v = S.weight_part(sq.on_letter[j], n + 1);
            if (!v.is_zero()) res.add(n, S.letter_name(j), S.format(v));
        }
    }
    return res;
}

// Degree-0 algebra automorphism inducing the identity on the weight-graded algebra.
struct FilteredAutomorphism {
    std::vector<SymElement> on_basis;
    std::vector<SymElement> on_letter;
};

inline FilteredAutomorphism identity_automorphism(const SymAlgebra& S) {
    FilteredAutomorphism f;
    for (int a = 0; a < S.base().dim(); ++a) f.on_basis.push_back(S.from_algebra(S.base().basis(a)));
    for (int j = 0; j < S.letters(); ++j) f.on_letter.push_back(S.letter(j));
    return f;
}

inline bool is_unipotent(const SymAlgebra& S, const FilteredAutomorphism& f) {
    const auto& A = S.base();
    for (int a = 0; a < A.dim(); ++a) {
        SymElement d = f.on_basis[a];
        d -= S.from_algebra(A.basis(a));
        for (const auto& [k, c] : d)
            if (k.m.empty()) return false;
        for (const auto& [k, c] : f.on_basis[a])
            if (S.term_degree(k) != A.degree(a)) return false;
    }
    for (int j = 0; j < S.letters(); ++j) {
        SymElement d = f.on_letter[j];
        d -= S.letter(j);
        for (const auto& [k, c] : d)
            if (k.m.size() < 2) return false;
        for (const auto& [k, c] : f.on_letter[j])
            if (S.term_degree(k) != S.letter_degree(j)) return false;
    }
    return true;
}

inline SymElement apply(const SymAlgebra& S, const FilteredAutomorphism& f, const SymElement& eta) {
    SymElement out;
    for (const auto& [k, c] : eta) {
        SymElement t = f.on_basis[k.a];
        for (int i : k.m) {
            if (t.is_zero()) break;
            t = S.mul(t, f.on_letter[i]);
        }
        out += c * t;
    }
    return out;
}

// Inverse by successive approximation y <- y + (x - f(y)), exact up to the cap.
inline FilteredAutomorphism inverse(const SymAlgebra& S, const FilteredAutomorphism& f) {
    if (!is_unipotent(S, f)) throw std::invalid_argument("automorphism is not the identity on the graded algebra");
    auto solve = [&](const SymElement& x) {
        SymElement y = x;
        for (int it = 0; it <= S.cap(); ++it) {
            SymElement delta = x;
            delta -= apply(S, f, y);
            if (delta.is_zero()) break;
            y += delta;
        }
        return y;
    };
    FilteredAutomorphism g;
    for (int a = 0; a < S.base().dim(); ++a) g.on_basis.push_back(solve(S.from_algebra(S.base().basis(a))));
    for (int j = 0; j < S.letters(); ++j) g.on_letter.push_back(solve(S.letter(j)));
    return g;
}

// exp(X) for a degree-0 derivation X raising weight.
inline FilteredAutomorphism exponential(const SymAlgebra& S, const Derivation& X) {
    if (X.degree != 0) throw std::invalid_argument("exponential: derivation must have degree 0");
    auto ex = [&](const SymElement& x) {
        SymElement total = x, term = x;
        for (int k = 1; k <= S.cap() + 1; ++k) {
            term = apply(S, X, term);
            if (term.is_zero()) break;
            total += (Scalar(1) / Scalar(factorial(k))) * term;
        }
        return total;
    };
    FilteredAutomorphism f;
    for (int a = 0; a < S.base().dim(); ++a) f.on_basis.push_back(ex(S.from_algebra(S.base().basis(a))));
    for (int j = 0; j < S.letters(); ++j) f.on_letter.push_back(ex(S.letter(j)));
    return f;
}

// f o D o f^{-1}, given by its values on generators.
inline Derivation conjugate(const SymAlgebra& S, const FilteredAutomorphism& f, const Derivation& D) {
    FilteredAutomorphism g = inverse(S, f);
    Derivation r = zero_derivation(S, D.degree);
    for (int a = 0; a < S.base().dim(); ++a) r.on_basis[a] = apply(S, f, apply(S, D, g.on_basis[a]));
    for (int j = 0; j < S.letters(); ++j) r.on_letter[j] = apply(S, f, apply(S, D, g.on_letter[j]));
    return r;
}

struct MaurerCartanReport {
    Derivation omega;
    Residual residual;
};

// omega = f D0 f^{-1} - D0; residual of D0 omega + omega D0 + omega omega = [D0, omega] + 1/2 [omega, omega].
inline MaurerCartanReport mc_residual(const SymAlgebra& S, const Derivation& D0, const FilteredAutomorphism& f) {
    MaurerCartanReport rep{conjugate(S, f, D0) - D0, {"maurer_cartan", {}}};
    Derivation lhs = compose_on_generators(S, D0, rep.omega) + compose_on_generators(S, rep.omega, D0) +
                     compose_on_generators(S, rep.omega, rep.omega);
    const auto& A = S.base();
    for (int a = 0; a < A.dim(); ++a)
        for (const auto& [w, part] : [&] {
                 std::map<int, SymElement> m;
                 for (const auto& [k, c] : lhs.on_basis[a]) m[static_cast<int>(k.m.size())].add(k, c);
                 return m;
             }())
            rep.residual.add(w, A.name(a), S.format(part));
    for (int j = 0; j < S.letters(); ++j) {
        std::map<int, SymElement> m;
        for (const auto& [k, c] : lhs.on_letter[j]) m[static_cast<int>(k.m.size())].add(k, c);
        for (const auto& [w, part] : m) rep.residual.add(w - 1, S.letter_name(j), S.format(part));
    }
    return rep;
}

}  // namespace shlr
