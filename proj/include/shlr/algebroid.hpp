#pragma once

#include "linfty.hpp"
#include "random.hpp"

namespace shlr {

// L-infinity[1]-algebroid over a fixed dga A on a free module L. The unary bracket is d_L (carried by
// the module) and the unary anchor is d_A. Higher data lives on sorted generator tuples:
// brackets[n][T] = l_n(g_T) for 2 <= n <= cap, anchors[k][T] = {g_T | -}_{k+1} for 1 <= k <= cap.
struct AlgebroidStructure {
    ModulePtr carrier;
    int cap = 4;
    std::vector<std::map<Tuple, ModuleElement>> brackets;
    std::vector<std::map<Tuple, AMap>> anchors;

    AlgebroidStructure() = default;
    AlgebroidStructure(ModulePtr L, int arity_cap)
        : carrier(std::move(L)), cap(arity_cap), brackets(arity_cap + 1), anchors(arity_cap + 1) {}

    const FreeModule& module() const { return *carrier; }
    const BaseAlgebra& base() const { return carrier->base(); }

    int tuple_degree(const Tuple& t) const {
        int s = 0;
        for (int i : t) s += carrier->degree(i);
        return s;
    }
    std::string tuple_name(const Tuple& t) const {
        std::string s = "(";
        for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + carrier->name(t[i]);
        return s + ")";
    }

    // Sort a tuple; returns the sorted tuple and the Koszul sign relating the two orders.
    std::pair<Tuple, int> canonical(const Tuple& t) const {
        Permutation s = sorting_permutation(t);
        Tuple sorted(t.size());
        std::vector<int> d(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            sorted[i] = t[s(i)];
            d[i] = carrier->degree(t[i]);
        }
        return {sorted, sym_sign(s, d)};
    }

    void set_bracket(const Tuple& t, const ModuleElement& v) {
        if (t.size() < 2 || static_cast<int>(t.size()) > cap) throw std::invalid_argument("bracket arity out of range");
        auto [sorted, sign] = canonical(t);
        ModuleElement val = Scalar(sign) * v;
        if (val.is_zero()) brackets[t.size()].erase(sorted);
        else brackets[t.size()][sorted] = val;
    }
    void set_anchor(const Tuple& t, const AMap& x) {
        if (t.empty() || static_cast<int>(t.size()) > cap) throw std::invalid_argument("anchor arity out of range");
        auto [sorted, sign] = canonical(t);
        AMap val = Scalar(sign) * x;
        if (val.is_zero()) anchors[t.size()].erase(sorted);
        else anchors[t.size()][sorted] = val;
    }

    ModuleElement bracket_on_generators(const Tuple& t) const {
        if (t.size() == 1) return carrier->d_gen(t[0]);
        if (t.empty() || static_cast<int>(t.size()) > cap) return {};
        auto [sorted, sign] = canonical(t);
        auto it = brackets[t.size()].find(sorted);
        if (it == brackets[t.size()].end()) return {};
        return Scalar(sign) * it->second;
    }

    // The derivation {g_T | -} of A, of degree 1 + sum |g|.
    AMap anchor_on_generators(const Tuple& t) const {
        if (t.empty()) return differential_map(base());
        const int deg = 1 + tuple_degree(t);
        if (static_cast<int>(t.size()) > cap) return zero_map(base(), deg);
        auto [sorted, sign] = canonical(t);
        auto it = anchors[t.size()].find(sorted);
        if (it == anchors[t.size()].end()) return zero_map(base(), deg);
        return Scalar(sign) * it->second;
    }

    // {v_1, ..., v_k | a}, A-multilinear: {.., b v_i, ..|a} = (-1)^{|b|(1 + |v_1| + .. + |v_{i-1}|)} b {.., v_i, ..|a}.
    AlgebraElement anchor(const std::vector<ModuleElement>& args, const AlgebraElement& a) const {
        const auto& A = base();
        const int k = static_cast<int>(args.size());
        AlgebraElement total;
        Tuple t(k);
        std::function<void(int, Scalar, AlgebraElement, long, long)> rec = [&](int i, Scalar c, AlgebraElement coeff,
                                                                              long sign_exp, long before) {
            if (coeff.is_zero()) return;
            if (i == k) {
                AlgebraElement v = anchor_on_generators(t).apply(a);
                if (v.is_zero()) return;
                total += (c * Scalar(minus_one_pow(sign_exp))) * A.mul(coeff, v);
                return;
            }
            for (const auto& [key, ci] : args[i]) {
                t[i] = key.first;
                long bdeg = A.degree(key.second);
                rec(i + 1, c * ci, A.mul(coeff, A.basis(key.second)), sign_exp + bdeg * (1 + before),
                    before + carrier->degree(key.first));
            }
        };
        rec(0, Scalar(1), A.one(), 0, 0);
        return total;
    }

    // l_n(v_1, ..., v_n) extended from generator tuples by symmetry and the Leibniz rule
    // l(w.., b g) = {w..|b} g + (-1)^{|b|(|w| + 1)} b l(w.., g).
    ModuleElement bracket(const std::vector<ModuleElement>& args) const {
        const int n = static_cast<int>(args.size());
        ModuleElement total;
        if (n == 0 || n > cap) return total;
        std::vector<std::pair<int, int>> t(n);
        std::function<void(int, Scalar)> rec = [&](int i, Scalar c) {
            if (i == n) {
                total += c * bracket_on_terms(t);
                return;
            }
            for (const auto& [key, ci] : args[i]) {
                t[i] = key;
                rec(i + 1, c * ci);
            }
        };
        rec(0, Scalar(1));
        return total;
    }

private:
    // Terms are (generator, basis element) pairs standing for e_b g.
    ModuleElement bracket_on_terms(std::vector<std::pair<int, int>> t) const {
        const auto& A = base();
        const auto& L = *carrier;
        int k = -1;
        for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i)
            if (t[i].second != A.unit()) {
                k = i;
                break;
            }
        if (k < 0) {
            Tuple g;
            for (const auto& p : t) g.push_back(p.first);
            return bracket_on_generators(g);
        }
        auto term_deg = [&](const std::pair<int, int>& p) { return L.degree(p.first) + A.degree(p.second); };
        long after = 0;
        for (std::size_t l = k + 1; l < t.size(); ++l) after += term_deg(t[l]);
        Scalar sign(minus_one_pow(after * term_deg(t[k])));
        auto x = t[k];
        t.erase(t.begin() + k);
        std::vector<ModuleElement> w;
        long wdeg = 0;
        for (const auto& p : t) {
            w.push_back(ModuleElement(p, Scalar(1)));
            wdeg += term_deg(p);
        }
        ModuleElement out = L.act(anchor(w, A.basis(x.second)), L.gen(x.first));
        t.push_back({x.first, A.unit()});
        Scalar s2(minus_one_pow(long(A.degree(x.second)) * (wdeg + 1)));
        out += s2 * L.act(A.basis(x.second), bracket_on_terms(t));
        return sign * out;
    }
};

inline bool operator==(const AlgebroidStructure& x, const AlgebroidStructure& y) {
    return x.cap == y.cap && x.brackets == y.brackets && x.anchors == y.anchors &&
           x.carrier->degrees() == y.carrier->degrees() && [&] {
               for (int i = 0; i < x.carrier->rank(); ++i)
                   if (!(x.carrier->d_gen(i) == y.carrier->d_gen(i))) return false;
               return true;
           }();
}

// Storage checks: degrees, forced zeros on repeated odd generators, arity ranges.
inline Residual validate_structure(const AlgebroidStructure& S) {
    Residual res{"structure", {}};
    const auto& L = S.module();
    const auto& A = S.base();
    for (int i = 0; i < L.rank(); ++i)
        for (const auto& [k, c] : L.d_gen(i))
            if (L.term_degree(k) != L.degree(i) + 1) {
                res.add(1, "d" + L.name(i), "d_L is not of degree one");
                break;
            }
    auto forced = [&](const Tuple& t) {
        for (std::size_t p = 1; p < t.size(); ++p)
            if (t[p] == t[p - 1] && (L.degree(t[p]) & 1)) return true;
        return false;
    };
    for (int n = 2; n <= S.cap; ++n)
        for (const auto& [t, v] : S.brackets[n]) {
            if (forced(t)) res.add(n, S.tuple_name(t), "nonzero bracket on a repeated odd generator");
            for (const auto& [k, c] : v)
                if (L.term_degree(k) != S.tuple_degree(t) + 1) {
                    res.add(n, S.tuple_name(t), "bracket value of wrong degree");
                    break;
                }
        }
    for (int n = 1; n <= S.cap; ++n)
        for (const auto& [t, x] : S.anchors[n]) {
            if (forced(t)) res.add(n, S.tuple_name(t), "nonzero anchor on a repeated odd generator");
            if (x.degree != 1 + S.tuple_degree(t)) res.add(n, S.tuple_name(t), "anchor of wrong degree");
            for (int a = 0; a < A.dim(); ++a)
                for (const auto& [b, c] : x.values[a])
                    if (A.degree(b) != A.degree(a) + x.degree) {
                        res.add(n, S.tuple_name(t) + "|" + A.name(a), "anchor value of wrong degree");
                        break;
                    }
        }
    return res;
}

// xi^j(v) for a module element, with xi^j(c e_b g_i) = (-1)^{|b||xi^j|} c e_b delta_ij.
inline AlgebraElement dual_pairing(const SymAlgebra& S, int j, const ModuleElement& v) {
    AlgebraElement r;
    for (const auto& [k, c] : v)
        if (k.first == j) r.add(k.second, c * Scalar(minus_one_pow(long(S.base().degree(k.second)) * S.letter_degree(j))));
    return r;
}

// Chevalley-Eilenberg differential D = sum D_n:
//   (D_n a)(g_T) = (-1)^{|a| |g_T|} {g_T | a}_{n+1}
//   (D_n xi)(g_T) = -(-1)^{|xi|} xi(l_{n+1}(g_T))   (anchors kill the constants xi(g_i))
inline Derivation ce_differential(const SymAlgebra& S, const AlgebroidStructure& st) {
    const auto& A = S.base();
    if (S.base_ptr() != st.carrier->base_ptr() || S.generator_degrees() != st.carrier->degrees())
        throw std::invalid_argument("ce_differential: symmetric algebra does not match the carrier");
    if (st.cap > S.cap()) throw std::invalid_argument("ce_differential: weight cap too small to hold arity cap");
    Derivation D = zero_derivation(S, 1);
    for (int a = 0; a < A.dim(); ++a) {
        D.on_basis[a] = S.from_algebra(A.d_basis(a));
        for (int n = 1; n <= S.cap(); ++n)
            D.on_basis[a] += S.from_values(n, [&](const Monomial& m) {
                Scalar s(minus_one_pow(long(A.degree(a)) * st.tuple_degree(m)));
                AlgebraElement v = st.anchor_on_generators(m).apply(A.basis(a));
                return AlgebraElement(s * v);
            });
    }
    for (int j = 0; j < S.letters(); ++j) {
        Scalar s(-minus_one_pow(S.letter_degree(j)));
        for (int n = 0; n + 1 <= S.cap(); ++n)
            D.on_letter[j] += S.from_values(n + 1, [&](const Monomial& m) {
                return AlgebraElement(s * dual_pairing(S, j, st.bracket_on_generators(m)));
            });
    }
    return D;
}

// Inverse of ce_differential: reads d_L, brackets and anchors off a degree-one derivation whose
// weight-preserving part on A is d_A.
inline AlgebroidStructure extract_structure(const SymAlgebra& S, const Derivation& D) {
    const auto& A = S.base();
    if (D.degree != 1) throw std::invalid_argument("extract_structure: derivation is not of degree one");
    for (int a = 0; a < A.dim(); ++a)
        if (!(S.weight_part(D.on_basis[a], 0) == S.from_algebra(A.d_basis(a))))
            throw std::invalid_argument("extract_structure: weight-zero part differs from d_A on " + A.name(a));
    const int rank = S.letters();
    std::vector<std::string> names = S.generator_names();
    // coefficient of g_j in l(g_T) from X = -(-1)^{|xi^j|} (D xi^j)(g_T) = xi^j(l(g_T))
    auto bracket_value = [&](const Tuple& t) {
        ModuleElement v;
        for (int j = 0; j < rank; ++j) {
            AlgebraElement x = S.evaluate_generators(S.weight_part(D.on_letter[j], static_cast<int>(t.size())), t);
            if (x.is_zero()) continue;
            x *= Scalar(-minus_one_pow(S.letter_degree(j)));
            for (const auto& [deg, part] : A.homogeneous_parts(x))
                for (const auto& [b, c] : part) v.add({j, b}, c * Scalar(minus_one_pow(long(deg) * S.letter_degree(j))));
        }
        return v;
    };
    std::vector<ModuleElement> dL(rank);
    for (int i = 0; i < rank; ++i) dL[i] = bracket_value({i});
    auto L = std::make_shared<FreeModule>(S.base_ptr(), names, S.generator_degrees(), dL);
    AlgebroidStructure st(L, S.cap());
    for (int n = 2; n <= S.cap(); ++n)
        for (const auto& t : multisets(rank, n)) {
            if (!S.admissible(t)) continue;
            ModuleElement v = bracket_value(t);
            if (!v.is_zero()) st.brackets[n][t] = v;
        }
    for (int n = 1; n <= S.cap(); ++n)
        for (const auto& t : multisets(rank, n)) {
            if (!S.admissible(t)) continue;
            AMap x = zero_map(A, 1 + st.tuple_degree(t));
            for (int a = 0; a < A.dim(); ++a) {
                AlgebraElement v = S.evaluate_generators(S.weight_part(D.on_basis[a], n), t);
                x.values[a] = Scalar(minus_one_pow(long(A.degree(a)) * st.tuple_degree(t))) * v;
            }
            if (!x.is_zero()) st.anchors[n][t] = x;
        }
    return st;
}

// Higher Jacobi identity on generator tuples of arity n, brackets extended by the Leibniz rule.
inline Residual jacobi_residual(const AlgebroidStructure& st, int n) {
    if (n < 1 || n > st.cap) throw std::invalid_argument("jacobi: arity out of range");
    Residual res{"jacobi", {}};
    const auto& L = st.module();
    for (const auto& t : multisets(L.rank(), n)) {
        std::vector<int> d(n);
        for (int i = 0; i < n; ++i) d[i] = L.degree(t[i]);
        ModuleElement total;
        for (int i = 1; i <= n; ++i)
            for (const auto& s : unshuffles(i, n - i)) {
                std::vector<ModuleElement> inner, outer(1);
                for (int k = 0; k < i; ++k) inner.push_back(L.gen(t[s(k)]));
                outer[0] = st.bracket(inner);
                if (outer[0].is_zero()) continue;
                for (int k = i; k < n; ++k) outer.push_back(L.gen(t[s(k)]));
                total += Scalar(sym_sign(s, d)) * st.bracket(outer);
            }
        if (!total.is_zero()) res.add(n, st.tuple_name(t), L.format(total));
    }
    return res;
}

// Leibniz identity {v.., a v_n} = {v..|a} v_n + (-1)^{|a|(|v..| + 1)} a {v.., v_n} with v_n = e_b g ranging
// over basis multiples of generators. Vanishes exactly when each anchor is a derivation in its last entry.
inline Residual leibniz_residual(const AlgebroidStructure& st, int n) {
    if (n < 1 || n > st.cap) throw std::invalid_argument("leibniz: arity out of range");
    Residual res{"leibniz", {}};
    const auto& L = st.module();
    const auto& A = st.base();
    for (const auto& head : multisets(L.rank(), n - 1)) {
        std::vector<ModuleElement> v;
        for (int i : head) v.push_back(L.gen(i));
        const long vdeg = st.tuple_degree(head);
        for (int g = 0; g < L.rank(); ++g)
            for (int b = 0; b < A.dim(); ++b)
                for (int a = 0; a < A.dim(); ++a) {
                    if (a == A.unit() || b == A.unit()) continue;
                    ModuleElement vn = L.act(A.basis(b), L.gen(g));
                    auto args = v;
                    args.push_back(L.act(A.basis(a), vn));
                    ModuleElement lhs = st.bracket(args);
                    lhs -= L.act(st.anchor(v, A.basis(a)), vn);
                    args.back() = vn;
                    lhs -= Scalar(minus_one_pow(long(A.degree(a)) * (vdeg + 1))) * L.act(A.basis(a), st.bracket(args));
                    if (!lhs.is_zero()) {
                        Tuple site = head;
                        site.push_back(g);
                        res.add(n, st.tuple_name(site) + "|" + A.name(a) + "," + A.name(b), L.format(lhs));
                    }
                }
    }
    return res;
}

// Anchor components alpha_n(v) = (-1)^{|v_1| + .. + |v_n| + 1} {v | -}, i.e. {v | -} twisted by the
// parity of its degree as a derivation.
inline AlgebraElement anchor_component(const AlgebroidStructure& st, const std::vector<ModuleElement>& args,
                                       const AlgebraElement& a) {
    const auto& L = st.module();
    AlgebraElement out;
    // split by total degree of the arguments
    std::function<void(std::size_t, std::vector<ModuleElement>&, long, Scalar)> rec;
    std::vector<ModuleElement> cur;
    rec = [&](std::size_t i, std::vector<ModuleElement>& acc, long deg, Scalar c) {
        if (i == args.size()) {
            out += (c * Scalar(minus_one_pow(deg + 1))) * st.anchor(acc, a);
            return;
        }
        for (const auto& [key, ci] : args[i]) {
            acc.push_back(ModuleElement(key, ci));
            rec(i + 1, acc, deg + L.term_degree(key), c);
            acc.pop_back();
        }
    };
    rec(0, cur, 0, Scalar(1));
    return out;
}

// Morphism identity for alpha: L -> Der(A)[1] at arity n, evaluated on every basis element of A.
// Source brackets act through the Leibniz extension; the target has l1 = [d_A, -] and
// l2(x, y) = (-1)^{|x|}[x, y] with |x| the degree as a derivation. Each set partition of the
// arguments is counted once.
inline Residual anchor_morphism_residual(const AlgebroidStructure& st, int n) {
    if (n < 1 || n > st.cap) throw std::invalid_argument("anchor: arity out of range");
    Residual res{"anchor_morphism", {}};
    const auto& L = st.module();
    const auto& A = st.base();
    auto alpha = [&](const Tuple& t) {
        AMap x = st.anchor_on_generators(t);
        return Scalar(minus_one_pow(x.degree)) * x;
    };
    for (const auto& t : multisets(L.rank(), n)) {
        std::vector<int> d(n);
        for (int i = 0; i < n; ++i) d[i] = L.degree(t[i]);
        for (int a = 0; a < A.dim(); ++a) {
            AlgebraElement ea = A.basis(a);
            AlgebraElement total;
            for (int i = 1; i <= n; ++i)
                for (const auto& s : unshuffles(i, n - i)) {
                    std::vector<ModuleElement> inner, outer(1);
                    for (int k = 0; k < i; ++k) inner.push_back(L.gen(t[s(k)]));
                    outer[0] = st.bracket(inner);
                    if (outer[0].is_zero()) continue;
                    for (int k = i; k < n; ++k) outer.push_back(L.gen(t[s(k)]));
                    total += Scalar(sym_sign(s, d)) * anchor_component(st, outer, ea);
                }
            // l = 1
            AMap x = alpha(t);
            total -= A.d(x.apply(ea));
            total += Scalar(minus_one_pow(x.degree)) * x.apply(A.d(ea));
            // l = 2, weight 1/2 over ordered block sizes
            for (const auto& comp : compositions(n, 2))
                for (const auto& s : enumerate_unshuffles(comp)) {
                    Tuple b1, b2;
                    for (int k = 0; k < comp[0]; ++k) b1.push_back(t[s(k)]);
                    for (int k = comp[0]; k < n; ++k) b2.push_back(t[s(k)]);
                    AMap y1 = alpha(b1), y2 = alpha(b2);
                    AlgebraElement br = y1.apply(y2.apply(ea));
                    br -= Scalar(minus_one_pow(long(y1.degree) * y2.degree)) * y2.apply(y1.apply(ea));
                    total -= (Scalar::frac(1, 2) * Scalar(sym_sign(s, d) * minus_one_pow(y1.degree))) * br;
                }
            if (!total.is_zero()) res.add(n, st.tuple_name(t) + "|" + A.name(a), A.format(total));
        }
    }
    return res;
}

// Anchors of a structure as derivations: A-multilinearity and the derivation rule on stored tables.
inline Residual anchor_derivation_defect(const AlgebroidStructure& st) {
    Residual res{"anchor_derivation", {}};
    for (int n = 1; n <= st.cap; ++n)
        for (const auto& [t, x] : st.anchors[n]) {
            auto r = derivation_defect(st.base(), x, st.tuple_name(t));
            for (auto e : r.entries) res.add(n, e.site, e.value);
        }
    return res;
}

struct EquivalenceReport {
    Residual square, jacobi, leibniz, anchor;
    bool square_empty() const { return square.empty(); }
    bool residuals_empty() const { return jacobi.empty() && leibniz.empty() && anchor.empty(); }
};

// Both sides of the duality: the square of the CE differential, and the three residual families.
inline EquivalenceReport equivalence_report(const SymAlgebra& S, const AlgebroidStructure& st) {
    EquivalenceReport r{square_components(S, ce_differential(S, st)), {"jacobi", {}}, {"leibniz", {}},
                        {"anchor_morphism", {}}};
    for (int n = 1; n <= st.cap; ++n) {
        r.jacobi.append(jacobi_residual(st, n));
        r.leibniz.append(leibniz_residual(st, n));
        r.anchor.append(anchor_morphism_residual(st, n));
    }
    return r;
}

// Random tables with correct degrees; anchors are random combinations of derivations of A.
inline AlgebroidStructure random_structure(Sampler& rng, const ModulePtr& L, int cap, double density = 0.4) {
    AlgebroidStructure st(L, cap);
    const auto& A = L->base();
    std::map<int, std::vector<AMap>> ders;
    for (int n = 1; n <= cap; ++n)
        for (const auto& t : multisets(L->rank(), n)) {
            bool forced = false;
            for (std::size_t p = 1; p < t.size(); ++p)
                if (t[p] == t[p - 1] && (L->degree(t[p]) & 1)) forced = true;
            if (forced) continue;
            const int deg = st.tuple_degree(t) + 1;
            if (n >= 2) {
                ModuleElement v = rng.module_element(*L, deg, density);
                if (!v.is_zero()) st.brackets[n][t] = v;
            }
            if (!ders.count(deg)) ders[deg] = derivations_of_degree(A, deg);
            AMap x = zero_map(A, deg);
            for (const auto& b : ders[deg])
                if (rng.coin(density)) x = x + rng.scalar() * b;
            if (!x.is_zero()) st.anchors[n][t] = x;
        }
    return st;
}

// Valid structure obtained by conjugating D0 with a random unipotent automorphism.
inline AlgebroidStructure conjugated_structure(Sampler& rng, const SymAlgebra& S, const FreeModule& L,
                                               double density = 0.3) {
    Derivation D0 = d0_derivation(S, L);
    return extract_structure(S, conjugate(S, rng.unipotent(S, density), D0));
}

inline std::string format_structure(const AlgebroidStructure& st) {
    const auto& L = st.module();
    const auto& A = st.base();
    std::string out;
    for (int i = 0; i < L.rank(); ++i) out += "d " + L.name(i) + " = " + L.format(L.d_gen(i)) + "\n";
    for (int n = 2; n <= st.cap; ++n)
        for (const auto& [t, v] : st.brackets[n]) out += "l" + std::to_string(n) + st.tuple_name(t) + " = " + L.format(v) + "\n";
    for (int n = 1; n <= st.cap; ++n)
        for (const auto& [t, x] : st.anchors[n])
            for (int a = 0; a < A.dim(); ++a)
                if (!x.values[a].is_zero())
                    out += "{" + st.tuple_name(t) + "|" + A.name(a) + "} = " + A.format(x.values[a]) + "\n";
    return out;
}

// Difference of two derivations on generators, graded by the weight they add.
inline Residual derivation_difference(const SymAlgebra& S, const Derivation& x, const Derivation& y) {
    Residual r{"derivation_difference", {}};
    const auto& A = S.base();
    Derivation d = x - y;
    auto by_weight = [](const SymElement& v) {
        std::map<int, SymElement> m;
        for (const auto& [k, c] : v) m[static_cast<int>(k.m.size())].add(k, c);
        return m;
    };
    for (int a = 0; a < A.dim(); ++a)
        for (const auto& [w, part] : by_weight(d.on_basis[a])) r.add(w, A.name(a), S.format(part));
    for (int j = 0; j < S.letters(); ++j)
        for (const auto& [w, part] : by_weight(d.on_letter[j])) r.add(w - 1, S.letter_name(j), S.format(part));
    return r;
}

inline Residual structure_difference(const AlgebroidStructure& x, const AlgebroidStructure& y) {
    Residual r{"structure_difference", {}};
    if (!(x == y)) r.add(0, "structure", "structures differ:\n" + format_structure(x) + "--- versus ---\n" + format_structure(y));
    return r;
}

}  // namespace shlr
