#pragma once

#include "algebra.hpp"
#include "perm.hpp"
#include "symtensor.hpp"

namespace shlr {

using Vec = SparseVec<int>;
using Tuple = std::vector<int>;

enum class Symmetry { symmetric, skew };

// Multilinear brackets on a finite graded vector space over the ground field,
// stored on sorted generator tuples and extended by graded (skew-)symmetry.
struct MultiBrackets {
    std::vector<int> degrees;
    std::vector<std::string> names;
    Symmetry symmetry = Symmetry::symmetric;
    int cap = 4;
    std::vector<std::map<Tuple, Vec>> table;  // table[n] for arity n, 1..cap

    MultiBrackets() = default;
    MultiBrackets(std::vector<int> degs, Symmetry s, int arity_cap, std::vector<std::string> nm = {})
        : degrees(std::move(degs)), names(std::move(nm)), symmetry(s), cap(arity_cap), table(arity_cap + 1) {
        if (names.empty())
            for (std::size_t i = 0; i < degrees.size(); ++i) names.push_back("v" + std::to_string(i + 1));
    }

    int dim() const { return static_cast<int>(degrees.size()); }
    int bracket_degree(int n) const { return symmetry == Symmetry::symmetric ? 1 : 2 - n; }
    int perm_sign(const Permutation& s, const std::vector<int>& d) const {
        return symmetry == Symmetry::symmetric ? sym_sign(s, d) : skew_sign(s, d);
    }
    int vec_degree(const Vec& v) const {
        std::optional<int> d;
        for (const auto& [i, c] : v) {
            if (d && *d != degrees[i]) throw std::invalid_argument("inhomogeneous vector");
            d = degrees[i];
        }
        if (!d) throw std::invalid_argument("degree of zero vector");
        return *d;
    }

    // Store a value on any ordering of a tuple.
    void set(const Tuple& t, const Vec& v) {
        if (static_cast<int>(t.size()) > cap || t.empty()) throw std::invalid_argument("bracket arity out of range");
        Permutation s = sorting_permutation(t);
        Tuple sorted(t.size());
        std::vector<int> d(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            sorted[i] = t[s(i)];
            d[i] = degrees[t[i]];
        }
        Vec val = Scalar(perm_sign(s, d)) * v;
        if (val.is_zero()) table[t.size()].erase(sorted);
        else table[t.size()][sorted] = val;
    }

    Vec on_generators(const Tuple& t) const {
        const int n = static_cast<int>(t.size());
        if (n == 0 || n > cap) return {};
        Permutation s = sorting_permutation(t);
        Tuple sorted(n);
        std::vector<int> d(n);
        for (int i = 0; i < n; ++i) {
            sorted[i] = t[s(i)];
            d[i] = degrees[t[i]];
        }
        auto it = table[n].find(sorted);
        if (it == table[n].end()) return {};
        return Scalar(perm_sign(s, d)) * it->second;
    }

    Vec operator()(const std::vector<Vec>& args) const {
        const int n = static_cast<int>(args.size());
        Vec out;
        if (n == 0 || n > cap) return out;
        Tuple t(n);
        std::function<void(int, Scalar)> rec = [&](int k, Scalar c) {
            if (k == n) {
                out += c * on_generators(t);
                return;
            }
            for (const auto& [i, ci] : args[k]) {
                t[k] = i;
                rec(k + 1, c * ci);
            }
        };
        rec(0, Scalar(1));
        return out;
    }

    std::string format(const Vec& v) const {
        if (v.is_zero()) return "0";
        std::string out;
        for (const auto& [i, c] : v) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")*" + names[i];
        }
        return out;
    }
    std::string tuple_name(const Tuple& t) const {
        std::string s = "(";
        for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + names[t[i]];
        return s + ")";
    }
};

// Bracket tables of degree 2-n, graded skew-symmetric.
struct LInftyAlgebra : MultiBrackets {
    LInftyAlgebra() = default;
    LInftyAlgebra(std::vector<int> degs, int arity_cap, std::vector<std::string> nm = {})
        : MultiBrackets(std::move(degs), Symmetry::skew, arity_cap, std::move(nm)) {}
};

// Bracket tables of degree +1, graded symmetric.
struct LInftyOneAlgebra : MultiBrackets {
    LInftyOneAlgebra() = default;
    LInftyOneAlgebra(std::vector<int> degs, int arity_cap, std::vector<std::string> nm = {})
        : MultiBrackets(std::move(degs), Symmetry::symmetric, arity_cap, std::move(nm)) {}
};

// Degree bookkeeping and forced zeros of stored tables.
inline Residual validate_brackets(const MultiBrackets& L) {
    Residual res{"brackets", {}};
    for (int n = 1; n <= L.cap; ++n)
        for (const auto& [t, v] : L.table[n]) {
            int expect = L.bracket_degree(n);
            for (int i : t) expect += L.degrees[i];
            for (const auto& [i, c] : v)
                if (L.degrees[i] != expect) {
                    res.add(n, L.tuple_name(t), "value of wrong degree");
                    break;
                }
            for (std::size_t p = 1; p < t.size(); ++p)
                if (t[p] == t[p - 1]) {
                    bool odd = L.degrees[t[p]] & 1;
                    bool forced = L.symmetry == Symmetry::symmetric ? odd : !odd;
                    if (forced) res.add(n, L.tuple_name(t), "nonzero value on a tuple forced to vanish");
                }
        }
    return res;
}

using ResidualTable = std::map<Tuple, Vec>;

inline Residual to_residual(const MultiBrackets& L, const std::string& name, int n, const ResidualTable& t) {
    Residual r{name, {}};
    for (const auto& [tup, v] : t) r.add(n, L.tuple_name(tup), L.format(v));
    return r;
}

// Higher Jacobi expression on every sorted generator tuple of arity n.
inline ResidualTable jacobi_table(const MultiBrackets& L, int n) {
    if (n < 1 || n > L.cap) throw std::invalid_argument("jacobi: arity out of range");
    ResidualTable out;
    for (const auto& t : multisets(L.dim(), n)) {
        std::vector<int> d(n);
        for (int i = 0; i < n; ++i) d[i] = L.degrees[t[i]];
        Vec total;
        for (int i = 1; i <= n; ++i) {
            int j = n - i;
            for (const auto& s : unshuffles(i, j)) {
                std::vector<Vec> inner, outer(1);
                for (int k = 0; k < i; ++k) inner.push_back(Vec(t[s(k)], Scalar(1)));
                outer[0] = L(inner);
                if (outer[0].is_zero()) continue;
                for (int k = i; k < n; ++k) outer.push_back(Vec(t[s(k)], Scalar(1)));
                int sign = L.perm_sign(s, d);
                if (L.symmetry == Symmetry::skew) sign *= minus_one_pow(long(i) * j);
                total += Scalar(sign) * L(outer);
            }
        }
        if (!total.is_zero()) out[t] = total;
    }
    return out;
}

inline Residual jacobi_residual(const LInftyOneAlgebra& L, int n) {
    return to_residual(L, "jacobi", n, jacobi_table(L, n));
}
inline Residual jacobi_residual_skew(const LInftyAlgebra& L, int n) {
    return to_residual(L, "jacobi_skew", n, jacobi_table(L, n));
}

// Sign (-1)^{(k-1)|v_1| + (k-2)|v_2| + ... + |v_{k-1}|} with unshifted degrees.
inline int decalage_sign(const std::vector<int>& unshifted_degrees) {
    const long k = static_cast<long>(unshifted_degrees.size());
    long e = 0;
    for (long i = 0; i < k; ++i) e += (k - 1 - i) * unshifted_degrees[i];
    return minus_one_pow(e);
}

inline LInftyOneAlgebra decalage(const LInftyAlgebra& L) {
    std::vector<int> shifted;
    for (int d : L.degrees) shifted.push_back(d - 1);
    LInftyOneAlgebra out(shifted, L.cap, L.names);
    for (int n = 1; n <= L.cap; ++n)
        for (const auto& [t, v] : L.table[n]) {
            std::vector<int> d;
            for (int i : t) d.push_back(L.degrees[i]);
            out.table[n][t] = Scalar(decalage_sign(d)) * v;
        }
    return out;
}

inline LInftyAlgebra inverse_decalage(const LInftyOneAlgebra& L) {
    std::vector<int> unshifted;
    for (int d : L.degrees) unshifted.push_back(d + 1);
    LInftyAlgebra out(unshifted, L.cap, L.names);
    for (int n = 1; n <= L.cap; ++n)
        for (const auto& [t, v] : L.table[n]) {
            std::vector<int> d;
            for (int i : t) d.push_back(unshifted[i]);
            out.table[n][t] = Scalar(decalage_sign(d)) * v;
        }
    return out;
}

// Degree-0 graded symmetric components f_n between two L-infinity[1] algebras.
struct LInftyMorphism {
    MultiBrackets components;  // values in the target space; bracket_degree unused
};

inline LInftyMorphism make_morphism(const LInftyOneAlgebra& source, int cap) {
    return {MultiBrackets(source.degrees, Symmetry::symmetric, cap, source.names)};
}

// Ordered compositions of n into l positive parts.
inline std::vector<std::vector<int>> compositions(int n, int l) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int parts) {
        if (parts == 0) {
            if (left == 0) out.push_back(cur);
            return;
        }
        for (int k = 1; k <= left - (parts - 1); ++k) {
            cur.push_back(k);
            rec(left - k, parts - 1);
            cur.pop_back();
        }
    };
    rec(n, l);
    return out;
}

// LHS - RHS of the morphism identity at arity n on sorted generator tuples. The partition
// sum on the right runs over ordered block sizes with weight 1/l!, i.e. over set partitions.
inline ResidualTable morphism_table(const LInftyMorphism& f, const LInftyOneAlgebra& L, const LInftyOneAlgebra& Lp,
                                    int n) {
    const auto& F = f.components;
    if (n < 1 || n > F.cap || n > L.cap) throw std::invalid_argument("morphism: arity out of range");
    ResidualTable out;
    for (const auto& t : multisets(L.dim(), n)) {
        std::vector<int> d(n);
        for (int i = 0; i < n; ++i) d[i] = L.degrees[t[i]];
        Vec total;
        for (int i = 1; i <= n; ++i)
            for (const auto& s : unshuffles(i, n - i)) {
                std::vector<Vec> inner, outer(1);
                for (int k = 0; k < i; ++k) inner.push_back(Vec(t[s(k)], Scalar(1)));
                outer[0] = L(inner);
                if (outer[0].is_zero()) continue;
                for (int k = i; k < n; ++k) outer.push_back(Vec(t[s(k)], Scalar(1)));
                total += Scalar(sym_sign(s, d)) * F(outer);
            }
        for (int l = 1; l <= std::min(n, Lp.cap); ++l) {
            Scalar weight = Scalar(1) / Scalar(factorial(l));
            for (const auto& comp : compositions(n, l))
                for (const auto& s : enumerate_unshuffles(comp)) {
                    std::vector<Vec> args;
                    int pos = 0;
                    for (int b : comp) {
                        std::vector<Vec> block;
                        for (int k = 0; k < b; ++k) block.push_back(Vec(t[s(pos + k)], Scalar(1)));
                        pos += b;
                        args.push_back(F(block));
                    }
                    total -= (weight * Scalar(sym_sign(s, d))) * Lp(args);
                }
        }
        if (!total.is_zero()) out[t] = total;
    }
    return out;
}

inline Residual morphism_residual(const LInftyMorphism& f, const LInftyOneAlgebra& L, const LInftyOneAlgebra& Lp,
                                  int n) {
    return to_residual(L, "morphism", n, morphism_table(f, L, Lp, n));
}

// Der(A)[1]: derivations of degree k sit in degree k-1; l1 = [d_A, -], l2(x, y) = (-1)^{|x|}[x, y].
struct ShiftedDerDGLA {
    AlgebraPtr base;
    std::vector<AMap> basis;
    LInftyOneAlgebra algebra;

    static AMap l1(const BaseAlgebra& A, const AMap& x) { return commutator(differential_map(A), x); }
    static AMap l2(const AMap& x, const AMap& y) {
        return Scalar(minus_one_pow(x.degree)) * commutator(x, y);
    }

    // Coordinates of a derivation in the stored basis.
    Vec coordinates(const AMap& x) const {
        std::vector<int> idx;
        for (int i = 0; i < static_cast<int>(basis.size()); ++i)
            if (basis[i].degree == x.degree) idx.push_back(i);
        Vec out;
        if (x.is_zero()) return out;
        const int n = base->dim();
        Matrix m;
        std::vector<Scalar> rhs;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                std::vector<Scalar> row;
                for (int i : idx) row.push_back(basis[i].values[a].coeff(b));
                m.push_back(row);
                rhs.push_back(x.values[a].coeff(b));
            }
        auto sol = solve(m, rhs, static_cast<int>(idx.size()));
        if (!sol) throw std::invalid_argument("not a derivation of the base algebra");
        for (std::size_t j = 0; j < idx.size(); ++j) out.add(idx[j], (*sol)[j]);
        return out;
    }
    AMap element(const Vec& v, int degree) const {
        AMap x = zero_map(*base, degree);
        for (const auto& [i, c] : v) x = x + c * basis[i];
        return x;
    }
};

inline ShiftedDerDGLA build_shifted_der_dgla(const AlgebraPtr& A, int arity_cap = 4) {
    int maxdeg = 0;
    for (int d : A->degrees()) maxdeg = std::max(maxdeg, std::abs(d));
    ShiftedDerDGLA g{A, {}, {}};
    std::vector<int> degs;
    std::vector<std::string> names;
    for (int k = -maxdeg; k <= maxdeg + 1; ++k) {
        auto b = derivations_of_degree(*A, k);
        for (std::size_t i = 0; i < b.size(); ++i) {
            g.basis.push_back(b[i]);
            degs.push_back(k - 1);
            names.push_back("D" + std::to_string(k) + "_" + std::to_string(i + 1));
        }
    }
    g.algebra = LInftyOneAlgebra(degs, arity_cap, names);
    for (int i = 0; i < static_cast<int>(g.basis.size()); ++i) {
        Vec v = g.coordinates(ShiftedDerDGLA::l1(*A, g.basis[i]));
        if (!v.is_zero()) g.algebra.table[1][{i}] = v;
        for (int j = i; j < static_cast<int>(g.basis.size()); ++j) {
            AMap br = ShiftedDerDGLA::l2(g.basis[i], g.basis[j]);
            Vec w = g.coordinates(br);
            if (!w.is_zero() && arity_cap >= 2) g.algebra.table[2][{i, j}] = w;
        }
    }
    return g;
}

}  // namespace shlr
