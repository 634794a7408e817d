#pragma once

#include "linalg.hpp"
#include "residual.hpp"
#include "sparse.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace shlr {

using AlgebraElement = SparseVec<int>;

// Finite-dimensional graded commutative unital dga, stored on a basis.
class BaseAlgebra {
public:
    BaseAlgebra(std::vector<std::string> names, std::vector<int> degrees, int unit,
                std::vector<std::vector<AlgebraElement>> table, std::vector<AlgebraElement> d)
        : names_(std::move(names)), degrees_(std::move(degrees)), unit_(unit), table_(std::move(table)),
          d_(std::move(d)) {
        const int n = dim();
        if (static_cast<int>(names_.size()) != n || static_cast<int>(table_.size()) != n ||
            static_cast<int>(d_.size()) != n)
            throw std::invalid_argument("BaseAlgebra: inconsistent sizes");
        for (const auto& row : table_)
            if (static_cast<int>(row.size()) != n) throw std::invalid_argument("BaseAlgebra: table not square");
        if (unit_ < 0 || unit_ >= n) throw std::invalid_argument("BaseAlgebra: unit out of range");
        auto in_range = [n](const AlgebraElement& x) {
            for (const auto& [k, c] : x)
                if (k < 0 || k >= n) return false;
            return true;
        };
        for (const auto& row : table_)
            for (const auto& x : row)
                if (!in_range(x)) throw std::invalid_argument("BaseAlgebra: product index out of range");
        for (const auto& x : d_)
            if (!in_range(x)) throw std::invalid_argument("BaseAlgebra: differential index out of range");
    }

    int dim() const { return static_cast<int>(degrees_.size()); }
    int unit() const { return unit_; }
    int degree(int i) const { return degrees_[i]; }
    const std::vector<int>& degrees() const { return degrees_; }
    const std::string& name(int i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    const AlgebraElement& product(int a, int b) const { return table_[a][b]; }
    const AlgebraElement& d_basis(int a) const { return d_[a]; }

    int index_of(const std::string& n) const {
        for (int i = 0; i < dim(); ++i)
            if (names_[i] == n) return i;
        throw std::invalid_argument("unknown basis element '" + n + "'");
    }

    AlgebraElement one() const { return AlgebraElement(unit_, Scalar(1)); }
    AlgebraElement basis(int i) const { return AlgebraElement(i, Scalar(1)); }

    AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y) const {
        AlgebraElement r;
        for (const auto& [a, ca] : x)
            for (const auto& [b, cb] : y) {
                Scalar c = ca * cb;
                for (const auto& [g, cg] : table_[a][b]) r.add(g, c * cg);
            }
        return r;
    }
    AlgebraElement d(const AlgebraElement& x) const {
        AlgebraElement r;
        for (const auto& [a, ca] : x)
            for (const auto& [g, cg] : d_[a]) r.add(g, ca * cg);
        return r;
    }

    // Degree of a nonzero homogeneous element; nullopt for zero, throws when mixed.
    std::optional<int> degree_of(const AlgebraElement& x) const {
        std::optional<int> deg;
        for (const auto& [a, c] : x) {
            if (deg && *deg != degrees_[a]) throw std::invalid_argument("inhomogeneous algebra element");
            deg = degrees_[a];
        }
        return deg;
    }
    std::map<int, AlgebraElement> homogeneous_parts(const AlgebraElement& x) const {
        std::map<int, AlgebraElement> parts;
        for (const auto& [a, c] : x) parts[degrees_[a]].add(a, c);
        return parts;
    }
    std::string format(const AlgebraElement& x) const {
        if (x.is_zero()) return "0";
        std::string out;
        for (const auto& [a, c] : x) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")" + (a == unit_ ? std::string() : "*" + names_[a]);
        }
        return out;
    }

private:
    std::vector<std::string> names_;
    std::vector<int> degrees_;
    int unit_;
    std::vector<std::vector<AlgebraElement>> table_;
    std::vector<AlgebraElement> d_;
};

using AlgebraPtr = std::shared_ptr<const BaseAlgebra>;

// K-linear endomorphism of a base algebra of fixed degree, stored on the basis.
struct AMap {
    int degree = 0;
    std::vector<AlgebraElement> values;

    AlgebraElement apply(const AlgebraElement& x) const {
        AlgebraElement r;
        for (const auto& [a, c] : x) r += c * values[a];
        return r;
    }
    bool is_zero() const {
        for (const auto& v : values)
            if (!v.is_zero()) return false;
        return true;
    }
    friend bool operator==(const AMap& x, const AMap& y) { return x.degree == y.degree && x.values == y.values; }
};

inline AMap zero_map(const BaseAlgebra& A, int degree) { return {degree, std::vector<AlgebraElement>(A.dim())}; }

inline AMap compose(const AMap& f, const AMap& g) {
    AMap r{f.degree + g.degree, {}};
    for (const auto& v : g.values) r.values.push_back(f.apply(v));
    return r;
}

inline AMap operator+(AMap x, const AMap& y) {
    for (std::size_t i = 0; i < x.values.size(); ++i) x.values[i] += y.values[i];
    return x;
}
inline AMap operator*(const Scalar& s, AMap x) {
    for (auto& v : x.values) v *= s;
    return x;
}

// Graded commutator f g - (-1)^{|f||g|} g f.
inline AMap commutator(const AMap& f, const AMap& g) {
    AMap fg = compose(f, g), gf = compose(g, f);
    return fg + Scalar(-minus_one_pow(long(f.degree) * g.degree)) * gf;
}

inline AMap differential_map(const BaseAlgebra& A) {
    AMap r{1, {}};
    for (int a = 0; a < A.dim(); ++a) r.values.push_back(A.d_basis(a));
    return r;
}

// Graded Leibniz defect D(xy) - D(x)y - (-1)^{|D||x|} x D(y) on basis pairs.
inline Residual derivation_defect(const BaseAlgebra& A, const AMap& D, const std::string& name = "derivation") {
    Residual res{name, {}};
    for (int a = 0; a < A.dim(); ++a)
        for (int b = 0; b < A.dim(); ++b) {
            AlgebraElement lhs = D.apply(A.product(a, b));
            lhs -= A.mul(D.values[a], A.basis(b));
            lhs -= Scalar(minus_one_pow(long(D.degree) * A.degree(a))) * A.mul(A.basis(a), D.values[b]);
            if (!lhs.is_zero()) res.add(0, A.name(a) + "," + A.name(b), A.format(lhs));
        }
    return res;
}

// Basis of the space of degree-k derivations of A, by exact nullspace.
inline std::vector<AMap> derivations_of_degree(const BaseAlgebra& A, int k) {
    const int n = A.dim();
    std::vector<std::pair<int, int>> unknowns;  // (source a, target b)
    std::map<std::pair<int, int>, int> col;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (A.degree(b) == A.degree(a) + k) {
                col[{a, b}] = static_cast<int>(unknowns.size());
                unknowns.push_back({a, b});
            }
    const int m = static_cast<int>(unknowns.size());
    if (m == 0) return {};
    Matrix rows;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            // one equation per output basis element g
            std::map<int, std::vector<Scalar>> eq;
            auto row_for = [&](int g) -> std::vector<Scalar>& {
                auto it = eq.find(g);
                if (it == eq.end()) it = eq.emplace(g, std::vector<Scalar>(m)).first;
                return it->second;
            };
            // D(e_a e_b)
            for (const auto& [c, cc] : A.product(a, b))
                for (int t = 0; t < n; ++t) {
                    auto it = col.find({c, t});
                    if (it != col.end()) row_for(t)[it->second] += cc;
                }
            // - D(e_a) e_b
            for (int t = 0; t < n; ++t) {
                auto it = col.find({a, t});
                if (it == col.end()) continue;
                for (const auto& [g, cg] : A.product(t, b)) row_for(g)[it->second] -= cg;
            }
            // - (-1)^{k|a|} e_a D(e_b)
            Scalar s(minus_one_pow(long(k) * A.degree(a)));
            for (int t = 0; t < n; ++t) {
                auto it = col.find({b, t});
                if (it == col.end()) continue;
                for (const auto& [g, cg] : A.product(a, t)) row_for(g)[it->second] -= s * cg;
            }
            for (auto& [g, r] : eq) rows.push_back(std::move(r));
        }
    std::vector<AMap> out;
    for (const auto& v : nullspace(std::move(rows), m)) {
        AMap D = zero_map(A, k);
        for (int j = 0; j < m; ++j) D.values[unknowns[j].first].add(unknowns[j].second, v[j]);
        out.push_back(std::move(D));
    }
    return out;
}

inline Residual validate_base_algebra(const BaseAlgebra& A) {
    Residual res{"base_algebra", {}};
    const int n = A.dim();
    if (A.degree(A.unit()) != 0) res.add(0, "unit", "unit has degree " + std::to_string(A.degree(A.unit())));
    for (int a = 0; a < n; ++a) {
        if (A.product(A.unit(), a) != A.basis(a) || A.product(a, A.unit()) != A.basis(a))
            res.add(0, "unit:" + A.name(a), "unit law fails");
        for (const auto& [g, c] : A.d_basis(a))
            if (A.degree(g) != A.degree(a) + 1) {
                res.add(0, "degree:d" + A.name(a), "d_A is not of degree one");
                break;
            }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const auto& ab = A.product(a, b);
            for (const auto& [g, c] : ab)
                if (A.degree(g) != A.degree(a) + A.degree(b)) {
                    res.add(0, "degree:" + A.name(a) + "*" + A.name(b), "product not additive in degree");
                    break;
                }
            AlgebraElement diff = ab;
            diff -= Scalar(minus_one_pow(long(A.degree(a)) * A.degree(b))) * A.product(b, a);
            if (!diff.is_zero())
                res.add(0, "commutativity:" + A.name(a) + "," + A.name(b), A.format(diff));
            for (int c = 0; c < n; ++c) {
                AlgebraElement lhs = A.mul(ab, A.basis(c));
                lhs -= A.mul(A.basis(a), A.product(b, c));
                if (!lhs.is_zero())
                    res.add(0, "associativity:" + A.name(a) + "," + A.name(b) + "," + A.name(c), A.format(lhs));
            }
        }
    Residual lei = derivation_defect(A, differential_map(A), "leibniz");
    for (auto& e : lei.entries) e.site = "leibniz:" + e.site;
    res.append(lei);
    for (int a = 0; a < n; ++a) {
        AlgebraElement dd = A.d(A.d_basis(a));
        if (!dd.is_zero()) res.add(0, "d^2:" + A.name(a), A.format(dd));
    }
    return res;
}

// ---- standard algebras ----

inline AlgebraPtr ground_field() {
    return std::make_shared<BaseAlgebra>(std::vector<std::string>{"1"}, std::vector<int>{0}, 0,
                                         std::vector<std::vector<AlgebraElement>>{{AlgebraElement(0, 1)}},
                                         std::vector<AlgebraElement>{AlgebraElement()});
}

// Extend values on multiplicative generators to a degree-k derivation on the whole basis.
// Every basis element must be reachable as (generator) * (known element) with a single-term product.
inline std::vector<AlgebraElement> extend_on_basis(const BaseAlgebra& A, const std::map<int, AlgebraElement>& gen_values,
                                                   int k) {
    const int n = A.dim();
    std::vector<std::optional<AlgebraElement>> out(n);
    out[A.unit()] = AlgebraElement();
    for (const auto& [g, v] : gen_values) out[g] = v;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int b = 0; b < n; ++b) {
            if (out[b]) continue;
            for (const auto& [g, vg] : gen_values) {
                for (int c = 0; c < n && !out[b]; ++c) {
                    if (!out[c]) continue;
                    const auto& p = A.product(g, c);
                    if (p.size() != 1 || p.begin()->first != b) continue;
                    Scalar lam = p.begin()->second;
                    AlgebraElement v = A.mul(vg, A.basis(c));
                    v += Scalar(minus_one_pow(long(k) * A.degree(g))) * A.mul(A.basis(g), *out[c]);
                    v *= Scalar(1) / lam;
                    out[b] = std::move(v);
                }
                if (out[b]) break;
            }
            if (out[b]) progress = true;
        }
    }
    std::vector<AlgebraElement> r;
    for (int b = 0; b < n; ++b) {
        if (!out[b]) throw std::invalid_argument("extend_on_basis: basis element not generated");
        r.push_back(*out[b]);
    }
    return r;
}

// Exterior algebra on k odd generators of degree 1; basis = subsets, ordered by size then lex.
// d_gen maps generator index -> value given as {subset -> coefficient}.
inline AlgebraPtr exterior_algebra(int k, const std::string& prefix = "e",
                                   const std::map<int, std::map<std::vector<int>, Scalar>>& d_gen = {}) {
    std::vector<std::vector<int>> subsets;
    for (int size = 0; size <= k; ++size) {
        std::vector<int> sel(k, 0);
        std::fill(sel.end() - size, sel.end(), 1);
        std::vector<std::vector<int>> level;
        do {
            std::vector<int> s;
            for (int i = 0; i < k; ++i)
                if (sel[i]) s.push_back(i);
            level.push_back(s);
        } while (std::next_permutation(sel.begin(), sel.end()));
        std::sort(level.begin(), level.end());
        subsets.insert(subsets.end(), level.begin(), level.end());
    }
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < subsets.size(); ++i) index[subsets[i]] = static_cast<int>(i);
    const int n = static_cast<int>(subsets.size());
    std::vector<std::string> names;
    std::vector<int> degs;
    for (const auto& s : subsets) {
        std::string nm;
        for (int i : s) nm += prefix + std::to_string(i + 1);
        names.push_back(s.empty() ? "1" : nm);
        degs.push_back(static_cast<int>(s.size()));
    }
    if (k == 1) names[1] = prefix;
    std::vector<std::vector<AlgebraElement>> table(n, std::vector<AlgebraElement>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const auto &S = subsets[a], &T = subsets[b];
            std::vector<int> u;
            std::set_union(S.begin(), S.end(), T.begin(), T.end(), std::back_inserter(u));
            if (u.size() != S.size() + T.size()) continue;
            int inv = 0;
            for (int s : S)
                for (int t : T)
                    if (s > t) ++inv;
            table[a][b] = AlgebraElement(index[u], Scalar(inv % 2 ? -1 : 1));
        }
    BaseAlgebra bare(names, degs, 0, table, std::vector<AlgebraElement>(n));
    std::map<int, AlgebraElement> gv;
    for (int i = 0; i < k; ++i) {
        AlgebraElement v;
        auto it = d_gen.find(i);
        if (it != d_gen.end())
            for (const auto& [sub, c] : it->second) v.add(index.at(sub), c);
        gv[index[{i}]] = v;
    }
    auto d = extend_on_basis(bare, gv, 1);
    return std::make_shared<BaseAlgebra>(names, degs, 0, table, d);
}

// Q[x]/(x^m) tensor Lambda[eps], |x| = 0, |eps| = 1, d x = eps x (so d x^j = j eps x^j).
inline AlgebraPtr truncated_poly_algebra(int m) {
    // basis: x^j (j < m) then eps x^j
    std::vector<std::string> names;
    std::vector<int> degs;
    auto xname = [](int j) { return j == 0 ? std::string() : (j == 1 ? std::string("x") : "x" + std::to_string(j)); };
    for (int j = 0; j < m; ++j) {
        names.push_back(j == 0 ? "1" : xname(j));
        degs.push_back(0);
    }
    for (int j = 0; j < m; ++j) {
        names.push_back("eps" + xname(j));
        degs.push_back(1);
    }
    const int n = 2 * m;
    std::vector<std::vector<AlgebraElement>> table(n, std::vector<AlgebraElement>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int ea = a / m, eb = b / m, ja = a % m, jb = b % m;
            if (ea && eb) continue;
            if (ja + jb >= m) continue;
            table[a][b] = AlgebraElement((ea || eb) * m + ja + jb, Scalar(1));
        }
    std::vector<AlgebraElement> d(n);
    for (int j = 1; j < m; ++j) d[j] = AlgebraElement(m + j, Scalar(j));
    return std::make_shared<BaseAlgebra>(names, degs, 0, table, d);
}

// Q[u]/(u^m) with |u| = deg, d = 0.
inline AlgebraPtr truncated_even_algebra(int deg, int m) {
    std::vector<std::string> names;
    std::vector<int> degs;
    for (int j = 0; j < m; ++j) {
        names.push_back(j == 0 ? "1" : (j == 1 ? "u" : "u" + std::to_string(j)));
        degs.push_back(j * deg);
    }
    std::vector<std::vector<AlgebraElement>> table(m, std::vector<AlgebraElement>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b + a < m; ++b) table[a][b] = AlgebraElement(a + b, Scalar(1));
    return std::make_shared<BaseAlgebra>(names, degs, 0, table, std::vector<AlgebraElement>(m));
}

}  // namespace shlr
