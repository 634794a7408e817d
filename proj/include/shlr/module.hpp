#pragma once

#include "algebra.hpp"

#include <utility>

namespace shlr {

// Sum of c * e_a * g_i, keyed by (generator i, basis a).
using ModuleElement = SparseVec<std::pair<int, int>>;

// Finitely generated free graded module over a base algebra, with differential on generators.
class FreeModule {
public:
    FreeModule(AlgebraPtr base, std::vector<std::string> names, std::vector<int> degrees,
               std::vector<ModuleElement> d = {})
        : base_(std::move(base)), names_(std::move(names)), degrees_(std::move(degrees)), d_(std::move(d)) {
        if (names_.size() != degrees_.size()) throw std::invalid_argument("FreeModule: inconsistent sizes");
        if (d_.empty()) d_.resize(degrees_.size());
        if (d_.size() != degrees_.size()) throw std::invalid_argument("FreeModule: differential size mismatch");
        for (const auto& v : d_)
            for (const auto& [k, c] : v)
                if (k.first < 0 || k.first >= rank() || k.second < 0 || k.second >= base_->dim())
                    throw std::invalid_argument("FreeModule: differential index out of range");
    }

    const BaseAlgebra& base() const { return *base_; }
    const AlgebraPtr& base_ptr() const { return base_; }
    int rank() const { return static_cast<int>(degrees_.size()); }
    int degree(int i) const { return degrees_[i]; }
    const std::vector<int>& degrees() const { return degrees_; }
    const std::string& name(int i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    const ModuleElement& d_gen(int i) const { return d_[i]; }

    int index_of(const std::string& n) const {
        for (int i = 0; i < rank(); ++i)
            if (names_[i] == n) return i;
        throw std::invalid_argument("unknown module generator '" + n + "'");
    }

    ModuleElement gen(int i) const { return ModuleElement({i, base_->unit()}, Scalar(1)); }
    int term_degree(const std::pair<int, int>& k) const { return degrees_[k.first] + base_->degree(k.second); }

    std::optional<int> degree_of(const ModuleElement& v) const {
        std::optional<int> deg;
        for (const auto& [k, c] : v) {
            if (deg && *deg != term_degree(k)) throw std::invalid_argument("inhomogeneous module element");
            deg = term_degree(k);
        }
        return deg;
    }

    // a . v
    ModuleElement act(const AlgebraElement& a, const ModuleElement& v) const {
        ModuleElement r;
        for (const auto& [b, cb] : a)
            for (const auto& [k, c] : v)
                for (const auto& [g, cg] : base_->product(b, k.second)) r.add({k.first, g}, cb * c * cg);
        return r;
    }
    // Coefficient of generator i.
    AlgebraElement coefficient(const ModuleElement& v, int i) const {
        AlgebraElement r;
        for (const auto& [k, c] : v)
            if (k.first == i) r.add(k.second, c);
        return r;
    }
    ModuleElement from_coefficients(int i, const AlgebraElement& a) const {
        ModuleElement r;
        for (const auto& [b, c] : a) r.add({i, b}, c);
        return r;
    }

    // d_L(a g) = d_A(a) g + (-1)^{|a|} a d_L(g)
    ModuleElement d(const ModuleElement& v) const {
        ModuleElement r;
        for (const auto& [k, c] : v) {
            for (const auto& [g, cg] : base_->d_basis(k.second)) r.add({k.first, g}, c * cg);
            Scalar s = c * Scalar(minus_one_pow(base_->degree(k.second)));
            r += s * act(base_->basis(k.second), d_[k.first]);
        }
        return r;
    }

    std::string format(const ModuleElement& v) const {
        if (v.is_zero()) return "0";
        std::string out;
        for (const auto& [k, c] : v) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")";
            if (k.second != base_->unit()) out += "*" + base_->name(k.second);
            out += "*" + names_[k.first];
        }
        return out;
    }

private:
    AlgebraPtr base_;
    std::vector<std::string> names_;
    std::vector<int> degrees_;
    std::vector<ModuleElement> d_;
};

using ModulePtr = std::shared_ptr<const FreeModule>;

inline Residual validate_module(const FreeModule& L) {
    Residual res{"module", {}};
    const auto& A = L.base();
    for (int i = 0; i < L.rank(); ++i) {
        for (const auto& [k, c] : L.d_gen(i))
            if (L.term_degree(k) != L.degree(i) + 1) {
                res.add(0, "degree:d" + L.name(i), "d_L is not of degree one");
                break;
            }
        for (int a = 0; a < A.dim(); ++a) {
            ModuleElement v = L.act(A.basis(a), L.gen(i));
            ModuleElement dd = L.d(L.d(v));
            if (!dd.is_zero())
                res.add(0, "d^2:" + (a == A.unit() ? std::string() : A.name(a) + "*") + L.name(i), L.format(dd));
            // Leibniz: d(e_a g) against d_A(e_a) g + (-1)^{|a|} e_a d(g)
            ModuleElement lhs = L.d(v);
            lhs -= L.act(A.d_basis(a), L.gen(i));
            lhs -= Scalar(minus_one_pow(A.degree(a))) * L.act(A.basis(a), L.d_gen(i));
            if (!lhs.is_zero()) res.add(0, "leibniz:" + A.name(a) + "*" + L.name(i), L.format(lhs));
        }
    }
    return res;
}

}  // namespace shlr
