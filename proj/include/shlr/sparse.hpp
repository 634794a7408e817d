#pragma once

#include "scalar.hpp"

#include <map>

namespace shlr {

// Sparse vector with canonical (sorted, zero-free) storage, so == is structural.
template <class Key>
class SparseVec {
public:
    using map_type = std::map<Key, Scalar>;

    SparseVec() = default;
    SparseVec(const Key& k, Scalar c) { add(k, std::move(c)); }

    void add(const Key& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    Scalar coeff(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Scalar() : it->second;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }
    const map_type& terms() const { return terms_; }

    SparseVec& operator+=(const SparseVec& o) {
        for (const auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    SparseVec& operator-=(const SparseVec& o) {
        for (const auto& [k, c] : o.terms_) add(k, -c);
        return *this;
    }
    SparseVec& operator*=(const Scalar& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& kv : terms_) kv.second *= s;
        return *this;
    }
    SparseVec operator-() const {
        SparseVec r = *this;
        for (auto& kv : r.terms_) kv.second.negate();
        return r;
    }
    friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
    friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
    friend SparseVec operator*(const Scalar& s, SparseVec a) { return a *= s; }
    friend SparseVec operator*(SparseVec a, const Scalar& s) { return a *= s; }
    friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const SparseVec& a, const SparseVec& b) { return !(a == b); }

private:
    map_type terms_;
};

}  // namespace shlr
