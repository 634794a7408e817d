#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace shlr {

// Permutation of {0..n-1}; images[i] = sigma(i).
struct Permutation {
    std::vector<int> images;

    Permutation() = default;
    explicit Permutation(std::vector<int> img) : images(std::move(img)) {
        std::vector<int> seen(images.size(), 0);
        for (int x : images) {
            if (x < 0 || x >= static_cast<int>(images.size()) || seen[x]++)
                throw std::invalid_argument("not a permutation");
        }
    }
    static Permutation identity(int n) {
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 0);
        return Permutation(std::move(img));
    }
    int size() const { return static_cast<int>(images.size()); }
    int operator()(int i) const { return images[i]; }
    friend bool operator==(const Permutation& a, const Permutation& b) { return a.images == b.images; }
    friend bool operator<(const Permutation& a, const Permutation& b) { return a.images < b.images; }
};

// (then(first))(i) = then(first(i))
inline Permutation compose(const Permutation& then, const Permutation& first) {
    std::vector<int> img(first.size());
    for (int i = 0; i < first.size(); ++i) img[i] = then(first(i));
    return Permutation(std::move(img));
}

inline int signature(const Permutation& s) {
    int inv = 0;
    for (int p = 0; p < s.size(); ++p)
        for (int q = p + 1; q < s.size(); ++q)
            if (s(p) > s(q)) ++inv;
    return inv % 2 ? -1 : 1;
}

// alpha(sigma, v): v_{s(0)} . ... . v_{s(n-1)} = alpha * v_0 . ... . v_{n-1} in the graded symmetric algebra.
inline int sym_sign(const Permutation& s, const std::vector<int>& degrees) {
    if (static_cast<int>(degrees.size()) != s.size()) throw std::invalid_argument("sym_sign: size mismatch");
    int odd = 0;
    for (int p = 0; p < s.size(); ++p)
        for (int q = p + 1; q < s.size(); ++q)
            if (s(p) > s(q) && (degrees[s(p)] & 1) && (degrees[s(q)] & 1)) ++odd;
    return odd % 2 ? -1 : 1;
}

// chi(sigma, v) = signature(sigma) * alpha(sigma, v).
inline int skew_sign(const Permutation& s, const std::vector<int>& degrees) {
    return signature(s) * sym_sign(s, degrees);
}

// All (k_1,...,k_l)-unshuffles, sorted lexicographically by images.
inline std::vector<Permutation> enumerate_unshuffles(const std::vector<int>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("enumerate_unshuffles: no blocks");
    int n = 0;
    for (int k : blocks) {
        if (k <= 0) throw std::invalid_argument("enumerate_unshuffles: block sizes must be positive");
        n += k;
    }
    // label[v] = block receiving value v; iterate over multiset permutations of labels
    std::vector<int> label;
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) label.insert(label.end(), blocks[b], b);
    std::vector<Permutation> out;
    do {
        std::vector<int> img(n);
        std::vector<int> start(blocks.size());
        for (std::size_t b = 1; b < blocks.size(); ++b) start[b] = start[b - 1] + blocks[b - 1];
        for (int v = 0; v < n; ++v) img[start[label[v]]++] = v;
        out.emplace_back(std::move(img));
    } while (std::next_permutation(label.begin(), label.end()));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Permutation> unshuffles(int i, int j) {
    if (j == 0) return {Permutation::identity(i)};
    if (i == 0) return {Permutation::identity(j)};
    return enumerate_unshuffles({i, j});
}

// Sorting permutation: returns s with keys[s(0)] <= keys[s(1)] <= ..., stable.
inline Permutation sorting_permutation(const std::vector<int>& keys) {
    std::vector<int> idx(keys.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return keys[a] < keys[b]; });
    return Permutation(std::move(idx));
}

inline long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace shlr
