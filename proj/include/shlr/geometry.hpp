#pragma once

#include "algebroid.hpp"

namespace shlr {

using AlgebraMatrix = std::vector<std::vector<AlgebraElement>>;
using AlgebraTensor3 = std::vector<AlgebraMatrix>;

// Finite model of an embedding X in Y. The base algebra stands in for the (0,*)-forms on X, with
// d_A playing the role of dbar. Cotangent letters t^0..t^{a-1} span T*X, normal letters
// n^0..n^{b-1} span N^v, and frame letters y^0..y^{c-1} (c = a + b) are a holomorphic frame of T*Y.
struct GeometricModel {
    AlgebraPtr A;
    std::vector<std::string> tangent_names;  // a entries
    std::vector<std::string> normal_names;   // b entries
    int cap = 3;

    std::vector<AMap> holo;  // d/dx_k as degree-0 derivations of A
    AlgebraTensor3 gamma;    // gamma[k][j][l]: coefficient of n^l in Gamma_k(n^j)
    AlgebraTensor3 shape;    // shape[i][k][j]: coefficient of t^k n^j in S_N(t^i)
    AlgebraMatrix beta;      // beta[k][j]: coefficient of n^j in beta(t^k), degree one
    std::map<int, std::vector<SymElement>> rperp;  // rperp[n][j] = R_perp_n(n^j) in S^n N^v
    std::map<int, std::vector<SymElement>> rtop;   // rtop[n][k] = R_top_n(t^k) in S^n N^v
    // Optional ambient connection on split letters: connection[k][l] = nabla_k(letter l), letters
    // ordered t then n. When empty, the connection with blocks Gamma and S_N is used.
    std::vector<std::vector<SymElement>> connection;
    // Splitting: iota (c x a), proj (b x c), tau (a x c), rho (c x b); entries of degree zero.
    AlgebraMatrix iota, proj, tau, rho;
    bool closed = false;

    int a() const { return static_cast<int>(tangent_names.size()); }
    int b() const { return static_cast<int>(normal_names.size()); }
    int c() const { return a() + b(); }
    const BaseAlgebra& base() const { return *A; }

    SymAlgebra normal() const { return SymAlgebra(A, std::vector<int>(b(), 0), cap, normal_names); }
    SymAlgebra ambient() const {
        std::vector<std::string> names = tangent_names;
        names.insert(names.end(), normal_names.begin(), normal_names.end());
        return SymAlgebra(A, std::vector<int>(c(), 0), cap, names);
    }
    SymAlgebra frame() const {
        std::vector<std::string> names;
        for (int i = 0; i < c(); ++i) names.push_back("y" + std::to_string(i + 1));
        return SymAlgebra(A, std::vector<int>(c(), 0), cap, names);
    }
    ModulePtr normal_module() const {
        return std::make_shared<FreeModule>(A, normal_names, std::vector<int>(b(), 0));
    }
    ModulePtr tangent_module() const {
        return std::make_shared<FreeModule>(A, tangent_names, std::vector<int>(a(), 0));
    }
};

inline AlgebraMatrix zero_matrix(int rows, int cols) { return AlgebraMatrix(rows, std::vector<AlgebraElement>(cols)); }

inline AlgebraMatrix identity_matrix(const BaseAlgebra& A, int n) {
    auto m = zero_matrix(n, n);
    for (int i = 0; i < n; ++i) m[i][i] = A.one();
    return m;
}

inline AlgebraMatrix matmul(const BaseAlgebra& A, const AlgebraMatrix& x, const AlgebraMatrix& y) {
    const int r = static_cast<int>(x.size()), k = static_cast<int>(y.size());
    const int c = k ? static_cast<int>(y[0].size()) : 0;
    auto out = zero_matrix(r, c);
    for (int i = 0; i < r; ++i)
        for (int l = 0; l < k; ++l)
            if (!x[i][l].is_zero())
                for (int j = 0; j < c; ++j) out[i][j] += A.mul(x[i][l], y[l][j]);
    return out;
}

// Model with every tensor zero and the splitting T*Y = T*X + N^v.
inline GeometricModel trivial_model(AlgebraPtr A, int a, int b, int cap) {
    GeometricModel g;
    g.A = A;
    for (int k = 0; k < a; ++k) g.tangent_names.push_back("t" + std::to_string(k + 1));
    for (int j = 0; j < b; ++j) g.normal_names.push_back("n" + std::to_string(j + 1));
    g.cap = cap;
    g.holo.assign(a, zero_map(*A, 0));
    g.gamma.assign(a, zero_matrix(b, b));
    g.shape.assign(a, zero_matrix(a, b));
    g.beta = zero_matrix(a, b);
    const int c = a + b;
    g.iota = zero_matrix(c, a);
    g.tau = zero_matrix(a, c);
    g.proj = zero_matrix(b, c);
    g.rho = zero_matrix(c, b);
    for (int k = 0; k < a; ++k) g.iota[k][k] = g.tau[k][k] = A->one();
    for (int j = 0; j < b; ++j) g.proj[j][a + j] = g.rho[a + j][j] = A->one();
    return g;
}

// ---- letters and projections ----

inline int tangent_count(const GeometricModel& g, const Monomial& m) {
    int n = 0;
    for (int l : m) n += l < g.a();
    return n;
}

// S(N^v) into S(T*Y) along the split letters.
inline SymElement include_normal(const GeometricModel& g, const SymElement& mu) {
    SymElement out;
    for (const auto& [k, c] : mu) {
        Monomial m = k.m;
        for (int& l : m) l += g.a();
        out.add({m, k.a}, c);
    }
    return out;
}

// rho^v on split letters: kills every word containing a cotangent letter.
inline SymElement rho_dual(const GeometricModel& g, const SymElement& eta) {
    SymElement out;
    for (const auto& [k, c] : eta) {
        if (tangent_count(g, k.m)) continue;
        Monomial m = k.m;
        for (int& l : m) l -= g.a();
        out.add({m, k.a}, c);
    }
    return out;
}

inline SymElement project_tangent_count(const GeometricModel& g, const SymElement& eta, int count) {
    SymElement out;
    for (const auto& [k, c] : eta)
        if (tangent_count(g, k.m) == count) out.add(k, c);
    return out;
}
inline SymElement project_P0(const GeometricModel& g, const SymElement& eta) { return project_tangent_count(g, eta, 0); }
inline SymElement project_P1(const GeometricModel& g, const SymElement& eta) { return project_tangent_count(g, eta, 1); }

// Algebra map sending letter i to images[i], A-linear. Letters are all of degree zero.
inline SymElement substitute(const SymAlgebra& target, const std::vector<SymElement>& images, const SymElement& eta) {
    SymElement out;
    for (const auto& [k, c] : eta) {
        SymElement t = target.from_algebra(AlgebraElement(k.a, c));
        for (int l : k.m) {
            t = target.mul(t, images[l]);
            if (t.is_zero()) break;
        }
        out += t;
    }
    return out;
}

// ---- operators ----

// sum_l coeff[l] * letter(offset + l)
inline SymElement linear_form(const std::vector<AlgebraElement>& coeff, int offset) {
    SymElement out;
    for (int l = 0; l < static_cast<int>(coeff.size()); ++l)
        for (const auto& [e, c] : coeff[l]) out.add({{offset + l}, e}, c);
    return out;
}

// nabla_k on S(T*Y), a degree-zero derivation preserving weight.
inline Derivation ambient_nabla(const GeometricModel& g, int k) {
    SymAlgebra amb = g.ambient();
    Derivation D = zero_derivation(amb, 0);
    for (int e = 0; e < g.base().dim(); ++e) D.on_basis[e] = amb.from_algebra(g.holo[k].values[e]);
    if (!g.connection.empty()) {
        for (int l = 0; l < g.c(); ++l) D.on_letter[l] = g.connection[k][l];
        return D;
    }
    for (int i = 0; i < g.a(); ++i) D.on_letter[i] = linear_form(g.shape[i][k], g.a());
    for (int j = 0; j < g.b(); ++j) D.on_letter[g.a() + j] = linear_form(g.gamma[k][j], g.a());
    return D;
}

// Sym-bar applied to t^k (x) eta: each word with m-1 cotangent letters gets the factor 1/m.
inline SymElement sym_bar(const GeometricModel& g, int k, const SymElement& eta) {
    SymElement out;
    for (const auto& [key, c] : eta) {
        if (static_cast<int>(key.m.size()) + 1 > g.cap) continue;
        Monomial m = key.m;
        m.insert(std::upper_bound(m.begin(), m.end(), k), k);
        out.add({m, key.a}, c * Scalar::frac(1, tangent_count(g, key.m) + 1));
    }
    return out;
}

// nabla-bar = Sym-bar o nabla^{TX}; on weight zero this is tau^v(d f).
inline SymElement nabla_bar(const GeometricModel& g, const SymElement& eta) {
    SymAlgebra amb = g.ambient();
    SymElement out;
    for (int k = 0; k < g.a(); ++k) out += sym_bar(g, k, apply(amb, ambient_nabla(g, k), eta));
    return out;
}

// nabla-perp_k on S(N^v): d/dx_k on coefficients, Gamma_k on letters.
inline Derivation normal_nabla(const GeometricModel& g, int k) {
    SymAlgebra nor = g.normal();
    Derivation D = zero_derivation(nor, 0);
    for (int e = 0; e < g.base().dim(); ++e) D.on_basis[e] = nor.from_algebra(g.holo[k].values[e]);
    for (int j = 0; j < g.b(); ++j) D.on_letter[j] = linear_form(g.gamma[k][j], 0);
    return D;
}

// nabla-bar-perp: S(N^v) -> T*X . S(N^v), sum over k of t^k nabla-perp_k.
inline SymElement nabla_perp_bar(const GeometricModel& g, const SymElement& mu) {
    SymAlgebra nor = g.normal();
    SymElement out;
    for (int k = 0; k < g.a(); ++k) out += sym_bar(g, k, include_normal(g, apply(nor, normal_nabla(g, k), mu)));
    return out;
}

// S_N-tilde: t^i -> sum S^i_{kj} t^k n^j, zero on normal letters and on A.
inline Derivation shape_tilde(const GeometricModel& g) {
    SymAlgebra amb = g.ambient();
    Derivation D = zero_derivation(amb, 0);
    for (int i = 0; i < g.a(); ++i)
        for (int k = 0; k < g.a(); ++k)
            for (int j = 0; j < g.b(); ++j)
                for (const auto& [e, c] : g.shape[i][k][j]) D.on_letter[i] += amb.monomial({k, g.a() + j}, AlgebraElement(e, c));
    return D;
}

inline SymElement shape_derivation(const GeometricModel& g, const SymElement& xi) {
    return apply(g.ambient(), shape_tilde(g), xi);
}

// R_top_p-tilde (beta-tilde for p = 1): replaces a cotangent letter by a normal word, degree one.
inline Derivation rtop_tilde(const GeometricModel& g, int p) {
    SymAlgebra amb = g.ambient();
    Derivation D = zero_derivation(amb, 1);
    for (int k = 0; k < g.a(); ++k) {
        if (p == 1) D.on_letter[k] = linear_form(g.beta[k], g.a());
        else if (g.rtop.count(p)) D.on_letter[k] = include_normal(g, g.rtop.at(p)[k]);
    }
    return D;
}

inline Derivation rperp_tilde(const GeometricModel& g, int n) {
    SymAlgebra nor = g.normal();
    Derivation D = zero_derivation(nor, 1);
    if (g.rperp.count(n))
        for (int j = 0; j < g.b(); ++j) D.on_letter[j] = g.rperp.at(n)[j];
    return D;
}

// pi-tilde^* = sum_k nabla-bar^k, truncated at the cap.
inline SymElement pi_tilde(const GeometricModel& g, const SymElement& mu) {
    SymElement cur = include_normal(g, mu), out = cur;
    for (int k = 1; k <= g.cap && !cur.is_zero(); ++k) {
        cur = nabla_bar(g, cur);
        out += cur;
    }
    return out;
}

// sum_{p >= 1, q >= 0} R_top_p-tilde S_N-tilde^q applied to an element of T*X . S(N^v).
inline SymElement top_chain(const GeometricModel& g, const SymElement& x) {
    SymAlgebra amb = g.ambient();
    Derivation S = shape_tilde(g);
    SymElement out, y = x;
    for (int q = 0; q < g.cap && !y.is_zero(); ++q) {
        for (int p = 1; p + q <= g.cap; ++p) out += rho_dual(g, apply(amb, rtop_tilde(g, p), y));
        y = apply(amb, S, y);
    }
    return out;
}

// D = dbar + sum_{k>=2} R_perp_k-tilde + sum_{p>=1,q>=0} R_top_p-tilde S_N-tilde^q nabla-bar-perp on S_A(N^v).
inline Derivation build_frakD(const GeometricModel& g) {
    SymAlgebra nor = g.normal();
    const auto& A = g.base();
    Derivation D = zero_derivation(nor, 1);
    for (int e = 0; e < A.dim(); ++e) {
        SymElement f = nor.from_algebra(A.basis(e));
        D.on_basis[e] = nor.from_algebra(A.d_basis(e)) + top_chain(g, nabla_perp_bar(g, f));
    }
    for (int j = 0; j < g.b(); ++j) {
        SymElement nj = nor.letter(j);
        SymElement v;
        for (int k = 2; k <= g.cap; ++k) v += apply(nor, rperp_tilde(g, k), nj);
        D.on_letter[j] = v + top_chain(g, nabla_perp_bar(g, nj));
    }
    return D;
}

inline Residual frakD_square_report(const GeometricModel& g) {
    Residual r = square_components(g.normal(), build_frakD(g));
    r.name = "frakD_square";
    return r;
}

// Kapranov-type differential dbar + sum R_n-tilde on S_A(Tm^v); R[n][k] = R_n(t^k) in S^n Tm^v.
inline Derivation build_kapranov(const std::map<int, std::vector<SymElement>>& R, const ModulePtr& Tm, int cap) {
    SymAlgebra S(*Tm, cap);
    Derivation D = d0_derivation(S, *Tm);
    for (const auto& [n, vals] : R) {
        if (n < 2 || n > cap) continue;
        for (int k = 0; k < Tm->rank(); ++k) D.on_letter[k] += S.truncate(vals[k], cap);
    }
    return D;
}

// ---- identities ----

inline std::vector<SymElement> spanning_set(const SymAlgebra& S, int max_weight) {
    std::vector<SymElement> out;
    for (int w = 0; w <= std::min(max_weight, S.cap()); ++w)
        for (const auto& m : multisets(S.letters(), w))
            for (int e = 0; e < S.base().dim(); ++e) out.push_back(S.monomial(m, S.base().basis(e)));
    return out;
}

inline std::string element_site(const SymAlgebra& S, const SymElement& x) {
    return x.size() == 1 ? S.format_key(x.begin()->first) : S.format(x);
}

// rho^v o pi-tilde^* = Id.
inline Residual retraction_residual(const GeometricModel& g) {
    Residual res{"retraction", {}};
    SymAlgebra nor = g.normal();
    for (const auto& mu : spanning_set(nor, g.cap)) {
        SymElement r = rho_dual(g, pi_tilde(g, mu)) - mu;
        if (!r.is_zero()) res.add(static_cast<int>(mu.begin()->first.m.size()), element_site(nor, mu), nor.format(r));
    }
    return res;
}

// Frame letters in split letters: y^i = sum_k iota_ik t^k + sum_j rho_ij n^j.
inline std::vector<SymElement> frame_to_split(const GeometricModel& g) {
    SymAlgebra amb = g.ambient();
    std::vector<SymElement> out(g.c());
    for (int i = 0; i < g.c(); ++i) {
        out[i] = linear_form(g.iota[i], 0);
        out[i] += linear_form(g.rho[i], g.a());
    }
    return out;
}

// rho^v on the frame: y^i -> sum_j rho_ij n^j.
inline std::vector<SymElement> frame_to_normal(const GeometricModel& g) {
    SymAlgebra nor = g.normal();
    std::vector<SymElement> out(g.c());
    for (int i = 0; i < g.c(); ++i) out[i] = linear_form(g.rho[i], 0);
    return out;
}

// [rho^v, dbar] = beta-tilde o P_1 on S(T*Y), written in the holomorphic frame.
inline Residual commutator_lemma_residual(const GeometricModel& g) {
    Residual res{"commutator_lemma", {}};
    SymAlgebra Y = g.frame(), nor = g.normal(), amb = g.ambient();
    auto rho_y = frame_to_normal(g);
    auto split = frame_to_split(g);
    Derivation dY = d0_derivation(Y, FreeModule(g.A, Y.generator_names(), Y.generator_degrees()));
    Derivation dN = d0_derivation(nor, *g.normal_module());
    Derivation bt = rtop_tilde(g, 1);
    for (const auto& eta : spanning_set(Y, g.cap)) {
        SymElement lhs = substitute(nor, rho_y, apply(Y, dY, eta)) - apply(nor, dN, substitute(nor, rho_y, eta));
        SymElement rhs = rho_dual(g, apply(amb, bt, project_P1(g, substitute(amb, split, eta))));
        SymElement r = lhs - rhs;
        if (!r.is_zero()) res.add(static_cast<int>(eta.begin()->first.m.size()), element_site(Y, eta), nor.format(r));
    }
    return res;
}

// P_1 o nabla-bar = nabla-bar-perp o P_0 + S_N-tilde o P_1, and P_1 o nabla-bar^s = S_N-tilde^{s-1} o nabla-bar-perp.
inline Residual transport_lemma_residual(const GeometricModel& g) {
    Residual res{"transport_lemma", {}};
    SymAlgebra amb = g.ambient(), nor = g.normal();
    Derivation S = shape_tilde(g);
    for (const auto& eta : spanning_set(amb, g.cap - 1)) {
        SymElement r = project_P1(g, nabla_bar(g, eta));
        r -= nabla_perp_bar(g, rho_dual(g, project_P0(g, eta)));
        r -= apply(amb, S, project_P1(g, eta));
        if (!r.is_zero()) res.add(static_cast<int>(eta.begin()->first.m.size()), "operator:" + element_site(amb, eta), amb.format(r));
    }
    for (int s = 1; s <= g.cap; ++s)
        for (const auto& mu : spanning_set(nor, g.cap - s)) {
            SymElement lhs = include_normal(g, mu);
            for (int i = 0; i < s; ++i) lhs = nabla_bar(g, lhs);
            lhs = project_P1(g, lhs);
            SymElement rhs = nabla_perp_bar(g, mu);
            for (int i = 1; i < s; ++i) rhs = apply(amb, S, rhs);
            SymElement r = lhs - rhs;
            if (!r.is_zero())
                res.add(static_cast<int>(mu.begin()->first.m.size()) + s, "power" + std::to_string(s) + ":" + element_site(nor, mu),
                        amb.format(r));
        }
    return res;
}

// R_perp = rho^v R p^v and R_top = rho^v R tau^v for a curvature tensor given on the frame:
// full[i] = R_n(y^i) in S^n T*Y.
inline std::pair<std::vector<SymElement>, std::vector<SymElement>> split_curvature(const GeometricModel& g,
                                                                                  const std::vector<SymElement>& full) {
    SymAlgebra nor = g.normal();
    auto rho_y = frame_to_normal(g);
    std::vector<SymElement> image(g.c());
    for (int i = 0; i < g.c(); ++i) image[i] = substitute(nor, rho_y, full[i]);
    std::vector<SymElement> perp(g.b()), top(g.a());
    for (int j = 0; j < g.b(); ++j)
        for (int i = 0; i < g.c(); ++i) perp[j] += nor.mul(nor.from_algebra(g.proj[j][i]), image[i]);
    for (int k = 0; k < g.a(); ++k)
        for (int i = 0; i < g.c(); ++i) top[k] += nor.mul(nor.from_algebra(g.tau[k][i]), image[i]);
    return {perp, top};
}

// Weight-preserving part of D equals the d_A-extension.
inline Residual graded_residual(const GeometricModel& g) {
    Residual res{"graded", {}};
    SymAlgebra nor = g.normal();
    Derivation d = shift_part(nor, build_frakD(g), 0) - d0_derivation(nor, *g.normal_module());
    for (int e = 0; e < g.base().dim(); ++e)
        if (!d.on_basis[e].is_zero()) res.add(0, g.base().name(e), nor.format(d.on_basis[e]));
    for (int j = 0; j < g.b(); ++j)
        if (!d.on_letter[j].is_zero()) res.add(0, nor.letter_name(j), nor.format(d.on_letter[j]));
    return res;
}

// ---- L-infinity[1]-algebroid of the model ----

// Anchors alpha_1 = beta, alpha_n = R_top_n + sum_{Sh(n-1,1)} S_N o (alpha_{n-1} x 1), stored through their
// d/dx coefficients; brackets l_n = R_perp_n + sum_{Sh(n-1,1)} nabla-perp o (alpha_{n-1} x 1), with R_perp and
// nabla-perp acting on N as the negative transposes of their action on N^v.
inline AlgebroidStructure structure_from_geometry(const GeometricModel& g) {
    SymAlgebra nor = g.normal();
    const auto& A = g.base();
    AlgebroidStructure st(g.normal_module(), g.cap);
    std::map<Tuple, std::vector<AlgebraElement>> coeff;  // alpha_n(T) = sum_i coeff[T][i] d/dx_i
    for (int n = 1; n <= g.cap; ++n)
        for (const auto& t : multisets(g.b(), n)) {
            std::vector<AlgebraElement> c(g.a());
            for (int i = 0; i < g.a(); ++i) {
                if (n == 1) c[i] = g.beta[i][t[0]];
                else if (g.rtop.count(n)) c[i] = nor.evaluate_generators(g.rtop.at(n)[i], t);
            }
            ModuleElement br;
            for (int j = 0; j < g.b() && n >= 2; ++j)
                if (g.rperp.count(n))
                    for (const auto& [e, x] : nor.evaluate_generators(g.rperp.at(n)[j], t)) br.add({j, e}, -x);
            if (n >= 2)
                for (const auto& s : unshuffles(n - 1, 1)) {
                    Tuple head;
                    for (int p = 0; p < n - 1; ++p) head.push_back(t[s(p)]);
                    const int last = t[s(n - 1)];
                    const auto& prev = coeff.at(head);
                    for (int k = 0; k < g.a(); ++k) {
                        if (prev[k].is_zero()) continue;
                        for (int i = 0; i < g.a(); ++i) c[i] += A.mul(prev[k], g.shape[i][k][last]);
                        for (int j = 0; j < g.b(); ++j)
                            for (const auto& [e, x] : A.mul(prev[k], g.gamma[k][j][last])) br.add({j, e}, -x);
                    }
                }
            coeff[t] = c;
            AMap alpha = zero_map(A, 1);
            for (int e = 0; e < A.dim(); ++e)
                for (int i = 0; i < g.a(); ++i)
                    if (!c[i].is_zero()) alpha.values[e] += A.mul(c[i], g.holo[i].values[e]);
            if (!alpha.is_zero()) st.anchors[n][t] = alpha;
            if (!br.is_zero()) st.brackets[n][t] = br;
        }
    return st;
}

// ---- validation ----

inline Residual validate_geometric_model(const GeometricModel& g) {
    Residual res{"model", {}};
    const auto& A = g.base();
    const int a = g.a(), b = g.b(), c = g.c();
    auto shape_ok = [](const AlgebraMatrix& m, int r, int cols) {
        if (static_cast<int>(m.size()) != r) return false;
        for (const auto& row : m)
            if (static_cast<int>(row.size()) != cols) return false;
        return true;
    };
    if (static_cast<int>(g.holo.size()) != a) res.add(0, "holo", "expected one derivation per cotangent letter");
    if (static_cast<int>(g.gamma.size()) != a || static_cast<int>(g.shape.size()) != a ||
        !shape_ok(g.beta, a, b) || !shape_ok(g.iota, c, a) || !shape_ok(g.tau, a, c) || !shape_ok(g.proj, b, c) ||
        !shape_ok(g.rho, c, b)) {
        res.add(0, "shape", "tensor dimensions do not match the ranks");
        return res;
    }
    for (int k = 0; k < a; ++k)
        if (!shape_ok(g.gamma[k], b, b) || !shape_ok(g.shape[k], a, b)) {
            res.add(0, "shape", "tensor dimensions do not match the ranks");
            return res;
        }
    auto check_degree = [&](const AlgebraElement& x, int deg, const std::string& site) {
        for (const auto& [e, v] : x)
            if (A.degree(e) != deg) {
                res.add(0, site, "entry of degree " + std::to_string(A.degree(e)) + ", expected " + std::to_string(deg));
                return;
            }
    };
    // splitting
    auto check_identity = [&](const AlgebraMatrix& m, const std::string& name) {
        auto id = identity_matrix(A, static_cast<int>(m.size()));
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j)
                if (!(m[i][j] == id[i][j])) {
                    res.add(0, name, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + A.format(m[i][j]));
                    return;
                }
    };
    check_identity(matmul(A, g.tau, g.iota), "tau*iota");
    check_identity(matmul(A, g.proj, g.rho), "p*rho");
    {
        auto s = matmul(A, g.iota, g.tau);
        auto t = matmul(A, g.rho, g.proj);
        for (int i = 0; i < c; ++i)
            for (int j = 0; j < c; ++j) s[i][j] += t[i][j];
        check_identity(s, "iota*tau+rho*p");
    }
    for (const auto* m : {&g.iota, &g.tau, &g.proj, &g.rho})
        for (const auto& row : *m)
            for (const auto& x : row) check_degree(x, 0, "splitting");
    for (const auto& row : g.iota)
        for (const auto& x : row)
            if (!A.d(x).is_zero()) res.add(0, "iota", "not holomorphic");
    for (const auto& row : g.proj)
        for (const auto& x : row)
            if (!A.d(x).is_zero()) res.add(0, "p", "not holomorphic");
    // d/dx
    for (int k = 0; k < a && k < static_cast<int>(g.holo.size()); ++k) {
        if (g.holo[k].degree != 0) res.add(0, "holo" + std::to_string(k + 1), "not of degree zero");
        for (auto e : derivation_defect(A, g.holo[k], "holo" + std::to_string(k + 1)).entries) res.add(0, e.site, e.value);
    }
    for (int k = 0; k < a; ++k)
        for (int j = 0; j < b; ++j) {
            for (int l = 0; l < b; ++l) check_degree(g.gamma[k][j][l], 0, "gamma");
            check_degree(g.beta[k][j], 1, "beta");
            if (g.closed && !A.d(g.beta[k][j]).is_zero()) res.add(0, "beta", "not closed");
            for (int i = 0; i < a; ++i) check_degree(g.shape[k][i][j], 0, "shape");
        }
    SymAlgebra nor = g.normal(), amb = g.ambient();
    auto check_tensor = [&](const std::map<int, std::vector<SymElement>>& R, int count, const std::string& name) {
        for (const auto& [n, vals] : R) {
            if (n < 2 || n > g.cap) {
                res.add(n, name, "arity outside 2.." + std::to_string(g.cap));
                continue;
            }
            if (static_cast<int>(vals.size()) != count) {
                res.add(n, name, "wrong number of components");
                continue;
            }
            for (const auto& v : vals)
                for (const auto& [k, x] : v)
                    if (static_cast<int>(k.m.size()) != n || nor.term_degree(k) != 1) {
                        res.add(n, name, "component outside S^" + std::to_string(n) + " of degree one");
                        break;
                    }
        }
    };
    check_tensor(g.rperp, b, "R_perp");
    check_tensor(g.rtop, a, "R_top");
    if (!g.connection.empty()) {
        if (static_cast<int>(g.connection.size()) != a) res.add(0, "connection", "wrong number of directions");
        else
            for (const auto& row : g.connection) {
                if (static_cast<int>(row.size()) != c) {
                    res.add(0, "connection", "wrong number of letters");
                    continue;
                }
                for (const auto& v : row)
                    for (const auto& [k, x] : v)
                        if (k.m.size() != 1 || amb.term_degree(k) != 0) res.add(0, "connection", "value not linear of degree zero");
            }
    }
    return res;
}

// ---- generators ----

// Splitting tau = [I Z], rho = [-Z; I] with iota, p the standard inclusion and projection, and the
// beta it forces: beta = -dbar rho^v = d_A Z.
inline void plant_splitting(GeometricModel& g, const AlgebraMatrix& Z) {
    const auto& A = g.base();
    const int a = g.a(), b = g.b();
    for (int k = 0; k < a; ++k)
        for (int j = 0; j < b; ++j) {
            g.tau[k][a + j] = Z[k][j];
            g.rho[k][j] = -Z[k][j];
            g.beta[k][j] = A.d(Z[k][j]);
        }
}

struct RandomModelOptions {
    double density = 0.5;
    bool planted_splitting = true;
    bool curvature = true;
};

inline GeometricModel random_model(Sampler& rng, AlgebraPtr A, int a, int b, int cap, RandomModelOptions opt = {}) {
    GeometricModel g = trivial_model(A, a, b, cap);
    SymAlgebra nor = g.normal();
    for (int k = 0; k < a; ++k) g.holo[k] = rng.derivation_of_A(*A, 0, opt.density);
    for (int k = 0; k < a; ++k)
        for (int j = 0; j < b; ++j)
            for (int l = 0; l < b; ++l) g.gamma[k][j][l] = rng.algebra_element(*A, 0, opt.density);
    for (int i = 0; i < a; ++i)
        for (int k = 0; k < a; ++k)
            for (int j = 0; j < b; ++j) g.shape[i][k][j] = rng.algebra_element(*A, 0, opt.density);
    if (opt.planted_splitting) {
        auto Z = zero_matrix(a, b);
        for (auto& row : Z)
            for (auto& z : row) z = rng.algebra_element(*A, 0, opt.density);
        plant_splitting(g, Z);
    }
    else
        for (auto& row : g.beta)
            for (auto& x : row) x = rng.algebra_element(*A, 1, opt.density);
    if (opt.curvature)
        for (int n = 2; n <= cap; ++n) {
            g.rperp[n].resize(b);
            g.rtop[n].resize(a);
            for (auto& v : g.rperp[n]) v = rng.sym_element(nor, 1, n, n, opt.density * 0.5);
            for (auto& v : g.rtop[n]) v = rng.sym_element(nor, 1, n, n, opt.density * 0.5);
        }
    return g;
}

}  // namespace shlr
