#pragma once

#include "geometry.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <variant>

namespace shlr {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Input error with the offending location: a JSON pointer into the file, or line:column for syntax errors.
struct InputError : std::runtime_error {
    std::string where;
    InputError(std::string w, const std::string& what) : std::runtime_error(w + ": " + what), where(std::move(w)) {}
};

struct Caps {
    int weight = 3;
    int arity = 3;
};

struct ModelFile {
    Caps caps;
    std::string description;
    std::variant<GeometricModel, AlgebroidStructure> object;

    bool geometric() const { return std::holds_alternative<GeometricModel>(object); }
    const GeometricModel& model() const { return std::get<GeometricModel>(object); }
    const AlgebroidStructure& structure() const { return std::get<AlgebroidStructure>(object); }
    AlgebraPtr algebra() const {
        return geometric() ? model().A : structure().carrier->base_ptr();
    }
};

// ---- scalars ----

inline json integer_to_json(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

inline Scalar scalar_from_json(const json& j, const std::string& at);

inline json scalar_to_json(const Scalar& s) {
    return json{{"num", integer_to_json(s.re().get_num())},
                {"den", integer_to_json(s.re().get_den())},
                {"inum", integer_to_json(s.im().get_num())},
                {"iden", integer_to_json(s.im().get_den())}};
}

// ---- reader with field provenance ----

class Node {
public:
    Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

    const json& raw() const { return j_; }
    const std::string& path() const { return path_; }
    [[noreturn]] void fail(const std::string& what) const { throw InputError(path_.empty() ? "/" : path_, what); }

    // Object with exactly the allowed keys, of which `required` must be present.
    const Node& object(std::initializer_list<const char*> required, std::initializer_list<const char*> optional = {}) const {
        if (!j_.is_object()) fail("expected an object");
        for (const auto& [k, v] : j_.items()) {
            bool known = false;
            for (const char* r : required) known |= k == r;
            for (const char* o : optional) known |= k == o;
            if (!known) Node(v, path_ + "/" + k).fail("unknown field");
        }
        for (const char* r : required)
            if (!j_.contains(r)) fail(std::string("missing field '") + r + "'");
        return *this;
    }
    bool has(const std::string& k) const { return j_.contains(k); }
    Node operator[](const std::string& k) const {
        if (!j_.contains(k)) fail("missing field '" + k + "'");
        return Node(j_.at(k), path_ + "/" + k);
    }
    std::vector<Node> array() const {
        if (!j_.is_array()) fail("expected an array");
        std::vector<Node> out;
        for (std::size_t i = 0; i < j_.size(); ++i) out.emplace_back(j_[i], path_ + "/" + std::to_string(i));
        return out;
    }
    int integer() const {
        if (!j_.is_number_integer()) fail("expected an integer");
        return j_.get<int>();
    }
    bool boolean() const {
        if (!j_.is_boolean()) fail("expected a boolean");
        return j_.get<bool>();
    }
    std::string string() const {
        if (!j_.is_string()) fail("expected a string");
        return j_.get<std::string>();
    }
    std::vector<std::string> strings() const {
        std::vector<std::string> out;
        for (const auto& n : array()) out.push_back(n.string());
        return out;
    }
    Scalar scalar() const { return scalar_from_json(j_, path_); }

private:
    const json& j_;
    std::string path_;
};

inline mpz_class integer_from_json(const json& j, const std::string& at) {
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos) return mpz_class(s);
    }
    throw InputError(at, "malformed scalar: expected an integer");
}

inline Scalar scalar_from_json(const json& j, const std::string& at) {
    Node n(j, at);
    n.object({"num", "den", "inum", "iden"});
    mpz_class num = integer_from_json(j.at("num"), at + "/num"), den = integer_from_json(j.at("den"), at + "/den");
    mpz_class inum = integer_from_json(j.at("inum"), at + "/inum"), iden = integer_from_json(j.at("iden"), at + "/iden");
    if (sgn(den) == 0 || sgn(iden) == 0) throw InputError(at, "malformed scalar: zero denominator");
    return Scalar(mpq_class(num, den), mpq_class(inum, iden));
}

// ---- lookup helpers ----

inline int lookup(const Node& n, const std::vector<std::string>& names, const std::string& what) {
    auto s = n.string();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == s) return static_cast<int>(i);
    n.fail("unknown " + what + " '" + s + "'");
}

// ---- algebra elements ----

inline json element_to_json(const BaseAlgebra& A, const AlgebraElement& x) {
    json out = json::array();
    for (const auto& [e, c] : x) out.push_back({{"basis", A.name(e)}, {"c", scalar_to_json(c)}});
    return out;
}

inline AlgebraElement element_from_json(const BaseAlgebra& A, const Node& n) {
    AlgebraElement x;
    for (const auto& t : n.array()) {
        t.object({"basis", "c"});
        x.add(lookup(t["basis"], A.names(), "basis element"), t["c"].scalar());
    }
    return x;
}

inline json algebra_to_json(const BaseAlgebra& A) {
    json basis = json::array(), products = json::array(), diff = json::array();
    for (int e = 0; e < A.dim(); ++e) basis.push_back({{"name", A.name(e)}, {"degree", A.degree(e)}});
    for (int a = 0; a < A.dim(); ++a)
        for (int b = 0; b < A.dim(); ++b) {
            if (a == A.unit() || b == A.unit() || A.product(a, b).is_zero()) continue;
            products.push_back({{"left", A.name(a)}, {"right", A.name(b)}, {"value", element_to_json(A, A.product(a, b))}});
        }
    for (int e = 0; e < A.dim(); ++e)
        if (!A.d_basis(e).is_zero()) diff.push_back({{"of", A.name(e)}, {"value", element_to_json(A, A.d_basis(e))}});
    return json{{"basis", basis}, {"unit", A.name(A.unit())}, {"products", products}, {"differential", diff}};
}

inline AlgebraPtr algebra_from_json(const Node& n) {
    n.object({"basis", "unit"}, {"products", "differential"});
    std::vector<std::string> names;
    std::vector<int> degs;
    for (const auto& b : n["basis"].array()) {
        b.object({"name", "degree"});
        auto nm = b["name"].string();
        if (std::find(names.begin(), names.end(), nm) != names.end()) b["name"].fail("duplicate basis name");
        names.push_back(nm);
        degs.push_back(b["degree"].integer());
    }
    if (names.empty()) n["basis"].fail("empty basis");
    const int dim = static_cast<int>(names.size());
    const int unit = lookup(n["unit"], names, "basis element");
    if (degs[unit] != 0) n["unit"].fail("degree mismatch: unit must have degree 0");
    // a bare algebra to resolve names while reading
    std::vector<std::vector<AlgebraElement>> table(dim, std::vector<AlgebraElement>(dim));
    for (int e = 0; e < dim; ++e) table[unit][e] = table[e][unit] = AlgebraElement(e, Scalar(1));
    BaseAlgebra names_only(names, degs, unit, table, std::vector<AlgebraElement>(dim));
    if (n.has("products"))
        for (const auto& p : n["products"].array()) {
            p.object({"left", "right", "value"});
            int a = lookup(p["left"], names, "basis element"), b = lookup(p["right"], names, "basis element");
            AlgebraElement v = element_from_json(names_only, p["value"]);
            if ((a == unit || b == unit) && !(v == table[a][b])) p.fail("product with the unit disagrees with the unit law");
            for (const auto& [e, c] : v)
                if (degs[e] != degs[a] + degs[b]) p["value"].fail("degree mismatch in product");
            table[a][b] = v;
        }
    std::vector<AlgebraElement> d(dim);
    if (n.has("differential"))
        for (const auto& p : n["differential"].array()) {
            p.object({"of", "value"});
            int a = lookup(p["of"], names, "basis element");
            d[a] = element_from_json(names_only, p["value"]);
            for (const auto& [e, c] : d[a])
                if (degs[e] != degs[a] + 1) p["value"].fail("degree mismatch in differential");
        }
    auto A = std::make_shared<BaseAlgebra>(names, degs, unit, table, d);
    Residual r = validate_base_algebra(*A);
    if (!r.empty()) n.fail("invalid algebra: " + r.entries[0].site + " " + r.entries[0].value);
    return A;
}

// ---- symmetric-algebra elements, letters by name ----

inline json sym_to_json(const SymAlgebra& S, const SymElement& x) {
    json out = json::array();
    for (const auto& [k, c] : x) {
        json word = json::array();
        for (int l : k.m) word.push_back(S.generator_names()[l]);
        out.push_back({{"word", word}, {"basis", S.base().name(k.a)}, {"c", scalar_to_json(c)}});
    }
    return out;
}

inline SymElement sym_from_json(const SymAlgebra& S, const Node& n) {
    SymElement x;
    for (const auto& t : n.array()) {
        t.object({"word", "basis", "c"});
        Monomial m;
        for (const auto& l : t["word"].array()) m.push_back(lookup(l, S.generator_names(), "letter"));
        std::sort(m.begin(), m.end());
        if (static_cast<int>(m.size()) > S.cap()) t["word"].fail("cap overflow: word longer than the weight cap");
        x.add({m, lookup(t["basis"], S.base().names(), "basis element")}, t["c"].scalar());
    }
    return x;
}

inline json map_to_json(const BaseAlgebra& A, const AMap& f) {
    json out = json::array();
    for (int e = 0; e < A.dim(); ++e)
        if (!f.values[e].is_zero()) out.push_back({{"of", A.name(e)}, {"value", element_to_json(A, f.values[e])}});
    return out;
}

inline AMap map_from_json(const BaseAlgebra& A, const Node& n, int degree) {
    AMap f = zero_map(A, degree);
    for (const auto& p : n.array()) {
        p.object({"of", "value"});
        int e = lookup(p["of"], A.names(), "basis element");
        f.values[e] = element_from_json(A, p["value"]);
        for (const auto& [b, c] : f.values[e])
            if (A.degree(b) != A.degree(e) + degree) p["value"].fail("degree mismatch: map of degree " + std::to_string(degree));
    }
    return f;
}

// ---- algebroid structures ----

inline json module_element_to_json(const FreeModule& L, const ModuleElement& v) {
    json out = json::array();
    for (const auto& [k, c] : v)
        out.push_back({{"gen", L.name(k.first)}, {"basis", L.base().name(k.second)}, {"c", scalar_to_json(c)}});
    return out;
}

inline ModuleElement module_element_from_json(const FreeModule& L, const Node& n) {
    ModuleElement v;
    for (const auto& t : n.array()) {
        t.object({"gen", "basis", "c"});
        v.add({lookup(t["gen"], L.names(), "generator"), lookup(t["basis"], L.base().names(), "basis element")},
              t["c"].scalar());
    }
    return v;
}

inline json structure_to_json(const AlgebroidStructure& st) {
    const auto& L = st.module();
    const auto& A = st.base();
    json gens = json::array(), diff = json::array(), br = json::array(), an = json::array();
    for (int i = 0; i < L.rank(); ++i) gens.push_back({{"name", L.name(i)}, {"degree", L.degree(i)}});
    for (int i = 0; i < L.rank(); ++i)
        if (!L.d_gen(i).is_zero()) diff.push_back({{"of", L.name(i)}, {"value", module_element_to_json(L, L.d_gen(i))}});
    auto names = [&](const Tuple& t) {
        json a = json::array();
        for (int i : t) a.push_back(L.name(i));
        return a;
    };
    for (int n = 2; n <= st.cap; ++n)
        for (const auto& [t, v] : st.brackets[n]) br.push_back({{"args", names(t)}, {"value", module_element_to_json(L, v)}});
    for (int n = 1; n <= st.cap; ++n)
        for (const auto& [t, f] : st.anchors[n]) an.push_back({{"args", names(t)}, {"map", map_to_json(A, f)}});
    return json{{"module", {{"generators", gens}, {"differential", diff}}}, {"brackets", br}, {"anchors", an}};
}

inline AlgebroidStructure structure_from_json(const AlgebraPtr& A, const Node& n, const Caps& caps) {
    n.object({"module"}, {"brackets", "anchors"});
    Node m = n["module"];
    m.object({"generators"}, {"differential"});
    std::vector<std::string> names;
    std::vector<int> degs;
    for (const auto& g : m["generators"].array()) {
        g.object({"name", "degree"});
        auto nm = g["name"].string();
        if (std::find(names.begin(), names.end(), nm) != names.end()) g["name"].fail("duplicate generator name");
        names.push_back(nm);
        degs.push_back(g["degree"].integer());
    }
    FreeModule bare(A, names, degs);
    std::vector<ModuleElement> d(names.size());
    if (m.has("differential"))
        for (const auto& p : m["differential"].array()) {
            p.object({"of", "value"});
            int i = lookup(p["of"], names, "generator");
            d[i] = module_element_from_json(bare, p["value"]);
            for (const auto& [k, c] : d[i])
                if (bare.term_degree(k) != degs[i] + 1) p["value"].fail("degree mismatch in module differential");
        }
    auto L = std::make_shared<FreeModule>(A, names, degs, d);
    Residual mr = validate_module(*L);
    if (!mr.empty()) m.fail("invalid module: " + mr.entries[0].site + " " + mr.entries[0].value);
    AlgebroidStructure st(L, caps.arity);
    if (n.has("brackets"))
        for (const auto& p : n["brackets"].array()) {
            p.object({"args", "value"});
            Tuple t;
            for (const auto& a : p["args"].array()) t.push_back(lookup(a, names, "generator"));
            if (t.size() < 2) p["args"].fail("bracket needs at least two arguments");
            if (static_cast<int>(t.size()) > caps.arity) p["args"].fail("cap overflow: arity above the arity cap");
            st.set_bracket(t, module_element_from_json(*L, p["value"]));
        }
    if (n.has("anchors"))
        for (const auto& p : n["anchors"].array()) {
            p.object({"args", "map"});
            Tuple t;
            for (const auto& a : p["args"].array()) t.push_back(lookup(a, names, "generator"));
            if (t.empty()) p["args"].fail("anchor needs at least one argument");
            if (static_cast<int>(t.size()) > caps.arity) p["args"].fail("cap overflow: arity above the arity cap");
            int deg = 1;
            for (int i : t) deg += degs[i];
            st.set_anchor(t, map_from_json(*A, p["map"], deg));
        }
    Residual r = validate_structure(st);
    if (!r.empty()) n.fail("degree mismatch: " + r.entries[0].site + " " + r.entries[0].value);
    return st;
}

// ---- geometric models ----

inline bool standard_splitting(const GeometricModel& g) {
    auto t = trivial_model(g.A, g.a(), g.b(), 1);
    return g.iota == t.iota && g.tau == t.tau && g.proj == t.proj && g.rho == t.rho;
}

inline json matrix_to_json(const BaseAlgebra& A, const AlgebraMatrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m[r].size(); ++c)
            if (!m[r][c].is_zero()) out.push_back({{"row", r}, {"col", c}, {"value", element_to_json(A, m[r][c])}});
    return out;
}

inline void matrix_from_json(const BaseAlgebra& A, const Node& n, AlgebraMatrix& m) {
    for (auto& row : m)
        for (auto& x : row) x = {};
    for (const auto& e : n.array()) {
        e.object({"row", "col", "value"});
        int r = e["row"].integer(), c = e["col"].integer();
        if (r < 0 || r >= static_cast<int>(m.size()) || c < 0 || c >= static_cast<int>(m[0].size())) e.fail("index out of range");
        m[r][c] = element_from_json(A, e["value"]);
    }
}

inline json geometry_to_json(const GeometricModel& g) {
    const auto& A = g.base();
    SymAlgebra nor = g.normal(), amb = g.ambient();
    json holo = json::array(), gamma = json::array(), shape = json::array(), beta = json::array();
    json rperp = json::array(), rtop = json::array();
    for (int k = 0; k < g.a(); ++k)
        if (!g.holo[k].is_zero()) holo.push_back({{"direction", g.tangent_names[k]}, {"map", map_to_json(A, g.holo[k])}});
    for (int k = 0; k < g.a(); ++k)
        for (int j = 0; j < g.b(); ++j)
            for (int l = 0; l < g.b(); ++l)
                if (!g.gamma[k][j][l].is_zero())
                    gamma.push_back({{"direction", g.tangent_names[k]}, {"of", g.normal_names[j]}, {"on", g.normal_names[l]},
                                     {"value", element_to_json(A, g.gamma[k][j][l])}});
    for (int i = 0; i < g.a(); ++i)
        for (int k = 0; k < g.a(); ++k)
            for (int j = 0; j < g.b(); ++j)
                if (!g.shape[i][k][j].is_zero())
                    shape.push_back({{"of", g.tangent_names[i]}, {"tangent", g.tangent_names[k]}, {"normal", g.normal_names[j]},
                                     {"value", element_to_json(A, g.shape[i][k][j])}});
    for (int k = 0; k < g.a(); ++k)
        for (int j = 0; j < g.b(); ++j)
            if (!g.beta[k][j].is_zero())
                beta.push_back({{"of", g.tangent_names[k]}, {"on", g.normal_names[j]}, {"value", element_to_json(A, g.beta[k][j])}});
    for (const auto& [n, vals] : g.rperp)
        for (int j = 0; j < g.b(); ++j)
            if (!vals[j].is_zero()) rperp.push_back({{"arity", n}, {"of", g.normal_names[j]}, {"value", sym_to_json(nor, vals[j])}});
    for (const auto& [n, vals] : g.rtop)
        for (int k = 0; k < g.a(); ++k)
            if (!vals[k].is_zero()) rtop.push_back({{"arity", n}, {"of", g.tangent_names[k]}, {"value", sym_to_json(nor, vals[k])}});
    json out{{"tangent", g.tangent_names}, {"normal", g.normal_names}, {"closed", g.closed}, {"holo", holo},
             {"gamma", gamma}, {"shape", shape}, {"beta", beta}, {"r_perp", rperp}, {"r_top", rtop}};
    if (!g.connection.empty()) {
        json conn = json::array();
        auto letters = amb.generator_names();
        for (int k = 0; k < g.a(); ++k)
            for (int l = 0; l < g.c(); ++l)
                if (!g.connection[k][l].is_zero())
                    conn.push_back({{"direction", g.tangent_names[k]}, {"of", letters[l]}, {"value", sym_to_json(amb, g.connection[k][l])}});
        out["connection"] = conn;
    }
    if (!standard_splitting(g))
        out["splitting"] = {{"iota", matrix_to_json(A, g.iota)}, {"p", matrix_to_json(A, g.proj)},
                            {"tau", matrix_to_json(A, g.tau)}, {"rho", matrix_to_json(A, g.rho)}};
    return out;
}

inline GeometricModel geometry_from_json(const AlgebraPtr& A, const Node& n, const Caps& caps) {
    n.object({"tangent", "normal"}, {"closed", "holo", "gamma", "shape", "beta", "r_perp", "r_top", "connection", "splitting"});
    auto tn = n["tangent"].strings(), nn = n["normal"].strings();
    {
        auto all = tn;
        all.insert(all.end(), nn.begin(), nn.end());
        std::sort(all.begin(), all.end());
        if (std::adjacent_find(all.begin(), all.end()) != all.end()) n.fail("duplicate letter name");
    }
    GeometricModel g = trivial_model(A, static_cast<int>(tn.size()), static_cast<int>(nn.size()), caps.weight);
    g.tangent_names = tn;
    g.normal_names = nn;
    if (n.has("closed")) g.closed = n["closed"].boolean();
    SymAlgebra nor = g.normal(), amb = g.ambient();
    auto list = [&](const char* key) { return n.has(key) ? n[key].array() : std::vector<Node>{}; };
    for (const auto& p : list("holo")) {
        p.object({"direction", "map"});
        g.holo[lookup(p["direction"], tn, "tangent letter")] = map_from_json(*A, p["map"], 0);
    }
    for (const auto& p : list("gamma")) {
        p.object({"direction", "of", "on", "value"});
        g.gamma[lookup(p["direction"], tn, "tangent letter")][lookup(p["of"], nn, "normal letter")]
               [lookup(p["on"], nn, "normal letter")] = element_from_json(*A, p["value"]);
    }
    for (const auto& p : list("shape")) {
        p.object({"of", "tangent", "normal", "value"});
        g.shape[lookup(p["of"], tn, "tangent letter")][lookup(p["tangent"], tn, "tangent letter")]
               [lookup(p["normal"], nn, "normal letter")] = element_from_json(*A, p["value"]);
    }
    for (const auto& p : list("beta")) {
        p.object({"of", "on", "value"});
        g.beta[lookup(p["of"], tn, "tangent letter")][lookup(p["on"], nn, "normal letter")] = element_from_json(*A, p["value"]);
    }
    auto read_tensor = [&](const char* key, const std::vector<std::string>& of, std::map<int, std::vector<SymElement>>& R) {
        for (const auto& p : list(key)) {
            p.object({"arity", "of", "value"});
            int ar = p["arity"].integer();
            if (ar < 2) p["arity"].fail("arity below 2");
            if (ar > caps.weight) p["arity"].fail("cap overflow: arity above the weight cap");
            auto& slot = R[ar];
            slot.resize(of.size());
            slot[lookup(p["of"], of, "letter")] = sym_from_json(nor, p["value"]);
        }
    };
    read_tensor("r_perp", nn, g.rperp);
    read_tensor("r_top", tn, g.rtop);
    if (n.has("connection")) {
        g.connection.assign(g.a(), std::vector<SymElement>(g.c()));
        auto letters = amb.generator_names();
        for (const auto& p : n["connection"].array()) {
            p.object({"direction", "of", "value"});
            g.connection[lookup(p["direction"], tn, "tangent letter")][lookup(p["of"], letters, "letter")] =
                sym_from_json(amb, p["value"]);
        }
    }
    if (n.has("splitting")) {
        Node s = n["splitting"];
        s.object({"iota", "p", "tau", "rho"});
        matrix_from_json(*A, s["iota"], g.iota);
        matrix_from_json(*A, s["p"], g.proj);
        matrix_from_json(*A, s["tau"], g.tau);
        matrix_from_json(*A, s["rho"], g.rho);
    }
    return g;
}

// ---- files ----

inline json model_to_json(const ModelFile& f) {
    json out{{"schema", kSchemaVersion},
             {"caps", {{"weight", f.caps.weight}, {"arity", f.caps.arity}}},
             {"algebra", algebra_to_json(*f.algebra())}};
    if (!f.description.empty()) out["description"] = f.description;
    if (f.geometric()) out["geometry"] = geometry_to_json(f.model());
    else out["algebroid"] = structure_to_json(f.structure());
    return out;
}

inline std::string serialize_model(const ModelFile& f) { return model_to_json(f).dump(2) + "\n"; }

inline std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else ++col;
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// Parse without validating the geometric contracts (those are reported by `validate`).
inline ModelFile parse_model_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(line_column(text, e.byte), "malformed JSON");
    }
    Node root(j, "");
    root.object({"schema", "caps", "algebra"}, {"description", "geometry", "algebroid"});
    if (root["schema"].integer() != kSchemaVersion) root["schema"].fail("unsupported schema version");
    ModelFile f;
    Node caps = root["caps"];
    caps.object({"weight", "arity"});
    f.caps = {caps["weight"].integer(), caps["arity"].integer()};
    if (f.caps.weight < 1 || f.caps.arity < 1) caps.fail("caps must be positive");
    if (f.caps.arity > f.caps.weight) caps.fail("cap overflow: arity above the weight cap");
    if (root.has("description")) f.description = root["description"].string();
    AlgebraPtr A = algebra_from_json(root["algebra"]);
    const bool geo = root.has("geometry"), alg = root.has("algebroid");
    if (geo == alg) root.fail("exactly one of 'geometry' or 'algebroid' is required");
    if (geo) {
        if (f.caps.arity != f.caps.weight) caps.fail("geometric models use equal weight and arity caps");
        f.object = geometry_from_json(A, root["geometry"], f.caps);
    } else {
        f.object = structure_from_json(A, root["algebroid"], f.caps);
    }
    return f;
}

inline ModelFile parse_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path, "cannot read file");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_model_text(ss.str());
    } catch (const InputError& e) {
        throw InputError(path + ":" + e.where, std::string(e.what()).substr(e.where.size() + 2));
    }
}

// Canonical form of a file's text: parse and serialize.
inline std::string canonical(const std::string& text) { return serialize_model(parse_model_text(text)); }

// Override caps. Tensors beyond a lowered cap are dropped.
inline void apply_caps(ModelFile& f, std::optional<int> weight, std::optional<int> arity) {
    Caps c = f.caps;
    if (weight) c.weight = *weight;
    if (arity) c.arity = *arity;
    else if (weight) c.arity = f.geometric() ? c.weight : std::min(c.arity, c.weight);
    if (c.weight < 1 || c.arity < 1) throw InputError("caps", "caps must be positive");
    if (c.arity > c.weight) throw InputError("caps", "cap overflow: arity above the weight cap");
    if (f.geometric()) {
        if (c.arity != c.weight) throw InputError("caps", "geometric models use equal weight and arity caps");
        auto& g = std::get<GeometricModel>(f.object);
        g.cap = c.weight;
        for (auto* R : {&g.rperp, &g.rtop})
            for (auto it = R->begin(); it != R->end();) it = it->first > c.weight ? R->erase(it) : std::next(it);
        for (auto& row : g.connection)
            for (auto& v : row) v = g.ambient().truncate(v, c.weight);
    } else {
        auto& st = std::get<AlgebroidStructure>(f.object);
        AlgebroidStructure out(st.carrier, c.arity);
        for (int n = 1; n <= std::min(st.cap, c.arity); ++n) {
            out.anchors[n] = st.anchors[n];
            out.brackets[n] = st.brackets[n];
        }
        st = out;
    }
    f.caps = c;
}

}  // namespace shlr
