// Writes the fixture corpus: make_fixtures <directory>
#include <shlr/io.hpp>

#include <filesystem>
#include <iostream>

using namespace shlr;

namespace {

void write(const std::filesystem::path& dir, const std::string& name, const ModelFile& f) {
    std::ofstream out(dir / name);
    out << serialize_model(f);
    std::cout << name << "\n";
}

ModelFile geometric(const GeometricModel& g, std::string description) {
    return {{g.cap, g.cap}, std::move(description), g};
}

AlgebraPtr lambda2d() { return exterior_algebra(2, "e", {{0, {{{0, 1}, Scalar(1)}}}}); }

// K[x]/x^3 (x) Lambda[eps] with the Euler derivation x d/dx, a planted splitting Z = x and beta = d x = eps x.
GeometricModel planted() {
    auto A = truncated_poly_algebra(3);
    auto g = trivial_model(A, 1, 1, 3);
    auto b = [&](const char* n) { return A->basis(A->index_of(n)); };
    g.holo[0] = zero_map(*A, 0);
    for (const char* n : {"x", "epsx"}) g.holo[0].values[A->index_of(n)] = b(n);
    for (const char* n : {"x2", "epsx2"}) g.holo[0].values[A->index_of(n)] = Scalar(2) * b(n);
    g.gamma[0][0][0] = b("x");
    g.shape[0][0][0] = A->one();
    plant_splitting(g, {{b("x")}});
    SymAlgebra nor = g.normal();
    g.rperp[2] = {nor.monomial({0, 0}, b("eps"))};
    g.rtop[2] = {nor.monomial({0, 0}, b("epsx"))};
    g.rtop[3] = {nor.monomial({0, 0, 0}, b("eps"))};
    return g;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixtures <directory>\n";
        return 2;
    }
    std::filesystem::path dir(argv[1]);
    std::filesystem::create_directories(dir);

    write(dir, "trivial.json", geometric(trivial_model(lambda2d(), 1, 1, 3), "all tensors zero"));

    {
        auto A = exterior_algebra(1, "eps");
        auto g = trivial_model(A, 1, 1, 4);
        g.rperp[2] = {g.normal().monomial({0, 0}, A->basis(1))};
        write(dir, "eps_nilpotent.json", geometric(g, "rank one over Lambda[eps], only R_perp_2 = eps n^2"));
    }

    write(dir, "planted_beta.json", geometric(planted(), "splitting tau = [1 x] with beta = -dbar rho^v; integrable since A^2 = 0"));

    {
        auto g = planted();
        Sampler rng(5);
        g.connection.assign(1, std::vector<SymElement>(2));
        SymAlgebra amb = g.ambient();
        g.connection[0][0] = amb.monomial({1}, g.base().one()) + amb.monomial({0}, g.base().one());
        g.connection[0][1] = amb.monomial({1}, g.base().basis(1));
        g.shape[0][0][0] = Scalar(2) * g.base().one();  // disagrees with the connection's normal block
        write(dir, "mismatched_shape.json", geometric(g, "ambient connection whose normal block differs from S_N"));
    }

    {
        auto g = planted();
        g.beta[0][0] = -g.beta[0][0];
        write(dir, "inconsistent_beta.json", geometric(g, "beta stored with the wrong sign against the splitting"));
    }

    {
        Sampler rng(17);
        auto g = random_model(rng, lambda2d(), 1, 2, 3, {0.6, false, true});
        write(dir, "rank2_generic.json", geometric(g, "random tensors, rank-two normal bundle; not integrable"));
    }

    {
        Sampler rng(23);
        auto g = random_model(rng, exterior_algebra(2), 2, 2, 3, {0.5, false, true});
        for (auto& row : g.beta)
            for (auto& x : row) x = {};
        g.rtop.clear();
        write(dir, "diagonal.json", geometric(g, "beta = 0 and R_top = 0: Kapranov regime with vanishing anchors"));
    }

    {
        Sampler rng(29);
        auto g = random_model(rng, truncated_poly_algebra(2), 2, 1, 3, {0.6, true, true});
        write(dir, "random_planted.json", geometric(g, "random tensors over a planted splitting"));
    }

    // algebroid files
    {
        auto A = ground_field();
        std::vector<std::string> names{"E11", "E12", "E21", "E22"};
        auto L = std::make_shared<FreeModule>(A, names, std::vector<int>{-1, -1, -1, -1});
        AlgebroidStructure st(L, 3);
        // decalage of the commutator; the sign is trivial since gl2 sits in degree 0
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                int i = a / 2, j = a % 2, k = b / 2, l = b % 2;
                ModuleElement v;
                if (j == k) v.add({2 * i + l, 0}, Scalar(1));
                if (l == i) v.add({2 * k + j, 0}, Scalar(-1));
                if (!v.is_zero()) st.set_bracket({a, b}, v);
            }
        write(dir, "gl2_dgla.json", {{3, 3}, "shifted 2x2 matrix commutator over the ground field", st});
    }

    {
        auto A = lambda2d();
        std::vector<ModuleElement> d(2);
        d[1] = ModuleElement({0, A->unit()}, Scalar(1));
        auto L = std::make_shared<FreeModule>(A, std::vector<std::string>{"g", "h"}, std::vector<int>{0, -1}, d);
        SymAlgebra S(*L, 3);
        Sampler rng(31);
        auto st = conjugated_structure(rng, S, *L, 0.4);
        write(dir, "conjugated.json", {{3, 3}, "structure read off a conjugate of D0 by a unipotent automorphism", st});
    }

    {
        auto A = exterior_algebra(2);
        auto L = std::make_shared<FreeModule>(A, std::vector<std::string>{"h"}, std::vector<int>{-1});
        AlgebroidStructure st(L, 2);
        AMap x = zero_map(*A, 0);
        x.values[A->index_of("e1")] = A->basis(A->index_of("e1"));
        st.set_anchor({0}, x);
        write(dir, "bad_anchor.json", {{2, 2}, "degree-zero anchor e1 -> e1, e2 -> 0: not a derivation", st});
    }
    return 0;
}
