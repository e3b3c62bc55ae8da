#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "periods/hermitian.hpp"

using namespace periods;

namespace {

const ExtensionContext& ctx3() {
    static ExtensionContext ctx(3, 1);
    return ctx;
}

} // namespace

TEST_CASE("matrix arithmetic over E") {
    const auto& ctx = ctx3();
    EMatrix A(2, 2), B(2, 2);
    A.at(0, 0) = 1; A.at(0, 1) = ctx.delta; A.at(1, 0) = 2; A.at(1, 1) = 0;
    B.at(0, 0) = ctx.gen; B.at(0, 1) = 0; B.at(1, 0) = 1; B.at(1, 1) = 2;
    CHECK(emat_mul(ctx, A, emat_identity(2)) == A);
    CHECK(emat_add(ctx, A, emat_neg(ctx, A)) == EMatrix(2, 2));
    CHECK(emat_conj(ctx, emat_conj(ctx, A)) == A);
    CHECK(emat_transpose(emat_transpose(A)) == A);
    // det is multiplicative
    CHECK(emat_det(ctx, emat_mul(ctx, A, B)) ==
          ctx.mul(emat_det(ctx, A), emat_det(ctx, B)));
    // inverse round-trips
    auto Ainv = emat_inverse(ctx, A);
    REQUIRE(Ainv.has_value());
    CHECK(emat_mul(ctx, A, *Ainv) == emat_identity(2));
    CHECK(emat_mul(ctx, *Ainv, A) == emat_identity(2));
    // rank/nullspace
    EMatrix S(2, 2);
    S.at(0, 0) = 1; S.at(0, 1) = 2; S.at(1, 0) = 2; S.at(1, 1) = 1; // 2 = -1, singular
    CHECK(emat_det(ctx, S) == 0);
    CHECK(emat_rank(ctx, S) == 1);
    EMatrix N = emat_nullspace(ctx, S);
    CHECK(N.cols == 1);
    CHECK(emat_mul(ctx, S, N) == EMatrix(2, 1));
    CHECK_FALSE(emat_inverse(ctx, S).has_value());
}

TEST_CASE("conjugate-space transport") {
    const auto& ctx = ctx3();
    SUBCASE("det of the conjugated matrix is the conjugate of det, n <= 2") {
        for (int n : {1, 2}) {
            auto gl = enumerate_general_linear(ctx, n);
            for (auto& g : gl.elems)
                CHECK(emat_det(ctx, iota(ctx, g)) == ctx.conj(emat_det(ctx, g)));
        }
    }
    SUBCASE("conjugation-invariant matrices are fixed") {
        EMatrix B(2, 2);
        B.at(0, 0) = 1; B.at(0, 1) = 2; B.at(1, 0) = 2; B.at(1, 1) = 0; // entries in F
        CHECK(iota(ctx, B) == B);
    }
    SUBCASE("transport is an involution") {
        EMatrix A(2, 2);
        A.at(0, 0) = ctx.gen; A.at(0, 1) = ctx.delta; A.at(1, 0) = 5; A.at(1, 1) = 7;
        CHECK(iota(ctx, iota(ctx, A)) == A);
    }
    SUBCASE("transport preserves the isometry group of a Hermitian matrix") {
        for (auto& B : hermitian_matrices(ctx, 2)) {
            if (emat_det(ctx, B) == 0) continue;
            auto ub = unitary_of_form(ctx, B);
            auto ubc = unitary_of_form(ctx, emat_conj(ctx, B));
            std::vector<std::vector<int>> lhs, rhs;
            for (auto& m : ub) lhs.push_back(iota(ctx, m).a);
            for (auto& m : ubc) rhs.push_back(m.a);
            std::sort(lhs.begin(), lhs.end());
            std::sort(rhs.begin(), rhs.end());
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("space construction") {
    const auto& ctx = ctx3();
    SUBCASE("Hermitian line has Gram (1)") {
        auto sp = build_space(ctx, 1, 1);
        CHECK(sp.gram.at(0, 0) == 1);
        CHECK(is_eps_hermitian(ctx, sp.gram, 1));
    }
    SUBCASE("skew-Hermitian line has Gram (delta)") {
        auto sp = build_space(ctx, -1, 1);
        CHECK(sp.gram.at(0, 0) == ctx.delta);
        CHECK(is_eps_hermitian(ctx, sp.gram, -1));
    }
    SUBCASE("discriminant sign recorded in the label") {
        auto sp = build_space(ctx, 1, 2);
        // disc = (-1)^{2*1/2} * det(I) = -1, a non-square mod 3
        CHECK(sp.label.find("sign=-") != std::string::npos);
    }
    SUBCASE("split skew space Gram is the standard symplectic-style block form") {
        auto sp = split_skew_space(ctx, 2);
        CHECK(is_eps_hermitian(ctx, sp.gram, -1));
        CHECK(sp.gram.at(0, 2) == 1);
        CHECK(sp.gram.at(2, 0) == ctx.neg(1));
        CHECK(sp.gram.at(0, 1) == 0);
    }
}

TEST_CASE("Witt decomposition") {
    const auto& ctx = ctx3();
    SUBCASE("Hermitian plane splits into one hyperbolic pair") {
        auto wd = witt_decompose(build_space(ctx, 1, 2));
        CHECK(wd.x_basis.size() == 1);
        CHECK(wd.y_basis.size() == 1);
        CHECK(wd.aniso_basis.empty());
    }
    SUBCASE("a line is anisotropic") {
        auto wd = witt_decompose(build_space(ctx, 1, 1));
        CHECK(wd.x_basis.empty());
        CHECK(wd.aniso_basis.size() == 1);
    }
    SUBCASE("Gram in the Witt basis is exactly antidiagonal") {
        for (auto sp : {split_skew_space(ctx, 1), split_skew_space(ctx, 2),
                        build_space(ctx, 1, 2)}) {
            auto wd = witt_decompose(sp);
            size_t m = wd.x_basis.size();
            for (size_t i = 0; i < m; ++i)
                for (size_t j = 0; j < m; ++j) {
                    CHECK(form_value(sp, wd.x_basis[i], wd.x_basis[j]) == 0);
                    CHECK(form_value(sp, wd.y_basis[i], wd.y_basis[j]) == 0);
                    CHECK(form_value(sp, wd.x_basis[i], wd.y_basis[j]) == (i == j ? 1 : 0));
                }
        }
    }
}

TEST_CASE("unitary group enumeration") {
    const auto& ctx = ctx3();
    SUBCASE("U(1) has 4 elements for q=3") {
        auto g = enumerate_unitary_group(build_space(ctx, 1, 1));
        CHECK(g.size() == 4);
        CHECK(g.size() == unitary_group_order(3, 1));
    }
    SUBCASE("U(2) has 96 elements for q=3") {
        auto g = enumerate_unitary_group(build_space(ctx, 1, 2));
        CHECK(g.size() == 96);
        CHECK(g.size() == unitary_group_order(3, 2));
    }
    SUBCASE("skew forms give the same groups up to the delta twist") {
        auto g = enumerate_unitary_group(build_space(ctx, -1, 2));
        CHECK(g.size() == 96);
    }
    SUBCASE("closure strategy matches brute force on the split skew plane") {
        auto sp = split_skew_space(ctx, 1);
        auto brute = enumerate_unitary_group(sp, 1000000, EnumerationStrategy::BruteForce);
        auto closure = enumerate_unitary_group(sp, 1000000, EnumerationStrategy::CayleyClosure);
        REQUIRE(brute.size() == closure.size());
        for (int i = 0; i < brute.size(); ++i) CHECK(brute.elems[i] == closure.elems[i]);
    }
    SUBCASE("GL_2 over E has the expected order for q=3") {
        auto gl = enumerate_general_linear(ctx, 2);
        CHECK(gl.size() == 5760); // (9^2-1)(9^2-9)
    }
    SUBCASE("group model product and inverse are coherent") {
        auto g = enumerate_unitary_group(build_space(ctx, 1, 1));
        for (int i = 0; i < g.size(); ++i) {
            CHECK(g.mul(i, g.inv(i)) == g.identity_index);
            CHECK(g.mul(g.identity_index, i) == i);
        }
    }
}

TEST_CASE("Siegel parabolic data on the split skew plane") {
    const auto& ctx = ctx3();
    auto sp = split_skew_space(ctx, 1);
    auto uw = enumerate_unitary_group(sp);
    auto sd = siegel_parabolic(ctx, uw, 1);

    SUBCASE("|N(X)| = q^{n^2} = 3 and |GL(X)| = q^2 - 1 = 8") {
        CHECK(sd.nx_elements.size() == 3);
        CHECK(sd.ny_elements.size() == 3);
        CHECK(sd.gl_elements.size() == 8);
    }
    SUBCASE("the dual action on Y is conjugate-inverse-transpose") {
        // <m x, m-dual y> = <x, y> for the Witt-basis pairing
        for (auto& m : sd.gl_matrices) {
            EMatrix g = embed_levi(ctx, m);
            std::vector<int> x{1, 0}, y{0, 1};
            std::vector<int> gx(2), gy(2);
            for (int i = 0; i < 2; ++i) {
                gx[i] = ctx.add(ctx.mul(g.at(i, 0), x[0]), ctx.mul(g.at(i, 1), x[1]));
                gy[i] = ctx.add(ctx.mul(g.at(i, 0), y[0]), ctx.mul(g.at(i, 1), y[1]));
            }
            CHECK(form_value(sp, gx, gy) == form_value(sp, x, y));
        }
    }
    SUBCASE("N(X) is the additive group of Hermitian matrices") {
        for (auto& A : sd.nx_params)
            for (auto& A2 : sd.nx_params) {
                EMatrix prod = emat_mul(ctx, embed_nx(A), embed_nx(A2));
                CHECK(prod == embed_nx(emat_add(ctx, A, A2)));
            }
    }
    SUBCASE("psi_B is a character of N(X), exhaustively") {
        for (auto& B : sd.ny_params)
            for (auto& A : sd.nx_params)
                for (auto& A2 : sd.nx_params) {
                    cplx lhs = psi_pair(ctx, emat_add(ctx, A, A2), B);
                    cplx rhs = psi_pair(ctx, A, B) * psi_pair(ctx, A2, B);
                    CHECK(std::abs(lhs - rhs) <= kSnapTolIntermediate);
                }
    }
    SUBCASE("Levi conjugation acts on N(X) parameters by A -> m A m^dag") {
        for (auto& m : sd.gl_matrices)
            for (auto& A : sd.nx_params) {
                EMatrix g = embed_levi(ctx, m);
                auto ginv = emat_inverse(ctx, g);
                EMatrix conj_elem = emat_mul(ctx, g, emat_mul(ctx, embed_nx(A), *ginv));
                EMatrix expected = embed_nx(
                    emat_mul(ctx, m, emat_mul(ctx, A, emat_conj_transpose(ctx, m))));
                CHECK(conj_elem == expected);
            }
    }
}

TEST_CASE("stabilizer of psi_B under the Levi action is exactly U(X,B)") {
    const auto& ctx = ctx3();
    for (int n : {1, 2}) {
        auto gl = enumerate_general_linear(ctx, n);
        auto herm = hermitian_matrices(ctx, n);
        CHECK((long long)herm.size() == (long long)std::pow(ctx.q, n * n));
        for (auto& B : herm) {
            if (emat_det(ctx, B) == 0) continue;
            int stab_psi = 0, stab_form = 0;
            for (auto& m : gl.elems) {
                // m acts on psi-parameters by B -> m^{-dag} B m^{-1}
                bool fixes_psi = true;
                EMatrix mdag = emat_conj_transpose(ctx, m);
                for (auto& A : herm) {
                    EMatrix moved = emat_mul(ctx, m, emat_mul(ctx, A, mdag));
                    if (std::abs(psi_pair(ctx, moved, B) - psi_pair(ctx, A, B)) >
                        kSnapTolIntermediate) {
                        fixes_psi = false;
                        break;
                    }
                }
                bool fixes_form = emat_mul(ctx, mdag, emat_mul(ctx, B, m)) == B;
                if (fixes_psi) ++stab_psi;
                if (fixes_form) ++stab_form;
                CHECK(fixes_psi == fixes_form);
            }
            CHECK(stab_psi == stab_form);
            CHECK(stab_psi == (int)unitary_of_form(ctx, B).size());
        }
    }
}

TEST_CASE("orbit-stabilizer and single-orbit facts for Hermitian forms") {
    const auto& ctx = ctx3();
    for (int n : {1, 2}) {
        auto gl = enumerate_general_linear(ctx, n);
        auto herm = hermitian_matrices(ctx, n);
        // orbit of the identity form under m . B = m^dag B m
        std::vector<std::vector<int>> orbit_of_identity;
        for (auto& B : herm) {
            long long orbit = 0, stab = 0;
            for (auto& m : gl.elems) {
                EMatrix moved =
                    emat_mul(ctx, emat_conj_transpose(ctx, m), emat_mul(ctx, B, m));
                if (moved == B) ++stab;
            }
            // count the orbit by collecting images
            std::vector<std::vector<int>> images;
            for (auto& m : gl.elems)
                images.push_back(
                    emat_mul(ctx, emat_conj_transpose(ctx, m), emat_mul(ctx, B, m)).a);
            std::sort(images.begin(), images.end());
            images.erase(std::unique(images.begin(), images.end()), images.end());
            orbit = (long long)images.size();
            CHECK(orbit * stab == (long long)gl.size());
            if (emat_det(ctx, B) != 0 && orbit_of_identity.empty())
                orbit_of_identity = images;
            if (emat_det(ctx, B) != 0 && !orbit_of_identity.empty()) {
                // single orbit: every nondegenerate form lies in the same orbit
                CHECK(std::binary_search(orbit_of_identity.begin(), orbit_of_identity.end(),
                                         B.a));
            }
        }
    }
}

TEST_CASE("Shalika subgroup size") {
    const auto& ctx = ctx3();
    auto sp = split_skew_space(ctx, 1);
    auto uw = enumerate_unitary_group(sp);
    auto sd = siegel_parabolic(ctx, uw, 1);
    EMatrix B(1, 1);
    B.at(0, 0) = 1;
    auto sb = shalika_subgroup(ctx, uw, sd, B);
    // |U(X,B)| * |N(X)| = 4 * 3
    CHECK(sb.size() == 12);
    // closed under multiplication
    for (int i : sb)
        for (int j : sb)
            CHECK(std::binary_search(sb.begin(), sb.end(), uw.mul(i, j)));
}

TEST_CASE("Hermitian embeddings into a target space") {
    const auto& ctx = ctx3();
    SUBCASE("every Hermitian line embeds into the Hermitian line") {
        auto V = build_space(ctx, 1, 1);
        for (int a = 1; a < ctx.q; ++a) {
            EMatrix B(1, 1);
            B.at(0, 0) = a;
            auto emb = find_embedding(ctx, B, V);
            REQUIRE(emb.has_value());
            EMatrix G = emat_mul(ctx, emat_conj_transpose(ctx, emb->map),
                                 emat_mul(ctx, V.gram, emb->map));
            CHECK(G == emat_conj(ctx, B));
            CHECK(emb->complement.cols == 0);
        }
    }
    SUBCASE("dimension obstruction certified") {
        auto V = build_space(ctx, 1, 1);
        EMatrix B = emat_identity(2);
        CHECK_FALSE(find_embedding(ctx, B, V).has_value());
    }
    SUBCASE("complement is orthogonal to the image") {
        auto V = build_space(ctx, 1, 2);
        for (int a = 1; a < ctx.q; ++a) {
            EMatrix B(1, 1);
            B.at(0, 0) = a;
            auto emb = find_embedding(ctx, B, V);
            REQUIRE(emb.has_value());
            CHECK(emb->complement.cols == 1);
            EMatrix pairing = emat_mul(ctx, emat_conj_transpose(ctx, emb->map),
                                       emat_mul(ctx, V.gram, emb->complement));
            CHECK(pairing == EMatrix(1, 1));
        }
    }
}
