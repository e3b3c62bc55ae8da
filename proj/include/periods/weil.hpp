#pragma once

#include "periods/field.hpp"
#include "periods/hermitian.hpp"

namespace periods {

/// An element (m, A) of the Siegel parabolic P(X) = GL(X) |x N(X), meaning
/// the product levi(m) * n(A). Multiplication rule:
/// (m1, A1)(m2, A2) = (m1 m2, m2^{-1} A1 m2^{-dag} + A2).
struct PElement {
    EMatrix m; // invertible n x n
    EMatrix A; // Hermitian n x n
};

PElement p_identity(int n);
PElement p_mul(const ExtensionContext& ctx, const PElement& a, const PElement& b);
PElement p_inv(const ExtensionContext& ctx, const PElement& a);
bool p_equal(const PElement& a, const PElement& b);

/// All q^{n^2} * |GL_n(E)| elements of P(X), in deterministic order.
/// Only intended for small n (the n=1 case has 24 elements at q=3).
std::vector<PElement> enumerate_p_elements(const ExtensionContext& ctx, int n);

/// Schrodinger model of the Weil representation of U(V) x P(X) on functions
/// on Hom_E(X^c, V) = {dv x n matrices T over E}, stored as monomial
/// operators. With basis vectors e_T (delta functions):
///   h in U(V):   e_T -> chi_W(i^{-1}(det h)) e_{h T}
///   m in GL(X):  e_T -> chi_V(det m) e_{T conj(m)^{-1}}
///   n(A):        e_T -> psi((1/2) tr(A conj(T^dag G_V T))) e_T
/// The |det|-factor of the middle formula is identically 1 here.
struct WeilModel {
    const ExtensionContext* ctx = nullptr;
    int n = 0;  // dim X
    int dv = 0; // dim V
    EpsHermitianSpace V;
    MultiplicativeCharacter chi_v, chi_w; // E^x characters splitting the dual pair
    long long dim = 0;                    // |E|^{n * dv}

    EMatrix decode(long long code) const;
    long long encode(const EMatrix& t) const;

    /// Gram of the pulled-back form T^*(V) on X^c.
    EMatrix pullback_gram(const EMatrix& t) const;

    // monomial actions: basis point + unit scalar
    std::pair<long long, cplx> act_uv(const EMatrix& h, long long t) const;
    std::pair<long long, cplx> act_gl(const EMatrix& m, long long t) const;
    cplx act_nx_scalar(const EMatrix& A, long long t) const; // diagonal operator
    std::pair<long long, cplx> act_p(const PElement& p, long long t) const;

    /// Trace of the joint operator of (h, p); sums scalars over fixed points
    /// without materializing a matrix.
    cplx character(const EMatrix& h, const PElement& p) const;
};

/// Builds the model and runs a start-up convention self-test (additivity of
/// the n(A) scalars, the GL-N semidirect relation, and homomorphism spot
/// checks); fails hard on convention drift. chi_v / chi_w must be E^x
/// characters restricting to omega^{dim V} / omega^{dim W} on F^x.
WeilModel build_weil_model(const ExtensionContext& ctx, int n, const EpsHermitianSpace& V,
                           const MultiplicativeCharacter& chi_v,
                           const MultiplicativeCharacter& chi_w);

/// The fixed-point locus O_B = {T : T^*(V) = B^c} of a Hermitian form B on X,
/// as basis codes. Spans the psi_B-isotypic subspace of the model.
std::vector<long long> embedding_locus(const WeilModel& model, const EMatrix& B);

/// Character of the twisted Jacquet module Omega_{N(X), psi_B} as a
/// U(B) x U(V)-module: values[u][h] for u indexing `ub` (elements of the
/// psi_B-stabilizer U(B) in GL(X)) and h indexing the U(V) model.
std::vector<std::vector<cplx>> jacquet_character(const WeilModel& model, const EMatrix& B,
                                                 const std::vector<EMatrix>& ub,
                                                 const MatrixGroupModel& uv);

} // namespace periods
