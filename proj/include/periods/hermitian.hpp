#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "periods/field.hpp"

namespace periods {

/// Dense matrix over E; entries are E-element codes.
struct EMatrix {
    int rows = 0, cols = 0;
    std::vector<int> a;

    EMatrix() = default;
    EMatrix(int r, int c) : rows(r), cols(c), a((size_t)r * c, 0) {}

    int& at(int i, int j) { return a[(size_t)i * cols + j]; }
    int at(int i, int j) const { return a[(size_t)i * cols + j]; }
    bool operator==(const EMatrix& o) const = default;
};

EMatrix emat_identity(int n);
EMatrix emat_mul(const ExtensionContext& ctx, const EMatrix& A, const EMatrix& B);
EMatrix emat_add(const ExtensionContext& ctx, const EMatrix& A, const EMatrix& B);
EMatrix emat_neg(const ExtensionContext& ctx, const EMatrix& A);
EMatrix emat_scale(const ExtensionContext& ctx, int e, const EMatrix& A);
EMatrix emat_conj(const ExtensionContext& ctx, const EMatrix& A);      // entrywise conjugation
EMatrix emat_transpose(const EMatrix& A);
EMatrix emat_conj_transpose(const ExtensionContext& ctx, const EMatrix& A);
int emat_det(const ExtensionContext& ctx, const EMatrix& A);
int emat_trace(const ExtensionContext& ctx, const EMatrix& A);
std::optional<EMatrix> emat_inverse(const ExtensionContext& ctx, const EMatrix& A);
int emat_rank(const ExtensionContext& ctx, const EMatrix& A);
/// Basis of the right nullspace {v : Av = 0}, returned as columns.
EMatrix emat_nullspace(const ExtensionContext& ctx, const EMatrix& A);

/// The natural map GL(X) -> GL(X^c) in the tensor basis {x_i (x) 1}:
/// entrywise conjugation.
inline EMatrix iota(const ExtensionContext& ctx, const EMatrix& m) { return emat_conj(ctx, m); }

/// Is conj(A)^T == eps*A, i.e. is A the Gram matrix of an eps-Hermitian form?
bool is_eps_hermitian(const ExtensionContext& ctx, const EMatrix& A, int eps);

/// A nondegenerate eps-Hermitian space with Gram matrix G. The form convention
/// is <u,v> = u^dag G v (conjugate-linear in the first argument), so
/// isometries satisfy g^dag G g = G and Hermitian Gram matrices satisfy
/// G^dag = eps*G.
struct EpsHermitianSpace {
    const ExtensionContext* ctx = nullptr;
    int eps = 1;
    int dim = 0;
    EMatrix gram;
    std::string label;
};

/// Canonical space of the given sign and dimension: Gram = I for Hermitian,
/// delta*I for skew-Hermitian. Over the finite field all nondegenerate forms
/// of fixed (eps, dim) are isometric, so disc_choice only affects the label.
EpsHermitianSpace build_space(const ExtensionContext& ctx, int eps, int dim, int disc_choice = 1);

/// Maximally split skew-Hermitian space of dimension 2n in a Witt basis
/// (x_1..x_n, y_1..y_n), Gram [[0, I], [-I, 0]].
EpsHermitianSpace split_skew_space(const ExtensionContext& ctx, int n);

/// <u,v> = u^dag G v for coordinate vectors.
int form_value(const EpsHermitianSpace& sp, const std::vector<int>& u, const std::vector<int>& v);

struct WittDecomposition {
    EpsHermitianSpace space;
    std::vector<std::vector<int>> x_basis, y_basis, aniso_basis;
};

/// Constructive hyperbolic-pair extraction; <x_i, y_j> normalized to delta_ij.
WittDecomposition witt_decompose(const EpsHermitianSpace& sp);

/// q^{n(n-1)/2} * prod_{i=1}^n (q^i - (-1)^i)
long long unitary_group_order(long long q, int n);

/// Index over matrices (by packed code when entries fit in 64 bits).
class MatrixIndex {
public:
    void reserve_format(int entries, long long field_size);
    void insert(const EMatrix& m, int idx);
    int find(const EMatrix& m) const; // -1 if absent
private:
    bool packed_ = false;
    int shift_ = 0;
    std::unordered_map<uint64_t, int> packed_map_;
    std::map<std::vector<int>, int> generic_map_;
    uint64_t pack(const EMatrix& m) const;
};

/// A fully enumerated group of matrices over E, with product/inverse by
/// multiply-and-look-up. Immutable after enumeration.
struct MatrixGroupModel {
    const ExtensionContext* ctx = nullptr;
    int dim = 0;
    std::vector<EMatrix> elems; // deterministic order (sorted by entry codes)
    std::vector<int> inv_idx;
    int identity_index = -1;
    MatrixIndex index;

    int size() const { return (int)elems.size(); }
    int mul(int i, int j) const;
    int inv(int i) const { return inv_idx[i]; }
    int find(const EMatrix& m) const { return index.find(m); }

    static MatrixGroupModel from_elements(const ExtensionContext& ctx, int dim,
                                          std::vector<EMatrix> elems);
};

enum class EnumerationStrategy { Auto, BruteForce, CayleyClosure };

/// All of U(space) = {g : g^dag G g = G}. BruteForce filters every dim x dim
/// matrix (requires |E|^{dim^2} <= 10^7); CayleyClosure needs a split skew
/// space in the Witt basis. Throws if the group order exceeds `bound` or the
/// closure misses the known order.
MatrixGroupModel enumerate_unitary_group(const EpsHermitianSpace& space,
                                         long long bound = 1000000,
                                         EnumerationStrategy strategy = EnumerationStrategy::Auto);

/// All of GL_n(E).
MatrixGroupModel enumerate_general_linear(const ExtensionContext& ctx, int n);

/// All Hermitian n x n matrices (A^dag = A), in deterministic order; q^{n^2} of them.
std::vector<EMatrix> hermitian_matrices(const ExtensionContext& ctx, int n);

/// Isometry group of the Hermitian matrix P: {m : m^dag P m = P}; this is the
/// stabilizer of psi_P under the conjugation action of GL(X) on N(X).
std::vector<EMatrix> unitary_of_form(const ExtensionContext& ctx, const EMatrix& P);

// --- Siegel parabolic data inside U(W) for split W = X + Y ---

/// m in GL(X) embeds as diag(m, m^{-dag}); n(A) in N(X) is [[I,A],[0,I]] with
/// A Hermitian; n(B) in N(Y) is [[I,0],[B,I]] with B Hermitian.
EMatrix embed_levi(const ExtensionContext& ctx, const EMatrix& m);
EMatrix embed_nx(const EMatrix& A);
EMatrix embed_ny(const EMatrix& B);

/// psi_B(n(A)) = psi((1/2) tr_E(A o B)); the trace of a product of two
/// Hermitian matrices is conjugation-fixed, asserted to lie in F (hard error
/// otherwise, signalling a convention fault).
cplx psi_pair(const ExtensionContext& ctx, const EMatrix& A, const EMatrix& B);

/// Subgroup markings of an enumerated U(W) model (split W, Witt basis).
struct SiegelData {
    int n = 0; // dim X
    const MatrixGroupModel* group = nullptr;
    std::vector<EMatrix> gl_matrices;  // the m's, aligned with gl_elements
    std::vector<int> gl_elements;      // indices of diag(m, m^{-dag}) in the model
    std::vector<EMatrix> nx_params;    // Hermitian A's
    std::vector<int> nx_elements;
    std::vector<EMatrix> ny_params;    // Hermitian B's
    std::vector<int> ny_elements;
};

SiegelData siegel_parabolic(const ExtensionContext& ctx, const MatrixGroupModel& uw, int n);

/// Indices (into the U(W) model) of the Shalika subgroup S_B = U(X,B) x| N(X).
std::vector<int> shalika_subgroup(const ExtensionContext& ctx, const MatrixGroupModel& uw,
                                  const SiegelData& sd, const EMatrix& B);

// --- Hermitian embeddings ---

struct Embedding {
    EMatrix map;        // T: dim V x n, columns are images of the X^c basis
    EMatrix complement; // dim V x (dim V - n), orthogonal complement basis
};

/// First T (in code order) with T^dag G_V T = conj(P), i.e. an embedding of
/// the conjugated form into V, plus its orthogonal complement. nullopt when no
/// embedding exists.
std::optional<Embedding> find_embedding(const ExtensionContext& ctx, const EMatrix& P,
                                        const EpsHermitianSpace& V);

} // namespace periods
