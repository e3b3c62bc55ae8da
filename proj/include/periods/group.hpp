#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "periods/numeric.hpp"

namespace periods {

/// A finite group given abstractly by an order and a multiplication callback
/// on element indices, with conjugacy classes computed on construction.
/// Classes are discovered in element order, so the class of the identity is
/// class 0 and representatives are the least elements of their classes.
struct FiniteGroupModel {
    int order = 0;
    int identity = 0;
    std::function<int(int, int)> mul;
    std::vector<int> inv;

    int num_classes = 0;
    std::vector<int> class_of;                   // element -> class id
    std::vector<int> class_rep;                  // class id -> least element
    std::vector<long long> class_size;
    std::vector<std::vector<int>> class_members; // class id -> sorted element list
};

/// Builds the model, locating the identity and inverses and partitioning into
/// conjugacy classes. Throws if `mul` is not a group law or order > 10^6.
FiniteGroupModel build_group(int order, std::function<int(int, int)> mul);

/// Direct product; the element (a, b) has index a * B.order + b.
FiniteGroupModel product_group(const FiniteGroupModel& A, const FiniteGroupModel& B);

/// The subgroup on the given (sorted, duplicate-free) element subset,
/// reindexed to 0..k-1. `elements` doubles as the index-to-parent map.
FiniteGroupModel subgroup_group(const FiniteGroupModel& G, const std::vector<int>& elements);

/// One complex value per conjugacy class of an owning group.
struct ClassFunction {
    const FiniteGroupModel* G = nullptr;
    std::vector<cplx> values;

    cplx at_element(int g) const { return values[G->class_of[g]]; }
};

/// Builds a ClassFunction from a per-element callback, checking constancy on
/// classes (tolerance 1e-9; hard error on violation).
ClassFunction class_function(const FiniteGroupModel& G, const std::function<cplx(int)>& f);

/// <a, b> = (1/|G|) sum_g a(g) conj(b(g)), computed classwise.
cplx inner_product(const ClassFunction& a, const ClassFunction& b);

/// inner_product snapped to a nonnegative integer; throws on a non-integer or
/// negative value (a broken identity upstream, never silently rounded).
long long hom_dim(const ClassFunction& a, const ClassFunction& b);

struct CharacterTable {
    const FiniteGroupModel* G = nullptr;
    std::vector<ClassFunction> irreducibles; // sorted by (degree, snapped values)
    std::vector<long long> degrees;
    double orthogonality_residual = 0.0;     // max pre-snap deviation observed
};

/// Numeric character table: simultaneous diagonalization of the class-sum
/// algebra using a seeded random combination (up to 8 retries on eigenvalue
/// collision), validated by orthogonality (residual < 1e-8).
CharacterTable character_table(const FiniteGroupModel& G, uint64_t seed = 0);

/// Frobenius induction from the subgroup given by `h_elements` (element
/// indices in G). `chi_h` is evaluated at G-indices and must be a class
/// function on H.
ClassFunction induced_character(const FiniteGroupModel& G, const std::vector<int>& h_elements,
                                const std::function<cplx(int)>& chi_h);

/// chi(g) = (1/|N|) sum_n chiM(g, n) conj(psi(n)): the character of the
/// psi-isotypic (twisted-coinvariant) subspace, for callers that hold the
/// joint character of a group acting alongside a normalized subgroup N whose
/// twist psi it fixes. Indices are caller-defined.
std::vector<cplx> twisted_coinvariant_values(int g_count, int n_count,
                                             const std::function<cplx(int, int)>& chi_m,
                                             const std::function<cplx(int)>& psi);

} // namespace periods
