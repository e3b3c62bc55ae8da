#pragma once

#include <string>
#include <vector>

#include "periods/group.hpp"
#include "periods/weil.hpp"

namespace periods {

struct CheckResult {
    std::string name;      // short machine-friendly identifier
    std::string statement; // the mathematical identity being instantiated
    bool pass = false;
    double residual = 0.0; // worst deviation observed before snapping
    std::string detail;    // matched dimensions, offending class, etc.
};

/// Outcome of one verification scenario. Deliberately carries no timing
/// information so that serialized reports are byte-identical across reruns.
struct VerificationReport {
    std::string scenario;
    std::vector<std::string> parameters; // "p=3", "dim X=1", ...
    std::vector<CheckResult> checks;

    bool pass() const;
    void add(std::string name, std::string statement, bool ok, double residual,
             std::string detail = "");
    std::string to_text() const;
    std::string to_json() const; // serialized with sorted keys, deterministic
};

/// Twisted Jacquet module of the Weil representation against psi_B, compared
/// classwise with the induced module from the twisted-diagonal subgroup of
/// U(B) x U(V); when no Hermitian embedding of the conjugated form exists the
/// module is checked to vanish identically.
VerificationReport verify_jacquet_isomorphism(const WeilModel& model, const EMatrix& B);

/// Period transfer: for every irreducible pi of U(V) and every norm-one
/// character mu, the Hom dimension of the Weil module against
/// pi (x) (mu compose det (x) psi_B) over U(V) x S_B equals the Hom dimension
/// of the dual of pi against explicit characters of the stabilizer pair
/// U(j(B^c)) x U(j(B^c)^perp); includes the degree-sum bookkeeping identity.
VerificationReport verify_period_transfer(const WeilModel& model, const EMatrix& B);

/// GL(X)-orbit stratification of N(Y): one orbit per rank over the finite
/// field, census of orbit sizes, orbit-stabilizer arithmetic, and the
/// block-triangular structure of each stabilizer.
VerificationReport verify_rank_stratification(const ExtensionContext& ctx, int n);

/// Degenerate principal series decomposition.
/// n = 1: classwise identity on the full isometry group of the split
/// skew-Hermitian plane: inducing chi compose det from GL(X) equals the sum of
/// the Siegel stratum and the Shalika stratum (a direct sum over a finite
/// field), with degree bookkeeping and per-irreducible Hom sums.
/// n = 2: pointwise character identity on P(X) = GL(X) |x N(X) for the
/// Fourier decomposition of functions on N(X) into orbit strata, evaluated at
/// every (m, A) pair without enumerating P(X) as a single group.
VerificationReport verify_linear_filtration(const ExtensionContext& ctx, int n,
                                            const MultiplicativeCharacter& chi);

} // namespace periods
