#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace periods {

/// One irreducible summand of a discrete parameter. Summands are symbolic:
/// only the label, dimension and classification matter to the multiplicity
/// formulas, never any actual representation theory.
struct ParameterSummand {
    enum class Kind {
        Sympl,         // member of the symplectic part (index set I)
        PairFirst,     // first member of a dual pair (index set J)
        PairSecond,    // its twisted-dual partner
        Distinguished, // the one-dimensional summand of the odd case
    };
    std::string label;
    int dim = 1;
    Kind kind = Kind::Sympl;
    std::string partner; // label of the paired summand, pair kinds only
};

/// A discrete parameter: a multiplicity-free formal direct sum of summands,
/// tagged with parity and a formal similitude symbol. Character symbols are
/// opaque strings with declared relations; nothing is ever evaluated.
struct DiscreteParameter {
    std::vector<ParameterSummand> summands;
    bool odd_parity = false;
    bool similitude_flag = true;     // target has a similitude factor
    std::string similitude = "mu";   // formal similitude symbol
    std::vector<std::string> relations; // declared symbol relations, informative

    int total_dim() const;
    /// Throws std::invalid_argument on any invariant violation: duplicate
    /// labels, non-mutual or unequal-dimension partners, parity/distinguished
    /// mismatch, total-dimension parity mismatch.
    void validate() const;
};

/// The component group: an elementary abelian 2-group with one basis element
/// per summand. Subsets (= subgroup elements) are bitmasks over basis indices.
struct ComponentGroup {
    std::vector<std::string> basis;           // one label per summand
    std::vector<int> i_set;                   // basis indices of Sympl summands
    std::vector<std::pair<int, int>> j_pairs; // (first, second) basis indices
    int distinguished = -1;                   // basis index, or -1

    uint32_t z() const; // sum of every basis element
    /// Generators of the diagonal subgroup: each a_i and each b_j + b_j^*.
    std::vector<uint32_t> delta_generators() const;
};

ComponentGroup component_group(const DiscreteParameter& phi);

/// A sign character of the component group, stored by its basis values.
struct EtaCharacter {
    std::vector<int> signs; // +1 / -1 per basis element

    int eval(uint32_t subset) const;
    EtaCharacter times(const EtaCharacter& other) const;
    bool trivial_on(const std::vector<uint32_t>& generators) const;
};

/// Opaque central-sign input, one per basis element; never computed here.
struct EpsilonData {
    std::vector<int> signs; // +1 / -1 per basis element
    /// Product of all signs: the dichotomy sign reported by the even case.
    int product() const;
};

/// The sign character built from the supplied central signs, extended
/// multiplicatively from the basis.
EtaCharacter eta_flat(const ComponentGroup& sg, const EpsilonData& eps);

/// Outcome of one multiplicity formula: the value, every gating condition
/// with its outcome, and the statements instantiated. value == 0 exactly when
/// some condition fails.
struct MultiplicityReport {
    struct Condition {
        std::string name;
        bool holds = false;
    };
    long long value = 0;
    std::vector<Condition> conditions;
    std::vector<std::string> statements;

    bool all_conditions_hold() const;
};

/// Shalika-period multiplicity. Nonempty symplectic part: 2^{|I|-1} gated
/// only by triviality on the diagonal subgroup (independent of eps_b); empty
/// symplectic part: 1 gated additionally by eta(sum of b_j) == eps_b.
MultiplicityReport mult_shalika(const DiscreteParameter& phi, const EtaCharacter& eta,
                                int eps_b);

/// Even linear (two-block) period multiplicity: the Shalika conditions with
/// eta * eta_flat in place of eta and eps_v0 as the gating sign; also
/// recomputed through the theta-transfer composition and asserted equal
/// (std::logic_error on disagreement — never silently resolved).
MultiplicityReport mult_fj_even(const DiscreteParameter& phi, const EtaCharacter& eta,
                                const EpsilonData& eps, int eps_v0);

/// Odd linear period multiplicity: requires the distinguished summand (0 with
/// reason otherwise), triviality on the diagonal subgroup, eta(e) == eps_v,
/// and, when the symplectic part is empty, eta(sum of b_j) == eps_v0.
MultiplicityReport mult_fj_odd(const DiscreteParameter& phi, const EtaCharacter& eta,
                               int eps_v, int eps_v0);

/// GL-restriction (linear model) multiplicity: 2^{|I|} gated by triviality on
/// the diagonal subgroup.
MultiplicityReport mult_linear_glE(const DiscreteParameter& phi, const EtaCharacter& eta);

/// The theta-transferred pair: summand labels twisted by the formal character
/// (an involutive relabeling preserving kinds and dimensions), eta multiplied
/// by eta_flat.
std::pair<DiscreteParameter, EtaCharacter> theta_transfer_parameter(
    const DiscreteParameter& phi, const EtaCharacter& eta, const EpsilonData& eps);

/// One packet member: a character eta with its quasi-split sign and every
/// applicable multiplicity.
struct PacketCensusRow {
    std::vector<int> eta_signs;
    int z_sign = 1;                 // eta(z): which pure inner form carries it
    long long shalika_plus = 0;     // eps_b = +1 (even parity only)
    long long shalika_minus = 0;    // eps_b = -1
    long long linear = 0;           // GL-restriction (even parity only)
    long long fj_plus = 0;          // even: eps_v0 = +1; odd: eps_v = +1
    long long fj_minus = 0;
};

struct PacketCensus {
    DiscreteParameter phi;
    std::vector<PacketCensusRow> rows; // all 2^{#basis} characters, in binary order
    long long num_trivial_on_delta = 0;

    std::string to_csv() const;
    std::string to_json() const;
};

PacketCensus packet_census(const DiscreteParameter& phi, const EpsilonData& eps);

/// Reads a parameter description (summand list, parity, similitude, optional
/// per-basis epsilon and eta signs) from its JSON form; validates. Throws on
/// schema or invariant violations.
struct ParameterInput {
    DiscreteParameter phi;
    EpsilonData eps;   // defaults to all +1 when absent
    EtaCharacter eta;  // defaults to all +1 when absent
};
ParameterInput parameter_from_json(const std::string& text);
std::string parameter_to_json(const ParameterInput& input);

} // namespace periods
