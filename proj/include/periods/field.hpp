#pragma once

#include <cstdint>
#include <vector>

#include "periods/numeric.hpp"

namespace periods {

/// Arithmetic in F_q, q = p^f, with full lookup tables.
/// Elements are encoded as 0..q-1; the base-p digits of the code are the
/// coefficients of the polynomial representative (digit i = coefficient of x^i).
/// For f > 1 the field is F_p[x]/(m) with m the lexicographically least monic
/// irreducible polynomial of degree f (compared by descending-degree
/// coefficient tuple).
class BaseField {
public:
    BaseField(int p, int f);

    int p, f, q;
    std::vector<int> modulus; // f+1 coefficients, low degree first, monic; empty for f == 1

    int add(int a, int b) const { return add_tab_[a * q + b]; }
    int sub(int a, int b) const { return add_tab_[a * q + neg_tab_[b]]; }
    int neg(int a) const { return neg_tab_[a]; }
    int mul(int a, int b) const { return mul_tab_[a * q + b]; }
    int inv(int a) const;
    int pow(int a, long long e) const;

    /// Absolute trace F_q -> F_p, returned as 0..p-1.
    int abs_trace(int a) const;

    bool is_prime_field_element(int a) const { return a < p; }

private:
    std::vector<int> add_tab_, mul_tab_, neg_tab_, inv_tab_;
    int raw_mul(int a, int b) const; // polynomial multiplication mod modulus
};

/// A multiplicative character of E^x, F^x or E_1, given by an exponent with
/// respect to the fixed deterministic generator of the (cyclic) domain.
struct MultiplicativeCharacter {
    enum class Domain { EUnits, FUnits, E1 };
    Domain domain = Domain::EUnits;
    long long exponent = 0;
};

/// The quadratic extension E = F_{q^2} over F = F_q with conjugation, trace,
/// norm, the subsets E_0 (trace zero) and E_1 (norm one), the isomorphism
/// i : E^x/F^x -> E_1, a fixed trace-zero unit delta, the additive character
/// psi of F and the quadratic character omega of F^x.
///
/// E-elements are encoded as a + q*b, meaning a + b*alpha with a,b in F_q and
/// alpha a root of the chosen quadratic modulus. The F-subfield is exactly the
/// codes 0..q-1. All objects are deterministic functions of (p, f).
/// Immutable after construction; all methods are pure.
class ExtensionContext {
public:
    /// Throws on p = 2, p not prime, or p^{2f} > 2^20.
    ExtensionContext(int p, int f);

    int p, f, q;   // q = p^f
    long long qq;  // q^2 = |E|
    BaseField base;
    // monic quadratic x^2 + c1 x + c0 over F_q, lexicographically least irreducible
    int mod_c0, mod_c1;

    int delta; // least trace-zero unit in code order
    int gen;   // deterministic generator of E^x
    int half;  // inverse of 2 in F (as an E-code < q)

    std::vector<int> e0_elements, e1_elements;

    // --- E arithmetic (codes 0..q^2-1) ---
    int add(int x, int y) const;
    int sub(int x, int y) const;
    int neg(int x) const;
    int mul(int x, int y) const;
    int inv(int x) const; // throws on 0
    int pow(int x, long long e) const;
    int conj(int x) const;     // x -> x^q
    int trace(int x) const;    // Tr_{E/F}, result is an F-code (< q)
    int norm(int x) const;     // N_{E/F}, result is an F-code (< q)
    bool in_F(int x) const { return x < q; }
    int from_base(int a) const { return a; }

    // --- gadgets ---
    /// i(e) = e / e^c for e in E^x; surjects onto E_1 with kernel F^x.
    int i_map(int e) const;
    /// A fixed section of i_map: the element gen^m with least m mapping to d.
    int i_section(int d) const;
    /// Additive character psi(x) = exp(2*pi*i*AbsTr(x)/p) for an F-code x.
    cplx psi(int x) const;
    /// Quadratic character of F^x (+1 on squares, -1 otherwise); x an F-code.
    int omega(int x) const;

    long long dlog(int e) const;    // discrete log base gen, e in E^x
    long long e1_log(int d) const;  // discrete log base i_map(gen), d in E_1

    // --- characters ---
    cplx char_value(const MultiplicativeCharacter& chi, int x) const;
    /// All characters chi of E^x with chi|_{F^x} = omega^target (target 0 or 1).
    std::vector<MultiplicativeCharacter> character_family(int omega_power) const;
    /// All q+1 characters of E_1.
    std::vector<MultiplicativeCharacter> e1_characters() const;
    /// The pullback of an E_1-character along i: a character of E^x trivial on F^x.
    MultiplicativeCharacter pullback_along_i(const MultiplicativeCharacter& mu) const;
    /// Evaluate a character of E^x trivial on F^x at i^{-1}(d), d in E_1.
    cplx eval_via_i_inverse(const MultiplicativeCharacter& chi, int d) const;

private:
    std::vector<long long> dlog_;
    std::vector<int> i_section_;   // indexed by E_1 position
    std::vector<int> e1_index_;    // element code -> position in e1_elements, else -1
    std::vector<long long> e1_log_;
};

} // namespace periods
