#include "periods/field.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace periods {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; (long long)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<long long> prime_factors(long long n) {
    std::vector<long long> out;
    for (long long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// BaseField
// ---------------------------------------------------------------------------

BaseField::BaseField(int p_, int f_) : p(p_), f(f_) {
    if (!is_prime(p)) throw std::invalid_argument("BaseField: p must be prime");
    if (f < 1) throw std::invalid_argument("BaseField: f must be positive");
    q = 1;
    for (int i = 0; i < f; ++i) q *= p;

    if (f > 1) {
        // Least monic irreducible of degree f, compared by the coefficient
        // tuple (c_{f-1}, ..., c_0). Irreducibility by trial division against
        // all monic polynomials of degree <= f/2 over F_p.
        auto poly_mod = [&](std::vector<int> a, const std::vector<int>& m) {
            while (a.size() >= m.size()) {
                int lead = a.back();
                if (lead != 0) {
                    size_t off = a.size() - m.size();
                    for (size_t i = 0; i < m.size(); ++i)
                        a[off + i] = ((a[off + i] - lead * m[i]) % p + p) % p;
                }
                a.pop_back();
            }
            return a;
        };
        auto is_zero = [](const std::vector<int>& a) {
            return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
        };
        long long total = 1;
        for (int i = 0; i < f; ++i) total *= p;
        bool found = false;
        for (long long code = 0; code < total && !found; ++code) {
            // code digits low-to-high give (c_0, ..., c_{f-1}), so ascending
            // codes scan in lexicographic order on (c_{f-1}, ..., c_0)
            std::vector<int> coeffs(f + 1, 0);
            coeffs[f] = 1;
            long long cc = code;
            for (int i = 0; i < f; ++i) {
                coeffs[i] = (int)(cc % p); // c_0 varies fastest
                cc /= p;
            }
            bool irreducible = true;
            // trial division by monic polynomials of degree 1..f/2
            for (int d = 1; d <= f / 2 && irreducible; ++d) {
                long long nd = 1;
                for (int i = 0; i < d; ++i) nd *= p;
                for (long long dc = 0; dc < nd && irreducible; ++dc) {
                    std::vector<int> div(d + 1, 0);
                    div[d] = 1;
                    long long t = dc;
                    for (int i = 0; i < d; ++i) div[i] = (int)(t % p), t /= p;
                    if (is_zero(poly_mod(coeffs, div))) irreducible = false;
                }
            }
            if (irreducible) {
                modulus = coeffs;
                found = true;
            }
        }
        if (!found) throw std::logic_error("BaseField: no irreducible modulus found");
    }

    add_tab_.resize((size_t)q * q);
    mul_tab_.resize((size_t)q * q);
    neg_tab_.resize(q);
    inv_tab_.assign(q, -1);
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            // addition is digitwise mod p
            int s = 0, pw = 1, x = a, y = b;
            for (int i = 0; i < f; ++i) {
                s += ((x % p + y % p) % p) * pw;
                x /= p, y /= p, pw *= p;
            }
            add_tab_[(size_t)a * q + b] = s;
            mul_tab_[(size_t)a * q + b] = raw_mul(a, b);
        }
    }
    for (int a = 0; a < q; ++a) {
        int s = 0, pw = 1, x = a;
        for (int i = 0; i < f; ++i) {
            s += ((p - x % p) % p) * pw;
            x /= p, pw *= p;
        }
        neg_tab_[a] = s;
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (mul_tab_[(size_t)a * q + b] == 1) inv_tab_[a] = b;
}

int BaseField::raw_mul(int a, int b) const {
    // polynomial multiplication of digit vectors mod the modulus
    std::vector<int> da(f), db(f);
    int x = a, y = b;
    for (int i = 0; i < f; ++i) da[i] = x % p, x /= p;
    for (int i = 0; i < f; ++i) db[i] = y % p, y /= p;
    std::vector<int> prod(2 * f - 1, 0);
    for (int i = 0; i < f; ++i)
        for (int j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    if (f > 1) {
        for (int d = 2 * f - 2; d >= f; --d) {
            int lead = prod[d];
            if (lead == 0) continue;
            prod[d] = 0;
            for (int i = 0; i < f; ++i)
                prod[d - f + i] = ((prod[d - f + i] - lead * modulus[i]) % p + p) % p;
        }
    }
    int out = 0, pw = 1;
    for (int i = 0; i < f; ++i) out += prod[i] * pw, pw *= p;
    return out;
}

int BaseField::inv(int a) const {
    if (a == 0) throw std::domain_error("BaseField::inv(0)");
    return inv_tab_[a];
}

int BaseField::pow(int a, long long e) const {
    long long m = q - 1;
    if (a == 0) return e == 0 ? 1 : 0;
    e %= m;
    if (e < 0) e += m;
    int r = 1, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

int BaseField::abs_trace(int a) const {
    int t = 0, x = a;
    for (int i = 0; i < f; ++i) {
        t = add(t, x);
        x = pow(x, p);
    }
    if (t >= p) throw std::logic_error("abs_trace: result not in prime field");
    return t;
}

// ---------------------------------------------------------------------------
// ExtensionContext
// ---------------------------------------------------------------------------

ExtensionContext::ExtensionContext(int p_, int f_) : p(p_), f(f_), base(p_, f_) {
    if (p == 2) throw std::invalid_argument("ExtensionContext: characteristic 2 is excluded");
    q = base.q;
    qq = (long long)q * q;
    if (qq > (1 << 20)) throw std::invalid_argument("ExtensionContext: p^{2f} exceeds 2^20");

    // lexicographically least irreducible monic quadratic x^2 + c1 x + c0,
    // compared by (c1, c0); irreducible iff no root in F_q
    mod_c0 = mod_c1 = -1;
    for (int c1 = 0; c1 < q && mod_c0 < 0; ++c1) {
        for (int c0 = 0; c0 < q && mod_c0 < 0; ++c0) {
            bool has_root = false;
            for (int a = 0; a < q; ++a) {
                int v = base.add(base.add(base.mul(a, a), base.mul(c1, a)), c0);
                if (v == 0) {
                    has_root = true;
                    break;
                }
            }
            if (!has_root) mod_c0 = c0, mod_c1 = c1;
        }
    }
    if (mod_c0 < 0) throw std::logic_error("ExtensionContext: no irreducible quadratic");

    half = base.inv(2 % p);

    // delta: least trace-zero unit
    delta = -1;
    for (int e = 1; e < qq; ++e)
        if (trace(e) == 0) {
            delta = e;
            break;
        }

    // generator of E^x: least element of full multiplicative order
    auto factors = prime_factors(qq - 1);
    gen = -1;
    for (int e = 2; e < qq && gen < 0; ++e) {
        if (e == 0) continue;
        bool full = true;
        for (long long ell : factors)
            if (pow(e, (qq - 1) / ell) == 1) {
                full = false;
                break;
            }
        if (full) gen = e;
    }
    if (gen < 0) throw std::logic_error("ExtensionContext: no generator found");

    dlog_.assign(qq, -1);
    {
        int x = 1;
        for (long long j = 0; j < qq - 1; ++j) {
            dlog_[x] = j;
            x = mul(x, gen);
        }
    }

    for (int e = 0; e < qq; ++e) {
        if (trace(e) == 0) e0_elements.push_back(e);
        if (e != 0 && norm(e) == 1) e1_elements.push_back(e);
    }
    if ((int)e0_elements.size() != q || (int)e1_elements.size() != q + 1)
        throw std::logic_error("ExtensionContext: |E_0| or |E_1| has unexpected size");

    e1_index_.assign(qq, -1);
    for (size_t i = 0; i < e1_elements.size(); ++i) e1_index_[e1_elements[i]] = (int)i;

    // section of i: least power of gen mapping onto each E_1 element
    i_section_.assign(e1_elements.size(), -1);
    {
        int x = 1;
        for (long long m = 0; m < qq - 1; ++m) {
            int d = i_map(x);
            int pos = e1_index_[d];
            if (i_section_[pos] < 0) i_section_[pos] = x;
            x = mul(x, gen);
        }
    }

    // discrete logs on E_1 with base i(gen), a generator of E_1
    e1_log_.assign(e1_elements.size(), -1);
    {
        int g1 = i_map(gen);
        int x = 1;
        for (int j = 0; j <= q; ++j) {
            e1_log_[e1_index_[x]] = j;
            x = mul(x, g1);
        }
        for (auto v : e1_log_)
            if (v < 0) throw std::logic_error("ExtensionContext: i(gen) does not generate E_1");
    }
}

int ExtensionContext::add(int x, int y) const {
    return base.add(x % q, y % q) + q * base.add(x / q, y / q);
}

int ExtensionContext::sub(int x, int y) const { return add(x, neg(y)); }

int ExtensionContext::neg(int x) const { return base.neg(x % q) + q * base.neg(x / q); }

int ExtensionContext::mul(int x, int y) const {
    // (a1 + b1 t)(a2 + b2 t) with t^2 = -c1 t - c0
    int a1 = x % q, b1 = x / q, a2 = y % q, b2 = y / q;
    int bb = base.mul(b1, b2);
    int a = base.sub(base.mul(a1, a2), base.mul(bb, mod_c0));
    int b = base.sub(base.add(base.mul(a1, b2), base.mul(a2, b1)), base.mul(bb, mod_c1));
    return a + q * b;
}

int ExtensionContext::conj(int x) const {
    // alpha^q = -c1 - alpha
    int a = x % q, b = x / q;
    return base.sub(a, base.mul(b, mod_c1)) + q * base.neg(b);
}

int ExtensionContext::trace(int x) const {
    int t = add(x, conj(x));
    return t; // always < q
}

int ExtensionContext::norm(int x) const {
    int n = mul(x, conj(x));
    if (n >= q) throw std::logic_error("ExtensionContext::norm: value not in F");
    return n;
}

int ExtensionContext::inv(int x) const {
    if (x == 0) throw std::domain_error("ExtensionContext::inv(0)");
    int n = norm(x);
    return mul(conj(x), base.inv(n));
}

int ExtensionContext::pow(int x, long long e) const {
    if (x == 0) return e == 0 ? 1 : 0;
    long long m = qq - 1;
    e %= m;
    if (e < 0) e += m;
    int r = 1, b = x;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

int ExtensionContext::i_map(int e) const {
    if (e == 0) throw std::domain_error("i_map: zero input");
    return mul(e, inv(conj(e)));
}

int ExtensionContext::i_section(int d) const {
    int pos = e1_index_[d];
    if (pos < 0) throw std::domain_error("i_section: element not in E_1");
    return i_section_[pos];
}

cplx ExtensionContext::psi(int x) const {
    if (x >= q) throw std::domain_error("psi: argument not in F");
    return root_of_unity(base.abs_trace(x), p);
}

int ExtensionContext::omega(int x) const {
    if (x == 0 || x >= q) throw std::domain_error("omega: argument not in F^x");
    return base.pow(x, (q - 1) / 2) == 1 ? 1 : -1;
}

long long ExtensionContext::dlog(int e) const {
    if (e == 0) throw std::domain_error("dlog: zero");
    return dlog_[e];
}

long long ExtensionContext::e1_log(int d) const {
    int pos = e1_index_[d];
    if (pos < 0) throw std::domain_error("e1_log: element not in E_1");
    return e1_log_[pos];
}

cplx ExtensionContext::char_value(const MultiplicativeCharacter& chi, int x) const {
    using D = MultiplicativeCharacter::Domain;
    switch (chi.domain) {
        case D::EUnits:
            return root_of_unity(chi.exponent * dlog(x), qq - 1);
        case D::FUnits: {
            long long d = dlog(x);
            if (d % (q + 1) != 0) throw std::domain_error("char_value: element not in F^x");
            return root_of_unity(chi.exponent * (d / (q + 1)), q - 1);
        }
        case D::E1:
            return root_of_unity(chi.exponent * e1_log(x), q + 1);
    }
    throw std::logic_error("char_value: bad domain");
}

std::vector<MultiplicativeCharacter> ExtensionContext::character_family(int omega_power) const {
    if (omega_power != 0 && omega_power != 1)
        throw std::invalid_argument("character_family: restriction target must be omega^0 or omega^1");
    // chi(gen^{q+1}) generates the restriction to F^x = <gen^{q+1}>;
    // chi|_{F^x} = omega^t  iff  k = t(q-1)/2 mod (q-1)
    std::vector<MultiplicativeCharacter> out;
    long long k0 = (long long)omega_power * (q - 1) / 2;
    for (int j = 0; j <= q; ++j)
        out.push_back({MultiplicativeCharacter::Domain::EUnits, k0 + (long long)j * (q - 1)});
    return out;
}

std::vector<MultiplicativeCharacter> ExtensionContext::e1_characters() const {
    std::vector<MultiplicativeCharacter> out;
    for (int k = 0; k <= q; ++k) out.push_back({MultiplicativeCharacter::Domain::E1, k});
    return out;
}

MultiplicativeCharacter ExtensionContext::pullback_along_i(const MultiplicativeCharacter& mu) const {
    if (mu.domain != MultiplicativeCharacter::Domain::E1)
        throw std::invalid_argument("pullback_along_i: expected an E_1 character");
    // mu~(gen^j) = mu(i(gen)^j), and i(gen) is the chosen E_1 generator
    return {MultiplicativeCharacter::Domain::EUnits, mu.exponent * (q - 1)};
}

cplx ExtensionContext::eval_via_i_inverse(const MultiplicativeCharacter& chi, int d) const {
    if (chi.domain != MultiplicativeCharacter::Domain::EUnits)
        throw std::invalid_argument("eval_via_i_inverse: expected an E^x character");
    if (chi.exponent % (q - 1) != 0)
        throw std::invalid_argument("eval_via_i_inverse: character is not trivial on F^x");
    return char_value(chi, i_section(d));
}

} // namespace periods
