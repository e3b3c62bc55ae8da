#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace periods {

using cplx = std::complex<double>;

constexpr double kSnapTolFinal = 1e-6;        // tolerance for snapped end results
constexpr double kSnapTolIntermediate = 1e-9; // tolerance for internal identities

/// Round a complex value to the nearest integer, failing loudly if it is not
/// within `tol` of one. Non-integer results signal a broken identity upstream
/// and must never be silently rounded.
inline long long snap_integer(cplx z, double tol = kSnapTolFinal) {
    double re = std::round(z.real());
    if (std::abs(z.real() - re) > tol || std::abs(z.imag()) > tol)
        throw std::runtime_error("snap_integer: value " + std::to_string(z.real()) + "+" +
                                 std::to_string(z.imag()) + "i is not an integer within tolerance");
    return static_cast<long long>(re);
}

inline bool is_near_integer(cplx z, double tol = kSnapTolFinal) {
    return std::abs(z.real() - std::round(z.real())) <= tol && std::abs(z.imag()) <= tol;
}

/// exp(2*pi*i * num/den)
inline cplx root_of_unity(long long num, long long den) {
    constexpr double twopi = 6.283185307179586476925286766559;
    long long r = num % den;
    if (r < 0) r += den;
    double arg = twopi * static_cast<double>(r) / static_cast<double>(den);
    return cplx(std::cos(arg), std::sin(arg));
}

} // namespace periods
