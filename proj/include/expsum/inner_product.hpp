#pragma once

#include <complex>

namespace expsum {

using Complex = std::complex<double>;

// One basis function x^degree * exp(lambda * x) on [-pi, pi].
struct ExpoPolyTerm {
    int degree = 0;
    Complex lambda{0.0, 0.0};
};

// Largest moment order accepted by the integral routines. Keeps the
// polynomial-degree recurrences inside their validated range.
inline constexpr int kMaxMomentOrder = 40;

// integral_full(m, mu) = (1/2pi) * integral over [-pi, pi] of x^m e^(mu x) dx
// integral_half(m, mu) = (1/2pi) * integral over [0, pi]   of x^m e^(mu x) dx
//
// Both require 0 <= m <= kMaxMomentOrder and finite mu, and switch between
// a power series (small |mu|*pi) and a boundary-term recurrence.
Complex integral_full(int m, Complex mu);
Complex integral_half(int m, Complex mu);

// <a|b> = (1/2pi) * integral of conj(a(x)) * b(x) dx over [-pi, pi]
//       = integral_full(a.degree + b.degree, conj(a.lambda) + b.lambda).
// Requires a.degree + b.degree <= kMaxMomentOrder.
Complex inner_product(const ExpoPolyTerm& a, const ExpoPolyTerm& b);

namespace detail {

// The two evaluation strategies, exposed so tests can cross-check them on
// the band where both apply. The series converges for any mu but is only
// used in production below the switch point; the recurrence requires
// mu != 0.
Complex integral_full_series(int m, Complex mu);
Complex integral_full_recurrence(int m, Complex mu);
Complex integral_half_series(int m, Complex mu);
Complex integral_half_recurrence(int m, Complex mu);

} // namespace detail

} // namespace expsum
