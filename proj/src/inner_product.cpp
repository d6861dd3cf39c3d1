#include "expsum/inner_product.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace expsum {

namespace {

constexpr double kPi = std::numbers::pi;

// |mu|*pi below this goes to the power series, above to the recurrence.
constexpr double kSeriesSwitch = 0.5;

void check_order(int m) {
    if (m < 0 || m > kMaxMomentOrder) {
        throw std::invalid_argument("moment order " + std::to_string(m) +
                                    " outside [0, " +
                                    std::to_string(kMaxMomentOrder) + "]");
    }
}

void check_finite(Complex mu) {
    if (!std::isfinite(mu.real()) || !std::isfinite(mu.imag())) {
        throw std::invalid_argument("non-finite exponent");
    }
}

void check_nonzero(Complex mu) {
    if (mu == Complex{0.0, 0.0}) {
        throw std::invalid_argument("recurrence requires mu != 0");
    }
}

// Terms c_j = mu^j pi^(m+j) / ((m+j+1) j!) obey
// c_j = c_{j-1} * mu*pi * (m+j) / ((m+j+1) j), c_0 = pi^m/(m+1).
// The full-interval series sums c_j over even m+j; the half-interval series
// sums c_j * pi / (2 pi) over all j. `parity_only` selects between them.
Complex moment_series(int m, Complex mu, bool parity_only) {
    const double scale = parity_only ? 1.0 : kPi / (2.0 * kPi);
    Complex term = std::pow(kPi, m) / double(m + 1);
    Complex sum{0.0, 0.0};
    double magnitude = 0.0;
    for (int j = 0; j < 400; ++j) {
        if (!parity_only || (m + j) % 2 == 0) {
            sum += term;
            magnitude = std::max(magnitude, std::abs(term));
        }
        term *= mu * kPi * double(m + j + 1) /
                (double(m + j + 2) * double(j + 1));
        if (j >= 2 && std::abs(term) <= 1e-18 * magnitude) {
            break;
        }
    }
    return scale * sum;
}

// Number of extra orders a backward pass needs so that the zero guess at
// the top decays below 1e-22 relative by the time it reaches order m.
int backward_start(int m, double t) {
    int top = m;
    double damping = 1.0;
    while (damping > 1e-22 && top < m + 400) {
        ++top;
        damping *= t / double(top);
    }
    return top;
}

// Shared recurrence driver. boundary(k) must return the boundary term
// B_k with I_k = B_k - (k/mu) I_{k-1}. Upward is stable while the
// boundary term dominates (|mu|*pi >= m); otherwise errors shrink going
// down, so start from a zero guess above m.
template <class Boundary>
Complex run_recurrence(int m, Complex mu, Complex seed, Boundary boundary) {
    const double t = std::abs(mu) * kPi;
    if (t >= double(m)) {
        Complex value = seed;
        for (int k = 1; k <= m; ++k) {
            value = boundary(k) - (double(k) / mu) * value;
        }
        return value;
    }
    Complex value{0.0, 0.0};
    for (int k = backward_start(m, t); k > m; --k) {
        value = (mu / double(k)) * (boundary(k) - value);
    }
    return value;
}

} // namespace

namespace detail {

Complex integral_full_series(int m, Complex mu) {
    check_order(m);
    check_finite(mu);
    return moment_series(m, mu, true);
}

Complex integral_half_series(int m, Complex mu) {
    check_order(m);
    check_finite(mu);
    return moment_series(m, mu, false);
}

Complex integral_full_recurrence(int m, Complex mu) {
    check_order(m);
    check_finite(mu);
    check_nonzero(mu);
    const Complex ep = std::exp(mu * kPi);
    const Complex en = std::exp(-mu * kPi);
    const Complex seed = std::sinh(mu * kPi) / (mu * kPi);
    auto boundary = [&](int k) {
        const double pk = std::pow(kPi, k);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        return (pk * ep - sign * pk * en) / (2.0 * kPi * mu);
    };
    return run_recurrence(m, mu, seed, boundary);
}

Complex integral_half_recurrence(int m, Complex mu) {
    check_order(m);
    check_finite(mu);
    check_nonzero(mu);
    const Complex ep = std::exp(mu * kPi);
    const Complex seed = (ep - 1.0) / (2.0 * kPi * mu);
    auto boundary = [&](int k) {
        return std::pow(kPi, k) * ep / (2.0 * kPi * mu);
    };
    return run_recurrence(m, mu, seed, boundary);
}

} // namespace detail

Complex integral_full(int m, Complex mu) {
    check_order(m);
    check_finite(mu);
    if (std::abs(mu) * kPi < kSeriesSwitch) {
        return detail::integral_full_series(m, mu);
    }
    return detail::integral_full_recurrence(m, mu);
}

Complex integral_half(int m, Complex mu) {
    check_order(m);
    check_finite(mu);
    if (std::abs(mu) * kPi < kSeriesSwitch) {
        return detail::integral_half_series(m, mu);
    }
    return detail::integral_half_recurrence(m, mu);
}

Complex inner_product(const ExpoPolyTerm& a, const ExpoPolyTerm& b) {
    if (a.degree < 0 || b.degree < 0) {
        throw std::invalid_argument("negative term degree");
    }
    check_finite(a.lambda);
    check_finite(b.lambda);
    return integral_full(a.degree + b.degree, std::conj(a.lambda) + b.lambda);
}

} // namespace expsum
