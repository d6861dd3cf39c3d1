#include "expsum/objective.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace expsum {

namespace {

constexpr double kPi = std::numbers::pi;

// Below this |u| the one-frequency closed form switches to its u -> 0
// limit; the form is even in u, so the seam error is O(u^2).
constexpr double kAxisSwitch = 1e-8;

// Above this |u| the closed form is rewritten around e^(-pi|u|) so the
// hyperbolic terms cannot overflow.
constexpr double kLargeU = 20.0;

// Taylor switch for the coincident-pair curve, in w = pi v.
constexpr double kClusterTaylor = 0.02;

void check_freqs(const FrequencySet& freqs) {
    if (freqs.lambdas.empty()) {
        throw std::invalid_argument("frequency set is empty");
    }
    if (!(freqs.cluster_tol > 0.0)) {
        throw std::invalid_argument("cluster tolerance must be positive");
    }
    for (const Complex& lambda : freqs.lambdas) {
        if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
            throw std::invalid_argument("non-finite frequency");
        }
    }
}

} // namespace

Basis build_basis(const FrequencySet& freqs) {
    check_freqs(freqs);
    const std::size_t n = freqs.lambdas.size();

    // Union-find over frequency indices; the tolerance relation is merged
    // transitively, so chains of near frequencies become one cluster.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(freqs.lambdas[i] - freqs.lambdas[j]) <
                freqs.cluster_tol) {
                parent[find(j)] = find(i);
            }
        }
    }

    // Clusters ordered by their first member; centroid frequency,
    // degrees 0..multiplicity-1.
    std::vector<std::size_t> roots;
    std::vector<Complex> sums;
    std::vector<int> counts;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        std::size_t g = 0;
        while (g < roots.size() && roots[g] != r) {
            ++g;
        }
        if (g == roots.size()) {
            roots.push_back(r);
            sums.push_back({0.0, 0.0});
            counts.push_back(0);
        }
        sums[g] += freqs.lambdas[i];
        counts[g] += 1;
    }

    Basis basis;
    basis.terms.reserve(n);
    for (std::size_t g = 0; g < roots.size(); ++g) {
        const Complex centroid = sums[g] / double(counts[g]);
        for (int k = 0; k < counts[g]; ++k) {
            basis.terms.push_back({k, centroid});
        }
    }
    return basis;
}

LinearFit best_fit(const FrequencySet& freqs, const Signal& signal) {
    const Basis basis = build_basis(freqs);
    const GramMatrix gram = build_gram(basis);
    MomentVector moments(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        moments[i] = moment(basis.terms[i], signal);
    }
    return solve_normal_equations(basis, gram, moments, norm_sq(signal));
}

double phi(const FrequencySet& freqs, const Signal& signal) {
    return best_fit(freqs, signal).f_min;
}

double phi_sign_one_freq(double u, double v) {
    if (!std::isfinite(u) || !std::isfinite(v)) {
        throw std::invalid_argument("non-finite frequency");
    }
    if (u == 0.0 && v == 0.0) {
        return 1.0;
    }
    const double a = std::fabs(u);
    if (a < kAxisSwitch) {
        const double w = kPi * v;
        if (w == 0.0) {
            return 1.0;
        }
        // (1 - cos w)^2 / w^2 with 1 - cos w = 2 sin^2(w/2), which has no
        // cancellation near w = 0.
        const double s = std::sin(0.5 * w);
        return 1.0 - 4.0 * s * s * s * s / (w * w);
    }
    const double r2 = u * u + v * v;
    if (a <= kLargeU) {
        // cosh(pi a) - cos(pi v) = 2 sinh^2(pi a / 2) + 2 sin^2(pi v / 2),
        // again cancellation-free when both arguments are small.
        const double sh = std::sinh(0.5 * kPi * a);
        const double sn = std::sin(0.5 * kPi * v);
        const double d = 2.0 * sh * sh + 2.0 * sn * sn;
        return 1.0 - (2.0 * a / r2) * d * d / (kPi * std::sinh(2.0 * kPi * a));
    }
    // Pull e^(pi a) out of (cosh(pi a) - cos(pi v))^2 / sinh(2 pi a); what
    // remains is expressed in e1 = e^(-pi a) <= e^(-20 pi) and stays finite
    // for any a.
    const double e1 = std::exp(-kPi * a);
    const double e2 = e1 * e1;
    const double e4 = e2 * e2;
    const double top = 0.5 * (1.0 + e2) - std::cos(kPi * v) * e1;
    const double ratio = top * top / (0.5 * (1.0 - e4));
    return 1.0 - (2.0 * a / r2) * ratio / kPi;
}

double phi_sign_cluster_axis(double v) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument("non-finite frequency");
    }
    const double w = kPi * v;
    if (std::fabs(w) < kClusterTaylor) {
        const double w2 = w * w;
        return 0.25 + w2 / 8.0 - 5.0 * w2 * w2 / 192.0;
    }
    const double s = std::sin(0.5 * w);
    const double one_minus_cos = 2.0 * s * s;
    const double cw = std::cos(w);
    const double sw = std::sin(w);
    const double w2 = w * w;
    const double numer =
        2.0 * cw * w2 - 3.0 * cw + 3.0 + 4.0 * w2 - 6.0 * sw * w;
    return 1.0 - one_minus_cos * numer / (w2 * w2);
}

} // namespace expsum
