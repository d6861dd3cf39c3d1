#include "expsum/gram.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "expsum/errors.hpp"
#include "expsum/signal.hpp"

namespace expsum {

namespace {

// Relative pivot floor for the Cholesky factorization.
constexpr double kPivotFloor = 1e-13;

// Slack allowed before an out-of-range f_min is treated as a bug.
constexpr double kFMinSlack = 1e-10;

// Lower-triangular L with A = L L^H, A given row-major Hermitian.
// Throws when a pivot drops below kPivotFloor times the largest diagonal.
std::vector<Complex> cholesky(const GramMatrix& gram) {
    const std::size_t n = gram.order;
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        max_diag = std::max(max_diag, gram.at(i, i).real());
    }
    const double floor = kPivotFloor * max_diag;

    std::vector<Complex> l(n * n, Complex{0.0, 0.0});
    auto lv = [&](std::size_t i, std::size_t j) -> Complex& {
        return l[i * n + j];
    };
    for (std::size_t j = 0; j < n; ++j) {
        double d = gram.at(j, j).real();
        for (std::size_t k = 0; k < j; ++k) {
            d -= std::norm(lv(j, k));
        }
        if (!(d > floor)) {
            throw IllConditionedBasis(j, d, max_diag);
        }
        const double root = std::sqrt(d);
        lv(j, j) = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            Complex s = gram.at(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                s -= lv(i, k) * std::conj(lv(j, k));
            }
            lv(i, j) = s / root;
        }
    }
    return l;
}

std::vector<Complex> solve_with_factor(const std::vector<Complex>& l,
                                       std::size_t n,
                                       const MomentVector& b) {
    auto lv = [&](std::size_t i, std::size_t j) { return l[i * n + j]; };
    std::vector<Complex> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex s = b[i];
        for (std::size_t k = 0; k < i; ++k) {
            s -= lv(i, k) * y[k];
        }
        y[i] = s / lv(i, i);
    }
    std::vector<Complex> a(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Complex s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) {
            s -= std::conj(lv(k, ii)) * a[k];
        }
        a[ii] = s / lv(ii, ii);
    }
    return a;
}

} // namespace

void Basis::validate() const {
    if (terms.empty()) {
        throw std::invalid_argument("empty basis");
    }
    std::map<std::pair<double, double>, std::vector<int>> degrees_by_lambda;
    for (const ExpoPolyTerm& term : terms) {
        if (term.degree < 0 || term.degree > kMaxMomentOrder) {
            throw std::invalid_argument("basis degree " +
                                        std::to_string(term.degree) +
                                        " outside [0, " +
                                        std::to_string(kMaxMomentOrder) + "]");
        }
        if (!std::isfinite(term.lambda.real()) ||
            !std::isfinite(term.lambda.imag())) {
            throw std::invalid_argument("non-finite basis frequency");
        }
        degrees_by_lambda[{term.lambda.real(), term.lambda.imag()}].push_back(
            term.degree);
    }
    for (auto& [lambda, degrees] : degrees_by_lambda) {
        std::sort(degrees.begin(), degrees.end());
        for (std::size_t k = 0; k < degrees.size(); ++k) {
            if (degrees[k] != int(k)) {
                throw std::invalid_argument(
                    degrees[k] == int(k) - 1
                        ? "duplicate basis term"
                        : "non-contiguous degree run in basis");
            }
        }
    }
}

GramMatrix build_gram(const Basis& basis) {
    basis.validate();
    const std::size_t n = basis.size();
    GramMatrix gram;
    gram.order = n;
    gram.entries.assign(n * n, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const Complex g = inner_product(basis.terms[i], basis.terms[j]);
            gram.at(i, j) = g;
            gram.at(j, i) = std::conj(g);
        }
    }
    return gram;
}

LinearFit solve_normal_equations(const Basis& basis, const GramMatrix& gram,
                                 const MomentVector& moments,
                                 double norm_f_sq) {
    const std::size_t n = basis.size();
    if (gram.order != n || moments.size() != n) {
        throw std::invalid_argument("gram/moment dimensions do not match basis");
    }
    if (!std::isfinite(norm_f_sq) || norm_f_sq < 0.0) {
        throw std::invalid_argument("invalid signal norm");
    }

    const std::vector<Complex> l = cholesky(gram);
    std::vector<Complex> a = solve_with_factor(l, n, moments);

    double projection = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        projection += (std::conj(moments[i]) * a[i]).real();
    }
    double f_min = norm_f_sq - projection;

    // f_min is a squared distance, so it lives in [0, norm_f_sq]. Allow
    // rounding to poke past either end by a sliver and clamp it back;
    // anything worse means the inputs were inconsistent.
    const double slack = kFMinSlack * std::max(1.0, norm_f_sq);
    if (f_min < 0.0) {
        if (f_min < -slack) {
            throw InternalConsistencyError("f_min " + std::to_string(f_min) +
                                           " below 0 beyond rounding slack");
        }
        f_min = 0.0;
    } else if (f_min > norm_f_sq) {
        if (f_min > norm_f_sq + slack) {
            throw InternalConsistencyError("f_min " + std::to_string(f_min) +
                                           " above the signal norm " +
                                           std::to_string(norm_f_sq) +
                                           " beyond rounding slack");
        }
        f_min = norm_f_sq;
    }

    LinearFit fit;
    fit.basis = basis;
    fit.coefficients = std::move(a);
    fit.f_min = f_min;
    fit.norm_f_sq = norm_f_sq;
    return fit;
}

MomentVector residual_orthogonality(const LinearFit& fit,
                                    const Signal& signal) {
    const std::size_t n = fit.basis.size();
    if (fit.coefficients.size() != n) {
        throw std::invalid_argument("fit coefficients do not match its basis");
    }
    const GramMatrix gram = build_gram(fit.basis);
    MomentVector residuals(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex r = moment(fit.basis.terms[i], signal);
        for (std::size_t j = 0; j < n; ++j) {
            r -= gram.at(i, j) * fit.coefficients[j];
        }
        residuals[i] = r;
    }
    return residuals;
}

} // namespace expsum
