#pragma once

#include <cstddef>
#include <vector>

#include "expsum/inner_product.hpp"

namespace expsum {

class Signal;

// Ordered set of expo-polynomial terms spanning the approximation space.
// Valid bases have no duplicate (degree, lambda) pairs, and for every
// exact lambda value the degrees present form a contiguous run 0..k-1.
struct Basis {
    std::vector<ExpoPolyTerm> terms;

    std::size_t size() const { return terms.size(); }

    // Throws std::invalid_argument when the contract above is violated.
    void validate() const;
};

// Dense Hermitian matrix of pairwise inner products, row-major.
struct GramMatrix {
    std::size_t order = 0;
    std::vector<Complex> entries;

    Complex at(std::size_t i, std::size_t j) const {
        return entries[i * order + j];
    }
    Complex& at(std::size_t i, std::size_t j) {
        return entries[i * order + j];
    }
};

using MomentVector = std::vector<Complex>;

// Result of projecting a signal onto the span of a basis.
// f_min = ||f||^2 - Re(b^H a) is the squared L2 distance to the span.
struct LinearFit {
    Basis basis;
    std::vector<Complex> coefficients;
    double f_min = 0.0;
    double norm_f_sq = 0.0;
};

// g_ij = <terms[i] | terms[j]>. Computes the upper triangle and mirrors
// it, so Hermitian symmetry holds exactly.
GramMatrix build_gram(const Basis& basis);

// Solves G a = b by complex Cholesky and assembles the fit. Throws
// IllConditionedBasis when a pivot falls below 1e-13 times the largest
// diagonal entry, and InternalConsistencyError when the computed f_min
// leaves [0, norm_f_sq] by more than 1e-10 (smaller excursions clamp).
LinearFit solve_normal_equations(const Basis& basis, const GramMatrix& gram,
                                 const MomentVector& moments,
                                 double norm_f_sq);

// Inner products of each basis term against the fit residual f - sum a_j
// phi_j. All entries vanish (to rounding) when the fit solved the normal
// equations for this signal.
MomentVector residual_orthogonality(const LinearFit& fit,
                                    const Signal& signal);

} // namespace expsum
