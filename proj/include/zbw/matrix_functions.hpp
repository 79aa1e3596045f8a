#pragma once

#include <string_view>
#include <vector>

#include "zbw/complex_matrix.hpp"

namespace zbw {

// Eigendecomposition A = V diag(lambda) V^-1 of a small dense complex
// matrix.  Valid for the pseudo-Hermitian (hence diagonalizable,
// real-spectrum) Hamiltonians this library produces, and for general
// diagonalizable input.  Eigenvalues are sorted by descending real part,
// ties by descending imaginary part, so the +E energy sector always
// occupies the leading columns.
struct SpectralDecomposition {
    std::vector<cplx> eigenvalues;
    ComplexMatrix right_eigenvectors;            // eigenvectors as columns
    ComplexMatrix inverse_of_eigenvector_matrix;
    real condition_estimate = 0;                 // ||V||_F * ||V^-1||_F
};

// Gauss-Jordan inverse with partial pivoting. Throws IllConditionedError
// on a numerically singular pivot.
ComplexMatrix inverse(const ComplexMatrix& m, std::string_view label = "matrix");

// Complex Hessenberg reduction + Wilkinson-shifted QR + Schur back
// substitution. Throws IllConditionedError (naming `label`) when the
// eigenvector basis has condition estimate above kMaxSpectralCondition.
SpectralDecomposition spectral(const ComplexMatrix& a, std::string_view label = "matrix");

// exp(s*A).  Uses the spectral path when the eigenbasis is well
// conditioned, otherwise scaling-and-squaring with a [13/13] Pade
// approximant. Total: no failure modes beyond squareness.
ComplexMatrix mat_exp(const ComplexMatrix& a, cplx s);

}  // namespace zbw
