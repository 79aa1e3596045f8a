#pragma once

#include <array>

#include "zbw/complex_matrix.hpp"

namespace zbw {

// Fixed matrix algebras, entrywise-exact constants.
//
// Dirac matrices are in the Dirac representation:
//   beta = diag(I2, -I2),  alpha_i = offdiag(sigma_i, sigma_i),
//   gamma_i = beta * alpha_i,  Sigma_i = diag(sigma_i, sigma_i).
// The 2x2 rho_i of the two-component boson representations are the
// ordinary Pauli matrices.  The 3x3 spin-1 matrices satisfy
//   [S_i, S_j] = i e_ijk S_k,
//   S_i S_j S_k + S_k S_j S_i = delta_ij S_k + delta_jk S_i,
//   S^2 = 2 I.

struct DiracAlgebra {
    std::array<ComplexMatrix, 3> alpha;
    ComplexMatrix beta;
    std::array<ComplexMatrix, 3> gamma;      // gamma_i = beta * alpha_i
    std::array<ComplexMatrix, 3> sigma_big;  // block-diag(sigma_i, sigma_i)
};

struct PauliRho {
    ComplexMatrix rho1, rho2, rho3;
};

struct SpinOneMatrices {
    std::array<ComplexMatrix, 3> S;
};

const DiracAlgebra& dirac_matrices();
const PauliRho& pauli_rho();
const SpinOneMatrices& spin1_matrices();

}  // namespace zbw
