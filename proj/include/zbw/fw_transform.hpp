#pragma once

#include <array>

#include "zbw/representations.hpp"

namespace zbw {

// Per-mode transformation to the Foldy-Wouthuysen representation, where
// the Hamiltonian is block-diagonal, H_FW = B E with the block-sign
// matrix B (beta / rho3 / rho3 (x) I), and the velocity operator
// v_FW = p_i H_FW^-1 = B p_i / E commutes with it: the trembling motion
// is absent.
//
// For the Dirac mode T is the standard free-particle rotation
//   T = (E + m + beta alpha.p) / sqrt(2E(E+m)),          T^-1 = T^dagger;
// for the boson representations T is built spectrally with columns of
// T^-1 normalized to charge-form norm +-1, making T pseudo-unitary:
//   T^-1 = rho3~ T^dagger rho3~.
struct FwTransform {
    ComplexMatrix T;
    ComplexMatrix T_inv;
    RepresentationKind kind;
    bool is_pseudo_unitary = false;
};

FwTransform fw_diagonalize(const ModeOperators& mode);

// The spectral construction used for GFV/ST, exposed for the Dirac
// closed-form cross-check.
FwTransform fw_diagonalize_spectral(const ModeOperators& mode);

// rho3~ * E, the diagonalized Hamiltonian.
ComplexMatrix fw_hamiltonian(const ModeOperators& mode);

// v_FW,i = p_i H_FW^-1 = rho3~ p_i / E.
std::array<ComplexMatrix, 3> fw_velocity(const ModeOperators& mode);

// T O T^-1.
ComplexMatrix transform_operator(const FwTransform& fw, const ComplexMatrix& observable);

// The momentum-dependent matrix correction of the Dirac mean position
// operator X = r + W(p),
//   W_i = -(Sigma x p)_i / (2 eps (eps+m)) + i gamma_i / (2 eps)
//         - i (gamma.p) p_i / (2 eps^2 (eps+m)),
// with eps = sqrt(m^2 + p^2). X is the Dirac-representation image of the
// FW position operator; its velocity i[H, X] is free of trembling.
struct MeanPositionOperator {
    std::array<ComplexMatrix, 3> matrix_part;
    real epsilon = 0;
};

MeanPositionOperator mean_position_matrix(real mass, const std::array<real, 3>& momentum);

// i[H_D, X_i] = alpha_i + i[H_D, W_i]: the mean-position velocity at a
// fixed mode. Commutes with H_D.
std::array<ComplexMatrix, 3> mean_position_velocity(const ModeOperators& dirac_mode);

}  // namespace zbw
