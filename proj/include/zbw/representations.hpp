#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "zbw/complex_matrix.hpp"

namespace zbw {

// Per-momentum-mode operator sets for the three representations:
//
//   Dirac (4x4, Hermitian):          H = beta m + alpha . p,   v_i = alpha_i
//   generalized Feshbach-Villars
//   (2x2, rho3-pseudo-Hermitian):    H = rho3 (p^2+m^2+N^2)/(2N)
//                                      + i rho2 (p^2+m^2-N^2)/(2N)
//                                    v_i = (rho3 + i rho2) p_i / N
//   Sakata-Taketani (6x6,
//   rho3(x)I3-pseudo-Hermitian):     H = rho3 (x) m I3 - i rho2 (x) (S.p)^2/m
//                                      + (rho3 + i rho2) (x) p^2 I3 /(2m)
//                                    v_i = dH/dp_i
//
// The plain Feshbach-Villars representation is GFV at N = m.  Every H
// squares to E^2 I with E = sqrt(m^2 + p^2), which is what makes the
// closed-form trembling dynamics exact.

enum class RepresentationKind { Dirac, GFV, SakataTaketani };

int dimension_of(RepresentationKind kind);
std::string kind_name(RepresentationKind kind);

// The metric of the indefinite charge-form inner product: identity for
// Dirac, rho3 (x) I for the boson representations.
ComplexMatrix metric_matrix(RepresentationKind kind);

// The block-sign matrix of the diagonalized (FW) Hamiltonian, H_FW = B E:
// beta for Dirac, rho3 (x) I for the boson representations, where it
// coincides with the charge-form metric.
ComplexMatrix block_sign_matrix(RepresentationKind kind);

struct ModeOperators {
    RepresentationKind kind;
    real mass = 0;
    std::array<real, 3> momentum{};
    std::optional<real> gfv_parameter;  // N, GFV only
    real energy = 0;                    // sqrt(m^2 + p^2)
    ComplexMatrix hamiltonian;
    std::array<ComplexMatrix, 3> velocity;

    int dim() const { return hamiltonian.dim(); }
    ComplexMatrix metric() const { return metric_matrix(kind); }
};

ModeOperators build_dirac(real mass, const std::array<real, 3>& momentum);
ModeOperators build_gfv(real mass, const std::array<real, 3>& momentum, real n_parameter);
ModeOperators build_st(real mass, const std::array<real, 3>& momentum);

enum class Metric { Euclidean, ChargeForm };

struct QuantumState {
    std::vector<cplx> components;
    Metric metric = Metric::Euclidean;

    int dim() const { return static_cast<int>(components.size()); }
};

QuantumState make_state(RepresentationKind kind, std::vector<cplx> components);

// Two-component split of a Klein-Gordon solution value:
//   phi = (psi + i psi_dot / N) / 2,   chi = (psi - i psi_dot / N) / 2,
// where i_psi_dot is the supplied value of i d(psi)/dt.
QuantumState gfv_split(cplx psi, cplx i_psi_dot, real n_parameter);

// Invert the split at N1, re-split at N2. Linear and invertible; the
// round trip N1 -> N2 -> N1 is the identity.
QuantumState gfv_rebase(const QuantumState& state, real n_from, real n_to);

// The 2x2 matrix of gfv_rebase, for intertwining checks:
// rebase(N1,N2) H_GFV(N1) rebase(N1,N2)^-1 = H_GFV(N2).
ComplexMatrix gfv_rebase_matrix(real n_from, real n_to);

// <psi| M O |psi> / <psi| M |psi> with M fixed by the state's metric
// (identity or rho3-form of the matching dimension). Throws NullNormError
// when the metric norm vanishes.
cplx charge_expectation(const QuantumState& state, const ComplexMatrix& observable);

// <psi| M |psi>; real by construction for the metrics used here.
real charge_norm(const QuantumState& state);

}  // namespace zbw
