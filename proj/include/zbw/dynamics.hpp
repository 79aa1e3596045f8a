#pragma once

#include <array>
#include <string>
#include <vector>

#include "zbw/representations.hpp"

namespace zbw {

// Heisenberg-picture evolution and the closed-form trembling dynamics.
//
// Every mode Hamiltonian satisfies {v_i, H} = 2 p_i, from which
//   dv_i/dt = i[H, v_i] = 2i (p_i - v_i H),
// with the exact solution (functions of H acting by right-multiplication)
//   v_i(t)      = p_i H^-1 + (v_i(0) - p_i H^-1) exp(-2iHt),
//   delta_r_i(t)= p_i H^-1 t + (i/2)(v_i(0) - p_i H^-1)(exp(-2iHt) - 1) H^-1.
// Because H^2 = E^2 I on every mode, the H-functions reduce to
//   H^-1 = H / E^2,   exp(-2iHt) = cos(2Et) I - i sin(2Et) H / E,
// which keeps the closed forms at machine accuracy independently of the
// general mat_exp path used by the brute-force oracle.

struct Trajectory {
    std::vector<real> times;
    std::vector<cplx> samples;
    std::string observable_label;
    std::string mode_descriptor;
};

struct EnergyProjectors {
    ComplexMatrix lambda_plus;
    ComplexMatrix lambda_minus;
};

enum class Observable { Velocity, Displacement };

// a_i = i [H, v_i]; equals 2i (p_i I - v_i H).
std::array<ComplexMatrix, 3> acceleration(const ModeOperators& mode);

// exp(iHt) O exp(-iHt) through the general matrix exponential.
ComplexMatrix evolve_heisenberg(const ModeOperators& mode, const ComplexMatrix& observable,
                                real t);

std::array<ComplexMatrix, 3> velocity_closed_form(const ModeOperators& mode, real t);

// Displacement relative to r(0); the c-number r(0) is carried by the caller.
std::array<ComplexMatrix, 3> displacement_closed_form(const ModeOperators& mode, real t);

// Spectral projectors onto the +E / -E eigenspaces, built from the
// spectral decomposition of H.
EnergyProjectors energy_projectors(const ModeOperators& mode);

// The same projectors in closed form, (I +- H/E)/2; used as the
// independent oracle for the spectral construction and by the wave-packet
// machinery where per-grid-point accuracy matters.
EnergyProjectors energy_projectors_algebraic(const ModeOperators& mode);

// Deterministic metric-orthonormal basis of one energy sector
// (sector = +1 or -1), built by pivoted projection of the standard basis
// through the algebraic projector. Each state has metric norm +1 (or -1
// for the negative sector of the charge form).
std::vector<QuantumState> sector_basis(const ModeOperators& mode, int sector);

// The negative-sector basis state with the largest velocity matrix
// element |<u-| M v_axis |u+>| against the given positive-sector state;
// the partner that actually trembles along that axis.
QuantumState trembling_partner(const ModeOperators& mode, const QuantumState& plus, int axis);

// sqrt(w+) u+ + sqrt(1-w+) u- with u+ the leading positive-sector basis
// state and u- its trembling partner along `axis`.
QuantumState mixed_sector_state(const ModeOperators& mode, real weight_plus, int axis = 0);

// 512 uniform samples over [0, 10 pi / E]: >= 10 trembling periods with
// >= 50 samples each.
std::vector<real> default_time_grid(real energy, int n_samples = 512);

Trajectory expectation_trajectory(const ModeOperators& mode, const QuantumState& state,
                                  Observable observable, int axis,
                                  const std::vector<real>& times);

}  // namespace zbw
