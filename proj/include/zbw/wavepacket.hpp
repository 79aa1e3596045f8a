#pragma once

#include <optional>
#include <vector>

#include "zbw/dynamics.hpp"
#include "zbw/representations.hpp"

namespace zbw {

// Momentum-grid Gaussian wave packets, evolved exactly per mode.
//
// Packets are one-dimensional along a chosen axis; the grid is uniform,
// symmetric about p0 (half-step offset, so p = 0 is never a grid point),
// and a power of two long for the spectral derivative. Position
// expectations use <x> = sum_k <psi_k| M (i d/dp) psi_k> dp / norm with
// the derivative taken by FFT on the periodic grid; the Gaussian envelope
// is required to be below 1e-10 at the grid edges so the periodic wrap is
// inert.

struct MomentumGrid {
    int axis = 2;        // packets move along this spatial axis
    real p0 = 0;         // grid center
    real dp = 0;         // spacing
    int n_points = 0;    // power of two
    std::vector<real> p_values;
};

enum class Composition { PositiveOnly, NegativeOnly, Mixed };

struct WavePacket {
    MomentumGrid grid;
    RepresentationKind kind = RepresentationKind::Dirac;
    real mass = 0;
    std::optional<real> gfv_parameter;
    Composition composition = Composition::PositiveOnly;
    real weight_plus = 1;  // sector weight w+ (1 / 0 for the pure packets)
    std::vector<QuantumState> amplitudes;  // one per grid point
};

// Build the Gaussian packet. dp <= 0 selects the default grid, spanning
// p0 +- 12 sigma_p (edge envelope ~ exp(-36)). The per-mode states are
// energy-sector eigenvectors continued smoothly across the grid; the
// negative-sector partner of a mixed packet is chosen to maximize the
// velocity matrix element along the packet axis. Total |envelope|^2 dp
// sums to 1.
WavePacket gaussian_packet(RepresentationKind kind, real mass, std::optional<real> n_parameter,
                           int axis, real p0, real sigma_p, int n_points, real dp,
                           Composition composition, real weight_plus);

// The mode operators at grid point k (momentum p_k along the grid axis).
ModeOperators packet_mode(const WavePacket& packet, int k);

// GFV only: re-express every per-mode state at a different N. The rebase
// map is momentum-independent and intertwines the Hamiltonians, so the
// <x>(t) trajectory of the rebased packet matches the original.
WavePacket gfv_rebase_packet(const WavePacket& packet, real n_to);

// psi_k -> exp(-i H_k t) psi_k for every grid point.
WavePacket evolve_packet(const WavePacket& packet, real t);

// Total charge-form norm sum_k <psi_k|M|psi_k> dp (pairwise summation).
real packet_charge_norm(const WavePacket& packet);

// Euclidean fraction of the packet in the positive-energy sector.
real sector_purity(const WavePacket& packet);

// <x> by spectral differentiation. Throws NullNormError on a null
// charge-form norm and rejects imaginary residue above 1e-9.
real position_expectation(const WavePacket& packet);

struct ZbwFit {
    real amplitude = 0;
    real frequency = 0;
    real drift = 0;
    real residual = 0;
};

// Least-squares fit x(t) = x0 + v t + A cos(w t + phi) of a sampled
// position trajectory; at least 8 oscillation periods should be covered.
ZbwFit zbw_amplitude(const std::vector<real>& times, const std::vector<real>& positions);
ZbwFit zbw_amplitude(const Trajectory& trajectory);

}  // namespace zbw
