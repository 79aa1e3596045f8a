#include "zbw/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "zbw/errors.hpp"
#include "zbw/matrix_functions.hpp"

namespace zbw {

namespace {

// exp(-2iHt) on a mode Hamiltonian with H^2 = E^2 I.
ComplexMatrix exp_minus_2iht(const ModeOperators& mode, real t) {
    const int n = mode.dim();
    const real phase = 2 * mode.energy * t;
    ComplexMatrix out = cplx(std::cos(phase)) * ComplexMatrix::identity(n);
    out += cplx(0, -std::sin(phase) / mode.energy) * mode.hamiltonian;
    return out;
}

ComplexMatrix inverse_hamiltonian(const ModeOperators& mode) {
    return cplx(1 / (mode.energy * mode.energy)) * mode.hamiltonian;
}

std::string describe(const ModeOperators& mode) {
    std::string d = kind_name(mode.kind) + " m=" + std::to_string(static_cast<double>(mode.mass)) +
                    " p=(" + std::to_string(static_cast<double>(mode.momentum[0])) + "," +
                    std::to_string(static_cast<double>(mode.momentum[1])) + "," +
                    std::to_string(static_cast<double>(mode.momentum[2])) + ")";
    if (mode.gfv_parameter) {
        d += " N=" + std::to_string(static_cast<double>(*mode.gfv_parameter));
    }
    return d;
}

}  // namespace

std::array<ComplexMatrix, 3> acceleration(const ModeOperators& mode) {
    std::array<ComplexMatrix, 3> a;
    for (int i = 0; i < 3; ++i) {
        a[i] = cplx(0, 1) * commutator(mode.hamiltonian, mode.velocity[i]);
    }
    return a;
}

ComplexMatrix evolve_heisenberg(const ModeOperators& mode, const ComplexMatrix& observable,
                                real t) {
    if (observable.dim() != mode.dim()) {
        throw ShapeError("evolve_heisenberg: observable dimension does not match mode");
    }
    const ComplexMatrix forward = mat_exp(mode.hamiltonian, cplx(0, t));
    const ComplexMatrix backward = mat_exp(mode.hamiltonian, cplx(0, -t));
    return forward * observable * backward;
}

std::array<ComplexMatrix, 3> velocity_closed_form(const ModeOperators& mode, real t) {
    const ComplexMatrix inv_h = inverse_hamiltonian(mode);
    const ComplexMatrix phase = exp_minus_2iht(mode, t);
    std::array<ComplexMatrix, 3> v;
    for (int i = 0; i < 3; ++i) {
        const ComplexMatrix drift = cplx(mode.momentum[i]) * inv_h;
        v[i] = drift + (mode.velocity[i] - drift) * phase;
    }
    return v;
}

std::array<ComplexMatrix, 3> displacement_closed_form(const ModeOperators& mode, real t) {
    const int n = mode.dim();
    const ComplexMatrix inv_h = inverse_hamiltonian(mode);
    const ComplexMatrix phase_minus_id = exp_minus_2iht(mode, t) - ComplexMatrix::identity(n);
    std::array<ComplexMatrix, 3> dr;
    for (int i = 0; i < 3; ++i) {
        const ComplexMatrix drift = cplx(mode.momentum[i]) * inv_h;
        dr[i] = cplx(t) * drift + cplx(0, 0.5L) * (mode.velocity[i] - drift) * phase_minus_id * inv_h;
    }
    return dr;
}

EnergyProjectors energy_projectors(const ModeOperators& mode) {
    const int n = mode.dim();
    const SpectralDecomposition d = spectral(mode.hamiltonian, describe(mode));
    EnergyProjectors out{ComplexMatrix(n), ComplexMatrix(n)};
    for (int k = 0; k < n; ++k) {
        const bool positive = d.eigenvalues[k].real() > real(0);
        ComplexMatrix& target = positive ? out.lambda_plus : out.lambda_minus;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                target(r, c) += d.right_eigenvectors(r, k) * d.inverse_of_eigenvector_matrix(k, c);
    }
    return out;
}

EnergyProjectors energy_projectors_algebraic(const ModeOperators& mode) {
    const int n = mode.dim();
    const ComplexMatrix h_over_e = cplx(1 / mode.energy) * mode.hamiltonian;
    const ComplexMatrix id = ComplexMatrix::identity(n);
    return EnergyProjectors{cplx(0.5L) * (id + h_over_e), cplx(0.5L) * (id - h_over_e)};
}

std::vector<QuantumState> sector_basis(const ModeOperators& mode, int sector) {
    if (sector != 1 && sector != -1) throw ParameterError("sector_basis: sector must be +1 or -1");
    const int n = mode.dim();
    const int mult = n / 2;
    const EnergyProjectors proj = energy_projectors_algebraic(mode);
    const ComplexMatrix& p = (sector == 1) ? proj.lambda_plus : proj.lambda_minus;
    const ComplexMatrix metric = mode.metric();
    // Restricted to one sector the charge form is definite with sign
    // `sector` (Euclidean: always +), so Gram-Schmidt under sign*M is safe.
    const real sign = (mode.kind == RepresentationKind::Dirac) ? real(1) : real(sector);

    auto m_inner = [&](const std::vector<cplx>& a, const std::vector<cplx>& b) {
        cplx acc(0);
        for (int r = 0; r < n; ++r) {
            cplx mb(0);
            for (int c = 0; c < n; ++c) mb += metric(r, c) * b[c];
            acc += std::conj(a[r]) * mb;
        }
        return acc;
    };

    std::vector<std::vector<cplx>> candidates(n, std::vector<cplx>(n));
    for (int j = 0; j < n; ++j)
        for (int r = 0; r < n; ++r) candidates[j][r] = p(r, j);

    std::vector<std::vector<cplx>> chosen;
    std::vector<bool> used(n, false);
    for (int k = 0; k < mult; ++k) {
        int best = -1;
        real best_norm = 0;
        std::vector<cplx> best_vec;
        for (int j = 0; j < n; ++j) {
            if (used[j]) continue;
            std::vector<cplx> v = candidates[j];
            for (const auto& u : chosen) {
                const cplx overlap = sign * m_inner(u, v);
                for (int r = 0; r < n; ++r) v[r] -= overlap * u[r];
            }
            const real norm = sign * m_inner(v, v).real();
            if (norm > best_norm) {
                best_norm = norm;
                best = j;
                best_vec = std::move(v);
            }
        }
        if (best < 0 || best_norm <= real(1e-20)) {
            throw IllConditionedError("sector_basis: projector columns failed to span sector " +
                                      std::to_string(sector) + " of " + describe(mode));
        }
        used[best] = true;
        const real inv = 1 / std::sqrt(best_norm);
        for (auto& x : best_vec) x *= inv;
        // Phase gauge: largest-magnitude entry made positive real.
        int pivot = 0;
        real mag = 0;
        for (int r = 0; r < n; ++r) {
            if (std::abs(best_vec[r]) > mag + real(1e-18)) {
                mag = std::abs(best_vec[r]);
                pivot = r;
            }
        }
        const cplx phase = best_vec[pivot] / std::abs(best_vec[pivot]);
        for (auto& x : best_vec) x /= phase;
        chosen.push_back(std::move(best_vec));
    }

    std::vector<QuantumState> states;
    states.reserve(mult);
    for (auto& v : chosen) states.push_back(make_state(mode.kind, std::move(v)));
    return states;
}

QuantumState trembling_partner(const ModeOperators& mode, const QuantumState& plus, int axis) {
    if (axis < 0 || axis > 2) throw ParameterError("trembling_partner: axis must be 0..2");
    const int n = mode.dim();
    const ComplexMatrix metric = mode.metric();
    const std::vector<cplx> v_plus = mode.velocity[axis] * plus.components;
    const std::vector<cplx> mv_plus = metric * v_plus;
    const std::vector<QuantumState> candidates = sector_basis(mode, -1);
    real best = -1;
    const QuantumState* chosen = &candidates.front();
    for (const auto& candidate : candidates) {
        cplx coupling(0);
        for (int r = 0; r < n; ++r) coupling += std::conj(candidate.components[r]) * mv_plus[r];
        if (std::abs(coupling) > best) {
            best = std::abs(coupling);
            chosen = &candidate;
        }
    }
    return *chosen;
}

QuantumState mixed_sector_state(const ModeOperators& mode, real weight_plus, int axis) {
    if (weight_plus < real(0) || weight_plus > real(1)) {
        throw ParameterError("mixed_sector_state: weight must lie in [0, 1]");
    }
    const QuantumState plus = sector_basis(mode, +1).front();
    const QuantumState minus = trembling_partner(mode, plus, axis);
    QuantumState out;
    out.metric = plus.metric;
    out.components.resize(mode.dim());
    const real wp = std::sqrt(weight_plus);
    const real wm = std::sqrt(1 - weight_plus);
    for (int i = 0; i < mode.dim(); ++i) {
        out.components[i] = wp * plus.components[i] + wm * minus.components[i];
    }
    return out;
}

std::vector<real> default_time_grid(real energy, int n_samples) {
    std::vector<real> times(n_samples);
    const real t_max = 10 * kPi / energy;
    for (int i = 0; i < n_samples; ++i) times[i] = t_max * real(i) / real(n_samples - 1);
    return times;
}

Trajectory expectation_trajectory(const ModeOperators& mode, const QuantumState& state,
                                  Observable observable, int axis,
                                  const std::vector<real>& times) {
    if (axis < 0 || axis > 2) throw ParameterError("expectation_trajectory: axis must be 0..2");
    if (state.dim() != mode.dim()) {
        throw ShapeError("expectation_trajectory: state dimension does not match mode");
    }
    Trajectory traj;
    traj.times = times;
    traj.samples.reserve(times.size());
    traj.observable_label =
        (observable == Observable::Velocity ? "velocity_" : "displacement_") +
        std::to_string(axis + 1);
    traj.mode_descriptor = describe(mode);
    for (const real t : times) {
        const ComplexMatrix op = (observable == Observable::Velocity)
                                     ? velocity_closed_form(mode, t)[axis]
                                     : displacement_closed_form(mode, t)[axis];
        traj.samples.push_back(charge_expectation(state, op));
    }
    return traj;
}

}  // namespace zbw
