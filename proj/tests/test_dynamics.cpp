#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "test_util.hpp"
#include "zbw/algebras.hpp"
#include "zbw/dynamics.hpp"
#include "zbw/errors.hpp"
#include "zbw/fitting.hpp"
#include "zbw/verification.hpp"

using namespace zbw;

namespace {

const cplx U(1);

}  // namespace

TEST_CASE("acceleration: trembling exists even at rest") {
    const ModeOperators rest = build_dirac(1, {0, 0, 0});
    const auto a = acceleration(rest);
    const auto& d = dirac_matrices();
    for (int i = 0; i < 3; ++i) {
        // i[beta, alpha_i] = 2i beta alpha_i = 2i gamma_i
        CHECK(max_abs_diff(a[i], cplx(0, 2) * d.gamma[i]) == 0);
        CHECK(max_abs(a[i]) > 0);
    }
}

TEST_CASE("acceleration equals 2i(p - vH) for the spin-1 mode") {
    const ModeOperators st = build_st(3, {0, 0, 4});
    const auto a = acceleration(st);
    for (int i = 0; i < 3; ++i) {
        const ComplexMatrix expected =
            cplx(0, 2) * (cplx(st.momentum[i]) * ComplexMatrix::identity(6) -
                          st.velocity[i] * st.hamiltonian);
        CHECK(max_abs_diff(a[i], expected) < 1e-14L);
    }
}

TEST_CASE("acceleration vanishes inside one energy sector") {
    const ModeOperators gfv = build_gfv(2, {1, -2, 0.5L}, 7);
    const EnergyProjectors p = energy_projectors(gfv);
    const auto a = acceleration(gfv);
    for (int i = 0; i < 3; ++i) {
        CHECK(max_abs(p.lambda_plus * a[i] * p.lambda_plus) < 1e-13L);
        CHECK(max_abs(p.lambda_minus * a[i] * p.lambda_minus) < 1e-13L);
    }
}

TEST_CASE("evolve_heisenberg basics") {
    const ModeOperators mode = build_dirac(3, {4, 0, 0});
    CHECK(max_abs_diff(evolve_heisenberg(mode, mode.velocity[0], 0), mode.velocity[0]) <
          1e-18L);
    // H is conserved.
    CHECK(max_abs_diff(evolve_heisenberg(mode, mode.hamiltonian, 1.37L), mode.hamiltonian) <
          1e-14L);
    CHECK_THROWS_AS((void)evolve_heisenberg(mode, ComplexMatrix::identity(2), 1), ShapeError);
}

TEST_CASE("closed form equals brute force at t = pi/5 and elsewhere") {
    const ModeOperators mode = build_dirac(3, {4, 0, 0});
    for (const real t : {kPi / 5, real(0.1L)}) {
        const auto closed = velocity_closed_form(mode, t);
        for (int i = 0; i < 3; ++i) {
            CHECK(max_abs_diff(closed[i], evolve_heisenberg(mode, mode.velocity[i], t)) <
                  1e-10L);
        }
    }
}

TEST_CASE("velocity closed form: t = 0 and the full period") {
    for (const auto& mode : reference_modes()) {
        const auto v0 = velocity_closed_form(mode, 0);
        for (int i = 0; i < 3; ++i) CHECK(max_abs_diff(v0[i], mode.velocity[i]) < 1e-18L);
        // exp(-2iH pi/E) = exp(-/+ 2 pi i) = I on both sectors.
        const auto v_period = velocity_closed_form(mode, kPi / mode.energy);
        for (int i = 0; i < 3; ++i) {
            CHECK(max_abs_diff(v_period[i], mode.velocity[i]) < 1e-14L * mode.energy);
        }
    }
}

TEST_CASE("displacement closed form: t = 0, derivative, quadrature oracle") {
    const ModeOperators mode = build_dirac(3, {4, 0, 0});
    const auto at_zero = displacement_closed_form(mode, 0);
    for (int i = 0; i < 3; ++i) CHECK(max_abs(at_zero[i]) == 0);

    // d/dt at t = 0 by central difference equals v(0).
    const real h = 1e-6L;
    const auto fwd = displacement_closed_form(mode, h);
    const auto bwd = displacement_closed_form(mode, -h);
    for (int i = 0; i < 3; ++i) {
        ComplexMatrix derivative = fwd[i] - bwd[i];
        derivative *= cplx(1 / (2 * h));
        CHECK(max_abs_diff(derivative, mode.velocity[i]) < 1e-6L);
    }

    // 64-node Gauss-Legendre integral of the velocity closed form.
    CHECK(residual_displacement_quadrature(mode, 0.3L) < 1e-10L);
}

TEST_CASE("energy projectors: closed forms at special modes") {
    const auto& d = dirac_matrices();
    const ModeOperators rest = build_dirac(1, {0, 0, 0});
    const EnergyProjectors p = energy_projectors(rest);
    const ComplexMatrix id4 = ComplexMatrix::identity(4);
    CHECK(max_abs_diff(p.lambda_plus, cplx(0.5L) * (id4 + d.beta)) < 1e-17L);
    CHECK(max_abs_diff(p.lambda_minus, cplx(0.5L) * (id4 - d.beta)) < 1e-17L);

    const ModeOperators diag = build_gfv(0, {0, 2, 0}, 2);
    const EnergyProjectors pg = energy_projectors(diag);
    const ComplexMatrix id2 = ComplexMatrix::identity(2);
    CHECK(max_abs_diff(pg.lambda_plus, cplx(0.5L) * (id2 + pauli_rho().rho3)) < 1e-18L);

    const ModeOperators st = build_st(3, {0, 0, 4});
    const EnergyProjectors ps = energy_projectors(st);
    CHECK(std::abs(trace(ps.lambda_plus) - cplx(3)) < 1e-14L);
}

TEST_CASE("energy projectors satisfy their invariants and match the algebraic oracle") {
    for (const auto& mode : reference_modes()) {
        const int n = mode.dim();
        const EnergyProjectors p = energy_projectors(mode);
        const EnergyProjectors q = energy_projectors_algebraic(mode);
        CHECK(max_abs_diff(p.lambda_plus + p.lambda_minus, ComplexMatrix::identity(n)) <
              1e-12L);
        CHECK(max_abs_diff(p.lambda_plus * p.lambda_plus, p.lambda_plus) < 1e-12L);
        CHECK(max_abs(p.lambda_plus * p.lambda_minus) < 1e-12L);
        CHECK(max_abs_diff(mode.hamiltonian * p.lambda_plus,
                           cplx(mode.energy) * p.lambda_plus) < 1e-12L * mode.energy);
        CHECK(max_abs_diff(p.lambda_plus, q.lambda_plus) < 1e-12L);
        CHECK(max_abs_diff(p.lambda_minus, q.lambda_minus) < 1e-12L);
    }
}

TEST_CASE("closed form equals brute force across kinds and times") {
    for (const auto& mode : sample_modes(31, 12)) {
        for (const real t : {real(0.01L), real(0.1L), real(1), kPi / mode.energy}) {
            CHECK(residual_closed_vs_heisenberg(mode, t) < 1e-10L);
        }
    }
}

TEST_CASE("sector blocks: stationary on-sector, phase 2E off-sector") {
    for (const auto& mode : reference_modes()) {
        const EnergyProjectors p = energy_projectors(mode);
        const auto v0 = velocity_closed_form(mode, 0);
        for (const real t : {real(0.3L), real(1.9L)}) {
            const auto vt = velocity_closed_form(mode, t);
            const cplx phase = std::exp(cplx(0, -2 * mode.energy * t));
            for (int i = 0; i < 3; ++i) {
                CHECK(max_abs_diff(p.lambda_plus * vt[i] * p.lambda_plus,
                                   p.lambda_plus * v0[i] * p.lambda_plus) < 1e-12L);
                // (-,+) block carries exp(-2iEt), (+,-) its conjugate.
                CHECK(max_abs_diff(p.lambda_minus * vt[i] * p.lambda_plus,
                                   phase * (p.lambda_minus * v0[i] * p.lambda_plus)) < 1e-10L);
                CHECK(max_abs_diff(p.lambda_plus * vt[i] * p.lambda_minus,
                                   std::conj(phase) * (p.lambda_plus * v0[i] * p.lambda_minus)) <
                      1e-10L);
            }
        }
    }
}

TEST_CASE("sector basis states are metric-normalized eigenvectors") {
    for (const auto& mode : reference_modes()) {
        for (const int sector : {+1, -1}) {
            const auto basis = sector_basis(mode, sector);
            CHECK(static_cast<int>(basis.size()) == mode.dim() / 2);
            for (const auto& state : basis) {
                const std::vector<cplx> hv = mode.hamiltonian * state.components;
                const real expected = sector * mode.energy;
                for (int r = 0; r < mode.dim(); ++r) {
                    CHECK(std::abs(hv[r] - cplx(expected) * state.components[r]) <
                          1e-13L * mode.energy);
                }
                const real norm = charge_norm(state);
                const real want = (mode.kind == RepresentationKind::Dirac) ? 1 : sector;
                CHECK(std::abs(norm - want) < 1e-14L);
            }
        }
    }
}

TEST_CASE("expectation trajectories: sector states drift, mixed states tremble at 2E") {
    const ModeOperators mode = build_dirac(3, {4, 0, 0});
    const std::vector<real> times = default_time_grid(mode.energy, 256);
    CHECK(times.size() == 256);
    CHECK(std::abs(times.back() - 10 * kPi / mode.energy) < 1e-17L);

    const QuantumState plus = sector_basis(mode, +1).front();
    const Trajectory steady =
        expectation_trajectory(mode, plus, Observable::Velocity, 0, times);
    for (const cplx& sample : steady.samples) {
        CHECK(std::abs(sample - cplx(0.8L)) < 1e-12L);
    }
    // t = 0 sample is the plain expectation of v(0).
    CHECK(std::abs(steady.samples[0] - charge_expectation(plus, mode.velocity[0])) < 1e-17L);

    const QuantumState mixed = mixed_sector_state(mode, 0.5L);
    const Trajectory trembling =
        expectation_trajectory(mode, mixed, Observable::Velocity, 0, times);
    const ComplexToneFit fit =
        fit_complex_tone(times, trembling.samples, mode.energy / 2, 6 * mode.energy);
    CHECK(std::abs(fit.omega - 2 * mode.energy) / (2 * mode.energy) < 0.01L);
    CHECK(std::abs(fit.tone) > 1e-3L);
}

TEST_CASE("trajectory bookkeeping") {
    const ModeOperators mode = build_gfv(1, {0, 0, 0.5L}, 4);
    const std::vector<real> times = {0, 0.5L, 1};
    const QuantumState plus = sector_basis(mode, +1).front();
    const Trajectory traj =
        expectation_trajectory(mode, plus, Observable::Displacement, 2, times);
    CHECK(traj.samples.size() == times.size());
    CHECK(traj.observable_label == "displacement_3");
    CHECK(traj.mode_descriptor.find("GFV") != std::string::npos);
    CHECK(std::abs(traj.samples[0]) < 1e-18L);
    CHECK_THROWS_AS(
        (void)expectation_trajectory(mode, plus, Observable::Velocity, 4, times),
        ParameterError);
}
