#include "zbw/fw_transform.hpp"

#include <cmath>

#include "zbw/algebras.hpp"
#include "zbw/dynamics.hpp"
#include "zbw/errors.hpp"

namespace zbw {

namespace {

ComplexMatrix state_columns(const std::vector<QuantumState>& plus,
                            const std::vector<QuantumState>& minus, int n) {
    ComplexMatrix u(n);
    int col = 0;
    for (const auto& s : plus) {
        for (int r = 0; r < n; ++r) u(r, col) = s.components[r];
        ++col;
    }
    for (const auto& s : minus) {
        for (int r = 0; r < n; ++r) u(r, col) = s.components[r];
        ++col;
    }
    return u;
}

}  // namespace

FwTransform fw_diagonalize_spectral(const ModeOperators& mode) {
    const int n = mode.dim();
    const ComplexMatrix u = state_columns(sector_basis(mode, +1), sector_basis(mode, -1), n);
    FwTransform fw;
    fw.kind = mode.kind;
    fw.T_inv = u;
    if (mode.kind == RepresentationKind::Dirac) {
        fw.T = adjoint(u);
        fw.is_pseudo_unitary = false;
    } else {
        const ComplexMatrix metric = mode.metric();
        fw.T = metric * adjoint(u) * metric;
        fw.is_pseudo_unitary = true;
    }
    return fw;
}

FwTransform fw_diagonalize(const ModeOperators& mode) {
    if (mode.kind != RepresentationKind::Dirac) return fw_diagonalize_spectral(mode);
    // Closed-form free-particle rotation.
    const auto& d = dirac_matrices();
    const real e = mode.energy;
    const real m = mode.mass;
    const real scale = 1 / std::sqrt(2 * e * (e + m));
    ComplexMatrix t = cplx((e + m) * scale) * ComplexMatrix::identity(4);
    for (int i = 0; i < 3; ++i) {
        t += cplx(mode.momentum[i] * scale) * (d.beta * d.alpha[i]);
    }
    FwTransform fw;
    fw.kind = mode.kind;
    fw.T = t;
    fw.T_inv = adjoint(t);
    fw.is_pseudo_unitary = false;
    return fw;
}

ComplexMatrix fw_hamiltonian(const ModeOperators& mode) {
    return cplx(mode.energy) * block_sign_matrix(mode.kind);
}

std::array<ComplexMatrix, 3> fw_velocity(const ModeOperators& mode) {
    const ComplexMatrix sign = block_sign_matrix(mode.kind);
    std::array<ComplexMatrix, 3> v;
    for (int i = 0; i < 3; ++i) v[i] = cplx(mode.momentum[i] / mode.energy) * sign;
    return v;
}

ComplexMatrix transform_operator(const FwTransform& fw, const ComplexMatrix& observable) {
    if (observable.dim() != fw.T.dim()) {
        throw ShapeError("transform_operator: observable dimension does not match transform");
    }
    return fw.T * observable * fw.T_inv;
}

MeanPositionOperator mean_position_matrix(real mass, const std::array<real, 3>& momentum) {
    if (mass < real(0)) throw ParameterError("mean_position_matrix: mass must be >= 0");
    const real eps = std::sqrt(mass * mass + momentum[0] * momentum[0] +
                               momentum[1] * momentum[1] + momentum[2] * momentum[2]);
    if (!(eps > real(0))) {
        throw DegenerateModeError("mean_position_matrix: degenerate mode with E = 0");
    }
    const auto& d = dirac_matrices();
    ComplexMatrix gamma_dot_p(4);
    for (int i = 0; i < 3; ++i) gamma_dot_p += cplx(momentum[i]) * d.gamma[i];

    MeanPositionOperator x;
    x.epsilon = eps;
    const real denom = 2 * eps * (eps + mass);
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;
        const int k = (i + 2) % 3;
        // (Sigma x p)_i = Sigma_j p_k - Sigma_k p_j
        ComplexMatrix part =
            cplx(-momentum[k] / denom) * d.sigma_big[j] + cplx(momentum[j] / denom) * d.sigma_big[k];
        part += cplx(0, 1 / (2 * eps)) * d.gamma[i];
        part += cplx(0, -momentum[i] / (2 * eps * eps * (eps + mass))) * gamma_dot_p;
        x.matrix_part[i] = part;
    }
    return x;
}

std::array<ComplexMatrix, 3> mean_position_velocity(const ModeOperators& dirac_mode) {
    if (dirac_mode.kind != RepresentationKind::Dirac) {
        throw ParameterError("mean_position_velocity: defined for the Dirac representation only");
    }
    const MeanPositionOperator x = mean_position_matrix(dirac_mode.mass, dirac_mode.momentum);
    std::array<ComplexMatrix, 3> g;
    for (int i = 0; i < 3; ++i) {
        g[i] = dirac_mode.velocity[i] +
               cplx(0, 1) * commutator(dirac_mode.hamiltonian, x.matrix_part[i]);
    }
    return g;
}

}  // namespace zbw
