#include "zbw/representations.hpp"

#include <cmath>

#include "zbw/algebras.hpp"
#include "zbw/errors.hpp"

namespace zbw {

namespace {

real energy_of(real mass, const std::array<real, 3>& p) {
    return std::sqrt(mass * mass + p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
}

void require_nondegenerate(real energy, const std::string& what) {
    if (!(energy > real(0))) {
        throw DegenerateModeError(what + ": degenerate mode with E = 0 (m = 0 and p = 0); "
                                         "the Hamiltonian is singular");
    }
}

ComplexMatrix metric_2() { return pauli_rho().rho3; }

ComplexMatrix metric_6() { return kron(pauli_rho().rho3, ComplexMatrix::identity(3)); }

}  // namespace

int dimension_of(RepresentationKind kind) {
    switch (kind) {
        case RepresentationKind::Dirac: return 4;
        case RepresentationKind::GFV: return 2;
        case RepresentationKind::SakataTaketani: return 6;
    }
    return 0;
}

std::string kind_name(RepresentationKind kind) {
    switch (kind) {
        case RepresentationKind::Dirac: return "Dirac";
        case RepresentationKind::GFV: return "GFV";
        case RepresentationKind::SakataTaketani: return "SakataTaketani";
    }
    return "?";
}

ComplexMatrix metric_matrix(RepresentationKind kind) {
    switch (kind) {
        case RepresentationKind::Dirac: return ComplexMatrix::identity(4);
        case RepresentationKind::GFV: return metric_2();
        case RepresentationKind::SakataTaketani: return metric_6();
    }
    return {};
}

ComplexMatrix block_sign_matrix(RepresentationKind kind) {
    if (kind == RepresentationKind::Dirac) return dirac_matrices().beta;
    return metric_matrix(kind);
}

ModeOperators build_dirac(real mass, const std::array<real, 3>& momentum) {
    if (mass < real(0)) throw ParameterError("build_dirac: mass must be >= 0");
    const real energy = energy_of(mass, momentum);
    require_nondegenerate(energy, "build_dirac");
    const auto& d = dirac_matrices();
    ModeOperators mode;
    mode.kind = RepresentationKind::Dirac;
    mode.mass = mass;
    mode.momentum = momentum;
    mode.energy = energy;
    mode.hamiltonian = cplx(mass) * d.beta;
    for (int i = 0; i < 3; ++i) {
        mode.hamiltonian += cplx(momentum[i]) * d.alpha[i];
        mode.velocity[i] = d.alpha[i];
    }
    return mode;
}

ModeOperators build_gfv(real mass, const std::array<real, 3>& momentum, real n_parameter) {
    if (mass < real(0)) throw ParameterError("build_gfv: mass must be >= 0");
    if (!(n_parameter > real(0))) {
        throw ParameterError("build_gfv: the representation parameter N must be positive");
    }
    const real energy = energy_of(mass, momentum);
    require_nondegenerate(energy, "build_gfv");
    const auto& rho = pauli_rho();
    const ComplexMatrix i_rho2 = cplx(0, 1) * rho.rho2;
    const real s = energy * energy;  // p^2 + m^2
    ModeOperators mode;
    mode.kind = RepresentationKind::GFV;
    mode.mass = mass;
    mode.momentum = momentum;
    mode.gfv_parameter = n_parameter;
    mode.energy = energy;
    mode.hamiltonian = cplx((s + n_parameter * n_parameter) / (2 * n_parameter)) * rho.rho3 +
                       cplx((s - n_parameter * n_parameter) / (2 * n_parameter)) * i_rho2;
    const ComplexMatrix k = rho.rho3 + i_rho2;
    for (int i = 0; i < 3; ++i) mode.velocity[i] = cplx(momentum[i] / n_parameter) * k;
    return mode;
}

ModeOperators build_st(real mass, const std::array<real, 3>& momentum) {
    if (!(mass > real(0))) {
        throw UnsupportedPhysicsError(
            "build_st: the Sakata-Taketani representation cannot be carried out for a "
            "massless spin-1 particle");
    }
    const real energy = energy_of(mass, momentum);
    const auto& rho = pauli_rho();
    const auto& spin = spin1_matrices();
    const ComplexMatrix i3 = ComplexMatrix::identity(3);
    const ComplexMatrix i_rho2 = cplx(0, 1) * rho.rho2;
    const real p2 = momentum[0] * momentum[0] + momentum[1] * momentum[1] +
                    momentum[2] * momentum[2];

    ComplexMatrix spin_dot_p(3);
    for (int i = 0; i < 3; ++i) spin_dot_p += cplx(momentum[i]) * spin.S[i];
    const ComplexMatrix sp2 = spin_dot_p * spin_dot_p;

    ModeOperators mode;
    mode.kind = RepresentationKind::SakataTaketani;
    mode.mass = mass;
    mode.momentum = momentum;
    mode.energy = energy;
    mode.hamiltonian = kron(rho.rho3, cplx(mass) * i3 + cplx(p2 / (2 * mass)) * i3) -
                       kron(i_rho2, cplx(1 / mass) * sp2 - cplx(p2 / (2 * mass)) * i3);
    // v_i = dH/dp_i: the (S.p)^2 term differentiates to {S_i, S.p}.
    for (int i = 0; i < 3; ++i) {
        const ComplexMatrix brace = anticommutator(spin.S[i], spin_dot_p);
        mode.velocity[i] = kron(rho.rho3, cplx(momentum[i] / mass) * i3) -
                           kron(i_rho2, cplx(1 / mass) * brace - cplx(momentum[i] / mass) * i3);
    }
    return mode;
}

QuantumState make_state(RepresentationKind kind, std::vector<cplx> components) {
    if (components.size() != static_cast<size_t>(dimension_of(kind))) {
        throw ShapeError("make_state: component count does not match representation");
    }
    QuantumState state;
    state.components = std::move(components);
    state.metric = (kind == RepresentationKind::Dirac) ? Metric::Euclidean : Metric::ChargeForm;
    return state;
}

QuantumState gfv_split(cplx psi, cplx i_psi_dot, real n_parameter) {
    if (!(n_parameter > real(0))) {
        throw ParameterError("gfv_split: the representation parameter N must be positive");
    }
    const cplx scaled = i_psi_dot / n_parameter;
    QuantumState state;
    state.components = {(psi + scaled) / real(2), (psi - scaled) / real(2)};
    state.metric = Metric::ChargeForm;
    return state;
}

ComplexMatrix gfv_rebase_matrix(real n_from, real n_to) {
    if (!(n_from > real(0)) || !(n_to > real(0))) {
        throw ParameterError("gfv_rebase: the representation parameter N must be positive");
    }
    // split(N2) . unsplit(N1): unsplit recovers psi = phi + chi and
    // i psi_dot = N1 (phi - chi).
    const real ratio = n_from / n_to;
    ComplexMatrix t(2);
    t(0, 0) = cplx((1 + ratio) / 2);
    t(0, 1) = cplx((1 - ratio) / 2);
    t(1, 0) = cplx((1 - ratio) / 2);
    t(1, 1) = cplx((1 + ratio) / 2);
    return t;
}

QuantumState gfv_rebase(const QuantumState& state, real n_from, real n_to) {
    if (state.dim() != 2) throw ShapeError("gfv_rebase: expected a 2-component state");
    const ComplexMatrix t = gfv_rebase_matrix(n_from, n_to);
    QuantumState out;
    out.components = t * state.components;
    out.metric = state.metric;
    return out;
}

real charge_norm(const QuantumState& state) {
    const int n = state.dim();
    real norm = 0;
    if (state.metric == Metric::Euclidean) {
        for (const auto& c : state.components) norm += std::norm(c);
        return norm;
    }
    // rho3-form metric: +1 on the upper half, -1 on the lower half.
    for (int i = 0; i < n; ++i) {
        norm += (i < n / 2 ? real(1) : real(-1)) * std::norm(state.components[i]);
    }
    return norm;
}

cplx charge_expectation(const QuantumState& state, const ComplexMatrix& observable) {
    if (observable.dim() != state.dim()) {
        throw ShapeError("charge_expectation: state and observable dimensions differ");
    }
    const real norm = charge_norm(state);
    if (std::abs(norm) < real(1e-14)) {
        throw NullNormError(
            "charge_expectation: state has null charge-form norm; expectations are undefined");
    }
    const int n = state.dim();
    const std::vector<cplx> mapped = observable * state.components;
    cplx acc(0);
    for (int i = 0; i < n; ++i) {
        const real sign =
            (state.metric == Metric::Euclidean || i < n / 2) ? real(1) : real(-1);
        acc += sign * std::conj(state.components[i]) * mapped[i];
    }
    return acc / norm;
}

}  // namespace zbw
