#include "zbw/verification.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "zbw/algebras.hpp"
#include "zbw/dynamics.hpp"
#include "zbw/errors.hpp"
#include "zbw/fitting.hpp"
#include "zbw/fw_transform.hpp"
#include "zbw/matrix_functions.hpp"
#include "zbw/wavepacket.hpp"

namespace zbw {

namespace {

std::string describe_mode(const ModeOperators& mode) {
    char buf[160];
    if (mode.gfv_parameter) {
        std::snprintf(buf, sizeof buf, "%s m=%.6g p=(%.6g,%.6g,%.6g) N=%.6g",
                      kind_name(mode.kind).c_str(), double(mode.mass), double(mode.momentum[0]),
                      double(mode.momentum[1]), double(mode.momentum[2]),
                      double(*mode.gfv_parameter));
    } else {
        std::snprintf(buf, sizeof buf, "%s m=%.6g p=(%.6g,%.6g,%.6g)",
                      kind_name(mode.kind).c_str(), double(mode.mass), double(mode.momentum[0]),
                      double(mode.momentum[1]), double(mode.momentum[2]));
    }
    return buf;
}

// Collects per-identity results; an override (when set) replaces every
// tolerance so a tampered run demonstrably fails.
class Suite {
  public:
    explicit Suite(const VerifyOptions& options) : options_(options) {}

    void record(const std::string& name, real tol, real residual, const std::string& detail) {
        if (options_.tolerance_override) tol = *options_.tolerance_override;
        results_.push_back({name, tol, residual, residual <= tol, detail});
    }

    std::vector<CheckResult> take() { return std::move(results_); }

  private:
    const VerifyOptions& options_;
    std::vector<CheckResult> results_;
};

ComplexMatrix random_matrix(SplitMix64& rng, int dim) {
    ComplexMatrix m(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            // uniform on the unit disk
            const real radius = std::sqrt(rng.uniform());
            const real angle = rng.uniform(0, 2 * kPi);
            m(r, c) = cplx(radius * std::cos(angle), radius * std::sin(angle));
        }
    return m;
}

real spectrum_residual(const ModeOperators& mode) {
    const SpectralDecomposition d = spectral(mode.hamiltonian, describe_mode(mode));
    const int n = mode.dim();
    int positive = 0;
    real worst = 0;
    for (const auto& lambda : d.eigenvalues) {
        if (lambda.real() > 0) ++positive;
        worst = std::max(worst, std::abs(std::abs(lambda.real()) - mode.energy) / mode.energy);
        worst = std::max(worst, std::abs(lambda.imag()) / mode.energy);
    }
    if (positive != n / 2) return 1;  // wrong multiplicities: hard fail
    return worst;
}

real reconstruction_residual(const ModeOperators& mode) {
    const SpectralDecomposition d = spectral(mode.hamiltonian, describe_mode(mode));
    const int n = mode.dim();
    ComplexMatrix scaled(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) scaled(r, c) = d.right_eigenvectors(r, c) * d.eigenvalues[c];
    const ComplexMatrix rebuilt = scaled * d.inverse_of_eigenvector_matrix;
    return max_abs_diff(rebuilt, mode.hamiltonian) / frobenius_norm(mode.hamiltonian);
}

real projector_residual(const ModeOperators& mode) {
    const int n = mode.dim();
    const EnergyProjectors p = energy_projectors(mode);
    const EnergyProjectors q = energy_projectors_algebraic(mode);
    real worst = max_abs_diff(p.lambda_plus + p.lambda_minus, ComplexMatrix::identity(n));
    worst = std::max(worst, max_abs_diff(p.lambda_plus * p.lambda_plus, p.lambda_plus));
    worst = std::max(worst, max_abs_diff(p.lambda_minus * p.lambda_minus, p.lambda_minus));
    worst = std::max(worst, max_abs(p.lambda_plus * p.lambda_minus));
    worst = std::max(
        worst, max_abs_diff(mode.hamiltonian * p.lambda_plus, cplx(mode.energy) * p.lambda_plus));
    worst = std::max(worst, max_abs_diff(mode.hamiltonian * p.lambda_minus,
                                         cplx(-mode.energy) * p.lambda_minus));
    // Independent algebraic oracle (I +- H/E)/2.
    worst = std::max(worst, max_abs_diff(p.lambda_plus, q.lambda_plus));
    worst = std::max(worst, max_abs_diff(p.lambda_minus, q.lambda_minus));
    return worst;
}

real acceleration_residual(const ModeOperators& mode) {
    const auto accel = acceleration(mode);
    real worst = 0;
    for (int i = 0; i < 3; ++i) {
        ComplexMatrix expected =
            cplx(0, 2) * (cplx(mode.momentum[i]) * ComplexMatrix::identity(mode.dim()) -
                          mode.velocity[i] * mode.hamiltonian);
        worst = std::max(worst, max_abs_diff(accel[i], expected));
    }
    return worst;
}

real sector_stationarity_residual(const ModeOperators& mode, real t) {
    const EnergyProjectors p = energy_projectors(mode);
    const auto v0 = velocity_closed_form(mode, 0);
    const auto vt = velocity_closed_form(mode, t);
    real worst = 0;
    for (int i = 0; i < 3; ++i) {
        worst = std::max(worst, max_abs_diff(p.lambda_plus * vt[i] * p.lambda_plus,
                                             p.lambda_plus * v0[i] * p.lambda_plus));
        worst = std::max(worst, max_abs_diff(p.lambda_minus * vt[i] * p.lambda_minus,
                                             p.lambda_minus * v0[i] * p.lambda_minus));
    }
    return worst;
}

real off_sector_phase_residual(const ModeOperators& mode, real t) {
    const EnergyProjectors p = energy_projectors(mode);
    const auto v0 = velocity_closed_form(mode, 0);
    const auto vt = velocity_closed_form(mode, t);
    // With exp(-2iHt) acting from the right, the (-,+) block carries
    // exp(-2iEt) and the (+,-) block the conjugate phase.
    const cplx phase = std::exp(cplx(0, -2 * mode.energy * t));
    real worst = 0;
    for (int i = 0; i < 3; ++i) {
        worst = std::max(worst, max_abs_diff(p.lambda_minus * vt[i] * p.lambda_plus,
                                             phase * (p.lambda_minus * v0[i] * p.lambda_plus)));
        worst = std::max(worst,
                         max_abs_diff(p.lambda_plus * vt[i] * p.lambda_minus,
                                      std::conj(phase) * (p.lambda_plus * v0[i] * p.lambda_minus)));
    }
    return worst;
}

real pseudo_hermiticity_residual(const ModeOperators& mode) {
    if (mode.kind == RepresentationKind::Dirac) {
        return max_abs_diff(adjoint(mode.hamiltonian), mode.hamiltonian);
    }
    const ComplexMatrix metric = mode.metric();
    return max_abs_diff(metric * adjoint(mode.hamiltonian) * metric, mode.hamiltonian);
}

struct FwResiduals {
    real transform_consistency = 0;  // T T^-1 = I and (pseudo)unitarity
    real diagonalization = 0;        // T H T^-1 - rho3~ E
    real velocity = 0;               // v_FW - p H_FW^-1
    real commutation = 0;            // [H_FW, v_FW]
};

FwResiduals fw_residuals(const ModeOperators& mode) {
    const int n = mode.dim();
    const FwTransform fw = fw_diagonalize(mode);
    const ComplexMatrix metric = mode.metric();
    FwResiduals out;
    out.transform_consistency = max_abs_diff(fw.T * fw.T_inv, ComplexMatrix::identity(n));
    const ComplexMatrix structural_inverse = fw.is_pseudo_unitary
                                                 ? ComplexMatrix(metric * adjoint(fw.T) * metric)
                                                 : adjoint(fw.T);
    out.transform_consistency =
        std::max(out.transform_consistency, max_abs_diff(structural_inverse, fw.T_inv));
    const ComplexMatrix h_fw = fw_hamiltonian(mode);
    out.diagonalization = max_abs_diff(fw.T * mode.hamiltonian * fw.T_inv, h_fw);
    const auto v_fw = fw_velocity(mode);
    const ComplexMatrix h_fw_inv = inverse(h_fw, "H_FW");  // independent general-inverse route
    for (int i = 0; i < 3; ++i) {
        out.velocity = std::max(out.velocity,
                                max_abs_diff(v_fw[i], cplx(mode.momentum[i]) * h_fw_inv));
        out.commutation = std::max(out.commutation, max_abs(commutator(h_fw, v_fw[i])));
    }
    return out;
}

real fw_transport_residual(const ModeOperators& mode, real t) {
    const FwTransform fw = fw_diagonalize(mode);
    const ComplexMatrix h_fw = fw_hamiltonian(mode);
    const ComplexMatrix h_fw_inv = inverse(h_fw, "H_FW");
    const int n = mode.dim();
    // exp(-2i H_FW t) in closed form (H_FW = rho3~ E).
    const ComplexMatrix phase =
        cplx(std::cos(2 * mode.energy * t)) * ComplexMatrix::identity(n) +
        cplx(0, -std::sin(2 * mode.energy * t) / mode.energy) * h_fw;
    const auto vt = velocity_closed_form(mode, t);
    const auto v0 = velocity_closed_form(mode, 0);
    real worst = 0;
    for (int i = 0; i < 3; ++i) {
        const ComplexMatrix transported_now = transform_operator(fw, vt[i]);
        const ComplexMatrix transported_then = transform_operator(fw, v0[i]);
        const ComplexMatrix drift = cplx(mode.momentum[i]) * h_fw_inv;
        const ComplexMatrix evolved_in_fw = drift + (transported_then - drift) * phase;
        worst = std::max(worst, max_abs_diff(transported_now, evolved_in_fw));
    }
    return worst;
}

real charge_form_preservation_residual(const ModeOperators& mode, SplitMix64& rng) {
    if (mode.kind == RepresentationKind::Dirac) return 0;
    const FwTransform fw = fw_diagonalize(mode);
    const ComplexMatrix metric = mode.metric();
    const int n = mode.dim();
    real worst = 0;
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<cplx> psi(n), phi(n);
        for (auto& x : psi) x = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        for (auto& x : phi) x = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        const std::vector<cplx> t_psi = fw.T * psi;
        const std::vector<cplx> t_phi = fw.T * phi;
        auto form = [&](const std::vector<cplx>& a, const std::vector<cplx>& b) {
            const std::vector<cplx> mb = metric * b;
            cplx acc(0);
            for (int i = 0; i < n; ++i) acc += std::conj(a[i]) * mb[i];
            return acc;
        };
        worst = std::max(worst, std::abs(form(t_psi, t_phi) - form(psi, phi)));
    }
    return worst;
}

}  // namespace

void gauss_legendre_unit(int nodes, std::vector<real>& xs, std::vector<real>& ws) {
    xs.resize(nodes);
    ws.resize(nodes);
    for (int i = 0; i < nodes; ++i) {
        // Newton iteration from the Chebyshev-like initial guess.
        real x = std::cos(kPi * (real(i) + 0.75L) / (real(nodes) + 0.5L));
        real dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            real p0 = 1, p1 = x;
            for (int k = 2; k <= nodes; ++k) {
                const real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = nodes * (x * p1 - p0) / (x * x - 1);
            const real step = p1 / dp;
            x -= step;
            if (std::abs(step) < real(1e-19)) break;
        }
        xs[i] = (1 - x) / 2;  // map [-1,1] -> [0,1], ascending
        ws[i] = 1 / ((1 - x * x) * dp * dp);
    }
}

real residual_velocity_anticommutator(const ModeOperators& mode) {
    const int n = mode.dim();
    real worst = 0;
    for (int i = 0; i < 3; ++i) {
        const ComplexMatrix lhs = anticommutator(mode.velocity[i], mode.hamiltonian);
        const ComplexMatrix rhs = cplx(2 * mode.momentum[i]) * ComplexMatrix::identity(n);
        worst = std::max(worst, max_abs_diff(lhs, rhs));
    }
    return worst;
}

real residual_closed_vs_heisenberg(const ModeOperators& mode, real t) {
    const auto closed = velocity_closed_form(mode, t);
    real worst = 0;
    for (int i = 0; i < 3; ++i) {
        const ComplexMatrix brute = evolve_heisenberg(mode, mode.velocity[i], t);
        worst = std::max(worst, max_abs_diff(closed[i], brute));
    }
    return worst;
}

real residual_displacement_quadrature(const ModeOperators& mode, real t, int nodes) {
    std::vector<real> xs, ws;
    gauss_legendre_unit(nodes, xs, ws);
    const int n = mode.dim();
    const auto closed = displacement_closed_form(mode, t);
    real worst = 0;
    for (int i = 0; i < 3; ++i) {
        ComplexMatrix integral(n);
        for (int q = 0; q < nodes; ++q) {
            integral += cplx(ws[q] * t) * velocity_closed_form(mode, xs[q] * t)[i];
        }
        worst = std::max(worst, max_abs_diff(closed[i], integral));
    }
    return worst;
}

std::vector<ModeOperators> sample_modes(std::uint64_t seed, int count,
                                        std::optional<RepresentationKind> filter) {
    SplitMix64 rng(seed);
    std::vector<RepresentationKind> kinds;
    if (filter) {
        kinds = {*filter};
    } else {
        kinds = {RepresentationKind::Dirac, RepresentationKind::GFV,
                 RepresentationKind::SakataTaketani};
    }
    std::vector<ModeOperators> modes;
    modes.reserve(count);
    int gfv_counter = 0;
    for (int i = 0; i < count; ++i) {
        const RepresentationKind kind = kinds[i % kinds.size()];
        const real m = 10 * (1 - rng.uniform());  // uniform on (0, 10]
        const std::array<real, 3> p{rng.uniform(-10, 10), rng.uniform(-10, 10),
                                    rng.uniform(-10, 10)};
        switch (kind) {
            case RepresentationKind::Dirac: modes.push_back(build_dirac(m, p)); break;
            case RepresentationKind::GFV: {
                const real choices[4] = {m / 2, m, 2 * m, 17};
                modes.push_back(build_gfv(m, p, choices[gfv_counter++ % 4]));
                break;
            }
            case RepresentationKind::SakataTaketani: modes.push_back(build_st(m, p)); break;
        }
    }
    return modes;
}

std::vector<ModeOperators> reference_modes() {
    std::vector<ModeOperators> modes;
    modes.push_back(build_dirac(1, {0, 0, 0}));
    modes.push_back(build_dirac(3, {4, 0, 0}));
    modes.push_back(build_dirac(0, {0, 2, 0}));
    modes.push_back(build_gfv(3, {0, 4, 0}, 17));
    modes.push_back(build_gfv(2, {1, 1, 1}, 2));   // FV special case N = m
    modes.push_back(build_gfv(0, {2, 0, 0}, 2));   // massless, N = |p|
    modes.push_back(build_st(3, {0, 0, 4}));
    modes.push_back(build_st(1, {1, 2, 3}));
    return modes;
}

VerifyReport run_verification(const VerifyOptions& options) {
    Suite suite(options);
    SplitMix64 rng(options.seed ^ 0xA5A5A5A5A5A5A5A5ULL);

    const bool explicit_mode =
        options.mass.has_value() || options.momentum.has_value() || options.gfv_parameter.has_value();

    // Build the working mode set. An explicitly configured unsupported
    // mode must throw before any check runs.
    std::vector<ModeOperators> modes;
    if (explicit_mode) {
        const RepresentationKind kind = options.kind_filter.value_or(RepresentationKind::Dirac);
        const real m = options.mass.value_or(1);
        const std::array<real, 3> p = options.momentum.value_or(std::array<real, 3>{0, 0, 0});
        switch (kind) {
            case RepresentationKind::Dirac: modes.push_back(build_dirac(m, p)); break;
            case RepresentationKind::GFV:
                modes.push_back(build_gfv(m, p, options.gfv_parameter.value_or(m > 0 ? m : 1)));
                break;
            case RepresentationKind::SakataTaketani: modes.push_back(build_st(m, p)); break;
        }
    } else {
        for (auto& mode : reference_modes()) {
            if (!options.kind_filter || mode.kind == *options.kind_filter) {
                modes.push_back(std::move(mode));
            }
        }
        for (auto& mode : sample_modes(options.seed, 18, options.kind_filter)) {
            modes.push_back(std::move(mode));
        }
    }

    // --- fixed algebras -----------------------------------------------------
    {
        const auto& d = dirac_matrices();
        const auto& rho = pauli_rho();
        const auto& spin = spin1_matrices();
        const ComplexMatrix id2 = ComplexMatrix::identity(2);
        const ComplexMatrix id3 = ComplexMatrix::identity(3);
        const ComplexMatrix id4 = ComplexMatrix::identity(4);
        real worst = 0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const ComplexMatrix expected = (i == j) ? ComplexMatrix(cplx(2) * id4)
                                                        : ComplexMatrix::zero(4);
                worst = std::max(worst, max_abs_diff(anticommutator(d.alpha[i], d.alpha[j]),
                                                     expected));
            }
            worst = std::max(worst, max_abs(anticommutator(d.alpha[i], d.beta)));
            worst = std::max(worst, max_abs_diff(d.gamma[i], d.beta * d.alpha[i]));
        }
        worst = std::max(worst, max_abs_diff(d.beta * d.beta, id4));
        const ComplexMatrix rhos[3] = {rho.rho1, rho.rho2, rho.rho3};
        for (int i = 0; i < 3; ++i) {
            worst = std::max(worst, max_abs_diff(rhos[i] * rhos[i], id2));
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            worst = std::max(worst, max_abs_diff(rhos[i] * rhos[j], cplx(0, 1) * rhos[k]));
        }
        ComplexMatrix s2(3);
        for (int i = 0; i < 3; ++i) {
            s2 += spin.S[i] * spin.S[i];
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            worst = std::max(worst, max_abs_diff(commutator(spin.S[i], spin.S[j]),
                                                 cplx(0, 1) * spin.S[k]));
        }
        worst = std::max(worst, max_abs_diff(s2, cplx(2) * id3));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    const ComplexMatrix lhs =
                        spin.S[i] * spin.S[j] * spin.S[k] + spin.S[k] * spin.S[j] * spin.S[i];
                    ComplexMatrix rhs(3);
                    if (i == j) rhs += spin.S[k];
                    if (j == k) rhs += spin.S[i];
                    worst = std::max(worst, max_abs_diff(lhs, rhs));
                }
        suite.record("algebra_identities", 1e-15L, worst,
                     "Dirac/Pauli/spin-1 defining relations, entrywise");
    }

    // --- {A,B} = [A,B] + 2BA on random matrices ------------------------------
    {
        real worst = 0;
        for (int dim : {2, 3, 4, 6}) {
            for (int trial = 0; trial < 3; ++trial) {
                const ComplexMatrix a = random_matrix(rng, dim);
                const ComplexMatrix b = random_matrix(rng, dim);
                worst = std::max(worst, max_abs_diff(anticommutator(a, b),
                                                     commutator(a, b) + cplx(2) * (b * a)));
            }
        }
        suite.record("bracket_consistency", 1e-14L, worst,
                     "{A,B} = [A,B] + 2BA, random dim 2/3/4/6");
    }

    // --- per-mode operator identities ----------------------------------------
    {
        real worst = 0;
        for (const auto& mode : modes) worst = std::max(worst, pseudo_hermiticity_residual(mode));
        suite.record("pseudo_hermiticity", 1e-14L, worst,
                     std::to_string(modes.size()) + " modes, metric rho3~");
    }
    {
        real worst = 0;
        for (const auto& mode : modes) worst = std::max(worst, spectrum_residual(mode));
        suite.record("spectrum_pm_energy", 1e-12L, worst, "relative |lambda| vs E, multiplicity");
    }
    {
        real worst = 0;
        for (const auto& mode : modes) worst = std::max(worst, reconstruction_residual(mode));
        suite.record("spectral_reconstruction", 1e-12L, worst, "V diag(lambda) V^-1 vs H, relative");
    }
    {
        real worst = 0;
        for (const auto& mode : modes)
            worst = std::max(worst, residual_velocity_anticommutator(mode));
        suite.record("velocity_anticommutator", 1e-12L, worst, "{v_i, H} = 2 p_i");
    }
    {
        real worst = 0;
        for (const auto& mode : modes) worst = std::max(worst, acceleration_residual(mode));
        suite.record("acceleration_identity", 1e-12L, worst, "i[H, v] = 2i(p - v H)");
    }
    {
        real worst = 0;
        for (const auto& mode : modes) {
            for (const real t : {real(0.01L), real(0.1L), real(1), kPi / mode.energy}) {
                worst = std::max(worst, residual_closed_vs_heisenberg(mode, t));
            }
        }
        suite.record("closed_form_vs_heisenberg", 1e-10L, worst,
                     "velocity closed form vs exp(iHt) v exp(-iHt)");
    }
    {
        real worst = 0;
        for (const auto& mode : modes) {
            worst = std::max(worst, residual_displacement_quadrature(mode, 3 / mode.energy));
            worst = std::max(worst, residual_displacement_quadrature(mode, 10 / mode.energy));
        }
        suite.record("displacement_vs_quadrature", 1e-9L, worst,
                     "closed form vs 64-node Gauss-Legendre over [0, 10/E]");
    }
    {
        real worst = 0;
        for (const auto& mode : modes) worst = std::max(worst, projector_residual(mode));
        suite.record("energy_projectors", 1e-12L, worst,
                     "completeness, idempotence, H Lambda = +-E Lambda, algebraic oracle");
    }
    {
        real worst = 0;
        for (const auto& mode : modes) {
            for (const real t : {real(0.1L), real(1), kPi / mode.energy}) {
                worst = std::max(worst, sector_stationarity_residual(mode, t));
            }
        }
        suite.record("sector_stationarity", 1e-12L, worst,
                     "Lambda_s v(t) Lambda_s is t-independent");
    }
    {
        real worst = 0;
        for (const auto& mode : modes) {
            for (const real t : {real(0.1L), real(0.7L)}) {
                worst = std::max(worst, off_sector_phase_residual(mode, t));
            }
        }
        suite.record("off_sector_phase", 1e-10L, worst,
                     "Lambda+ v(t) Lambda- carries exp(-2iEt)");
    }

    // --- matrix exponential laws ---------------------------------------------
    {
        real worst_group = 0, worst_inverse = 0;
        const cplx s(0, 0.37L), t(0, -0.79L);
        for (const auto& mode : modes) {
            const ComplexMatrix& h = mode.hamiltonian;
            worst_group = std::max(worst_group, max_abs_diff(mat_exp(h, s) * mat_exp(h, t),
                                                             mat_exp(h, s + t)));
            worst_inverse = std::max(
                worst_inverse,
                max_abs_diff(mat_exp(h, s) * mat_exp(h, -s), ComplexMatrix::identity(h.dim())));
        }
        suite.record("mat_exp_group_law", 1e-11L, worst_group, "exp(sH) exp(tH) = exp((s+t)H)");
        suite.record("mat_exp_inverse_law", 1e-12L, worst_inverse, "exp(sH) exp(-sH) = I");
    }

    // --- Foldy-Wouthuysen ------------------------------------------------------
    {
        real worst_consistency = 0, worst_diag = 0, worst_vel = 0, worst_comm = 0;
        real worst_transport = 0, worst_form = 0;
        for (const auto& mode : modes) {
            const FwResiduals r = fw_residuals(mode);
            worst_consistency = std::max(worst_consistency, r.transform_consistency);
            worst_diag = std::max(worst_diag, r.diagonalization);
            worst_vel = std::max(worst_vel, r.velocity);
            worst_comm = std::max(worst_comm, r.commutation);
            worst_transport = std::max(worst_transport, fw_transport_residual(mode, 0.7L / mode.energy));
            worst_form = std::max(worst_form, charge_form_preservation_residual(mode, rng));
        }
        suite.record("fw_transform_consistency", 1e-12L, worst_consistency,
                     "T T^-1 = I and (pseudo)unitary structure");
        suite.record("fw_diagonalization", 1e-11L, worst_diag, "T H T^-1 = rho3~ E");
        suite.record("fw_velocity", 1e-11L, worst_vel, "v_FW = p H_FW^-1");
        suite.record("fw_no_trembling", 1e-12L, worst_comm, "[H_FW, v_FW] = 0");
        suite.record("fw_transport_consistency", 1e-10L, worst_transport,
                     "T v(t) T^-1 evolves under H_FW");
        suite.record("fw_charge_form_preservation", 1e-12L, worst_form,
                     "<T psi| M |T phi> = <psi| M |phi> (GFV/ST)");
    }

    // --- Dirac closed-form FW vs spectral construction -------------------------
    if (!options.kind_filter || *options.kind_filter == RepresentationKind::Dirac) {
        real worst = 0;
        for (const auto& mode : modes) {
            if (mode.kind != RepresentationKind::Dirac) continue;
            const FwTransform closed = fw_diagonalize(mode);
            const FwTransform spectral_fw = fw_diagonalize_spectral(mode);
            worst = std::max(worst,
                             max_abs_diff(closed.T * mode.hamiltonian * closed.T_inv,
                                          spectral_fw.T * mode.hamiltonian * spectral_fw.T_inv));
        }
        suite.record("fw_dirac_closed_vs_spectral", 1e-11L, worst,
                     "both constructions reach beta E");
    }

    // --- mean position operator (Dirac) ----------------------------------------
    if (!options.kind_filter || *options.kind_filter == RepresentationKind::Dirac) {
        real worst_comm = 0, worst_sector = 0, worst_herm = 0;
        std::vector<ModeOperators> dirac_modes;
        if (explicit_mode) {
            for (const auto& mode : modes)
                if (mode.kind == RepresentationKind::Dirac) dirac_modes.push_back(mode);
        } else {
            dirac_modes = sample_modes(options.seed + 1, 20, RepresentationKind::Dirac);
        }
        for (const auto& mode : dirac_modes) {
            const auto g = mean_position_velocity(mode);
            const MeanPositionOperator x = mean_position_matrix(mode.mass, mode.momentum);
            const EnergyProjectors p = energy_projectors(mode);
            for (int i = 0; i < 3; ++i) {
                worst_comm = std::max(worst_comm, max_abs(commutator(mode.hamiltonian, g[i])));
                worst_sector = std::max(
                    worst_sector,
                    max_abs_diff(p.lambda_plus * g[i] * p.lambda_plus,
                                 cplx(mode.momentum[i] / mode.energy) * p.lambda_plus));
                worst_herm = std::max(worst_herm,
                                      max_abs_diff(adjoint(x.matrix_part[i]), x.matrix_part[i]));
            }
        }
        suite.record("mean_position_no_trembling", 1e-12L, worst_comm,
                     "[H_D, i[H_D, X_i]] = 0, " + std::to_string(dirac_modes.size()) + " modes");
        suite.record("mean_position_sector_velocity", 1e-11L, worst_sector,
                     "Lambda+ i[H_D, X_i] Lambda+ = (p_i/E) Lambda+");
        suite.record("mean_position_hermitian", 1e-14L, worst_herm,
                     "matrix part of X is Hermitian");
    }

    // --- GFV rebasing ------------------------------------------------------------
    if (!options.kind_filter || *options.kind_filter == RepresentationKind::GFV) {
        real worst_roundtrip = 0, worst_intertwine = 0, worst_traj = 0;
        const real m = 3;
        const std::array<real, 3> p{0, 4, 0};
        const real choices[4] = {m / 2, m, 2 * m, 17};
        for (const real n1 : choices) {
            for (const real n2 : choices) {
                const ComplexMatrix t12 = gfv_rebase_matrix(n1, n2);
                const ComplexMatrix t21 = gfv_rebase_matrix(n2, n1);
                worst_roundtrip = std::max(
                    worst_roundtrip, max_abs_diff(t21 * t12, ComplexMatrix::identity(2)));
                const ModeOperators mode1 = build_gfv(m, p, n1);
                const ModeOperators mode2 = build_gfv(m, p, n2);
                worst_intertwine = std::max(
                    worst_intertwine,
                    max_abs_diff(t12 * mode1.hamiltonian * t21, mode2.hamiltonian));
                // Expectation trajectories agree for rebased states.
                const QuantumState state1 = mixed_sector_state(mode1, 0.75L);
                QuantumState state2 = gfv_rebase(state1, n1, n2);
                const std::vector<real> times = default_time_grid(mode1.energy, 48);
                const Trajectory traj1 =
                    expectation_trajectory(mode1, state1, Observable::Velocity, 1, times);
                const Trajectory traj2 =
                    expectation_trajectory(mode2, state2, Observable::Velocity, 1, times);
                for (size_t k = 0; k < times.size(); ++k) {
                    worst_traj =
                        std::max(worst_traj, std::abs(traj1.samples[k] - traj2.samples[k]));
                }
            }
        }
        suite.record("gfv_rebase_roundtrip", 1e-14L, worst_roundtrip,
                     "N1 -> N2 -> N1 is the identity");
        suite.record("gfv_rebase_intertwines", 1e-11L, worst_intertwine,
                     "T H(N1) T^-1 = H(N2), N in {m/2, m, 2m, 17}");
        suite.record("gfv_trajectory_n_invariance", 1e-10L, worst_traj,
                     "expectation trajectories agree across N");
    }

    // --- expectation trajectories ---------------------------------------------
    {
        real worst_const = 0, worst_freq = 0;
        for (const auto& mode : modes) {
            // Positive-sector states move at p/E, forever.
            QuantumState plus = sector_basis(mode, +1).front();
            const std::vector<real> times = default_time_grid(mode.energy, 48);
            for (int axis = 0; axis < 3; ++axis) {
                const Trajectory traj =
                    expectation_trajectory(mode, plus, Observable::Velocity, axis, times);
                const real expected = mode.momentum[axis] / mode.energy;
                for (const cplx& sample : traj.samples) {
                    worst_const = std::max(worst_const, std::abs(sample - cplx(expected)));
                }
            }
        }
        // A mixed state oscillates at 2E: fit one battery mode per kind.
        for (const auto& mode : modes) {
            const bool battery_scale = std::abs(mode.mass - 3) < real(0.5L);
            if (!battery_scale) continue;
            int axis = 0;
            for (int i = 1; i < 3; ++i)
                if (std::abs(mode.momentum[i]) > std::abs(mode.momentum[axis])) axis = i;
            const QuantumState mixed = mixed_sector_state(
                mode, mode.kind == RepresentationKind::Dirac ? real(0.5L) : real(0.75L), axis);
            const std::vector<real> times = default_time_grid(mode.energy, 256);
            const Trajectory traj =
                expectation_trajectory(mode, mixed, Observable::Velocity, axis, times);
            const ComplexToneFit fit = fit_complex_tone(times, traj.samples, mode.energy / 2,
                                                        6 * mode.energy);
            if (std::abs(fit.tone) > real(1e-6)) {
                worst_freq = std::max(worst_freq,
                                      std::abs(fit.omega - 2 * mode.energy) / (2 * mode.energy));
            }
        }
        suite.record("trajectory_sector_constancy", 1e-12L, worst_const,
                     "positive-sector velocity fixed at p/E");
        suite.record("trajectory_oscillation_2e", 1e-2L, worst_freq,
                     "mixed-state velocity tone sits at 2E (relative)");
    }

    // --- wave packets ------------------------------------------------------------
    if (options.include_packets && !explicit_mode) {
        const std::vector<RepresentationKind> packet_kinds =
            options.kind_filter
                ? std::vector<RepresentationKind>{*options.kind_filter}
                : std::vector<RepresentationKind>{RepresentationKind::Dirac,
                                                  RepresentationKind::GFV,
                                                  RepresentationKind::SakataTaketani};
        real worst_norm = 0, worst_purity = 0, worst_drift = 0;
        for (const RepresentationKind kind : packet_kinds) {
            const std::optional<real> n_param =
                (kind == RepresentationKind::GFV) ? std::optional<real>(1) : std::nullopt;
            const WavePacket packet = gaussian_packet(kind, 1, n_param, 2, 0.3L, 0.05L, 512, 0,
                                                      Composition::PositiveOnly, 1);
            const real norm0 = packet_charge_norm(packet);
            worst_norm = std::max(worst_norm, std::abs(norm0 - 1));
            for (const real t : {real(1), real(10), real(100)}) {
                const WavePacket evolved = evolve_packet(packet, t);
                worst_norm = std::max(worst_norm, std::abs(packet_charge_norm(evolved) - norm0));
                worst_purity = std::max(worst_purity, 1 - sector_purity(evolved));
            }
            // Straight-line motion at the analytic group velocity
            // <v> = sum_k w_k p_k / E_k with charge-form weights w_k.
            std::vector<real> weights(packet.grid.n_points);
            std::vector<real> velocity_terms(packet.grid.n_points);
            for (int k = 0; k < packet.grid.n_points; ++k) {
                const ModeOperators mode = packet_mode(packet, k);
                const real w = charge_norm(packet.amplitudes[k]);
                weights[k] = w;
                velocity_terms[k] = w * packet.grid.p_values[k] / mode.energy;
            }
            real wsum = 0, vsum = 0;
            for (int k = 0; k < packet.grid.n_points; ++k) {
                wsum += weights[k];
                vsum += velocity_terms[k];
            }
            const real group_velocity = vsum / wsum;
            const real x0 = position_expectation(packet);
            for (const real t : {real(1.25L), real(2.5L), real(5)}) {
                const real x = position_expectation(evolve_packet(packet, t));
                worst_drift = std::max(worst_drift, std::abs(x - x0 - group_velocity * t));
            }
        }
        suite.record("packet_norm_conservation", 1e-11L, worst_norm,
                     "charge norm constant over t in {1,10,100}");
        suite.record("packet_sector_purity", 1e-12L, worst_purity,
                     "positive-sector content stays pure");
        suite.record("packet_drift_linearity", 1e-6L, worst_drift,
                     "<x>(t) - <x>(0) = <p/E> t over [0, 5]");

        // Trembling of the mixed Dirac reference packet at rest.
        if (!options.kind_filter || *options.kind_filter == RepresentationKind::Dirac) {
            const WavePacket mixed = gaussian_packet(RepresentationKind::Dirac, 1, std::nullopt,
                                                     2, 0, 0.05L, 512, 0, Composition::Mixed,
                                                     0.5L);
            const int samples = 192;
            std::vector<real> times(samples), xs(samples);
            for (int i = 0; i < samples; ++i) {
                times[i] = 10 * kPi * real(i) / real(samples - 1);
                xs[i] = position_expectation(evolve_packet(mixed, times[i]));
            }
            const ZbwFit fit = zbw_amplitude(times, xs);
            suite.record("packet_trembling_frequency", 1e-2L,
                         std::abs(fit.frequency - 2) / 2,
                         "mixed w+=0.5 m=1 packet oscillates at 2m (relative)");
            suite.record("packet_trembling_amplitude", 0.5L, fit.amplitude,
                         "amplitude bounded by half a Compton wavelength");
            suite.record("packet_trembling_nonvacuous", 0.5L,
                         fit.amplitude >= real(1e-3) ? real(0) : real(1),
                         "amplitude >= 1e-3/m for the reference packet");
            for (const real w : {real(0), real(1)}) {
                const WavePacket pure =
                    gaussian_packet(RepresentationKind::Dirac, 1, std::nullopt, 2, 0, 0.05L, 512,
                                    0, Composition::Mixed, w);
                std::vector<real> xs_pure(samples);
                for (int i = 0; i < samples; ++i) {
                    xs_pure[i] = position_expectation(evolve_packet(pure, times[i]));
                }
                const ZbwFit pure_fit = zbw_amplitude(times, xs_pure);
                suite.record(w == real(0) ? "packet_pure_negative_amplitude"
                                          : "packet_pure_positive_amplitude",
                             1e-8L, pure_fit.amplitude, "sector-pure packets do not tremble");
            }
        }

        // N-invariance of the GFV packet trajectory.
        if (!options.kind_filter || *options.kind_filter == RepresentationKind::GFV) {
            const WavePacket base = gaussian_packet(RepresentationKind::GFV, 1, real(1), 2, 0.3L,
                                                    0.05L, 512, 0, Composition::Mixed, 0.75L);
            const WavePacket rebased = gfv_rebase_packet(base, 17);
            real worst = 0;
            for (const real t : {real(0), real(0.8L), real(2.4L), real(5)}) {
                const real x1 = position_expectation(evolve_packet(base, t));
                const real x2 = position_expectation(evolve_packet(rebased, t));
                worst = std::max(worst, std::abs(x1 - x2));
            }
            suite.record("packet_gfv_n_invariance", 1e-8L, worst,
                         "<x>(t) of the rebased packet matches, N 1 -> 17");
        }
    }

    VerifyReport report;
    report.checks = suite.take();
    return report;
}

std::string format_report(const VerifyReport& report) {
    std::string out;
    int failures = 0;
    for (const auto& c : report.checks) {
        char line[256];
        std::snprintf(line, sizeof line, "%s  %-34s  tol %.1Le  max residual %.3Le  (%s)\n",
                      c.passed ? "PASS" : "FAIL", c.name.c_str(), c.tolerance, c.max_residual,
                      c.detail.c_str());
        out += line;
        if (!c.passed) ++failures;
    }
    char tail[96];
    std::snprintf(tail, sizeof tail, "%zu checks, %d failed\n", report.checks.size(), failures);
    out += tail;
    return out;
}

}  // namespace zbw
