// Acceptance gate: nine criteria, one pass/fail line each, exit code =
// number of failures. Tolerances are fixed constants here, not knobs.
//
// Criteria 1-3 run over 50 seeded modes drawn uniformly from the supported
// box (kinds round-robin, m in (0,10], p in [-10,10]^3, GFV N cycling
// {m/2, m, 2m, 17}); 4 is the reference trembling packet; 5-7 cover the
// Foldy-Wouthuysen transforms, the mean position operator and GFV
// N-independence; 8-9 drive the CLI for the gating and determinism
// contracts.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "zbw/dynamics.hpp"
#include "zbw/errors.hpp"
#include "zbw/fitting.hpp"
#include "zbw/fw_transform.hpp"
#include "zbw/matrix_functions.hpp"
#include "zbw/verification.hpp"
#include "zbw/wavepacket.hpp"

using namespace zbw;

namespace {

constexpr std::uint64_t kSeed = 1;

int g_failures = 0;

void report(int criterion, bool passed, const std::string& text) {
    std::printf("[%d] %s %s\n", criterion, passed ? "PASS" : "FAIL", text.c_str());
    std::fflush(stdout);
    if (!passed) ++g_failures;
}

std::string residual_line(const char* label, real residual, real tolerance,
                          const std::string& detail) {
    char buf[240];
    std::snprintf(buf, sizeof buf, "%s: max residual %.3Le (tolerance %.1Le, %s)", label,
                  residual, tolerance, detail.c_str());
    return buf;
}

int run_cli(const std::string& args) {
    const std::string command = std::string(ZBW_CLI_PATH) + " " + args;
    return WEXITSTATUS(std::system(command.c_str()));
}

std::string slurp(const std::string& path) {
    std::ifstream stream(path, std::ios::binary);
    std::stringstream buffer;
    buffer << stream.rdbuf();
    return buffer.str();
}

// --- criterion 1: {v_i, H} = 2 p_i I ---------------------------------------
void criterion_anticommutator(const std::vector<ModeOperators>& modes) {
    constexpr real tol = 1e-12L;
    real worst = 0;
    for (const auto& mode : modes) {
        worst = std::max(worst, residual_velocity_anticommutator(mode));
    }
    report(1, worst <= tol,
           residual_line("anticommutator identity {v_i,H} = 2 p_i", worst, tol,
                         std::to_string(modes.size()) + " seeded modes, all axes"));
}

// --- criterion 2: closed form vs brute force --------------------------------
void criterion_closed_vs_heisenberg(const std::vector<ModeOperators>& modes) {
    constexpr real tol = 1e-10L;
    real worst = 0;
    for (const auto& mode : modes) {
        for (const real t : {real(0.01L), real(0.1L), real(1), kPi / mode.energy}) {
            worst = std::max(worst, residual_closed_vs_heisenberg(mode, t));
        }
    }
    report(2, worst <= tol,
           residual_line("velocity closed form vs Heisenberg evolution", worst, tol,
                         "t in {0.01, 0.1, 1, pi/E}"));
}

// --- criterion 3: displacement vs quadrature ---------------------------------
void criterion_displacement(const std::vector<ModeOperators>& modes) {
    constexpr real tol = 1e-9L;
    real worst = 0;
    for (const auto& mode : modes) {
        for (const real factor : {real(2.5L), real(5), real(10)}) {
            worst = std::max(worst,
                             residual_displacement_quadrature(mode, factor / mode.energy, 64));
        }
    }
    report(3, worst <= tol,
           residual_line("displacement vs 64-node Gauss-Legendre", worst, tol,
                         "t up to 10/E"));
}

// --- criterion 4: trembling frequency and sector-pure amplitudes -------------
void criterion_packet_frequency() {
    constexpr real freq_tol = 0.01L;   // 1 percent
    constexpr real amp_tol = 1e-8L;
    const int samples = 256;
    std::vector<real> times(samples);
    for (int i = 0; i < samples; ++i) times[i] = 10 * kPi * real(i) / real(samples - 1);

    auto measure = [&](real weight) {
        const WavePacket packet = gaussian_packet(RepresentationKind::Dirac, 1, std::nullopt,
                                                  2, 0, 0.05L, 1024, 0, Composition::Mixed,
                                                  weight);
        std::vector<real> xs(samples);
        for (int i = 0; i < samples; ++i) {
            xs[i] = position_expectation(evolve_packet(packet, times[i]));
        }
        return zbw_amplitude(times, xs);
    };

    const ZbwFit mixed = measure(0.5L);
    const real freq_deviation = std::abs(mixed.frequency - 2) / 2;
    const ZbwFit plus = measure(1);
    const ZbwFit minus = measure(0);
    const real pure_amplitude = std::max(plus.amplitude, minus.amplitude);
    const bool passed = freq_deviation <= freq_tol && pure_amplitude <= amp_tol;
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "trembling packet (m=1, sigma_p=0.05, w+=0.5): omega = %.6Lf (2m within "
                  "%.2Lf%%), sector-pure amplitude %.2Le (tolerance 1e-8)",
                  mixed.frequency, 100 * freq_deviation, pure_amplitude);
    report(4, passed, buf);
}

// --- criterion 5: FW elimination ----------------------------------------------
void criterion_fw() {
    constexpr real diag_tol = 1e-11L;
    constexpr real vel_tol = 1e-11L;
    constexpr real comm_tol = 1e-12L;
    std::vector<ModeOperators> modes = reference_modes();
    for (auto& mode : sample_modes(kSeed + 2, 12)) modes.push_back(std::move(mode));
    real worst_diag = 0, worst_vel = 0, worst_comm = 0;
    for (const auto& mode : modes) {
        const FwTransform fw = fw_diagonalize(mode);
        const ComplexMatrix h_fw = fw_hamiltonian(mode);
        worst_diag =
            std::max(worst_diag, max_abs_diff(fw.T * mode.hamiltonian * fw.T_inv, h_fw));
        const ComplexMatrix h_fw_inv = inverse(h_fw, "H_FW");
        for (int i = 0; i < 3; ++i) {
            const ComplexMatrix v = fw_velocity(mode)[i];
            worst_vel =
                std::max(worst_vel, max_abs_diff(v, cplx(mode.momentum[i]) * h_fw_inv));
            worst_comm = std::max(worst_comm, max_abs(commutator(h_fw, v)));
        }
    }
    const bool passed = worst_diag <= diag_tol && worst_vel <= vel_tol && worst_comm <= comm_tol;
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "FW elimination: ||T H T^-1 - H_FW|| %.2Le (1e-11), ||v_FW - p H_FW^-1|| "
                  "%.2Le (1e-11), ||[H_FW, v_FW]|| %.2Le (1e-12), %zu modes",
                  worst_diag, worst_vel, worst_comm, modes.size());
    report(5, passed, buf);
}

// --- criterion 6: mean position operator --------------------------------------
void criterion_mean_position() {
    constexpr real comm_tol = 1e-12L;
    constexpr real sector_tol = 1e-11L;
    real worst_comm = 0, worst_sector = 0;
    const auto modes = sample_modes(kSeed + 1, 20, RepresentationKind::Dirac);
    for (const auto& mode : modes) {
        const auto g = mean_position_velocity(mode);
        const EnergyProjectors p = energy_projectors(mode);
        for (int i = 0; i < 3; ++i) {
            worst_comm = std::max(worst_comm, max_abs(commutator(mode.hamiltonian, g[i])));
            worst_sector = std::max(
                worst_sector, max_abs_diff(p.lambda_plus * g[i] * p.lambda_plus,
                                           cplx(mode.momentum[i] / mode.energy) * p.lambda_plus));
        }
    }
    const bool passed = worst_comm <= comm_tol && worst_sector <= sector_tol;
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "mean position: ||[H, i[H,X]]|| %.2Le (1e-12), sector velocity residual "
                  "%.2Le (1e-11), 20 Dirac modes",
                  worst_comm, worst_sector);
    report(6, passed, buf);
}

// --- criterion 7: GFV N-independence -------------------------------------------
void criterion_gfv_n_independence() {
    constexpr real intertwine_tol = 1e-11L;
    constexpr real trajectory_tol = 1e-10L;
    real worst_intertwine = 0, worst_traj = 0;
    SplitMix64 rng(kSeed + 3);
    std::vector<std::pair<real, std::array<real, 3>>> cases = {
        {3, {0, 4, 0}},
        {rng.uniform(1, 10), {rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)}},
        {rng.uniform(1, 10), {rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)}},
    };
    for (const auto& [m, p] : cases) {
        const real choices[4] = {m / 2, m, 2 * m, 17};
        for (const real n1 : choices) {
            for (const real n2 : choices) {
                const ModeOperators mode1 = build_gfv(m, p, n1);
                const ModeOperators mode2 = build_gfv(m, p, n2);
                const ComplexMatrix t12 = gfv_rebase_matrix(n1, n2);
                const ComplexMatrix t21 = gfv_rebase_matrix(n2, n1);
                worst_intertwine = std::max(
                    worst_intertwine,
                    max_abs_diff(t12 * mode1.hamiltonian * t21, mode2.hamiltonian));
                const QuantumState state1 = mixed_sector_state(mode1, 0.75L);
                const QuantumState state2 = gfv_rebase(state1, n1, n2);
                const std::vector<real> times = default_time_grid(mode1.energy, 32);
                for (const Observable obs : {Observable::Velocity, Observable::Displacement}) {
                    const Trajectory traj1 =
                        expectation_trajectory(mode1, state1, obs, 1, times);
                    const Trajectory traj2 =
                        expectation_trajectory(mode2, state2, obs, 1, times);
                    for (size_t k = 0; k < times.size(); ++k) {
                        worst_traj = std::max(worst_traj,
                                              std::abs(traj1.samples[k] - traj2.samples[k]));
                    }
                }
            }
        }
    }
    const bool passed = worst_intertwine <= intertwine_tol && worst_traj <= trajectory_tol;
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "GFV N-independence: intertwine residual %.2Le (1e-11), trajectory "
                  "agreement %.2Le (1e-10), N in {m/2, m, 2m, 17}",
                  worst_intertwine, worst_traj);
    report(7, passed, buf);
}

// --- criterion 8: unsupported physics is rejected -------------------------------
void criterion_gating() {
    bool library_gates = false;
    try {
        (void)build_st(0, {1, 0, 0});
    } catch (const UnsupportedPhysicsError&) {
        try {
            (void)build_gfv(0, {0, 0, 0}, 1);
        } catch (const DegenerateModeError&) {
            library_gates = true;
        } catch (...) {
        }
    } catch (...) {
    }
    const int massless_st = run_cli("--command verify --kind st --mass 0 > /dev/null 2>&1");
    const int degenerate =
        run_cli("--command traj --kind gfv --mass 0 --momentum 0,0,0 --gfv-n 1 --out "
                "/tmp/zbw_acc_gate.csv > /dev/null 2>&1");
    const bool passed = library_gates && massless_st == 2 && degenerate == 2;
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "unsupported physics gating: library throws, CLI exits %d and %d "
                  "(expected 2 and 2)",
                  massless_st, degenerate);
    report(8, passed, buf);
}

// --- criterion 9: deterministic output files -------------------------------------
void criterion_determinism() {
    const std::string traj_flags =
        "--command traj --kind st --mass 3 --momentum 0,0,4 --composition mixed:0.6 "
        "--samples 64 --seed 7 --out ";
    const std::string packet_flags =
        "--command packet --kind dirac --mass 1 --p0 0.2 --sigma-p 0.05 --composition "
        "mixed:0.5 --samples 12 --grid-points 256 --seed 7 --out ";
    bool passed = true;
    passed &= run_cli(traj_flags + "/tmp/zbw_acc_traj1.csv > /dev/null 2>&1") == 0;
    passed &= run_cli(traj_flags + "/tmp/zbw_acc_traj2.csv > /dev/null 2>&1") == 0;
    passed &= run_cli(packet_flags + "/tmp/zbw_acc_packet1.csv > /dev/null 2>&1") == 0;
    passed &= run_cli(packet_flags + "/tmp/zbw_acc_packet2.csv > /dev/null 2>&1") == 0;
    const bool traj_same = slurp("/tmp/zbw_acc_traj1.csv") == slurp("/tmp/zbw_acc_traj2.csv") &&
                           !slurp("/tmp/zbw_acc_traj1.csv").empty();
    const bool packet_same =
        slurp("/tmp/zbw_acc_packet1.csv") == slurp("/tmp/zbw_acc_packet2.csv") &&
        !slurp("/tmp/zbw_acc_packet1.csv").empty();
    passed = passed && traj_same && packet_same;
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "determinism: traj byte-identical %s, packet byte-identical %s",
                  traj_same ? "yes" : "no", packet_same ? "yes" : "no");
    report(9, passed, buf);
}

}  // namespace

int main() {
    const std::vector<ModeOperators> modes = sample_modes(kSeed, 50);
    criterion_anticommutator(modes);
    criterion_closed_vs_heisenberg(modes);
    criterion_displacement(modes);
    criterion_packet_frequency();
    criterion_fw();
    criterion_mean_position();
    criterion_gfv_n_independence();
    criterion_gating();
    criterion_determinism();
    std::printf("%d/9 criteria passed\n", 9 - g_failures);
    return g_failures;
}
