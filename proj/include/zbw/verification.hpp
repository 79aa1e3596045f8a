#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zbw/representations.hpp"

namespace zbw {

// Runnable identity suites: every operator relation the library rests on,
// with its tolerance pinned, evaluated over a seeded mode set.  This backs
// the `verify` CLI command and the acceptance checks.

struct CheckResult {
    std::string name;
    real tolerance = 0;
    real max_residual = 0;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    // Replaces every per-identity tolerance when set (non-vacuity probe).
    std::optional<real> tolerance_override;
    std::optional<RepresentationKind> kind_filter;
    // Explicit mode from the command line; checked first, so unsupported
    // physics (massless Sakata-Taketani, E = 0) surfaces as an error
    // before any suite runs.
    std::optional<real> mass;
    std::optional<std::array<real, 3>> momentum;
    std::optional<real> gfv_parameter;
    bool include_packets = true;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

VerifyReport run_verification(const VerifyOptions& options);

std::string format_report(const VerifyReport& report);

// Deterministic xorshift-free sampler used by verify and acceptance:
// kinds round-robin (subject to the filter), m uniform on (0, 10],
// momentum uniform on [-10, 10]^3, GFV N cycling {m/2, m, 2m, 17}.
std::vector<ModeOperators> sample_modes(std::uint64_t seed, int count,
                                        std::optional<RepresentationKind> filter = std::nullopt);

// Representative fixed battery (one Dirac rest mode, desk-scale modes of
// every kind, a massless GFV mode, the FV special case N = m).
std::vector<ModeOperators> reference_modes();

// Residuals reused by the acceptance suite.
real residual_velocity_anticommutator(const ModeOperators& mode);
real residual_closed_vs_heisenberg(const ModeOperators& mode, real t);
real residual_displacement_quadrature(const ModeOperators& mode, real t, int nodes = 64);

// 64-node Gauss-Legendre nodes/weights on [0, 1], used as the independent
// quadrature oracle for the displacement closed form.
void gauss_legendre_unit(int nodes, std::vector<real>& xs, std::vector<real>& ws);

// Minimal deterministic RNG (splitmix64) so seeded output is identical
// across standard libraries.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    // Uniform on [0, 1).
    real uniform() { return real(next() >> 11) / real(9007199254740992.0L); }
    real uniform(real lo, real hi) { return lo + (hi - lo) * uniform(); }

  private:
    std::uint64_t state_;
};

}  // namespace zbw
