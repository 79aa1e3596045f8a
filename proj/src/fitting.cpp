#include "zbw/fitting.hpp"

#include <cmath>
#include <functional>

#include "zbw/errors.hpp"

namespace zbw {

namespace {

void require_fit_input(size_t n_times, size_t n_values) {
    if (n_times != n_values || n_times < 8) {
        throw ParameterError("tone fit: need matching time/value arrays with >= 8 samples");
    }
}

// Solve the small SPD normal system A x = b in place (Gaussian elimination
// with partial pivoting; k <= 4).
void solve_normal(std::vector<std::vector<real>>& a, std::vector<real>& b) {
    const int k = static_cast<int>(b.size());
    for (int col = 0; col < k; ++col) {
        int pivot = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        const real d = a[col][col];
        if (d == real(0)) throw FitError("tone fit: singular normal equations");
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            const real f = a[r][col] / d;
            if (f == real(0)) continue;
            for (int c = col; c < k; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (int i = 0; i < k; ++i) b[i] /= a[i][i];
}

// Golden-section minimization of a unimodal-enough residual profile.
real golden_minimize(const std::function<real(real)>& f, real lo, real hi) {
    const real inv_phi = 0.6180339887498948482L;
    real a = lo, b = hi;
    real c = b - inv_phi * (b - a);
    real d = a + inv_phi * (b - a);
    real fc = f(c), fd = f(d);
    for (int iter = 0; iter < 200 && (b - a) > real(1e-13) * std::max(std::abs(a), real(1)); ++iter) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return (a + b) / 2;
}

}  // namespace

DriftCosineFit fit_drift_cosine(const std::vector<real>& times, const std::vector<real>& values,
                                real omega_min, real omega_max) {
    require_fit_input(times.size(), values.size());
    if (!(omega_min > real(0)) || !(omega_max > omega_min)) {
        throw ParameterError("fit_drift_cosine: need 0 < omega_min < omega_max");
    }
    const size_t n = times.size();

    // Linear subproblem at fixed omega: columns {1, t, cos wt, sin wt}.
    auto solve_at = [&](real omega, real coeff[4]) {
        std::vector<std::vector<real>> a(4, std::vector<real>(4, 0));
        std::vector<real> b(4, 0);
        for (size_t i = 0; i < n; ++i) {
            const real col[4] = {1, times[i], std::cos(omega * times[i]),
                                 std::sin(omega * times[i])};
            for (int r = 0; r < 4; ++r) {
                b[r] += col[r] * values[i];
                for (int c = r; c < 4; ++c) a[r][c] += col[r] * col[c];
            }
        }
        for (int r = 1; r < 4; ++r)
            for (int c = 0; c < r; ++c) a[r][c] = a[c][r];
        solve_normal(a, b);
        real ss = 0;
        for (size_t i = 0; i < n; ++i) {
            const real model = b[0] + b[1] * times[i] + b[2] * std::cos(omega * times[i]) +
                               b[3] * std::sin(omega * times[i]);
            const real r = values[i] - model;
            ss += r * r;
        }
        for (int k = 0; k < 4; ++k) coeff[k] = b[k];
        return std::sqrt(ss / real(n));
    };

    auto residual_at = [&](real omega) {
        real coeff[4];
        return solve_at(omega, coeff);
    };

    // Coarse scan, then golden refinement around the best cell.
    const int n_scan = 600;
    real best_omega = omega_min;
    real best_res = residual_at(omega_min);
    for (int i = 1; i <= n_scan; ++i) {
        const real w = omega_min + (omega_max - omega_min) * real(i) / real(n_scan);
        const real r = residual_at(w);
        if (r < best_res) {
            best_res = r;
            best_omega = w;
        }
    }
    const real cell = (omega_max - omega_min) / real(n_scan);
    const real lo = std::max(omega_min, best_omega - cell);
    const real hi = std::min(omega_max, best_omega + cell);
    const real omega = golden_minimize(residual_at, lo, hi);

    real coeff[4];
    const real rms = solve_at(omega, coeff);
    if (!std::isfinite(static_cast<double>(rms))) {
        throw FitError("fit_drift_cosine: non-convergent fit, residual is not finite");
    }
    DriftCosineFit fit;
    fit.offset = coeff[0];
    fit.drift = coeff[1];
    fit.amplitude = std::hypot(coeff[2], coeff[3]);
    fit.omega = omega;
    fit.phase = std::atan2(-coeff[3], coeff[2]);
    fit.rms_residual = rms;
    return fit;
}

ComplexToneFit fit_complex_tone(const std::vector<real>& times, const std::vector<cplx>& values,
                                real omega_min, real omega_max) {
    require_fit_input(times.size(), values.size());
    if (!(omega_min > real(0)) || !(omega_max > omega_min)) {
        throw ParameterError("fit_complex_tone: need 0 < omega_min < omega_max");
    }
    const size_t n = times.size();

    // z = a + b u with u = exp(-i w t); 2x2 complex normal equations.
    auto solve_at = [&](real omega, cplx& a_out, cplx& b_out) {
        cplx su(0), sz(0), suz(0);
        for (size_t i = 0; i < n; ++i) {
            const cplx u = std::exp(cplx(0, -omega * times[i]));
            su += u;
            sz += values[i];
            suz += std::conj(u) * values[i];
        }
        const cplx nn(static_cast<real>(n));
        // [[n, su], [conj(su), n]] [a, b]^T = [sz, suz]^T
        const cplx det = nn * nn - su * std::conj(su);
        if (std::abs(det) == real(0)) throw FitError("fit_complex_tone: singular normal equations");
        a_out = (nn * sz - su * suz) / det;
        b_out = (nn * suz - std::conj(su) * sz) / det;
        real ss = 0;
        for (size_t i = 0; i < n; ++i) {
            const cplx u = std::exp(cplx(0, -omega * times[i]));
            ss += std::norm(values[i] - a_out - b_out * u);
        }
        return std::sqrt(ss / real(n));
    };

    auto residual_at = [&](real omega) {
        cplx a, b;
        return solve_at(omega, a, b);
    };

    const int n_scan = 600;
    real best_omega = omega_min;
    real best_res = residual_at(omega_min);
    for (int i = 1; i <= n_scan; ++i) {
        const real w = omega_min + (omega_max - omega_min) * real(i) / real(n_scan);
        const real r = residual_at(w);
        if (r < best_res) {
            best_res = r;
            best_omega = w;
        }
    }
    const real cell = (omega_max - omega_min) / real(n_scan);
    const real omega = golden_minimize(residual_at, std::max(omega_min, best_omega - cell),
                                       std::min(omega_max, best_omega + cell));
    ComplexToneFit fit;
    fit.omega = omega;
    fit.rms_residual = solve_at(omega, fit.baseline, fit.tone);
    if (!std::isfinite(static_cast<double>(fit.rms_residual))) {
        throw FitError("fit_complex_tone: non-convergent fit, residual is not finite");
    }
    return fit;
}

}  // namespace zbw
