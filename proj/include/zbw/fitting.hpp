#pragma once

#include <vector>

#include "zbw/types.hpp"

namespace zbw {

// Least-squares tone fits. The trembling signals here are exact two-tone
// structures (a drift plus one oscillation at 2E), so a scanned+refined
// single-frequency fit is sharper than FFT binning at these sample counts.

// x(t) = offset + drift*t + amplitude*cos(omega*t + phase)
struct DriftCosineFit {
    real offset = 0;
    real drift = 0;
    real amplitude = 0;
    real omega = 0;
    real phase = 0;
    real rms_residual = 0;
};

// For fixed omega the model is linear; omega itself is located by a grid
// scan over [omega_min, omega_max] refined by golden-section search.
DriftCosineFit fit_drift_cosine(const std::vector<real>& times, const std::vector<real>& values,
                                real omega_min, real omega_max);

// z(t) = baseline + tone * exp(-i*omega*t)
struct ComplexToneFit {
    cplx baseline{0};
    cplx tone{0};
    real omega = 0;
    real rms_residual = 0;
};

ComplexToneFit fit_complex_tone(const std::vector<real>& times, const std::vector<cplx>& values,
                                real omega_min, real omega_max);

}  // namespace zbw
