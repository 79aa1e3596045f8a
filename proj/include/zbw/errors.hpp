#pragma once

#include <stdexcept>
#include <string>

namespace zbw {

// Error taxonomy. The C API maps these onto its status codes:
//   UnsupportedPhysicsError / DegenerateModeError -> unsupported physics
//   ShapeError / ParameterError / IoError         -> invalid input
//   everything else                               -> internal failure
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Matrix/vector dimension mismatch.
struct ShapeError : Error {
    using Error::Error;
};

// Parameter outside its documented domain (N <= 0, sigma_p <= 0, ...).
struct ParameterError : Error {
    using Error::Error;
};

// Mode with E = 0: the Hamiltonian is singular and the closed-form
// dynamics divide by it.
struct DegenerateModeError : Error {
    using Error::Error;
};

// Physics the representation does not define (massless Sakata-Taketani).
struct UnsupportedPhysicsError : Error {
    using Error::Error;
};

// Spectral basis condition estimate above the acceptance threshold.
struct IllConditionedError : Error {
    using Error::Error;
};

// Charge-form norm of a state vanished; expectations are undefined.
struct NullNormError : Error {
    using Error::Error;
};

// Least-squares tone fit failed to converge; message carries residuals.
struct FitError : Error {
    using Error::Error;
};

}  // namespace zbw
