#pragma once

#include <array>
#include <vector>

#include "zbw/complex_matrix.hpp"
#include "zbw/representations.hpp"

// Shared helpers for the unit suites. Oracles here are deliberately
// independent of the library paths they check (finite differences,
// quadrature, direct summation).

namespace zbw::test {

inline ComplexMatrix from_rows(int dim, std::initializer_list<cplx> entries) {
    return ComplexMatrix(dim, entries);
}

// Central finite-difference dH/dp_i, the independent oracle for the
// analytic velocity operators.
template <typename Builder>
ComplexMatrix finite_difference_velocity(Builder&& build, real mass,
                                         std::array<real, 3> momentum, int axis,
                                         real step = 1e-5L) {
    std::array<real, 3> up = momentum, down = momentum;
    up[axis] += step;
    down[axis] -= step;
    const ComplexMatrix h_up = build(mass, up).hamiltonian;
    const ComplexMatrix h_down = build(mass, down).hamiltonian;
    ComplexMatrix diff = h_up - h_down;
    diff *= cplx(1 / (2 * step));
    return diff;
}

}  // namespace zbw::test
