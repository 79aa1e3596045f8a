#include "zbw/algebras.hpp"

namespace zbw {

namespace {

const cplx O(0), U(1), I(0, 1);

ComplexMatrix sigma(int i) {
    switch (i) {
        case 0: return ComplexMatrix(2, {O, U, U, O});
        case 1: return ComplexMatrix(2, {O, -I, I, O});
        default: return ComplexMatrix(2, {U, O, O, -U});
    }
}

DiracAlgebra build_dirac_algebra() {
    DiracAlgebra d;
    d.beta = ComplexMatrix(4, {U, O, O, O,  //
                               O, U, O, O,  //
                               O, O, -U, O,  //
                               O, O, O, -U});
    for (int i = 0; i < 3; ++i) {
        const ComplexMatrix s = sigma(i);
        ComplexMatrix a(4);
        ComplexMatrix big(4);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                a(r, c + 2) = s(r, c);
                a(r + 2, c) = s(r, c);
                big(r, c) = s(r, c);
                big(r + 2, c + 2) = s(r, c);
            }
        d.alpha[i] = a;
        d.sigma_big[i] = big;
        d.gamma[i] = d.beta * a;
    }
    return d;
}

PauliRho build_pauli_rho() { return PauliRho{sigma(0), sigma(1), sigma(2)}; }

SpinOneMatrices build_spin1() {
    SpinOneMatrices s;
    s.S[0] = ComplexMatrix(3, {O, O, O,  //
                               O, O, -I,  //
                               O, I, O});
    s.S[1] = ComplexMatrix(3, {O, O, I,  //
                               O, O, O,  //
                               -I, O, O});
    s.S[2] = ComplexMatrix(3, {O, -I, O,  //
                               I, O, O,  //
                               O, O, O});
    return s;
}

}  // namespace

const DiracAlgebra& dirac_matrices() {
    static const DiracAlgebra d = build_dirac_algebra();
    return d;
}

const PauliRho& pauli_rho() {
    static const PauliRho p = build_pauli_rho();
    return p;
}

const SpinOneMatrices& spin1_matrices() {
    static const SpinOneMatrices s = build_spin1();
    return s;
}

}  // namespace zbw
