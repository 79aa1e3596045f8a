#pragma once

#include <initializer_list>
#include <vector>

#include "zbw/types.hpp"

namespace zbw {

// Dense square complex matrix, the universal operator carrier.  Everything
// this library builds lives at dim {2,3,4,6}; storage is row-major and a
// value type throughout (no views, no aliasing).
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim) : dim_(dim), data_(static_cast<size_t>(dim) * dim) {}
    ComplexMatrix(int dim, std::initializer_list<cplx> entries);

    static ComplexMatrix identity(int dim);
    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

    int dim() const { return dim_; }

    cplx& operator()(int r, int c) { return data_[static_cast<size_t>(r) * dim_ + c]; }
    const cplx& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * dim_ + c]; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cplx s);

    const std::vector<cplx>& data() const { return data_; }

  private:
    int dim_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(cplx s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, cplx s);
ComplexMatrix operator-(ComplexMatrix m);

std::vector<cplx> operator*(const ComplexMatrix& m, const std::vector<cplx>& v);

// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& m);

// Kronecker product; used for the rho (x) spin tensor structure of the
// Sakata-Taketani operators.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

cplx trace(const ComplexMatrix& m);

// Entrywise max-abs, the norm behind every "to 1e-12" statement here.
real max_abs(const ComplexMatrix& m);
real max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
real frobenius_norm(const ComplexMatrix& m);
real one_norm(const ComplexMatrix& m);

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, real tol = kOperatorTol);

// [A, B] = AB - BA. Dimension mismatch raises ShapeError.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// {A, B} = AB + BA.
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace zbw
