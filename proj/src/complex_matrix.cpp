#include "zbw/complex_matrix.hpp"

#include <cmath>

#include "zbw/errors.hpp"

namespace zbw {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim() != b.dim()) {
        throw ShapeError(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()) + ")");
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(int dim, std::initializer_list<cplx> entries)
    : dim_(dim), data_(entries) {
    if (data_.size() != static_cast<size_t>(dim) * dim) {
        throw ShapeError("ComplexMatrix: initializer has " + std::to_string(data_.size()) +
                         " entries, expected " + std::to_string(dim * dim));
    }
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = cplx(1);
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs, "operator+=");
    for (size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs, "operator-=");
    for (size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& x : data_) x *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    require_same_dim(lhs, rhs, "operator*");
    const int n = lhs.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const cplx a = lhs(i, k);
            if (a == cplx(0)) continue;
            for (int j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

ComplexMatrix operator*(cplx s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(ComplexMatrix m, cplx s) { return m *= s; }
ComplexMatrix operator-(ComplexMatrix m) { return m *= cplx(-1); }

std::vector<cplx> operator*(const ComplexMatrix& m, const std::vector<cplx>& v) {
    if (v.size() != static_cast<size_t>(m.dim())) {
        throw ShapeError("matrix-vector product: dimension mismatch");
    }
    const int n = m.dim();
    std::vector<cplx> out(n);
    for (int i = 0; i < n; ++i) {
        cplx acc(0);
        for (int j = 0; j < n; ++j) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    const int n = m.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = std::conj(m(j, i));
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int na = a.dim();
    const int nb = b.dim();
    ComplexMatrix out(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            const cplx s = a(i, j);
            if (s == cplx(0)) continue;
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = s * b(k, l);
        }
    return out;
}

cplx trace(const ComplexMatrix& m) {
    cplx t(0);
    for (int i = 0; i < m.dim(); ++i) t += m(i, i);
    return t;
}

real max_abs(const ComplexMatrix& m) {
    real best = 0;
    for (const auto& x : m.data()) best = std::max(best, std::abs(x));
    return best;
}

real max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "max_abs_diff");
    real best = 0;
    for (size_t i = 0; i < a.data().size(); ++i)
        best = std::max(best, std::abs(a.data()[i] - b.data()[i]));
    return best;
}

real frobenius_norm(const ComplexMatrix& m) {
    real sum = 0;
    for (const auto& x : m.data()) sum += std::norm(x);
    return std::sqrt(sum);
}

real one_norm(const ComplexMatrix& m) {
    real best = 0;
    for (int j = 0; j < m.dim(); ++j) {
        real col = 0;
        for (int i = 0; i < m.dim(); ++i) col += std::abs(m(i, j));
        best = std::max(best, col);
    }
    return best;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, real tol) {
    return a.dim() == b.dim() && max_abs_diff(a, b) <= tol;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "commutator");
    return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "anticommutator");
    return a * b + b * a;
}

}  // namespace zbw
