#include "zbw/matrix_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "zbw/errors.hpp"

namespace zbw {

namespace {

constexpr real kEps = std::numeric_limits<real>::epsilon();

// Unitary 2x2 rotation G = (1/r)[[conj(a), conj(b)], [-b, a]] sending
// (a, b) to (r, 0).
struct Givens {
    int k = 0;
    cplx c{1}, s{0};  // top row entries conj(a)/r, conj(b)/r
};

Givens make_givens(int k, cplx a, cplx b) {
    const real r = std::hypot(std::abs(a), std::abs(b));
    if (r == real(0)) return Givens{k, cplx(1), cplx(0)};
    return Givens{k, std::conj(a) / r, std::conj(b) / r};
}

// rows (k, k+1) <- G * rows
void apply_rows(ComplexMatrix& m, const Givens& g) {
    const int n = m.dim();
    for (int j = 0; j < n; ++j) {
        const cplx x = m(g.k, j), y = m(g.k + 1, j);
        m(g.k, j) = g.c * x + g.s * y;
        m(g.k + 1, j) = -std::conj(g.s) * x + std::conj(g.c) * y;
    }
}

// cols (k, k+1) <- cols * G^dagger
void apply_cols(ComplexMatrix& m, const Givens& g) {
    const int n = m.dim();
    for (int i = 0; i < n; ++i) {
        const cplx x = m(i, g.k), y = m(i, g.k + 1);
        m(i, g.k) = x * std::conj(g.c) + y * std::conj(g.s);
        m(i, g.k + 1) = -x * g.s + y * g.c;
    }
}

// Householder reduction to upper Hessenberg, accumulating the unitary Q
// with A = Q H Q^dagger.
void hessenberg(ComplexMatrix& h, ComplexMatrix& q) {
    const int n = h.dim();
    q = ComplexMatrix::identity(n);
    for (int k = 0; k + 2 < n; ++k) {
        std::vector<cplx> u(n - k - 1);
        real norm2 = 0;
        for (int i = k + 1; i < n; ++i) {
            u[i - k - 1] = h(i, k);
            norm2 += std::norm(h(i, k));
        }
        const real norm = std::sqrt(norm2);
        if (norm == real(0)) continue;
        const cplx x0 = u[0];
        const cplx phase = (x0 == cplx(0)) ? cplx(1) : x0 / std::abs(x0);
        u[0] += phase * norm;
        real unorm2 = 0;
        for (const auto& v : u) unorm2 += std::norm(v);
        if (unorm2 == real(0)) continue;
        // P = I - 2 u u^dagger / (u^dagger u), applied on rows k+1.. and
        // the matching columns; accumulated into q from the right.
        const real beta = real(2) / unorm2;
        for (int j = 0; j < n; ++j) {  // rows
            cplx dot(0);
            for (int i = k + 1; i < n; ++i) dot += std::conj(u[i - k - 1]) * h(i, j);
            dot *= beta;
            for (int i = k + 1; i < n; ++i) h(i, j) -= u[i - k - 1] * dot;
        }
        for (int i = 0; i < n; ++i) {  // columns
            cplx dot(0);
            for (int j = k + 1; j < n; ++j) dot += h(i, j) * u[j - k - 1];
            dot *= beta;
            for (int j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(u[j - k - 1]);
        }
        for (int i = 0; i < n; ++i) {  // q <- q * P
            cplx dot(0);
            for (int j = k + 1; j < n; ++j) dot += q(i, j) * u[j - k - 1];
            dot *= beta;
            for (int j = k + 1; j < n; ++j) q(i, j) -= dot * std::conj(u[j - k - 1]);
        }
    }
}

cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
    // Eigenvalue of [[a, b], [c, d]] closest to d.
    const cplx tr = a + d;
    const cplx disc = std::sqrt((a - d) * (a - d) + real(4) * b * c);
    const cplx l1 = (tr + disc) / real(2);
    const cplx l2 = (tr - disc) / real(2);
    return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

// Shifted QR on the Hessenberg matrix, reducing it to upper triangular
// (complex Schur) form while accumulating the similarity into q.
void schur(ComplexMatrix& t, ComplexMatrix& q, std::string_view label) {
    const int n = t.dim();
    const real anorm = std::max(frobenius_norm(t), kEps);
    int hi = n - 1;
    int iterations = 0;
    const int max_iterations = 60 * n;
    while (hi > 0) {
        // Deflate converged subdiagonals.
        int lo = hi;
        while (lo > 0) {
            const real sub = std::abs(t(lo, lo - 1));
            const real scale = std::abs(t(lo - 1, lo - 1)) + std::abs(t(lo, lo));
            if (sub <= kEps * (scale > real(0) ? scale : anorm)) {
                t(lo, lo - 1) = cplx(0);
                break;
            }
            --lo;
        }
        if (lo == hi) {
            --hi;
            continue;
        }
        if (++iterations > max_iterations) {
            throw IllConditionedError("spectral: QR iteration failed to converge for " +
                                      std::string(label));
        }
        cplx mu = wilkinson_shift(t(hi - 1, hi - 1), t(hi - 1, hi), t(hi, hi - 1), t(hi, hi));
        if (iterations % 20 == 0) {
            // Exceptional shift to break rare cycling.
            mu = t(hi, hi) + std::abs(t(hi, hi - 1));
        }
        // Explicit shifted QR step on the active block [lo..hi]:
        // rotations are computed on a shifted scratch copy, then applied
        // as a similarity to t and accumulated into q.
        ComplexMatrix scratch = t;
        for (int i = lo; i <= hi; ++i) scratch(i, i) -= mu;
        std::vector<Givens> rotations;
        rotations.reserve(hi - lo);
        for (int k = lo; k < hi; ++k) {
            Givens g = make_givens(k, scratch(k, k), scratch(k + 1, k));
            apply_rows(scratch, g);
            rotations.push_back(g);
        }
        for (const auto& g : rotations) apply_rows(t, g);
        for (const auto& g : rotations) {
            apply_cols(t, g);
            apply_cols(q, g);
        }
    }
}

// Right eigenvectors from the Schur form A = Q T Q^dagger by triangular
// back-substitution; near-zero divisors are floored, which for the
// (diagonalizable) inputs of this library yields an independent basis.
ComplexMatrix schur_eigenvectors(const ComplexMatrix& t, const ComplexMatrix& q) {
    const int n = t.dim();
    const real tnorm = std::max(frobenius_norm(t), kEps);
    const real smallnum = kEps * tnorm;
    ComplexMatrix vectors(n);
    std::vector<cplx> y(n);
    for (int k = 0; k < n; ++k) {
        std::fill(y.begin(), y.end(), cplx(0));
        y[k] = cplx(1);
        const cplx lambda = t(k, k);
        for (int i = k - 1; i >= 0; --i) {
            cplx s(0);
            for (int j = i + 1; j <= k; ++j) s += t(i, j) * y[j];
            cplx d = t(i, i) - lambda;
            if (std::abs(d) < smallnum) d = cplx(smallnum);
            y[i] = -s / d;
        }
        // x = Q y, normalized.
        real norm2 = 0;
        std::vector<cplx> x(n);
        for (int i = 0; i < n; ++i) {
            cplx acc(0);
            for (int j = 0; j <= k; ++j) acc += q(i, j) * y[j];
            x[i] = acc;
            norm2 += std::norm(acc);
        }
        const real inv = real(1) / std::sqrt(norm2);
        for (int i = 0; i < n; ++i) vectors(i, k) = x[i] * inv;
    }
    return vectors;
}

struct RawDecomposition {
    SpectralDecomposition d;
    bool ok = false;
};

RawDecomposition spectral_unchecked(const ComplexMatrix& a, std::string_view label) {
    RawDecomposition out;
    const int n = a.dim();
    ComplexMatrix t = a;
    ComplexMatrix q;
    hessenberg(t, q);
    schur(t, q, label);
    ComplexMatrix v = schur_eigenvectors(t, q);

    std::vector<cplx> lambda(n);
    for (int i = 0; i < n; ++i) lambda[i] = t(i, i);

    // Descending real part, ties by descending imaginary part.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        if (lambda[i].real() != lambda[j].real()) return lambda[i].real() > lambda[j].real();
        return lambda[i].imag() > lambda[j].imag();
    });
    SpectralDecomposition d;
    d.eigenvalues.resize(n);
    d.right_eigenvectors = ComplexMatrix(n);
    for (int c = 0; c < n; ++c) {
        d.eigenvalues[c] = lambda[order[c]];
        for (int r = 0; r < n; ++r) d.right_eigenvectors(r, c) = v(r, order[c]);
    }
    try {
        d.inverse_of_eigenvector_matrix = inverse(d.right_eigenvectors, label);
    } catch (const IllConditionedError&) {
        out.d = std::move(d);
        out.d.condition_estimate = std::numeric_limits<real>::infinity();
        return out;
    }
    d.condition_estimate =
        frobenius_norm(d.right_eigenvectors) * frobenius_norm(d.inverse_of_eigenvector_matrix);
    out.d = std::move(d);
    out.ok = out.d.condition_estimate <= kMaxSpectralCondition;
    return out;
}

// --- Pade order-13 scaling and squaring ------------------------------------
//
// Coefficients of the [13/13] approximant; all integers below 2^56, hence
// exactly representable.
const real kPade13[] = {64764752532480000.0L,
                        32382376266240000.0L,
                        7771770303897600.0L,
                        1187353796428800.0L,
                        129060195264000.0L,
                        10559470521600.0L,
                        670442572800.0L,
                        33522128640.0L,
                        1323241920.0L,
                        40840800.0L,
                        960960.0L,
                        16380.0L,
                        182.0L,
                        1.0L};

// theta_13 for unit roundoff 2^-64 (conservative).
constexpr real kPadeTheta13 = 4.0L;

ComplexMatrix exp_pade13(const ComplexMatrix& a) {
    const int n = a.dim();
    const ComplexMatrix id = ComplexMatrix::identity(n);
    int squarings = 0;
    ComplexMatrix b = a;
    const real norm = one_norm(a);
    if (norm > kPadeTheta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / kPadeTheta13)));
        b *= cplx(std::ldexp(real(1), -squarings));
    }
    const ComplexMatrix b2 = b * b;
    const ComplexMatrix b4 = b2 * b2;
    const ComplexMatrix b6 = b4 * b2;
    const ComplexMatrix u =
        b * (b6 * (cplx(kPade13[13]) * b6 + cplx(kPade13[11]) * b4 + cplx(kPade13[9]) * b2) +
             cplx(kPade13[7]) * b6 + cplx(kPade13[5]) * b4 + cplx(kPade13[3]) * b2 +
             cplx(kPade13[1]) * id);
    const ComplexMatrix v =
        b6 * (cplx(kPade13[12]) * b6 + cplx(kPade13[10]) * b4 + cplx(kPade13[8]) * b2) +
        cplx(kPade13[6]) * b6 + cplx(kPade13[4]) * b4 + cplx(kPade13[2]) * b2 +
        cplx(kPade13[0]) * id;
    ComplexMatrix result = inverse(v - u, "Pade denominator") * (v + u);
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

}  // namespace

ComplexMatrix inverse(const ComplexMatrix& m, std::string_view label) {
    const int n = m.dim();
    ComplexMatrix a = m;
    ComplexMatrix inv = ComplexMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        real best = std::abs(a(col, col));
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > best) {
                best = std::abs(a(r, col));
                pivot = r;
            }
        }
        if (best <= kEps * std::max(frobenius_norm(m), real(1))) {
            throw IllConditionedError("inverse: " + std::string(label) +
                                      " is numerically singular");
        }
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(col, j), a(pivot, j));
                std::swap(inv(col, j), inv(pivot, j));
            }
        }
        const cplx d = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const cplx f = a(r, col);
            if (f == cplx(0)) continue;
            for (int j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

SpectralDecomposition spectral(const ComplexMatrix& a, std::string_view label) {
    RawDecomposition raw = spectral_unchecked(a, label);
    if (!raw.ok) {
        throw IllConditionedError("spectral: eigenvector basis of " + std::string(label) +
                                  " has condition estimate " +
                                  std::to_string(static_cast<double>(raw.d.condition_estimate)) +
                                  " (limit 1e8)");
    }
    return raw.d;
}

ComplexMatrix mat_exp(const ComplexMatrix& a, cplx s) {
    const int n = a.dim();
    RawDecomposition raw = spectral_unchecked(a, "mat_exp argument");
    if (raw.ok) {
        const auto& d = raw.d;
        ComplexMatrix scaled(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                scaled(r, c) = d.right_eigenvectors(r, c) * std::exp(s * d.eigenvalues[c]);
        return scaled * d.inverse_of_eigenvector_matrix;
    }
    ComplexMatrix b = a;
    b *= s;
    return exp_pade13(b);
}

}  // namespace zbw
