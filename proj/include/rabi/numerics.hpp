// numerics.hpp — real symmetric eigensolvers, generalized Laguerre polynomials,
// and complex phase sums. Self-contained; no external linear-algebra dependency.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rabi {

using cplx = std::complex<double>;

// Eigensolver failed to converge within the sweep cap.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A state or operator no longer fits inside the Fock truncation.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense real matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<double>& data() const { return a_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> a_;
};

// Real symmetric tridiagonal matrix: diag has length N, offdiag length N-1.
struct SymTridiag {
    std::vector<double> diag;
    std::vector<double> offdiag;

    std::size_t size() const { return diag.size(); }

    void validate() const {
        if (diag.empty())
            throw std::invalid_argument("SymTridiag: dimension must be >= 1");
        if (offdiag.size() + 1 != diag.size())
            throw std::invalid_argument("SymTridiag: offdiag must have length N-1");
        auto finite = [](double v) { return std::isfinite(v); };
        if (!std::all_of(diag.begin(), diag.end(), finite) ||
            !std::all_of(offdiag.begin(), offdiag.end(), finite))
            throw std::invalid_argument("SymTridiag: entries must be finite");
    }
};

// Full eigendecomposition of a real symmetric matrix. values are ascending;
// column l of vectors pairs with values[l].
struct EigenPairs {
    std::vector<double> values;
    Matrix vectors;

    std::size_t size() const { return values.size(); }
};

inline constexpr int max_ql_sweeps = 50;

namespace detail {

// Implicit-shift QL iteration on a symmetric tridiagonal matrix, accumulating
// the rotations into z. d holds the diagonal, e[i] couples rows i and i+1
// (e[n-1] is scratch). Follows the classic tql2 lineage (Bowdler, Martin,
// Reinsch, Wilkinson; EISPACK).
inline void ql_implicit(std::vector<double>& d, std::vector<double>& e, Matrix& z) {
    const std::size_t n = d.size();
    if (n == 0) return;
    e[n - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == max_ql_sweeps)
                    throw ConvergenceError("eig_sym_tridiag: eigenvalue " + std::to_string(l) +
                                           " did not converge after " +
                                           std::to_string(max_ql_sweeps) + " sweeps");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        // Deflate: a rotation annihilated prematurely.
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = (i + 1 > l);
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (std::size_t k = 0; k < n; ++k) {
                        f = z(k, i + 1);
                        z(k, i + 1) = s * z(k, i) + c * f;
                        z(k, i) = c * z(k, i) - s * f;
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

// Sort eigenpairs ascending; ties keep the original (pre-sort) column order.
// Each column's sign is fixed so that its largest-magnitude entry is positive.
inline EigenPairs sort_and_orient(std::vector<double>& d, Matrix& z) {
    const std::size_t n = d.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    EigenPairs out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t l = 0; l < n; ++l) {
        const std::size_t src = order[l];
        out.values[l] = d[src];
        std::size_t imax = 0;
        double vmax = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            double av = std::abs(z(k, src));
            if (av > vmax) {
                vmax = av;
                imax = k;
            }
        }
        const double flip = (z(imax, src) < 0.0) ? -1.0 : 1.0;
        for (std::size_t k = 0; k < n; ++k) out.vectors(k, l) = flip * z(k, src);
    }
    return out;
}

// Householder reduction of a dense symmetric matrix to tridiagonal form,
// accumulating the orthogonal transform into a (classic tred2, zero-based).
// On exit d is the diagonal, e[i] couples rows i and i+1, a holds Q.
inline void householder_tridiagonalize(Matrix& a, std::vector<double>& d,
                                       std::vector<double>& e) {
    const std::size_t n = a.rows();
    d.assign(n, 0.0);
    std::vector<double> esub(n, 0.0);  // esub[i] couples i-1 and i

    for (std::size_t i = n - 1; i >= 1; --i) {
        const std::size_t l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (std::size_t k = 0; k <= l; ++k) scale += std::abs(a(i, k));
            if (scale == 0.0) {
                esub[i] = a(i, l);
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    a(i, k) /= scale;
                    h += a(i, k) * a(i, k);
                }
                double f = a(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                esub[i] = scale * g;
                h -= f * g;
                a(i, l) = f - g;
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    a(j, i) = a(i, j) / h;
                    g = 0.0;
                    for (std::size_t k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
                    for (std::size_t k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
                    esub[j] = g / h;
                    f += esub[j] * a(i, j);
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = a(i, j);
                    esub[j] = g = esub[j] - hh * f;
                    for (std::size_t k = 0; k <= j; ++k)
                        a(j, k) -= f * esub[k] + g * a(i, k);
                }
            }
        } else {
            esub[i] = a(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    esub[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i] != 0.0) {
            for (std::size_t j = 0; j < i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k < i; ++k) g += a(i, k) * a(k, j);
                for (std::size_t k = 0; k < i; ++k) a(k, j) -= g * a(k, i);
            }
        }
        d[i] = a(i, i);
        a(i, i) = 1.0;
        for (std::size_t j = 0; j < i; ++j) a(j, i) = a(i, j) = 0.0;
    }

    e.assign(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) e[i] = esub[i + 1];
}

}  // namespace detail

// Full eigendecomposition of a real symmetric tridiagonal matrix.
// Deterministic: no randomness, stable tie order, fixed vector orientation.
inline EigenPairs eig_sym_tridiag(const SymTridiag& m) {
    m.validate();
    const std::size_t n = m.size();
    std::vector<double> d = m.diag;
    std::vector<double> e(n, 0.0);
    std::copy(m.offdiag.begin(), m.offdiag.end(), e.begin());
    Matrix z = Matrix::identity(n);
    detail::ql_implicit(d, e, z);
    return detail::sort_and_orient(d, z);
}

// Full eigendecomposition of a dense real symmetric matrix: Householder
// tridiagonalization followed by implicit-shift QL.
inline EigenPairs eig_sym_dense(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw std::invalid_argument("eig_sym_dense: matrix must be square and non-empty");
    Matrix a = m;
    std::vector<double> d, e;
    detail::householder_tridiagonalize(a, d, e);
    detail::ql_implicit(d, e, a);
    return detail::sort_and_orient(d, a);
}

// Generalized Laguerre polynomial L_n^{(k)}(x) by the stable three-term
// recurrence (i+1) L_{i+1} = (2i+k+1-x) L_i - (i+k) L_{i-1}.
inline double laguerre(unsigned n, unsigned k, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("laguerre: x must be finite");
    if (n == 0) return 1.0;
    double lm = 1.0;
    double l = 1.0 + static_cast<double>(k) - x;
    for (unsigned i = 1; i < n; ++i) {
        const double next =
            ((2.0 * i + k + 1.0 - x) * l - (static_cast<double>(i) + k) * lm) / (i + 1.0);
        lm = l;
        l = next;
    }
    return l;
}

// sum_l w_l exp(-i E_l t), hbar = 1.
inline cplx expi_weighted_sum(std::span<const cplx> weights, std::span<const double> energies,
                              double t) {
    if (weights.size() != energies.size())
        throw std::invalid_argument("expi_weighted_sum: weights and energies length mismatch");
    cplx acc = 0.0;
    for (std::size_t l = 0; l < weights.size(); ++l)
        acc += weights[l] * std::polar(1.0, -energies[l] * t);
    return acc;
}

inline cplx expi_weighted_sum(std::span<const double> weights, std::span<const double> energies,
                              double t) {
    if (weights.size() != energies.size())
        throw std::invalid_argument("expi_weighted_sum: weights and energies length mismatch");
    cplx acc = 0.0;
    for (std::size_t l = 0; l < weights.size(); ++l)
        acc += weights[l] * std::polar(1.0, -energies[l] * t);
    return acc;
}

// |v|^2 summed over a complex vector.
inline double norm_squared(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& a : v) s += std::norm(a);
    return s;
}

inline cplx inner_product(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("inner_product: length mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

}  // namespace rabi
