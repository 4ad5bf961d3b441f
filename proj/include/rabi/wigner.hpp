// wigner.hpp — Wigner quasi-probability of a chain state on a rectangular
// phase-space grid, evaluated as a displaced-parity expectation in the Fock
// basis, plus negativity and orbit-frame squeezing diagnostics.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "rabi/dynamics.hpp"
#include "rabi/model.hpp"
#include "rabi/numerics.hpp"

namespace rabi {

// Rectangular grid of W(x, p). Quadratures are dimensionless with
// x + i p = sqrt(2) <b> for coherent states, so |W| <= 1/pi pointwise and the
// grid integral is 1 when the grid captures the state's support.
struct WignerGrid {
    std::vector<double> x_axis;
    std::vector<double> p_axis;
    Matrix values;              // values(ix, ip)
    double max_norm_defect = 0.0;  // worst displaced-expansion mass lost to truncation

    double dx() const { return x_axis.size() > 1 ? x_axis[1] - x_axis[0] : 0.0; }
    double dp() const { return p_axis.size() > 1 ? p_axis[1] - p_axis[0] : 0.0; }

    double integral() const {
        double s = 0.0;
        for (double v : values.data()) s += v;
        return s * dx() * dp();
    }
};

inline std::vector<double> axis_linspace(double lo, double hi, std::size_t points) {
    if (points < 2 || !(hi > lo))
        throw std::invalid_argument("axis_linspace: need hi > lo and at least 2 points");
    std::vector<double> a(points);
    for (std::size_t i = 0; i < points; ++i)
        a[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    return a;
}

namespace detail {

// Accumulates d = D(gamma) s for complex gamma by walking diagonals of
// constant k = n - m, sharing one Laguerre recurrence per diagonal. The
// magnitude |gamma|^k is folded into the radial prefactor so nothing
// overflows; the complex phase enters only as e^{+-i k arg(gamma)}.
inline void apply_displacement(std::span<const cplx> s, std::size_t support, cplx gamma,
                               std::vector<cplx>& d) {
    const std::size_t n_max = s.size();
    d.assign(n_max, cplx{0.0, 0.0});
    const double x = std::norm(gamma);
    const double mag = std::abs(gamma);
    const double phi = std::atan2(gamma.imag(), gamma.real());

    for (std::size_t k = 0; k < n_max; ++k) {
        double pref = std::exp(-0.5 * x);
        for (std::size_t j = 1; j <= k; ++j) pref *= mag / std::sqrt(static_cast<double>(j));
        if (pref == 0.0) break;  // deeper diagonals underflow entirely
        const cplx up_phase = std::polar(1.0, phi * static_cast<double>(k));
        const cplx down_phase =
            ((k % 2 == 0) ? 1.0 : -1.0) * std::polar(1.0, -phi * static_cast<double>(k));
        double lm = 0.0;
        double l = 1.0;  // L_0^{(k)}
        const std::size_t m_hi = (support + 1 < n_max - k) ? support + 1 : n_max - k;
        for (std::size_t m = 0; m < m_hi; ++m) {
            if (m >= 1) {
                const double next = ((2.0 * (m - 1) + k + 1.0 - x) * l -
                                     (static_cast<double>(m - 1) + k) * lm) /
                                    static_cast<double>(m);
                lm = l;
                l = next;
                pref *= std::sqrt(static_cast<double>(m) / static_cast<double>(m + k));
            }
            const double radial = pref * l;
            d[m + k] += radial * up_phase * s[m];
            if (k > 0 && m + k <= support) d[m] += radial * down_phase * s[m + k];
        }
    }
}

}  // namespace detail

// W(x, p) = (1/pi) <s| D(alpha) (-1)^{b†b} D†(alpha) |s> with
// alpha = (x + i p)/sqrt(2), evaluated from the Fock expansion of the
// displaced state. Pure-state path; each grid point is independent.
inline WignerGrid wigner(const ChainState& s, std::span<const double> x_axis,
                         std::span<const double> p_axis) {
    if (s.amps.empty()) throw std::invalid_argument("wigner: empty state");
    if (x_axis.size() < 2 || p_axis.size() < 2)
        throw std::invalid_argument("wigner: axes need at least 2 points each");
    if (s.tail_mass() > 1e-8)
        throw TruncationError("wigner: state occupies the truncation edge; raise n_max");

    std::size_t support = 0;
    for (std::size_t n = 0; n < s.amps.size(); ++n)
        if (std::abs(s.amps[n]) > 1e-18) support = n;

    WignerGrid grid;
    grid.x_axis.assign(x_axis.begin(), x_axis.end());
    grid.p_axis.assign(p_axis.begin(), p_axis.end());
    grid.values = Matrix(x_axis.size(), p_axis.size());

    const double inv_rt2 = 1.0 / std::sqrt(2.0);
    const double inv_pi = 1.0 / std::acos(-1.0);
    std::vector<cplx> displaced;
    for (std::size_t ix = 0; ix < x_axis.size(); ++ix) {
        for (std::size_t ip = 0; ip < p_axis.size(); ++ip) {
            const cplx alpha(x_axis[ix] * inv_rt2, p_axis[ip] * inv_rt2);
            detail::apply_displacement(s.amps, support, -alpha, displaced);
            double par = 0.0, mass = 0.0;
            for (std::size_t n = 0; n < displaced.size(); ++n) {
                const double pn = std::norm(displaced[n]);
                mass += pn;
                par += (n % 2 == 0) ? pn : -pn;
            }
            grid.values(ix, ip) = inv_pi * par;
            const double defect = 1.0 - mass;
            if (defect > grid.max_norm_defect) grid.max_norm_defect = defect;
        }
    }
    return grid;
}

// Integrated negative mass: sum of max(0, -W) dx dp.
inline double wigner_negativity(const WignerGrid& grid) {
    double s = 0.0;
    for (double v : grid.values.data())
        if (v < 0.0) s -= v;
    return s * grid.dx() * grid.dp();
}

// Principal quadrature variances in the frame tangent/normal to the circular
// orbit centered at -beta0 in the <b> plane.
struct QuadratureVariances {
    double tangential = 0.0;
    double normal = 0.0;
};

inline QuadratureVariances squeezing_diagnostic(const ChainState& s, double beta0) {
    const cplx b = mean_lowering(s);
    const cplx b2 = mean_lowering_squared(s);
    const double nbar = mean_number(s);

    const double vx = b2.real() + nbar + 0.5 - 2.0 * b.real() * b.real();
    const double vp = -b2.real() + nbar + 0.5 - 2.0 * b.imag() * b.imag();
    const double cxp = b2.imag() - 2.0 * b.real() * b.imag();

    // Radial direction from the orbit center; x axis when degenerate.
    double ux = b.real() + beta0;
    double uy = b.imag();
    const double r = std::hypot(ux, uy);
    if (r < 1e-12) {
        ux = 1.0;
        uy = 0.0;
    } else {
        ux /= r;
        uy /= r;
    }
    const double tx = -uy, ty = ux;

    QuadratureVariances out;
    out.normal = ux * (vx * ux + cxp * uy) + uy * (cxp * ux + vp * uy);
    out.tangential = tx * (vx * tx + cxp * ty) + ty * (cxp * tx + vp * ty);
    return out;
}

}  // namespace rabi
