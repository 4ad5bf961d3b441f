// analytic.hpp — closed-form results: the integrable omega0 = 0 evolution and
// its revival probability, perturbative eigenenergies in powers of omega0, the
// resonant-level rule, and the two-mode approximation built on it.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rabi/model.hpp"
#include "rabi/numerics.hpp"

namespace rabi {

// Circular phase-space orbit of the displaced oscillator: amplitude
// beta(t) = beta0 (e^{-i omega t} - 1) and the accumulated global phase
// e^{i beta0^2 omega t} e^{-i beta0^2 sin(omega t)}.
struct CoherentOrbit {
    double beta0 = 0.0;
    double omega = 1.0;

    cplx amplitude(double t) const {
        return beta0 * (std::polar(1.0, -omega * t) - 1.0);
    }

    cplx global_phase(double t) const {
        return std::polar(1.0, beta0 * beta0 * (omega * t - std::sin(omega * t)));
    }
};

inline cplx beta_of_t(double beta0, double omega, double t) {
    return CoherentOrbit{beta0, omega}.amplitude(t);
}

// Survival probability of |p, 0_b> under the omega0 = 0 dynamics:
// exp(-|beta(t)|^2). Equals 1 exactly at omega t in 2 pi Z.
inline double revival_probability_w0_zero(double beta0, double omega, double t) {
    return std::exp(-std::norm(beta_of_t(beta0, omega, t)));
}

// Exact omega0 = 0 state evolved from |p, 0_b>: a coherent state on the orbit
// carrying the global phase. Requires params.omega0 == 0.
inline ChainState exact_state_w0_zero(const ModelParams& params, Parity p, double t) {
    params.validate();
    if (params.omega0 != 0.0)
        throw std::invalid_argument("exact_state_w0_zero: omega0 must be 0");
    const CoherentOrbit orbit{params.beta0(), params.omega};
    ChainState s = coherent_chain_state(p, orbit.amplitude(t), params.n_max, t);
    const cplx phase = orbit.global_phase(t);
    for (cplx& a : s.amps) a *= phase;
    return s;
}

// One perturbed level: energy at the requested order and the first-order
// dimensionless detuning delta = p (-1)^n Delta_nn / 2 (units of omega0).
struct PerturbedLevel {
    std::size_t n_b = 0;
    double energy = 0.0;
    double delta = 0.0;
    int order = 0;
};

namespace detail {

// Delta_nm = <n|D(2 beta0)|m>.
inline double big_delta(std::size_t n, std::size_t m, double beta0) {
    return displacement_element(n, m, 2.0 * beta0);
}

}  // namespace detail

// Eigenenergy of level n_b on chain p as a series in omega0/omega:
//   order 0:  omega n_b - g^2/omega
//   order 1:  - (omega0/2) p (-1)^{n_b} Delta_{n_b n_b}
//   order 2:  + sum_{m != n} omega0^2 |Delta_{n m}|^2 / (4 omega (n - m)),
// with the second-order sum truncated at |n - m| <= 4 beta0^2 + 20 (the
// displacement elements decay super-exponentially beyond that range).
inline PerturbedLevel perturbative_energy(const ModelParams& params, Parity p,
                                          std::size_t n_b, int order) {
    params.validate();
    if (order < 0 || order > 2)
        throw std::invalid_argument("perturbative_energy: order must be 0, 1, or 2");
    if (n_b + 16 > params.n_max)
        throw std::invalid_argument("perturbative_energy: n_b + 16 must not exceed n_max");

    const double b0 = params.beta0();
    PerturbedLevel out;
    out.n_b = n_b;
    out.order = order;
    out.delta = 0.5 * sign(p) * parity_sign_of_level(n_b) * detail::big_delta(n_b, n_b, b0);

    double e = params.omega * static_cast<double>(n_b) - params.g * params.g / params.omega;
    if (order >= 1) e -= params.omega0 * out.delta;
    if (order >= 2) {
        const std::size_t m_cut = static_cast<std::size_t>(4.0 * b0 * b0 + 20.0);
        const std::size_t lo = (n_b > m_cut) ? n_b - m_cut : 0;
        const std::size_t hi = n_b + m_cut;
        double s = 0.0;
        for (std::size_t m = lo; m <= hi; ++m) {
            if (m == n_b) continue;
            const double d = detail::big_delta(n_b, m, b0);
            s += params.omega0 * params.omega0 * d * d /
                 (4.0 * params.omega *
                  (static_cast<double>(n_b) - static_cast<double>(m)));
        }
        e += s;
    }
    out.energy = e;
    return out;
}

// Closest integer to (g/omega)^2 + N_b; exact half-integers round up.
inline std::size_t resonant_level(const ModelParams& params, std::size_t initial_n_b) {
    params.validate();
    const double x = params.beta0() * params.beta0() + static_cast<double>(initial_n_b);
    return static_cast<std::size_t>(std::floor(x + 0.5));
}

// Overlap of |p, 0_b> with the displaced number state D(-beta0)|p, N>:
// e^{-beta0^2/2} beta0^N / sqrt(N!).
inline double displaced_vacuum_overlap(double beta0, std::size_t n) {
    double v = std::exp(-0.5 * beta0 * beta0);
    for (std::size_t j = 1; j <= n; ++j) v *= beta0 / std::sqrt(static_cast<double>(j));
    return v;
}

// Cosine-argument convention for the two-mode revival formula. `full` uses
// omega0 * delta * t, the phase actually accumulated by the resonant level in
// the two-mode state; `half` uses omega0 * delta * t / 2. Revival-peak
// benchmarks against exact diagonalization select `full`.
enum class DetuningPhase { full, half };

// Two-mode approximate state from |+, 0_b>: the omega0 = 0 evolution plus a
// single resonant-level correction with the first-order phase,
//   u(t) + psi_N (e^{i omega0 delta_N t} - 1) D(-beta0)|+, N>,
// renormalized to unit norm.
inline ChainState two_mode_state(const ModelParams& params, double t) {
    params.validate();
    const std::size_t nres = resonant_level(params, 0);
    if (nres + 16 > params.n_max)
        throw TruncationError("two_mode_state: resonant level too close to n_max; raise n_max");

    const double b0 = params.beta0();
    const CoherentOrbit orbit{b0, params.omega};
    ChainState s = coherent_chain_state(Parity::plus, orbit.amplitude(t), params.n_max, t);
    const cplx phase = orbit.global_phase(t);
    for (cplx& a : s.amps) a *= phase;

    const double delta_n =
        0.5 * parity_sign_of_level(nres) * detail::big_delta(nres, nres, b0);
    const double psi_n = displaced_vacuum_overlap(b0, nres);
    const cplx coef =
        psi_n * (std::polar(1.0, params.omega0 * delta_n * t) - 1.0);
    for (std::size_t n = 0; n < params.n_max; ++n)
        s.amps[n] += coef * detail::displacement_element(n, nres, -b0);

    const double nrm = s.norm();
    if (nrm > 0.0)
        for (cplx& a : s.amps) a /= nrm;
    return s;
}

// Two-mode revival probability from |+, 0_b>:
//   2 e^{-|beta(t)|^2/2 - beta0^2} (beta0^{2N}/N!) [cos(arg) - 1] + e^{-|beta(t)|^2},
// with N the resonant level and delta_N the first-order detuning. The value is
// an approximation and may leave [0,1]; it is returned unclamped (clamping is
// a reporting-layer concern).
inline double two_mode_revival(const ModelParams& params, double t,
                               DetuningPhase phase = DetuningPhase::full) {
    params.validate();
    const double b0 = params.beta0();
    const std::size_t nres = resonant_level(params, 0);
    const double delta_n =
        0.5 * parity_sign_of_level(nres) * detail::big_delta(nres, nres, b0);
    const double psi_sq = [&] {
        const double a = displaced_vacuum_overlap(b0, nres);
        return a * a;
    }();
    const double bt2 = std::norm(beta_of_t(b0, params.omega, t));
    const double scale = (phase == DetuningPhase::half) ? 0.5 : 1.0;
    const double arg = params.omega0 * delta_n * t * scale;
    return 2.0 * std::exp(-0.5 * bt2) * psi_sq * (std::cos(arg) - 1.0) + std::exp(-bt2);
}

// Revival probability rebuilt from perturbative energies with the zeroth-order
// (displaced-vacuum, Poissonian) weights; initial state |p, 0_b>. Levels are
// included until their weight drops below 1e-18 past the distribution mean.
inline double perturbative_revival(const ModelParams& params, Parity p, double t, int order) {
    params.validate();
    const double b0 = params.beta0();
    const double mean = b0 * b0;
    std::vector<double> weights;
    std::vector<double> energies;
    for (std::size_t n = 0; n + 16 <= params.n_max; ++n) {
        const double w = [&] {
            const double a = displaced_vacuum_overlap(b0, n);
            return a * a;
        }();
        if (w < 1e-18 && static_cast<double>(n) > mean) break;
        weights.push_back(w);
        energies.push_back(perturbative_energy(params, p, n, order).energy);
    }
    return std::norm(expi_weighted_sum(std::span<const double>(weights),
                                       std::span<const double>(energies), t));
}

}  // namespace rabi
