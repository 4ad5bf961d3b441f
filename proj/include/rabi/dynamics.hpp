// dynamics.hpp — exact time evolution via spectral decomposition of the chain
// Hamiltonians, plus the observables read off the evolved states: survival
// (revival) probability, photon statistics, phase-space trajectory, and the
// weighted detuning table.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rabi/analytic.hpp"
#include "rabi/model.hpp"
#include "rabi/numerics.hpp"

namespace rabi {

// One-time diagonalization of a chain Hamiltonian together with the overlaps
// of a fixed initial state; reusable for any evolution time. Immutable after
// construction and safe for concurrent evolve() calls.
struct Propagator {
    ModelParams params;
    Parity parity = Parity::plus;
    EigenPairs spectrum;
    std::vector<cplx> initial_weights;  // <phi_l | psi0>
    std::vector<double> weight_sq;      // |initial_weights|^2
    double initial_tail_mass = 0.0;     // chain-coordinate tail of psi0
    double spectral_tail_mass = 0.0;    // weight in the top 8 levels

    bool truncation_suspect() const {
        return initial_tail_mass > 1e-8 || spectral_tail_mass > 1e-8;
    }
};

// Sampled scalar observable versus time. Times are stored as given by the
// caller; the reporting layer converts to units of 2 pi / omega.
struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;
    std::string label;
    std::vector<std::string> warnings;
};

struct DetuningTable {
    struct Row {
        std::size_t level;
        double energy;
        double delta;   // (omega l - (E_l - e_ref)) / omega0
        double weight;  // |<psi0|phi_l>|^2
    };
    std::vector<Row> rows;
    double e_ref = 0.0;
    double omega0 = 0.0;
};

inline Propagator make_propagator(const ModelParams& params, Parity p, const ChainState& psi0) {
    params.validate();
    if (psi0.parity != p)
        throw std::invalid_argument("make_propagator: initial state lives on the other chain");
    if (psi0.amps.size() != params.n_max)
        throw std::invalid_argument("make_propagator: state length differs from n_max");
    if (std::abs(norm_squared(psi0.amps) - 1.0) > 1e-8)
        throw std::invalid_argument("make_propagator: initial state must be normalized");

    Propagator prop;
    prop.params = params;
    prop.parity = p;
    prop.spectrum = eig_sym_tridiag(build_chain_hamiltonian(params, p));
    prop.initial_tail_mass = psi0.tail_mass();

    const std::size_t n = params.n_max;
    prop.initial_weights.assign(n, cplx{0.0, 0.0});
    prop.weight_sq.assign(n, 0.0);
    for (std::size_t l = 0; l < n; ++l) {
        cplx c = 0.0;
        for (std::size_t k = 0; k < n; ++k) c += prop.spectrum.vectors(k, l) * psi0.amps[k];
        prop.initial_weights[l] = c;
        prop.weight_sq[l] = std::norm(c);
    }
    for (std::size_t l = (n > 8 ? n - 8 : 0); l < n; ++l)
        prop.spectral_tail_mass += prop.weight_sq[l];
    return prop;
}

// State at time t: sum_l <phi_l|psi0> e^{-i E_l t} |phi_l>.
inline ChainState evolve(const Propagator& prop, double t) {
    const std::size_t n = prop.params.n_max;
    std::vector<cplx> phased(n);
    for (std::size_t l = 0; l < n; ++l)
        phased[l] = prop.initial_weights[l] * std::polar(1.0, -prop.spectrum.values[l] * t);
    ChainState s;
    s.parity = prop.parity;
    s.time_tag = t;
    s.amps.assign(n, cplx{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc = 0.0;
        for (std::size_t l = 0; l < n; ++l) acc += prop.spectrum.vectors(k, l) * phased[l];
        s.amps[k] = acc;
    }
    return s;
}

// Survival amplitude <psi0|psi(t)> = sum_l |<psi0|phi_l>|^2 e^{-i E_l t}.
inline cplx survival_amplitude(const Propagator& prop, double t) {
    return expi_weighted_sum(std::span<const double>(prop.weight_sq),
                             std::span<const double>(prop.spectrum.values), t);
}

inline void attach_truncation_warning(const Propagator& prop, TimeSeries& ts) {
    if (prop.truncation_suspect())
        ts.warnings.push_back("truncation edge occupied (initial tail " +
                              std::to_string(prop.initial_tail_mass) + ", spectral tail " +
                              std::to_string(prop.spectral_tail_mass) + "); raise n_max");
}

// Survival probability sampled on a time grid, evaluated directly from the
// stored weights without state reconstruction.
inline TimeSeries revival_series(const Propagator& prop, std::span<const double> t_grid) {
    TimeSeries ts;
    ts.label = "revival";
    ts.times.assign(t_grid.begin(), t_grid.end());
    ts.values.resize(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        ts.values[i] = std::norm(survival_amplitude(prop, t_grid[i]));
    attach_truncation_warning(prop, ts);
    return ts;
}

// P_{n_b} = |amps[n_b]|^2.
inline std::vector<double> photon_statistics(const ChainState& s) {
    std::vector<double> p(s.amps.size());
    for (std::size_t n = 0; n < s.amps.size(); ++n) p[n] = std::norm(s.amps[n]);
    return p;
}

// <b>, <b^2>, <b†b> of a chain state.
inline cplx mean_lowering(const ChainState& s) {
    cplx acc = 0.0;
    for (std::size_t n = 1; n < s.amps.size(); ++n)
        acc += std::conj(s.amps[n - 1]) * std::sqrt(static_cast<double>(n)) * s.amps[n];
    return acc;
}

inline cplx mean_lowering_squared(const ChainState& s) {
    cplx acc = 0.0;
    for (std::size_t n = 2; n < s.amps.size(); ++n)
        acc += std::conj(s.amps[n - 2]) *
               std::sqrt(static_cast<double>(n) * static_cast<double>(n - 1)) * s.amps[n];
    return acc;
}

inline double mean_number(const ChainState& s) {
    double acc = 0.0;
    for (std::size_t n = 1; n < s.amps.size(); ++n)
        acc += static_cast<double>(n) * std::norm(s.amps[n]);
    return acc;
}

// Quadrature expectations (x, p) = <(b + b†, i b† - i b)>/sqrt(2) along a
// time grid.
inline std::pair<TimeSeries, TimeSeries> trajectory(const Propagator& prop,
                                                    std::span<const double> t_grid) {
    TimeSeries xs, ps;
    xs.label = "x";
    ps.label = "p";
    xs.times.assign(t_grid.begin(), t_grid.end());
    ps.times = xs.times;
    xs.values.resize(t_grid.size());
    ps.values.resize(t_grid.size());
    const double rt2 = std::sqrt(2.0);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const cplx b = mean_lowering(evolve(prop, t_grid[i]));
        xs.values[i] = rt2 * b.real();
        ps.values[i] = rt2 * b.imag();
    }
    attach_truncation_warning(prop, xs);
    attach_truncation_warning(prop, ps);
    return {std::move(xs), std::move(ps)};
}

// Detuning table: delta_l = (omega l - (E_l - e_ref)) / omega0 with the
// omega0-independent offset e_ref = -g^2/omega removed, so delta tends to the
// first-order detuning as omega0 -> 0. Rows are ordered by level (ascending
// energy).
inline DetuningTable detuning_table(const Propagator& prop) {
    if (prop.params.omega0 <= 0.0)
        throw std::invalid_argument("detuning_table: omega0 must be positive (delta divides by it)");
    DetuningTable table;
    table.omega0 = prop.params.omega0;
    table.e_ref = -prop.params.g * prop.params.g / prop.params.omega;
    table.rows.resize(prop.params.n_max);
    for (std::size_t l = 0; l < prop.params.n_max; ++l) {
        const double e = prop.spectrum.values[l];
        table.rows[l] = {l, e,
                         (prop.params.omega * static_cast<double>(l) - (e - table.e_ref)) /
                             prop.params.omega0,
                         prop.weight_sq[l]};
    }
    return table;
}

// ---------------------------------------------------------------------------
// Tensor-basis evolution: both chains evolved side by side. The parity sectors
// are superselected, so combined observables add incoherently across chains.
// ---------------------------------------------------------------------------

struct TensorPropagator {
    ModelParams params;
    ChainSplit split;  // normalized per-chain components of psi0 with weights
    std::optional<Propagator> plus;
    std::optional<Propagator> minus;
};

inline TensorPropagator make_tensor_propagator(const ModelParams& params,
                                               const TensorState& psi0) {
    params.validate();
    if (psi0.n_levels() != params.n_max)
        throw std::invalid_argument("make_tensor_propagator: state length differs from n_max");
    if (std::abs(norm_squared(psi0.amps) - 1.0) > 1e-8)
        throw std::invalid_argument("make_tensor_propagator: state must be normalized");
    TensorPropagator tp;
    tp.params = params;
    tp.split = tensor_to_chain(psi0);
    if (tp.split.weight_plus > 1e-15)
        tp.plus = make_propagator(params, Parity::plus, tp.split.plus);
    if (tp.split.weight_minus > 1e-15)
        tp.minus = make_propagator(params, Parity::minus, tp.split.minus);
    return tp;
}

inline TensorState evolve_tensor(const TensorPropagator& tp, double t) {
    ChainSplit split = tp.split;
    if (tp.plus) split.plus = evolve(*tp.plus, t);
    if (tp.minus) split.minus = evolve(*tp.minus, t);
    return chain_to_tensor(split);
}

// <Pi> of a tensor state; conserved under the dynamics.
inline double parity_expectation(const TensorState& s) {
    double acc = 0.0;
    for (std::size_t n = 0; n < s.n_levels(); ++n)
        for (QubitLevel q : {QubitLevel::ground, QubitLevel::excited})
            acc += sign(parity_of(q, n)) * std::norm(s.at(q, n));
    return acc;
}

// Combined survival probability: weighted sum of the per-chain survival
// probabilities. Cross-chain interference is absent by parity superselection.
inline double combined_survival_probability(const TensorPropagator& tp, double t) {
    double acc = 0.0;
    if (tp.plus) acc += tp.split.weight_plus * std::norm(survival_amplitude(*tp.plus, t));
    if (tp.minus) acc += tp.split.weight_minus * std::norm(survival_amplitude(*tp.minus, t));
    return acc;
}

// Uniform grid of n points covering [0, t_max]; n >= 2.
inline std::vector<double> uniform_grid(double t_max, std::size_t n_points) {
    if (n_points < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
    if (!(t_max > 0.0)) throw std::invalid_argument("uniform_grid: t_max must be positive");
    std::vector<double> t(n_points);
    for (std::size_t i = 0; i < n_points; ++i)
        t[i] = t_max * static_cast<double>(i) / static_cast<double>(n_points - 1);
    return t;
}

}  // namespace rabi
