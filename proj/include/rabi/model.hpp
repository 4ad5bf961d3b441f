// model.hpp — qubit-oscillator model construction: chain and tensor-basis
// Hamiltonians, parity bookkeeping, basis maps, displacement operators, and
// the two-qubit chain graph.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "rabi/numerics.hpp"

namespace rabi {

// Physical parameters, hbar = 1. omega is the mode frequency, omega0 the
// qubit transition frequency, g the coupling strength; n_max is the Fock
// truncation of each parity chain.
struct ModelParams {
    double omega = 1.0;
    double omega0 = 0.0;
    double g = 0.0;
    std::size_t n_max = 256;

    double beta0() const { return g / omega; }

    void validate() const {
        if (!(omega > 0.0) || !std::isfinite(omega))
            throw std::invalid_argument("ModelParams: omega must be positive and finite");
        if (!(omega0 >= 0.0) || !std::isfinite(omega0))
            throw std::invalid_argument("ModelParams: omega0 must be >= 0 and finite");
        if (!(g >= 0.0) || !std::isfinite(g))
            throw std::invalid_argument("ModelParams: g must be >= 0 and finite");
        if (n_max < 8)
            throw std::invalid_argument("ModelParams: n_max must be >= 8");
    }
};

enum class Parity : int { plus = +1, minus = -1 };

inline constexpr int sign(Parity p) { return static_cast<int>(p); }

inline Parity parity_from_sign(int s) {
    if (s == +1) return Parity::plus;
    if (s == -1) return Parity::minus;
    throw std::invalid_argument("parity_from_sign: sign must be +1 or -1");
}

enum class QubitLevel : int { ground = 0, excited = 1 };

// Parity of the tensor-basis state |q, n_a>: the eigenvalue of
// -sigma_z (-1)^{n_a}. Chain +1 holds (g,even) and (e,odd).
inline Parity parity_of(QubitLevel q, std::size_t n_a) {
    const int sz = (q == QubitLevel::excited) ? +1 : -1;
    const int ph = (n_a % 2 == 0) ? +1 : -1;
    return parity_from_sign(-sz * ph);
}

inline int parity_sign_of_level(std::size_t n) { return (n % 2 == 0) ? +1 : -1; }

// Amplitudes over one parity chain |p, n_b>, n_b = 0..n_max-1.
struct ChainState {
    Parity parity = Parity::plus;
    std::vector<cplx> amps;
    double time_tag = 0.0;

    std::size_t size() const { return amps.size(); }

    double norm() const { return std::sqrt(norm_squared(amps)); }

    // Probability mass in the top `guard` slots; the truncation-health gauge.
    double tail_mass(std::size_t guard = 8) const {
        double s = 0.0;
        const std::size_t start = amps.size() > guard ? amps.size() - guard : 0;
        for (std::size_t n = start; n < amps.size(); ++n) s += std::norm(amps[n]);
        return s;
    }
};

// Amplitudes over the tensor basis |q, n_a>, interleaved as
// (g,0),(e,0),(g,1),(e,1),... so index = 2 n_a + q.
struct TensorState {
    std::vector<cplx> amps;

    std::size_t n_levels() const { return amps.size() / 2; }

    static std::size_t index(QubitLevel q, std::size_t n_a) {
        return 2 * n_a + static_cast<std::size_t>(q);
    }

    cplx& at(QubitLevel q, std::size_t n_a) { return amps[index(q, n_a)]; }
    cplx at(QubitLevel q, std::size_t n_a) const { return amps[index(q, n_a)]; }
};

// Chain Hamiltonian of one parity sector in the number basis of b:
//   H = omega b†b + g (b + b†) - (omega0/2) (-1)^{b†b} p.
inline SymTridiag build_chain_hamiltonian(const ModelParams& params, Parity p) {
    params.validate();
    SymTridiag h;
    h.diag.resize(params.n_max);
    h.offdiag.resize(params.n_max - 1);
    for (std::size_t n = 0; n < params.n_max; ++n)
        h.diag[n] = params.omega * static_cast<double>(n) -
                    0.5 * params.omega0 * sign(p) * parity_sign_of_level(n);
    for (std::size_t n = 0; n + 1 < params.n_max; ++n)
        h.offdiag[n] = params.g * std::sqrt(static_cast<double>(n + 1));
    return h;
}

// Full Hamiltonian in the tensor basis, dimension 2 n_max:
//   H = (omega0/2) sigma_z + omega a†a + g sigma_x (a + a†).
// Includes both the rotating and the counter-rotating couplings.
inline Matrix build_tensor_hamiltonian(const ModelParams& params) {
    params.validate();
    const std::size_t nmax = params.n_max;
    Matrix h(2 * nmax, 2 * nmax);
    for (std::size_t n = 0; n < nmax; ++n) {
        h(TensorState::index(QubitLevel::ground, n), TensorState::index(QubitLevel::ground, n)) =
            params.omega * static_cast<double>(n) - 0.5 * params.omega0;
        h(TensorState::index(QubitLevel::excited, n), TensorState::index(QubitLevel::excited, n)) =
            params.omega * static_cast<double>(n) + 0.5 * params.omega0;
    }
    for (std::size_t n = 0; n + 1 < nmax; ++n) {
        const double c = params.g * std::sqrt(static_cast<double>(n + 1));
        for (QubitLevel q : {QubitLevel::ground, QubitLevel::excited}) {
            const QubitLevel qf = (q == QubitLevel::ground) ? QubitLevel::excited
                                                            : QubitLevel::ground;
            const std::size_t a = TensorState::index(q, n);
            const std::size_t b = TensorState::index(qf, n + 1);
            h(a, b) = c;
            h(b, a) = c;
        }
    }
    return h;
}

// Tensor state split into its two parity-chain components. Each ChainState is
// normalized when its weight is nonzero; weights are the squared norms of the
// projections and sum to the squared norm of the input.
struct ChainSplit {
    ChainState plus;
    ChainState minus;
    double weight_plus = 0.0;
    double weight_minus = 0.0;
};

// Tensor component sitting at position n_b of chain p. Chain +1 runs
// (g,0),(e,1),(g,2),...; chain -1 runs (e,0),(g,1),(e,2),...
inline QubitLevel chain_slot_qubit(Parity p, std::size_t n_b) {
    const bool even = (n_b % 2 == 0);
    if (p == Parity::plus) return even ? QubitLevel::ground : QubitLevel::excited;
    return even ? QubitLevel::excited : QubitLevel::ground;
}

inline ChainSplit tensor_to_chain(const TensorState& s) {
    const std::size_t nmax = s.n_levels();
    ChainSplit out;
    out.plus.parity = Parity::plus;
    out.minus.parity = Parity::minus;
    out.plus.amps.resize(nmax);
    out.minus.amps.resize(nmax);
    for (std::size_t n = 0; n < nmax; ++n) {
        out.plus.amps[n] = s.at(chain_slot_qubit(Parity::plus, n), n);
        out.minus.amps[n] = s.at(chain_slot_qubit(Parity::minus, n), n);
    }
    out.weight_plus = norm_squared(out.plus.amps);
    out.weight_minus = norm_squared(out.minus.amps);
    if (out.weight_plus > 0.0) {
        const double inv = 1.0 / std::sqrt(out.weight_plus);
        for (cplx& a : out.plus.amps) a *= inv;
    }
    if (out.weight_minus > 0.0) {
        const double inv = 1.0 / std::sqrt(out.weight_minus);
        for (cplx& a : out.minus.amps) a *= inv;
    }
    return out;
}

// Inverse of tensor_to_chain.
inline TensorState chain_to_tensor(const ChainSplit& split) {
    const std::size_t nmax = split.plus.amps.size();
    if (split.minus.amps.size() != nmax)
        throw std::invalid_argument("chain_to_tensor: chain lengths differ");
    TensorState s;
    s.amps.assign(2 * nmax, cplx{0.0, 0.0});
    const double wp = std::sqrt(split.weight_plus);
    const double wm = std::sqrt(split.weight_minus);
    for (std::size_t n = 0; n < nmax; ++n) {
        s.at(chain_slot_qubit(Parity::plus, n), n) += wp * split.plus.amps[n];
        s.at(chain_slot_qubit(Parity::minus, n), n) += wm * split.minus.amps[n];
    }
    return s;
}

namespace detail {

// <n|D(beta)|m> for real beta via the Laguerre closed form. For n >= m:
//   sqrt(m!/n!) beta^{n-m} e^{-beta^2/2} L_m^{(n-m)}(beta^2),
// with <m|D|n> = (-1)^{n-m} <n|D|m>. The prefactor is accumulated as a
// product of beta/sqrt(j) factors to avoid factorial overflow.
inline double displacement_element(std::size_t n, std::size_t m, double beta) {
    if (n < m) {
        const double sgn = ((m - n) % 2 == 0) ? 1.0 : -1.0;
        return sgn * displacement_element(m, n, beta);
    }
    double pref = std::exp(-0.5 * beta * beta);
    for (std::size_t j = m + 1; j <= n; ++j) pref *= beta / std::sqrt(static_cast<double>(j));
    return pref *
           laguerre(static_cast<unsigned>(m), static_cast<unsigned>(n - m), beta * beta);
}

}  // namespace detail

// Matrix of D(beta) = exp(beta b† - beta b) for real beta in the truncated
// number basis, built element-wise from the Laguerre closed form (each entry
// is exact; no truncation-induced loss in interior elements).
inline Matrix displacement_matrix(double beta, std::size_t n_max) {
    if (!std::isfinite(beta))
        throw std::invalid_argument("displacement_matrix: beta must be finite");
    if (std::abs(beta) > 0.25 * std::sqrt(static_cast<double>(n_max)))
        throw TruncationError(
            "displacement_matrix: |beta| exceeds sqrt(n_max)/4; raise n_max");
    Matrix d(n_max, n_max);
    const double x = beta * beta;
    // Walk diagonals of constant k = n - m; one Laguerre recurrence each.
    for (std::size_t k = 0; k < n_max; ++k) {
        double pref = std::exp(-0.5 * x);
        for (std::size_t j = 1; j <= k; ++j) pref *= beta / std::sqrt(static_cast<double>(j));
        const double lower_sign = (k % 2 == 0) ? 1.0 : -1.0;
        double lm = 0.0;
        double l = 1.0;  // L_0^{(k)}
        for (std::size_t m = 0; m + k < n_max; ++m) {
            if (m >= 1) {
                const double next = ((2.0 * (m - 1) + k + 1.0 - x) * l -
                                     (static_cast<double>(m - 1) + k) * lm) /
                                    static_cast<double>(m);
                lm = l;
                l = next;
                pref *= std::sqrt(static_cast<double>(m) / static_cast<double>(m + k));
            }
            const double v = pref * l;
            d(m + k, m) = v;
            if (k > 0) d(m, m + k) = lower_sign * v;
        }
    }
    return d;
}

// Coherent state of mode b on chain p: amps[n] = e^{-|beta|^2/2} beta^n/sqrt(n!).
// Throws TruncationError when the truncation tail is unhealthy.
inline ChainState coherent_chain_state(Parity p, cplx beta, std::size_t n_max,
                                       double time_tag = 0.0) {
    ChainState s;
    s.parity = p;
    s.time_tag = time_tag;
    s.amps.resize(n_max);
    s.amps[0] = std::exp(-0.5 * std::norm(beta));
    for (std::size_t n = 1; n < n_max; ++n)
        s.amps[n] = s.amps[n - 1] * beta / std::sqrt(static_cast<double>(n));
    if (s.tail_mass() > 1e-10 || std::abs(norm_squared(s.amps) - 1.0) > 1e-10)
        throw TruncationError("coherent_chain_state: |beta|^2 too close to n_max; raise n_max");
    return s;
}

// ---------------------------------------------------------------------------
// Two qubits and a mode: chain-graph structure and the equal-coupling
// Hamiltonian. Configurations are ordered gg, ge, eg, ee; bit 1 is the first
// qubit, bit 0 the second.
// ---------------------------------------------------------------------------

enum class TwoQubitConfig : int { gg = 0, ge = 1, eg = 2, ee = 3 };

inline const char* to_string(TwoQubitConfig c) {
    switch (c) {
        case TwoQubitConfig::gg: return "gg";
        case TwoQubitConfig::ge: return "ge";
        case TwoQubitConfig::eg: return "eg";
        case TwoQubitConfig::ee: return "ee";
    }
    return "??";
}

inline TwoQubitConfig two_qubit_config_from_string(const std::string& s) {
    if (s == "gg") return TwoQubitConfig::gg;
    if (s == "ge") return TwoQubitConfig::ge;
    if (s == "eg") return TwoQubitConfig::eg;
    if (s == "ee") return TwoQubitConfig::ee;
    throw std::invalid_argument("two_qubit_config_from_string: expected gg|ge|eg|ee");
}

// Generalized parity sigma_z1 sigma_z2 (-1)^n.
inline int two_qubit_parity(TwoQubitConfig c, std::size_t n) {
    const int b = static_cast<int>(c);
    const int sz1 = (b & 2) ? +1 : -1;
    const int sz2 = (b & 1) ? +1 : -1;
    return sz1 * sz2 * ((n % 2 == 0) ? +1 : -1);
}

enum class CouplingKind { rotating, counter_rotating };

struct TwoQubitVertex {
    TwoQubitConfig config;
    std::size_t photons;
};

struct GraphEdge {
    std::size_t from;  // vertex indices
    std::size_t to;
    CouplingKind kind;
};

struct ChainGraph {
    std::vector<TwoQubitVertex> vertices;
    std::vector<GraphEdge> edges;
    std::vector<int> component;  // component label per vertex, 0-based
    int n_components = 0;

    std::size_t vertex_index(TwoQubitConfig c, std::size_t n) const {
        return 4 * n + static_cast<std::size_t>(c);
    }
};

// Graph of states connected by the couplings sigma_x^(i) (a + a†): one qubit
// flip together with one photon step. An edge whose qubit rises as the photon
// number rises is counter-rotating; the others are rotating.
inline ChainGraph build_two_qubit_graph(std::size_t n_levels) {
    if (n_levels < 2)
        throw std::invalid_argument("build_two_qubit_graph: n_levels must be >= 2");
    ChainGraph g;
    g.vertices.reserve(4 * n_levels);
    for (std::size_t n = 0; n < n_levels; ++n)
        for (int c = 0; c < 4; ++c)
            g.vertices.push_back({static_cast<TwoQubitConfig>(c), n});

    for (std::size_t n = 0; n + 1 < n_levels; ++n) {
        for (int c = 0; c < 4; ++c) {
            for (int qubit_bit : {2, 1}) {
                const int cf = c ^ qubit_bit;
                const bool qubit_rises = (cf & qubit_bit) != 0;
                g.edges.push_back({g.vertex_index(static_cast<TwoQubitConfig>(c), n),
                                   g.vertex_index(static_cast<TwoQubitConfig>(cf), n + 1),
                                   qubit_rises ? CouplingKind::counter_rotating
                                               : CouplingKind::rotating});
            }
        }
    }

    // Label connected components; traversal order fixed by vertex index.
    g.component.assign(g.vertices.size(), -1);
    std::vector<std::vector<std::size_t>> adj(g.vertices.size());
    for (const GraphEdge& e : g.edges) {
        adj[e.from].push_back(e.to);
        adj[e.to].push_back(e.from);
    }
    int label = 0;
    std::vector<std::size_t> stack;
    for (std::size_t v0 = 0; v0 < g.vertices.size(); ++v0) {
        if (g.component[v0] != -1) continue;
        stack.push_back(v0);
        g.component[v0] = label;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w : adj[v]) {
                if (g.component[w] == -1) {
                    g.component[w] = label;
                    stack.push_back(w);
                }
            }
        }
        ++label;
    }
    g.n_components = label;
    return g;
}

struct TwoQubitParams {
    double omega = 1.0;
    double omega0_1 = 0.0;
    double omega0_2 = 0.0;
    double g = 0.0;  // equal coupling for both qubits
    std::size_t n_levels = 8;
};

// Two-qubit Hamiltonian with equal couplings,
//   H = (omega0_1/2) sigma_z1 + (omega0_2/2) sigma_z2 + omega a†a
//       + g (sigma_x1 + sigma_x2)(a + a†),
// in the basis index 4 n + config.
inline Matrix build_two_qubit_hamiltonian(const TwoQubitParams& params) {
    if (!(params.omega > 0.0))
        throw std::invalid_argument("build_two_qubit_hamiltonian: omega must be positive");
    if (params.n_levels < 2)
        throw std::invalid_argument("build_two_qubit_hamiltonian: n_levels must be >= 2");
    const std::size_t dim = 4 * params.n_levels;
    Matrix h(dim, dim);
    auto idx = [](int c, std::size_t n) { return 4 * n + static_cast<std::size_t>(c); };
    for (std::size_t n = 0; n < params.n_levels; ++n) {
        for (int c = 0; c < 4; ++c) {
            const double sz1 = (c & 2) ? +0.5 : -0.5;
            const double sz2 = (c & 1) ? +0.5 : -0.5;
            h(idx(c, n), idx(c, n)) = params.omega * static_cast<double>(n) +
                                      params.omega0_1 * sz1 + params.omega0_2 * sz2;
        }
    }
    for (std::size_t n = 0; n + 1 < params.n_levels; ++n) {
        const double c0 = params.g * std::sqrt(static_cast<double>(n + 1));
        for (int c = 0; c < 4; ++c) {
            for (int qubit_bit : {2, 1}) {
                const int cf = c ^ qubit_bit;
                h(idx(c, n), idx(cf, n + 1)) = c0;
                h(idx(cf, n + 1), idx(c, n)) = c0;
            }
        }
    }
    return h;
}

}  // namespace rabi
