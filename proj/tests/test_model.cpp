#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <iostream>
#include <queue>
#include <vector>

#include "rabi/model.hpp"
#include "rabi/numerics.hpp"
#include "test_support.hpp"

using namespace rabi;
using Catch::Approx;

namespace {

// Test oracle: exponential of the displacement generator beta (b† - b) by
// scaling and squaring with a Taylor core. Independent of the Laguerre route.
Matrix expm_generator(double beta, std::size_t n) {
    Matrix g(n, n);
    for (std::size_t m = 0; m + 1 < n; ++m) {
        const double v = beta * std::sqrt(static_cast<double>(m + 1));
        g(m + 1, m) = v;
        g(m, m + 1) = -v;
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(g(i, j));
        norm = std::max(norm, row);
    }
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.25) {
        scale *= 0.5;
        ++squarings;
    }

    auto matmul = [n](const Matrix& a, const Matrix& b) {
        Matrix c(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const double aik = a(i, k);
                if (aik == 0.0) continue;
                for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    };

    Matrix scaled(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scaled(i, j) = g(i, j) * scale;

    Matrix result = Matrix::identity(n);
    Matrix term = Matrix::identity(n);
    for (int order = 1; order <= 24; ++order) {
        term = matmul(term, scaled);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                term(i, j) /= order;
                result(i, j) += term(i, j);
            }
    }
    for (int s = 0; s < squarings; ++s) result = matmul(result, result);
    return result;
}

}  // namespace

TEST_CASE("build_chain_hamiltonian matrix elements") {
    SECTION("free oscillator when g = 0, omega0 = 0") {
        const ModelParams params{1.0, 0.0, 0.0, 16};
        const SymTridiag h = build_chain_hamiltonian(params, Parity::plus);
        for (std::size_t n = 0; n < 16; ++n) REQUIRE(h.diag[n] == Approx(1.0 * n));
        for (double v : h.offdiag) REQUIRE(v == 0.0);
    }

    SECTION("qubit shift alternates sign along the chain") {
        const ModelParams params{1.0, 0.5, 0.0, 16};
        const SymTridiag h = build_chain_hamiltonian(params, Parity::plus);
        REQUIRE(h.diag[0] == Approx(-0.25));
        REQUIRE(h.diag[1] == Approx(1.25));  // omega*1 + 0.25
        const SymTridiag hm = build_chain_hamiltonian(params, Parity::minus);
        REQUIRE(hm.diag[0] == Approx(0.25));
    }

    SECTION("ladder factor g sqrt(n+1)") {
        const ModelParams params{1.0, 0.0, 2.0, 16};
        const SymTridiag h = build_chain_hamiltonian(params, Parity::plus);
        REQUIRE(h.offdiag[3] == Approx(4.0));  // 2 sqrt(4)
    }
}

TEST_CASE("build_tensor_hamiltonian matrix elements") {
    const ModelParams params{1.0, 0.8, 1.5, 8};
    const Matrix h = build_tensor_hamiltonian(params);
    const auto idx = TensorState::index;

    // counter-rotating path |g,2> -> |e,3>
    REQUIRE(h(idx(QubitLevel::excited, 3), idx(QubitLevel::ground, 2)) ==
            Approx(1.5 * std::sqrt(3.0)));
    // rotating path |g,2> -> |e,1>
    REQUIRE(h(idx(QubitLevel::excited, 1), idx(QubitLevel::ground, 2)) ==
            Approx(1.5 * std::sqrt(2.0)));
    REQUIRE(h(idx(QubitLevel::ground, 0), idx(QubitLevel::ground, 0)) == Approx(-0.4));
    // symmetric
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j) REQUIRE(h(i, j) == h(j, i));
}

TEST_CASE("parity_of") {
    REQUIRE(parity_of(QubitLevel::ground, 0) == Parity::plus);
    REQUIRE(parity_of(QubitLevel::excited, 0) == Parity::minus);
    REQUIRE(parity_of(QubitLevel::ground, 2) == Parity::plus);
    REQUIRE(parity_of(QubitLevel::excited, 1) == Parity::plus);
    REQUIRE(parity_of(QubitLevel::ground, 3) == Parity::minus);
}

TEST_CASE("tensor Hamiltonian never couples different parities") {
    const ModelParams params{1.0, 0.6, 2.0, 16};
    const Matrix h = build_tensor_hamiltonian(params);
    for (std::size_t na = 0; na < 16; ++na)
        for (QubitLevel qa : {QubitLevel::ground, QubitLevel::excited})
            for (std::size_t nb = 0; nb < 16; ++nb)
                for (QubitLevel qb : {QubitLevel::ground, QubitLevel::excited})
                    if (parity_of(qa, na) != parity_of(qb, nb))
                        REQUIRE(h(TensorState::index(qa, na), TensorState::index(qb, nb)) == 0.0);
}

TEST_CASE("tensor spectrum equals the union of the two chain spectra") {
    const ModelParams params{1.0, 0.5, 2.0, 64};
    const EigenPairs tensor = eig_sym_dense(build_tensor_hamiltonian(params));
    const EigenPairs plus = eig_sym_tridiag(build_chain_hamiltonian(params, Parity::plus));
    const EigenPairs minus = eig_sym_tridiag(build_chain_hamiltonian(params, Parity::minus));

    std::vector<double> chain_union;
    chain_union.insert(chain_union.end(), plus.values.begin(), plus.values.end());
    chain_union.insert(chain_union.end(), minus.values.begin(), minus.values.end());
    std::sort(chain_union.begin(), chain_union.end());

    const std::size_t keep = chain_union.size() * 9 / 10;  // discard the top 10%
    for (std::size_t l = 0; l < keep; ++l)
        REQUIRE(tensor.values[l] == Approx(chain_union[l]).margin(1e-9));
}

TEST_CASE("ladder action of b in chain coordinates") {
    // b |p, n> = sqrt(n) |p, n-1>: apply the chain-coordinate lowering matrix
    // to unit vectors.
    const std::size_t n_max = 12;
    for (std::size_t n = 1; n < n_max; ++n) {
        std::vector<cplx> e_n(n_max, cplx{0.0, 0.0});
        e_n[n] = 1.0;
        std::vector<cplx> lowered(n_max, cplx{0.0, 0.0});
        for (std::size_t m = 0; m + 1 < n_max; ++m)
            lowered[m] = std::sqrt(static_cast<double>(m + 1)) * e_n[m + 1];
        for (std::size_t m = 0; m < n_max; ++m) {
            const cplx expect = (m + 1 == n) ? cplx{std::sqrt(static_cast<double>(n)), 0.0}
                                             : cplx{0.0, 0.0};
            REQUIRE(std::abs(lowered[m] - expect) < 1e-15);
        }
    }
}

TEST_CASE("tensor_to_chain basis map") {
    const std::size_t n_max = 8;

    SECTION("|g,0_a> is the head of chain +1") {
        TensorState s;
        s.amps.assign(2 * n_max, cplx{0.0, 0.0});
        s.at(QubitLevel::ground, 0) = 1.0;
        const ChainSplit split = tensor_to_chain(s);
        REQUIRE(split.weight_plus == Approx(1.0));
        REQUIRE(split.weight_minus == 0.0);
        REQUIRE(std::abs(split.plus.amps[0] - cplx{1.0, 0.0}) < 1e-15);
    }

    SECTION("|g,2_a> sits at n_b = 2 of chain +1") {
        TensorState s;
        s.amps.assign(2 * n_max, cplx{0.0, 0.0});
        s.at(QubitLevel::ground, 2) = 1.0;
        const ChainSplit split = tensor_to_chain(s);
        REQUIRE(split.weight_plus == Approx(1.0));
        REQUIRE(std::abs(split.plus.amps[2] - cplx{1.0, 0.0}) < 1e-15);
    }

    SECTION("parity superposition splits half and half") {
        TensorState s;
        s.amps.assign(2 * n_max, cplx{0.0, 0.0});
        const double r = 1.0 / std::sqrt(2.0);
        s.at(QubitLevel::ground, 0) = r;
        s.at(QubitLevel::excited, 0) = r;
        const ChainSplit split = tensor_to_chain(s);
        REQUIRE(split.weight_plus == Approx(0.5));
        REQUIRE(split.weight_minus == Approx(0.5));
    }

    SECTION("round trip is the identity") {
        rabitest::Rng rng(0x5eed0011);
        for (int rep = 0; rep < 20; ++rep) {
            TensorState s;
            s.amps.resize(2 * n_max);
            for (cplx& a : s.amps) a = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
            const double nrm = std::sqrt(norm_squared(s.amps));
            for (cplx& a : s.amps) a /= nrm;
            const TensorState back = chain_to_tensor(tensor_to_chain(s));
            for (std::size_t i = 0; i < s.amps.size(); ++i)
                REQUIRE(std::abs(back.amps[i] - s.amps[i]) < 1e-14);
        }
    }
}

TEST_CASE("displacement_matrix") {
    SECTION("identity at beta = 0") {
        const Matrix d = displacement_matrix(0.0, 12);
        for (std::size_t i = 0; i < 12; ++i)
            for (std::size_t j = 0; j < 12; ++j)
                REQUIRE(d(i, j) == Approx(i == j ? 1.0 : 0.0).margin(1e-15));
    }

    SECTION("vacuum overlap against the coherent-state expansion") {
        // <0|D(beta)|0> is the vacuum amplitude of the coherent state |beta>.
        const double beta = 4.0;
        std::vector<double> coh(64);
        coh[0] = std::exp(-0.5 * beta * beta);
        for (std::size_t n = 1; n < coh.size(); ++n)
            coh[n] = coh[n - 1] * beta / std::sqrt(static_cast<double>(n));
        const Matrix d = displacement_matrix(beta, 256);
        REQUIRE(d(0, 0) == Approx(coh[0]).epsilon(1e-12));
        REQUIRE(d(0, 0) == Approx(std::exp(-8.0)).epsilon(1e-12));
        for (std::size_t n = 0; n < coh.size(); ++n)
            REQUIRE(d(n, 0) == Approx(coh[n]).margin(1e-13));
    }

    SECTION("<4|D(4)|4> against the Laguerre value and the generator exponential") {
        const Matrix d = displacement_matrix(4.0, 256);
        REQUIRE(d(4, 4) == Approx(705.0 * std::exp(-8.0)).epsilon(1e-12));
        const Matrix e = expm_generator(4.0, 96);
        REQUIRE(d(4, 4) == Approx(e(4, 4)).margin(1e-9));
    }

    SECTION("interior block agrees with the generator exponential") {
        const double beta = 1.2;
        const Matrix d = displacement_matrix(beta, 64);
        const Matrix e = expm_generator(beta, 64);
        for (std::size_t n = 0; n < 24; ++n)
            for (std::size_t m = 0; m < 24; ++m)
                REQUIRE(d(n, m) == Approx(e(n, m)).margin(1e-10));
    }

    SECTION("transpose symmetry (-1)^{n-m}") {
        const Matrix d = displacement_matrix(1.7, 64);
        for (std::size_t n = 0; n < 64; ++n)
            for (std::size_t m = 0; m < n; ++m) {
                const double sgn = ((n - m) % 2 == 0) ? 1.0 : -1.0;
                REQUIRE(d(m, n) == Approx(sgn * d(n, m)).margin(1e-14));
            }
    }

    SECTION("interior rows have unit norm") {
        // The displaced state of row n spreads over ~2 beta sqrt(n) levels, so
        // the unit-norm window must back off from the edge by a sqrt-scaled
        // margin, not a constant one.
        for (auto [beta, n_max] : {std::pair<double, std::size_t>{1.0, 128},
                                   std::pair<double, std::size_t>{2.0, 256}}) {
            const Matrix d = displacement_matrix(beta, n_max);
            const std::size_t cut = static_cast<std::size_t>(
                4.0 * beta * std::sqrt(static_cast<double>(n_max)) + 24.0);
            REQUIRE(cut < n_max);
            for (std::size_t n = 0; n + cut < n_max; ++n) {
                double row = 0.0;
                for (std::size_t m = 0; m < n_max; ++m) row += d(n, m) * d(n, m);
                REQUIRE(row == Approx(1.0).margin(1e-8));
            }
        }
    }

    SECTION("truncation precondition") {
        REQUIRE_THROWS_AS(displacement_matrix(4.0, 64), TruncationError);
    }
}

TEST_CASE("displacement elements vs the quoted smallness remark") {
    // Measured |Delta_nm| = |<n|D(4)|m>| around the resonant scale; recorded
    // because the magnitudes are not small (|Delta_44| ~ 0.24).
    const Matrix d = displacement_matrix(4.0, 256);
    std::cout << "measured |Delta_nm| at 2 beta0 = 4:";
    for (std::size_t n : {0, 3, 4, 5}) std::cout << " |D" << n << n << "|=" << std::abs(d(n, n));
    std::cout << " |D34|=" << std::abs(d(3, 4)) << "\n";
    CHECK(std::abs(d(4, 4)) > 0.2);  // far above 2^-8
}

TEST_CASE("coherent_chain_state") {
    const ChainState s = coherent_chain_state(Parity::plus, cplx{2.0, -1.0}, 128);
    REQUIRE(s.norm() == Approx(1.0).margin(1e-12));
    double mean = 0.0;
    for (std::size_t n = 0; n < s.amps.size(); ++n) mean += n * std::norm(s.amps[n]);
    REQUIRE(mean == Approx(5.0).margin(1e-9));  // |beta|^2
    REQUIRE_THROWS_AS(coherent_chain_state(Parity::plus, cplx{10.0, 0.0}, 32), TruncationError);
}

TEST_CASE("two-qubit chain graph") {
    const ChainGraph g = build_two_qubit_graph(6);

    SECTION("exactly two components for any level count") {
        REQUIRE(g.n_components == 2);
        REQUIRE(build_two_qubit_graph(2).n_components == 2);
        REQUIRE(build_two_qubit_graph(9).n_components == 2);
    }

    SECTION("breadth-first-search oracle agrees with component labels") {
        std::vector<std::vector<std::size_t>> adj(g.vertices.size());
        for (const GraphEdge& e : g.edges) {
            adj[e.from].push_back(e.to);
            adj[e.to].push_back(e.from);
        }
        std::vector<int> label(g.vertices.size(), -1);
        int next = 0;
        for (std::size_t v0 = 0; v0 < label.size(); ++v0) {
            if (label[v0] != -1) continue;
            std::queue<std::size_t> q;
            q.push(v0);
            label[v0] = next;
            while (!q.empty()) {
                const std::size_t v = q.front();
                q.pop();
                for (std::size_t w : adj[v])
                    if (label[w] == -1) {
                        label[w] = next;
                        q.push(w);
                    }
            }
            ++next;
        }
        REQUIRE(next == 2);
        REQUIRE(label == g.component);

        const std::size_t gg0 = g.vertex_index(TwoQubitConfig::gg, 0);
        const std::size_t ee0 = g.vertex_index(TwoQubitConfig::ee, 0);
        const std::size_t ge0 = g.vertex_index(TwoQubitConfig::ge, 0);
        REQUIRE(label[gg0] == label[ee0]);
        REQUIRE(label[gg0] != label[ge0]);
    }

    SECTION("components are the generalized-parity classes") {
        for (std::size_t v = 0; v < g.vertices.size(); ++v) {
            const int p = two_qubit_parity(g.vertices[v].config, g.vertices[v].photons);
            REQUIRE(g.component[v] == (p == 1 ? 0 : 1));
        }
    }

    SECTION("edge kinds follow the qubit direction") {
        for (const GraphEdge& e : g.edges) {
            const TwoQubitVertex& a = g.vertices[e.from];
            const TwoQubitVertex& b = g.vertices[e.to];
            REQUIRE(b.photons == a.photons + 1);
            const int flipped = static_cast<int>(a.config) ^ static_cast<int>(b.config);
            REQUIRE((flipped == 1 || flipped == 2));
            const bool rises = (static_cast<int>(b.config) & flipped) != 0;
            REQUIRE(e.kind ==
                    (rises ? CouplingKind::counter_rotating : CouplingKind::rotating));
        }
    }
}

TEST_CASE("two-qubit Hamiltonian commutes with the generalized parity") {
    TwoQubitParams params;
    params.omega0_1 = 0.4;
    params.omega0_2 = 0.7;
    params.g = 2.0;
    params.n_levels = 8;
    const Matrix h = build_two_qubit_hamiltonian(params);
    const std::size_t dim = 4 * params.n_levels;
    auto parity_at = [&](std::size_t i) {
        return two_qubit_parity(static_cast<TwoQubitConfig>(i % 4), i / 4);
    };
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if (parity_at(i) != parity_at(j)) REQUIRE(h(i, j) == 0.0);
}
