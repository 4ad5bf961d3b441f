#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "rabi/analytic.hpp"
#include "rabi/dynamics.hpp"
#include "test_support.hpp"

using namespace rabi;
using Catch::Approx;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("beta_of_t") {
    REQUIRE(std::abs(beta_of_t(2.0, 1.0, 0.0)) < 1e-15);
    const cplx apex = beta_of_t(2.0, 1.0, kPi);
    REQUIRE(apex.real() == Approx(-4.0).margin(1e-12));
    REQUIRE(apex.imag() == Approx(0.0).margin(1e-12));
    REQUIRE(std::abs(beta_of_t(2.0, 1.0, 2.0 * kPi)) < 1e-12);  // orbit closes
    REQUIRE(std::abs(beta_of_t(1.3, 0.7, 2.0 * kPi / 0.7)) < 1e-12);
}

TEST_CASE("revival_probability_w0_zero") {
    SECTION("full revivals at multiples of the period") {
        for (int k = 1; k <= 3; ++k)
            REQUIRE(revival_probability_w0_zero(2.0, 1.0, 2.0 * kPi * k) ==
                    Approx(1.0).margin(1e-12));
    }
    SECTION("collapse floor at half period") {
        REQUIRE(revival_probability_w0_zero(2.0, 1.0, kPi) ==
                Approx(std::exp(-16.0)).epsilon(1e-12));
    }
    SECTION("uncoupled limit") {
        for (double t : {0.0, 0.4, 2.9, 11.0})
            REQUIRE(revival_probability_w0_zero(0.0, 1.0, t) == 1.0);
    }
    SECTION("exact periodicity") {
        rabitest::Rng rng(0x5eed0021);
        for (int rep = 0; rep < 50; ++rep) {
            const double t = rng.uniform(0.0, 20.0);
            const double a = revival_probability_w0_zero(2.0, 1.0, t);
            const double b = revival_probability_w0_zero(2.0, 1.0, t + 2.0 * kPi);
            REQUIRE(a == Approx(b).margin(1e-14));
        }
    }
}

TEST_CASE("exact_state_w0_zero") {
    const ModelParams params{1.0, 0.0, 2.0, 128};

    SECTION("rejects omega0 != 0") {
        const ModelParams bad{1.0, 0.1, 2.0, 128};
        REQUIRE_THROWS_AS(exact_state_w0_zero(bad, Parity::plus, 1.0), std::invalid_argument);
    }

    SECTION("t = 0 is the chain ground slot") {
        const ChainState s = exact_state_w0_zero(params, Parity::plus, 0.0);
        REQUIRE(std::abs(s.amps[0] - cplx{1.0, 0.0}) < 1e-14);
        REQUIRE(s.norm() == Approx(1.0).margin(1e-12));
    }

    SECTION("photon statistics at the apex are Poissonian with mean 16") {
        const ChainState s = exact_state_w0_zero(params, Parity::plus, kPi);
        double mean = 0.0;
        for (std::size_t n = 0; n < s.amps.size(); ++n) mean += n * std::norm(s.amps[n]);
        REQUIRE(mean == Approx(16.0).margin(1e-9));
        double pw = std::exp(-16.0);
        for (std::size_t n = 0; n < 40; ++n) {
            REQUIRE(std::norm(s.amps[n]) == Approx(pw).epsilon(1e-9).margin(1e-18));
            pw *= 16.0 / (n + 1.0);
        }
    }

    SECTION("matches spectral propagation, including the global phase") {
        const Propagator prop =
            make_propagator(params, Parity::plus, rabitest::basis_state(Parity::plus, 0, 128));
        for (double t : {0.37, 1.9, kPi, 5.2}) {
            const ChainState a = exact_state_w0_zero(params, Parity::plus, t);
            const ChainState b = evolve(prop, t);
            double worst = 0.0;
            for (std::size_t n = 0; n < 128; ++n)
                worst = std::max(worst, std::abs(a.amps[n] - b.amps[n]));
            REQUIRE(worst < 1e-8);
        }
    }

    SECTION("vacuum overlap reproduces the closed-form revival probability") {
        rabitest::Rng rng(0x5eed0022);
        for (int rep = 0; rep < 10; ++rep) {
            const double t = rng.uniform(0.0, 4.0 * kPi);
            const ChainState s = exact_state_w0_zero(params, Parity::plus, t);
            REQUIRE(std::norm(s.amps[0]) ==
                    Approx(revival_probability_w0_zero(2.0, 1.0, t)).margin(1e-12));
        }
    }

    SECTION("truncation overflow") {
        const ModelParams tight{1.0, 0.0, 3.0, 32};  // orbit reaches |beta|^2 = 36
        REQUIRE_THROWS_AS(exact_state_w0_zero(tight, Parity::plus, kPi), TruncationError);
    }
}

TEST_CASE("perturbative_energy") {
    const ModelParams params{1.0, 0.3, 2.0, 128};

    SECTION("all corrections vanish at omega0 = 0") {
        const ModelParams free{1.0, 0.0, 2.0, 128};
        for (int order : {0, 1, 2})
            for (std::size_t n : {0, 1, 4, 9})
                REQUIRE(perturbative_energy(free, Parity::plus, n, order).energy ==
                        Approx(static_cast<double>(n) - 4.0).margin(1e-12));
    }

    SECTION("first-order detuning at the resonant level") {
        const PerturbedLevel lvl = perturbative_energy(params, Parity::plus, 4, 1);
        REQUIRE(lvl.delta == Approx(705.0 * std::exp(-8.0) / 2.0).epsilon(1e-10));
        REQUIRE(lvl.energy == Approx(4.0 - 4.0 - 0.3 * lvl.delta).margin(1e-12));
    }

    SECTION("ground-level detuning e^{-8}/2") {
        const PerturbedLevel lvl = perturbative_energy(params, Parity::plus, 0, 1);
        REQUIRE(lvl.delta == Approx(std::exp(-8.0) / 2.0).epsilon(1e-12));
    }

    SECTION("order-1 shift is bounded by omega0/2") {
        for (std::size_t n = 0; n < 24; ++n) {
            const double e0 = perturbative_energy(params, Parity::plus, n, 0).energy;
            const double e1 = perturbative_energy(params, Parity::plus, n, 1).energy;
            REQUIRE(std::abs(e1 - e0) <= 0.5 * params.omega0 + 1e-15);
        }
    }

    SECTION("parity flip negates the first-order detuning") {
        for (std::size_t n = 0; n < 10; ++n) {
            const double dp = perturbative_energy(params, Parity::plus, n, 1).delta;
            const double dm = perturbative_energy(params, Parity::minus, n, 1).delta;
            REQUIRE(dp == Approx(-dm).margin(1e-15));
        }
    }

    SECTION("second order converges to the exact spectrum") {
        for (double w0 : {0.1, 0.2}) {
            const ModelParams p{1.0, w0, 2.0, 256};
            const EigenPairs exact = eig_sym_tridiag(build_chain_hamiltonian(p, Parity::plus));
            const double bound = 3.0 * w0 * w0 * w0;
            for (std::size_t n = 0; n <= 12; ++n) {
                const double e2 = perturbative_energy(p, Parity::plus, n, 2).energy;
                REQUIRE(std::abs(e2 - exact.values[n]) <= bound);
            }
        }
    }

    SECTION("preconditions") {
        REQUIRE_THROWS_AS(perturbative_energy(params, Parity::plus, 120, 1),
                          std::invalid_argument);
        REQUIRE_THROWS_AS(perturbative_energy(params, Parity::plus, 0, 3),
                          std::invalid_argument);
    }
}

TEST_CASE("resonant_level") {
    REQUIRE(resonant_level(ModelParams{1.0, 0.3, 2.0, 128}, 0) == 4);
    REQUIRE(resonant_level(ModelParams{1.0, 0.0, 0.0, 128}, 3) == 3);
    REQUIRE(resonant_level(ModelParams{1.0, 0.0, 1.5, 128}, 0) == 2);  // 2.25 -> 2
    // exact half-integer rounds up: beta0^2 = 2.5
    REQUIRE(resonant_level(ModelParams{1.0, 0.0, std::sqrt(2.5), 128}, 0) == 3);
    REQUIRE(resonant_level(ModelParams{1.0, 0.0, 2.0, 128}, 2) == 6);
}

TEST_CASE("two_mode_state") {
    const ModelParams params{1.0, 0.3, 2.0, 128};

    SECTION("t = 0 returns the initial state") {
        const ChainState s = two_mode_state(params, 0.0);
        REQUIRE(std::abs(s.amps[0] - cplx{1.0, 0.0}) < 1e-12);
        REQUIRE(s.norm() == Approx(1.0).margin(1e-12));
    }

    SECTION("omega0 = 0 reduces to the exact orbit state") {
        const ModelParams free{1.0, 0.0, 2.0, 128};
        for (double t : {0.9, 2.7, 5.5}) {
            const ChainState a = two_mode_state(free, t);
            const ChainState b = exact_state_w0_zero(free, Parity::plus, t);
            for (std::size_t n = 0; n < 128; ++n)
                REQUIRE(std::abs(a.amps[n] - b.amps[n]) < 1e-12);
        }
    }

    SECTION("resonant-level weight is the Poisson mass at N^r") {
        const double psi = displaced_vacuum_overlap(2.0, 4);
        const double poisson = std::exp(-4.0) * 256.0 / 24.0;  // e^{-4} 4^4/4!
        REQUIRE(psi * psi == Approx(poisson).epsilon(1e-12));
        REQUIRE(psi * psi == Approx(0.19536681481316467).epsilon(1e-12));
    }

    SECTION("stays normalized at all times") {
        for (double t : {0.3, 1.0, 3.9, 6.0, 12.5})
            REQUIRE(two_mode_state(params, t).norm() == Approx(1.0).margin(1e-10));
    }
}

TEST_CASE("two_mode_revival") {
    const double T = 2.0 * kPi;

    SECTION("t = 0 gives 1") {
        REQUIRE(two_mode_revival(ModelParams{1.0, 0.5, 2.0, 128}, 0.0) ==
                Approx(1.0).margin(1e-14));
    }

    SECTION("omega0 = 0 is the closed-form revival for all t") {
        const ModelParams free{1.0, 0.0, 2.0, 128};
        rabitest::Rng rng(0x5eed0031);
        for (int rep = 0; rep < 30; ++rep) {
            const double t = rng.uniform(0.0, 3.0 * T);
            REQUIRE(two_mode_revival(free, t) ==
                    Approx(revival_probability_w0_zero(2.0, 1.0, t)).margin(1e-13));
        }
    }

    SECTION("half-phase value at the first revival") {
        // Direct evaluation of the printed formula at t = T, omega0 = 0.3:
        // 1 + 2 e^{-4} (4^4/4!) [cos(0.3 * delta_4 * pi) - 1], delta_4 = 705 e^-8 / 2.
        const double delta4 = 705.0 * std::exp(-8.0) / 2.0;
        const double pref = 2.0 * std::exp(-4.0) * 256.0 / 24.0;
        const double oracle = 1.0 + pref * (std::cos(0.3 * delta4 * kPi) - 1.0);
        REQUIRE(oracle == Approx(0.99758).margin(5e-6));
        REQUIRE(two_mode_revival(ModelParams{1.0, 0.3, 2.0, 128}, T, DetuningPhase::half) ==
                Approx(oracle).margin(1e-12));
    }

    SECTION("full-phase convention tracks the two-mode state overlap") {
        // The printed half-phase formula drifts from the state it was derived
        // from; the full phase stays within a few percent (ledger item).
        for (double w0 : {0.3, 0.5}) {
            const ModelParams p{1.0, w0, 2.0, 128};
            double worst_2T = 0.0, worst_3T = 0.0;
            for (int i = 0; i <= 600; ++i) {
                const double t = 3.0 * T * i / 600.0;
                const ChainState s = two_mode_state(p, t);
                const double overlap = std::norm(s.amps[0]);
                const double dev = std::abs(two_mode_revival(p, t) - overlap);
                if (t <= 2.0 * T) worst_2T = std::max(worst_2T, dev);
                worst_3T = std::max(worst_3T, dev);
            }
            if (w0 <= 0.3) REQUIRE(worst_2T <= 0.02);
            REQUIRE(worst_3T <= 0.06);
        }
    }
}

TEST_CASE("perturbative_revival") {
    const double T = 2.0 * kPi;

    SECTION("order 0 reproduces the closed-form revival at any omega0") {
        const ModelParams p{1.0, 0.4, 2.0, 128};
        rabitest::Rng rng(0x5eed0032);
        for (int rep = 0; rep < 20; ++rep) {
            const double t = rng.uniform(0.0, 2.0 * T);
            REQUIRE(perturbative_revival(p, Parity::plus, t, 0) ==
                    Approx(revival_probability_w0_zero(2.0, 1.0, t)).margin(1e-10));
        }
    }

    SECTION("order 1 at omega0 = 0 equals order 0") {
        const ModelParams p{1.0, 0.0, 2.0, 128};
        for (double t : {0.7, 3.3, 6.1})
            REQUIRE(perturbative_revival(p, Parity::plus, t, 1) ==
                    Approx(perturbative_revival(p, Parity::plus, t, 0)).margin(1e-12));
    }
}
