#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <random>

#include "ipolar/design.hpp"
#include "oracles.hpp"

using namespace ipolar;

TEST_CASE("j_function endpoints and monotonicity") {
    CHECK(j_function(0.0) == 0.0);
    CHECK(j_function(100.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(j_function(-0.1), std::invalid_argument);
    double prev = -1.0;
    for (double s = 0.0; s <= 20.0; s += 0.01) {
        const double v = j_function(s);
        CHECK(v >= prev);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        prev = v;
    }
}

TEST_CASE("j_function matches the quadrature oracle to 1e-9") {
    std::mt19937_64 rng(1);
    CHECK(std::abs(j_function(2.0) - oracles::j_gauss_hermite(2.0)) < 1e-9);
    for (int t = 0; t < 60; ++t) {
        const double sigma = (rng() % 10000) / 10000.0 * 12.0;
        CHECK(std::abs(j_function(sigma) - oracles::j_gauss_hermite(sigma)) < 1e-9);
    }
}

TEST_CASE("j_inverse round trip") {
    CHECK(j_inverse(0.0) == 0.0);
    CHECK_THROWS_AS(j_inverse(1.0), std::invalid_argument);
    CHECK_THROWS_AS(j_inverse(-0.5), std::invalid_argument);
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
        const double v = (rng() % 1000000) / 1000000.0 * 0.999;
        CHECK(std::abs(j_function(j_inverse(v)) - v) < 1e-8);
    }
    // sigma with J(sigma) = 0.5 against the oracle
    const double s_half = j_inverse(0.5);
    CHECK(std::abs(oracles::j_gauss_hermite(s_half) - 0.5) < 1e-8);
}

TEST_CASE("ga_evolve fixed points are exact") {
    for (int m : {1, 4, 10}) {
        for (double v : ga_evolve(0.0, m)) CHECK(v == 0.0);
        for (double v : ga_evolve(1.0, m)) CHECK(v == 1.0);
    }
}

TEST_CASE("ga_evolve conserves pairwise sums at every level") {
    for (double i0 : {0.3, 0.5, 0.9}) {
        std::vector<double> vals{i0};
        for (int level = 0; level < 8; ++level) {
            const auto next = ga_evolve(i0, level + 1);
            const auto cur = ga_evolve(i0, level);
            REQUIRE(next.size() == cur.size() * 2);
            for (std::size_t i = 0; i < cur.size(); ++i)
                CHECK(std::abs(next[2 * i] + next[2 * i + 1] - 2.0 * cur[i]) < 1e-8);
        }
    }
}

TEST_CASE("ga_evolve matches an independent recursion with the oracle J") {
    // straightforward re-implementation using the Gauss-Hermite J and plain
    // scalar bisection for its inverse
    auto j_inv_oracle = [](double v) {
        double lo = 0.0, hi = 50.0;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            (oracles::j_gauss_hermite(mid) < v ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double i0 = 0.5;
    std::vector<double> vals{i0};
    for (int level = 0; level < 3; ++level) {
        std::vector<double> next(vals.size() * 2);
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const double odd = oracles::j_gauss_hermite(std::sqrt(2.0) * j_inv_oracle(vals[i]));
            next[2 * i + 1] = odd;
            next[2 * i] = 2.0 * vals[i] - odd;
        }
        vals = std::move(next);
    }
    const auto lib = ga_evolve(i0, 3);
    REQUIRE(lib.size() == 8);
    for (int i = 0; i < 8; ++i) CHECK(std::abs(lib[i] - vals[i]) < 1e-7);
}

TEST_CASE("select_unfrozen reproduces the published (32,16) set at 0 dB design SNR") {
    const auto spec = select_unfrozen(5, 16, 1.0);
    CHECK(spec.unfrozen == std::vector<int>{11, 13, 14, 15, 19, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31});
}

TEST_CASE("select_unfrozen with k = N returns everything") {
    const auto spec = select_unfrozen(3, 8, 2.0);
    CHECK(spec.unfrozen == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("select_unfrozen agrees with quantized density evolution on (8,4)") {
    const auto spec = select_unfrozen(3, 4, 1.0);
    const auto perr = oracles::quantized_density_evolution(1.0, 3, 1001, 60.0);
    std::vector<int> order(8);
    for (int i = 0; i < 8; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return perr[a] < perr[b]; });
    std::vector<int> best(order.begin(), order.begin() + 4);
    std::sort(best.begin(), best.end());
    CHECK(spec.unfrozen == best);
}

TEST_CASE("select_unfrozen validates inputs and is deterministic") {
    CHECK_THROWS_AS(select_unfrozen(3, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(select_unfrozen(3, 9, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(select_unfrozen(3, 4, 0.0), std::invalid_argument);
    CHECK(select_unfrozen(6, 32, 0.8).unfrozen == select_unfrozen(6, 32, 0.8).unfrozen);
}

TEST_CASE("spec_from_sequence truncates a priority list") {
    const std::vector<int> seq{7, 6, 5, 3, 4, 2, 1, 0};
    const auto spec = spec_from_sequence(3, 4, seq);
    CHECK(spec.unfrozen == std::vector<int>{3, 5, 6, 7});
    CHECK_THROWS_AS(spec_from_sequence(3, 9, seq), std::invalid_argument);
    // out-of-range entries are skipped (sequences for larger N may be reused)
    const std::vector<int> wide{12, 7, 9, 6, 5};
    CHECK(spec_from_sequence(3, 3, wide).unfrozen == std::vector<int>{5, 6, 7});
}
