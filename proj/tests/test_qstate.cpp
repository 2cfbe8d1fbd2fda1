#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "neqc/rng.hpp"
#include "neqc/state.hpp"

#include "support/dense_oracle.hpp"

using neqc::cx;
using neqc::State;

namespace {

constexpr double kPi = std::numbers::pi;

State plus_state() {
    const double r = 1.0 / std::sqrt(2.0);
    return State(1, {cx{r, 0.0}, cx{r, 0.0}});
}

double max_abs_diff(const State& a, const State& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

} // namespace

TEST_CASE("zero state puts all amplitude on basis index 0") {
    const State s1 = neqc::zero_state(1);
    REQUIRE(s1.dim() == 2);
    CHECK(s1[0] == cx{1.0, 0.0});
    CHECK(s1[1] == cx{0.0, 0.0});

    const State s3 = neqc::zero_state(3);
    REQUIRE(s3.dim() == 8);
    CHECK(s3[0] == cx{1.0, 0.0});
    for (std::size_t i = 1; i < 8; ++i) {
        CHECK(s3[i] == cx{0.0, 0.0});
    }
}

TEST_CASE("qubit count outside [1, 16] is rejected") {
    CHECK_THROWS_AS(neqc::zero_state(0), std::invalid_argument);
    CHECK_THROWS_AS(neqc::zero_state(-2), std::invalid_argument);
    CHECK_THROWS_AS(neqc::zero_state(17), std::invalid_argument);
    CHECK(neqc::zero_state(16).dim() == std::size_t{1} << 16);
}

TEST_CASE("state construction validates length and norm") {
    CHECK_THROWS_AS(State(2, {cx{1.0, 0.0}, cx{0.0, 0.0}}),
                    std::invalid_argument); // length 2 != 4
    CHECK_THROWS_AS(State(1, {cx{0.8, 0.0}, cx{0.0, 0.0}}),
                    std::invalid_argument); // norm 0.8
    const double r = 1.0 / std::sqrt(2.0);
    CHECK_NOTHROW(State(1, {cx{r, 0.0}, cx{0.0, r}}));
}

TEST_CASE("haar states are unit norm and seed-deterministic") {
    neqc::Rng rng1(99);
    neqc::Rng rng2(99);
    const State a = neqc::haar_random_state(3, rng1);
    const State b = neqc::haar_random_state(3, rng2);
    CHECK(std::abs(a.norm() - 1.0) < 1e-10);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        CHECK(a[i] == b[i]); // bitwise: same seed, same stream
    }

    neqc::Rng rng3(100);
    const State c = neqc::haar_random_state(3, rng3);
    CHECK(max_abs_diff(a, c) > 1e-3); // different seed actually moved
}

TEST_CASE("mean haar fidelity matches the analytic 2^-n") {
    // E[F] = 1/d for Haar pairs; Var[F] = 2/(d(d+1)) - 1/d^2. With d = 8
    // and 5000 pairs the 3-sigma band is ~4.7e-3 wide.
    const int n = 3;
    const int pairs = 5000;
    const double d = 8.0;
    neqc::Rng rng(2024);
    double sum = 0.0;
    for (int i = 0; i < pairs; ++i) {
        const State a = neqc::haar_random_state(n, rng);
        const State b = neqc::haar_random_state(n, rng);
        sum += neqc::fidelity(a, b);
    }
    const double mean = sum / pairs;
    const double var = 2.0 / (d * (d + 1.0)) - 1.0 / (d * d);
    const double three_se = 3.0 * std::sqrt(var / pairs);
    CHECK(std::abs(mean - 1.0 / d) < three_se);
}

TEST_CASE("ry flips |0> to |1> at theta = pi") {
    const State s = neqc::apply_ry(neqc::zero_state(1), 0, kPi);
    CHECK(std::abs(s[0]) < 1e-12);
    CHECK(std::abs(s[1] - cx{1.0, 0.0}) < 1e-12);
}

TEST_CASE("rz only rotates phases") {
    neqc::Rng rng(7);
    const State s = neqc::haar_random_state(2, rng);
    const State t = neqc::apply_rz(s, 1, 0.7331);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        CHECK(std::abs(std::abs(t[i]) - std::abs(s[i])) < 1e-12);
    }
}

TEST_CASE("cz is symmetric in its qubits") {
    neqc::Rng rng(8);
    const State s = neqc::haar_random_state(3, rng);
    const State ab = neqc::apply_cz(s, 0, 2);
    const State ba = neqc::apply_cz(s, 2, 0);
    CHECK(max_abs_diff(ab, ba) == 0.0);
}

TEST_CASE("gate index validation") {
    const State s = neqc::zero_state(2);
    CHECK_THROWS_AS(neqc::apply_ry(s, 2, 0.1), std::out_of_range);
    CHECK_THROWS_AS(neqc::apply_rz(s, -1, 0.1), std::out_of_range);
    CHECK_THROWS_AS(neqc::apply_cz(s, 0, 2), std::out_of_range);
    CHECK_THROWS_AS(neqc::apply_cz(s, 1, 1), std::invalid_argument);
}

TEST_CASE("gates preserve the norm") {
    neqc::Rng rng(11);
    State s = neqc::haar_random_state(4, rng);
    for (int i = 0; i < 50; ++i) {
        const int q = static_cast<int>(rng.uniform_int(4));
        s = neqc::apply_ry(s, q, rng.uniform(-6.0, 6.0));
        s = neqc::apply_rz(s, q, rng.uniform(-6.0, 6.0));
        const int p = static_cast<int>(rng.uniform_int(3));
        s = neqc::apply_cz(s, q, p >= q ? p + 1 : p);
    }
    CHECK(std::abs(s.norm() - 1.0) < 1e-10);
}

TEST_CASE("rz commutes with cz on a shared qubit") {
    neqc::Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const State s = neqc::haar_random_state(3, rng);
        const double theta = rng.uniform(-6.0, 6.0);
        const State rz_first =
            neqc::apply_cz(neqc::apply_rz(s, 1, theta), 1, 2);
        const State cz_first =
            neqc::apply_rz(neqc::apply_cz(s, 1, 2), 1, theta);
        CHECK(max_abs_diff(rz_first, cz_first) < 1e-12);
    }
}

TEST_CASE("prob_zero basics") {
    const State z = neqc::zero_state(3);
    CHECK(neqc::prob_zero(z, 0) == 1.0);
    CHECK(neqc::prob_zero(z, 2) == 1.0);
    CHECK_THROWS_AS(neqc::prob_zero(z, 3), std::out_of_range);

    CHECK(std::abs(neqc::prob_zero(plus_state(), 0) - 0.5) < 1e-12);

    neqc::Rng rng(17);
    const State h = neqc::haar_random_state(3, rng);
    for (int q = 0; q < 3; ++q) {
        const double p0 = neqc::prob_zero(h, q);
        CHECK(p0 >= 0.0);
        CHECK(p0 <= 1.0);
    }
}

TEST_CASE("cost hits its exact extremes") {
    CHECK(neqc::cost(neqc::zero_state(3)) == 0.0);

    State ones = neqc::zero_state(3);
    for (int q = 0; q < 3; ++q) {
        ones = neqc::apply_ry(ones, q, kPi);
    }
    CHECK(neqc::cost(ones) == 1.0);
}

TEST_CASE("cost of a half-excited product state") {
    const double r = 1.0 / std::sqrt(2.0);
    const State s(2, {cx{r, 0.0}, cx{r, 0.0}, cx{0.0, 0.0}, cx{0.0, 0.0}});
    CHECK(std::abs(neqc::cost(s) - 0.25) < 1e-15);
}

TEST_CASE("cost equals one minus the mean zero-probability") {
    neqc::Rng rng(19);
    const State s = neqc::haar_random_state(4, rng);
    double mean_p0 = 0.0;
    for (int q = 0; q < 4; ++q) {
        mean_p0 += neqc::prob_zero(s, q);
    }
    mean_p0 /= 4.0;
    CHECK(std::abs(neqc::cost(s) - (1.0 - mean_p0)) < 1e-12);
}

TEST_CASE("cost ignores a global phase") {
    neqc::Rng rng(23);
    const State s = neqc::haar_random_state(3, rng);
    const double base = neqc::cost(s);

    // Exactly representable phases leave |a|^2 bit-identical.
    for (const cx phase : {cx{-1.0, 0.0}, cx{0.0, 1.0}, cx{0.0, -1.0}}) {
        std::vector<cx> amps(s.amplitudes().begin(), s.amplitudes().end());
        for (cx& a : amps) {
            a *= phase;
        }
        CHECK(neqc::cost(State(3, std::move(amps))) == base);
    }

    std::vector<cx> amps(s.amplitudes().begin(), s.amplitudes().end());
    for (cx& a : amps) {
        a *= std::polar(1.0, 0.9182);
    }
    CHECK(std::abs(neqc::cost(State(3, std::move(amps))) - base) < 1e-12);
}

TEST_CASE("fidelity basics") {
    neqc::Rng rng(29);
    const State a = neqc::haar_random_state(3, rng);
    CHECK(std::abs(neqc::fidelity(a, a) - 1.0) < 1e-12);

    const State zero = neqc::zero_state(1);
    const State one = neqc::apply_ry(zero, 0, kPi);
    CHECK(neqc::fidelity(zero, one) < 1e-12);

    const State b = neqc::haar_random_state(3, rng);
    CHECK(neqc::fidelity(a, b) == neqc::fidelity(b, a));
    CHECK_THROWS_AS(neqc::fidelity(a, zero), std::invalid_argument);
}

TEST_CASE("kernels agree with the dense matrix oracle up to n = 4") {
    neqc::Rng rng(31);
    for (int n = 1; n <= 4; ++n) {
        State s = neqc::haar_random_state(n, rng);
        oracle::Vec v = oracle::to_vec(s);
        for (int step = 0; step < 20; ++step) {
            const int q = static_cast<int>(rng.uniform_int(n));
            const int kind = static_cast<int>(rng.uniform_int(n > 1 ? 3 : 2));
            const double theta = rng.uniform(-6.0, 6.0);
            if (kind == 0) {
                s = neqc::apply_ry(s, q, theta);
                v = oracle::lift(n, q, oracle::ry_matrix(theta)) * v;
            } else if (kind == 1) {
                s = neqc::apply_rz(s, q, theta);
                v = oracle::lift(n, q, oracle::rz_matrix(theta)) * v;
            } else {
                const int r = static_cast<int>(rng.uniform_int(n - 1));
                const int partner = r >= q ? r + 1 : r;
                s = neqc::apply_cz(s, q, partner);
                v = oracle::cz_full(n, q, partner) * v;
            }
        }
        double max_diff = 0.0;
        for (std::size_t i = 0; i < s.dim(); ++i) {
            max_diff = std::max(
                max_diff, std::abs(s[i] - v(static_cast<Eigen::Index>(i))));
        }
        CHECK(max_diff < 1e-12);
    }
}
