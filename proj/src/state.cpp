#include "neqc/state.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace neqc {

namespace {

void check_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in [1, " +
                                    std::to_string(kMaxQubits) + "], got " +
                                    std::to_string(n));
    }
}

} // namespace

State::State(int n_qubits) : n_qubits_(n_qubits) {
    check_qubit_count(n_qubits);
    amps_.assign(std::size_t{1} << n_qubits, cx{0.0, 0.0});
    amps_[0] = cx{1.0, 0.0};
}

State::State(int n_qubits, std::vector<cx> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    check_qubit_count(n_qubits);
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("amplitude vector length must be 2^n");
    }
    if (std::abs(norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("amplitude vector is not unit norm");
    }
}

double State::norm() const {
    double sum = 0.0;
    for (const cx& a : amps_) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

void State::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits_) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) +
                                " out of range for " +
                                std::to_string(n_qubits_) + " qubits");
    }
}

void State::ry(int qubit, double theta) {
    check_qubit(qubit);
    detail::ry_kernel(amps_, qubit, theta);
}

void State::rz(int qubit, double theta) {
    check_qubit(qubit);
    detail::rz_kernel(amps_, qubit, theta);
}

void State::cz(int a, int b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) {
        throw std::invalid_argument("cz requires two distinct qubits");
    }
    detail::cz_kernel(amps_, a, b);
}

namespace detail {

void ry_kernel(std::span<cx> a, int qubit, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const std::size_t step = std::size_t{1} << qubit;
    for (std::size_t base = 0; base < a.size(); base += 2 * step) {
        for (std::size_t i = base; i < base + step; ++i) {
            const cx a0 = a[i];
            const cx a1 = a[i + step];
            a[i] = c * a0 - s * a1;
            a[i + step] = s * a0 + c * a1;
        }
    }
}

void rz_kernel(std::span<cx> a, int qubit, double theta) {
    const cx phase0 = std::polar(1.0, -theta / 2.0);
    const cx phase1 = std::polar(1.0, theta / 2.0);
    const std::size_t step = std::size_t{1} << qubit;
    for (std::size_t base = 0; base < a.size(); base += 2 * step) {
        for (std::size_t i = base; i < base + step; ++i) {
            a[i] *= phase0;
            a[i + step] *= phase1;
        }
    }
}

void cz_kernel(std::span<cx> a, int q0, int q1) {
    const std::size_t mask =
        (std::size_t{1} << q0) | (std::size_t{1} << q1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((i & mask) == mask) {
            a[i] = -a[i];
        }
    }
}

} // namespace detail

State zero_state(int n) { return State(n); }

State haar_random_state(int n, Rng& rng) {
    check_qubit_count(n);
    std::vector<cx> amps(std::size_t{1} << n);
    double sum = 0.0;
    for (cx& a : amps) {
        a = cx{rng.normal(), rng.normal()};
        sum += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(sum);
    for (cx& a : amps) {
        a *= inv;
    }
    return State(n, std::move(amps));
}

State apply_ry(State s, int qubit, double theta) {
    s.ry(qubit, theta);
    return s;
}

State apply_rz(State s, int qubit, double theta) {
    s.rz(qubit, theta);
    return s;
}

State apply_cz(State s, int a, int b) {
    s.cz(a, b);
    return s;
}

double prob_zero(const State& s, int qubit) {
    if (qubit < 0 || qubit >= s.n_qubits()) {
        throw std::out_of_range("qubit index out of range");
    }
    const std::size_t bit = std::size_t{1} << qubit;
    double p = 0.0;
    const auto amps = s.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & bit) == 0) {
            p += std::norm(amps[i]);
        }
    }
    return p;
}

double cost(const State& s) {
    // C = 1 - (1/N) sum_i P(bit i = 0) = (1/N) sum_k popcount(k) |a_k|^2.
    // The popcount form makes C(|0...0>) = 0 and C(|1...1>) = 1 exact.
    double acc = 0.0;
    const auto amps = s.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (const int ones = std::popcount(i); ones != 0) {
            acc += static_cast<double>(ones) * std::norm(amps[i]);
        }
    }
    return acc / static_cast<double>(s.n_qubits());
}

double fidelity(const State& a, const State& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("fidelity requires equal qubit counts");
    }
    cx inner{0.0, 0.0};
    const auto pa = a.amplitudes();
    const auto pb = b.amplitudes();
    for (std::size_t i = 0; i < pa.size(); ++i) {
        inner += std::conj(pa[i]) * pb[i];
    }
    return std::norm(inner);
}

} // namespace neqc
