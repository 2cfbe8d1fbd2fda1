#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "neqc/rng.hpp"

namespace neqc {

using cx = std::complex<double>;

/// Largest supported register. Keeps the dense amplitude vector (16 bytes
/// per entry) at or below 1 MiB.
inline constexpr int kMaxQubits = 16;

/// Dense statevector of a pure n-qubit state. Qubit 0 is the least
/// significant bit of the basis index. Amplitudes are unit-norm at
/// construction and stay unit-norm (to 1e-10) under gate application.
class State {
public:
    /// |0...0> on n qubits.
    explicit State(int n_qubits);

    /// Takes ownership of an amplitude vector; must have length 2^n_qubits
    /// and unit L2 norm within 1e-10.
    State(int n_qubits, std::vector<cx> amplitudes);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }

    std::span<const cx> amplitudes() const { return amps_; }
    const cx& operator[](std::size_t i) const { return amps_[i]; }

    double norm() const;

    // In-place gate kernels. The value-returning wrappers below are the
    // public face; these exist so gradient sweeps can avoid copies.
    void ry(int qubit, double theta);
    void rz(int qubit, double theta);
    void cz(int a, int b);

private:
    int n_qubits_;
    std::vector<cx> amps_;

    void check_qubit(int qubit) const;
};

State zero_state(int n);

/// Haar-uniform random pure state: 2^n independent standard complex
/// Gaussian amplitudes, normalized.
State haar_random_state(int n, Rng& rng);

State apply_ry(State s, int qubit, double theta);
State apply_rz(State s, int qubit, double theta);
State apply_cz(State s, int a, int b);

/// Probability that measuring `qubit` yields 0.
double prob_zero(const State& s, int qubit);

/// 1 - (1/N) sum_i P(qubit i reads 0). Zero exactly on |0...0> up to a
/// global phase; one on |1...1>.
double cost(const State& s);

/// Squared overlap |<a|b>|^2.
double fidelity(const State& a, const State& b);

// Raw-buffer kernels shared by State and the adjoint gradient sweep, which
// works on non-normalized vectors (the bra carries the observable). No
// bounds checks: callers validate qubit indices and buffer length.
namespace detail {

void ry_kernel(std::span<cx> a, int qubit, double theta);
void rz_kernel(std::span<cx> a, int qubit, double theta);
void cz_kernel(std::span<cx> a, int q0, int q1);

} // namespace detail

} // namespace neqc
