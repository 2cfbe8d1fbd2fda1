#pragma once

// Brute-force dense-matrix reference for the statevector kernels: every
// gate is lifted to a full 2^n x 2^n matrix via Kronecker products and
// circuits are evaluated by plain matrix multiplication. Exponentially
// slower than the production kernels, which is exactly why it makes a
// trustworthy oracle for n <= 4.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "neqc/circuit.hpp"
#include "neqc/state.hpp"

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Eigen::Matrix2cd ry_matrix(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    Eigen::Matrix2cd m;
    m << c, -s, s, c;
    return m;
}

inline Eigen::Matrix2cd rz_matrix(double theta) {
    Eigen::Matrix2cd m;
    m << std::polar(1.0, -theta / 2.0), 0.0, 0.0, std::polar(1.0, theta / 2.0);
    return m;
}

/// Lifts a one-qubit operator to the full register. Qubit 0 is the least
/// significant bit of the basis index, so it sits rightmost in the
/// Kronecker chain.
inline Mat lift(int n, int qubit, const Eigen::Matrix2cd& u) {
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    Mat full = Mat::Identity(1, 1);
    for (int q = n - 1; q >= 0; --q) {
        full = Eigen::kroneckerProduct(full, q == qubit ? u : id).eval();
    }
    return full;
}

inline Mat cz_full(int n, int a, int b) {
    const int dim = 1 << n;
    Mat m = Mat::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const bool both = ((i >> a) & 1) && ((i >> b) & 1);
        m(i, i) = both ? -1.0 : 1.0;
    }
    return m;
}

/// Full unitary of the production ansatz, assembled from the same gate
/// sequence the evaluator walks.
inline Mat circuit_matrix(const neqc::CircuitStructure& c,
                          std::span<const double> params) {
    const int n = c.n_qubits;
    Mat u = Mat::Identity(1 << n, 1 << n);
    for (const neqc::GateOp& op : neqc::gate_sequence(c)) {
        switch (op.kind) {
        case neqc::GateOp::Kind::Ry:
            u = lift(n, op.q0, ry_matrix(params[op.param_index])) * u;
            break;
        case neqc::GateOp::Kind::Rz:
            u = lift(n, op.q0, rz_matrix(params[op.param_index])) * u;
            break;
        case neqc::GateOp::Kind::Cz:
            u = cz_full(n, op.q0, op.q1) * u;
            break;
        }
    }
    return u;
}

inline Vec to_vec(const neqc::State& s) {
    Vec v(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        v(static_cast<Eigen::Index>(i)) = s[i];
    }
    return v;
}

} // namespace oracle
