#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "neqc/rng.hpp"
#include "neqc/state.hpp"

namespace neqc {

/// Random-structure ansatz: an initial layer of Rz-Ry-Rz on every qubit
/// followed by L entangling blocks. Block l applies CZ to the ordered pair
/// entanglers[l] and then Ry, Rz to each qubit of the pair.
struct CircuitStructure {
    int n_qubits = 0;
    std::vector<std::pair<int, int>> entanglers;

    std::size_t block_count() const { return entanglers.size(); }

    /// 3N + 4L.
    std::size_t param_count() const {
        return 3 * static_cast<std::size_t>(n_qubits) + 4 * entanglers.size();
    }

    /// Throws if any pair repeats a qubit or indexes outside the register.
    void validate() const;
};

/// Angles in radians, laid out as:
///   [3i + 0]  first Rz on qubit i   (applied first)
///   [3i + 1]  Ry on qubit i
///   [3i + 2]  second Rz on qubit i
/// then 4 entries per block l, at offset 3N + 4l:
///   Ry on pair.first, Rz on pair.first, Ry on pair.second, Rz on pair.second
using ParamVector = std::vector<double>;

/// ceil(n^2 ln n), the block-count schedule used by the experiments.
int block_count(int n);

/// L ordered pairs of distinct qubits, drawn uniformly and independently
/// (repeats across blocks allowed).
CircuitStructure random_structure(int n, int blocks, Rng& rng);

/// Flat gate list for one circuit; shared by the evaluator and the
/// gradient sweep so both apply bitwise-identical operations.
struct GateOp {
    enum class Kind { Ry, Rz, Cz };
    Kind kind;
    int q0;
    int q1 = -1;         // CZ partner
    int param_index = -1; // -1 for CZ
};

std::vector<GateOp> gate_sequence(const CircuitStructure& c);

/// Runs the ansatz on `input`. Throws on parameter-length or qubit-count
/// mismatch.
State evaluate(const CircuitStructure& c, std::span<const double> params,
               State input);

/// JSON schema: {"n_qubits": N, "entanglers": [[a, b], ...]}.
std::string to_json(const CircuitStructure& c);
CircuitStructure structure_from_json(const std::string& text);

} // namespace neqc
