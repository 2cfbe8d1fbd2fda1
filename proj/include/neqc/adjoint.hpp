#pragma once

#include <span>
#include <vector>

#include "neqc/circuit.hpp"
#include "neqc/state.hpp"

namespace neqc {

/// Cost value and its full parameter gradient, produced together.
struct CostGrad {
    double value = 0.0;
    std::vector<double> grad;
};

/// Adjoint-mode gradient of cost(evaluate(c, params, input)) with respect
/// to every circuit parameter. One forward sweep builds the final state;
/// one backward sweep walks the gate list in reverse, reading each
/// rotation's derivative off a (bra, ket) pair before peeling the gate off
/// both sides. Runs in O(gates * 2^n) total, against O(gates * 2^n) per
/// parameter for shift rules.
///
/// The value field goes through the same evaluate + cost path used by
/// gradient-free callers, so the two agree bit for bit.
CostGrad circuit_cost_grad(const CircuitStructure& c,
                           std::span<const double> params,
                           const State& input);

} // namespace neqc
