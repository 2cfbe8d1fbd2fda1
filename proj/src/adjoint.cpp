#include "neqc/adjoint.hpp"

#include <bit>
#include <cstddef>

namespace neqc {

namespace {

// For a rotation G(t) = exp(-i t P / 2) sitting last in the circuit prefix,
// dC/dt = Im <bra| P |ket>, where |ket> is the state just after the gate
// and <bra| is the observable-weighted final state pulled back through the
// gates above it. The two routines below evaluate that inner product for
// P = Y and P = Z on one qubit.

double ry_term(std::span<const cx> bra, std::span<const cx> ket, int qubit) {
    const std::size_t step = std::size_t{1} << qubit;
    double acc = 0.0;
    for (std::size_t base = 0; base < ket.size(); base += 2 * step) {
        for (std::size_t i = base; i < base + step; ++i) {
            // Im <b|Y|k> over one pair reduces to Re(b1* k0 - b0* k1).
            acc += (std::conj(bra[i + step]) * ket[i] -
                    std::conj(bra[i]) * ket[i + step])
                       .real();
        }
    }
    return acc;
}

double rz_term(std::span<const cx> bra, std::span<const cx> ket, int qubit) {
    const std::size_t bit = std::size_t{1} << qubit;
    double acc = 0.0;
    for (std::size_t i = 0; i < ket.size(); ++i) {
        const double term = (std::conj(bra[i]) * ket[i]).imag();
        acc += (i & bit) == 0 ? term : -term;
    }
    return acc;
}

} // namespace

CostGrad circuit_cost_grad(const CircuitStructure& c,
                           std::span<const double> params,
                           const State& input) {
    const State final_state = evaluate(c, params, input);

    CostGrad out;
    out.value = cost(final_state);
    out.grad.assign(params.size(), 0.0);

    std::vector<cx> ket(final_state.amplitudes().begin(),
                        final_state.amplitudes().end());
    std::vector<cx> bra(ket.size());
    const double inv_n = 1.0 / static_cast<double>(c.n_qubits);
    for (std::size_t i = 0; i < ket.size(); ++i) {
        bra[i] = ket[i] * (static_cast<double>(std::popcount(i)) * inv_n);
    }

    const std::vector<GateOp> ops = gate_sequence(c);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        switch (it->kind) {
        case GateOp::Kind::Ry: {
            out.grad[it->param_index] = ry_term(bra, ket, it->q0);
            const double theta = params[it->param_index];
            detail::ry_kernel(ket, it->q0, -theta);
            detail::ry_kernel(bra, it->q0, -theta);
            break;
        }
        case GateOp::Kind::Rz: {
            out.grad[it->param_index] = rz_term(bra, ket, it->q0);
            const double theta = params[it->param_index];
            detail::rz_kernel(ket, it->q0, -theta);
            detail::rz_kernel(bra, it->q0, -theta);
            break;
        }
        case GateOp::Kind::Cz:
            detail::cz_kernel(ket, it->q0, it->q1);
            detail::cz_kernel(bra, it->q0, it->q1);
            break;
        }
    }

    return out;
}

} // namespace neqc
