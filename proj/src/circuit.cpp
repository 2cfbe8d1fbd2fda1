#include "neqc/circuit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace neqc {

void CircuitStructure::validate() const {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("structure qubit count out of range");
    }
    for (const auto& [a, b] : entanglers) {
        if (a < 0 || b < 0 || a >= n_qubits || b >= n_qubits) {
            throw std::invalid_argument("entangler qubit index out of range");
        }
        if (a == b) {
            throw std::invalid_argument("entangler pair must be distinct");
        }
    }
}

int block_count(int n) {
    if (n < 2) {
        throw std::invalid_argument(
            "block count schedule needs n >= 2 (n^2 ln n vanishes at n=1)");
    }
    const double raw = static_cast<double>(n) * n * std::log(n);
    return static_cast<int>(std::ceil(raw));
}

CircuitStructure random_structure(int n, int blocks, Rng& rng) {
    if (n < 2) {
        throw std::invalid_argument("random structure needs n >= 2");
    }
    if (blocks < 1) {
        throw std::invalid_argument("random structure needs at least 1 block");
    }
    CircuitStructure c;
    c.n_qubits = n;
    c.entanglers.reserve(blocks);
    for (int l = 0; l < blocks; ++l) {
        const int a = static_cast<int>(rng.uniform_int(n));
        int b = static_cast<int>(rng.uniform_int(n - 1));
        if (b >= a) {
            ++b;
        }
        c.entanglers.emplace_back(a, b);
    }
    return c;
}

std::vector<GateOp> gate_sequence(const CircuitStructure& c) {
    std::vector<GateOp> ops;
    ops.reserve(3 * c.n_qubits + 5 * c.entanglers.size());
    int p = 0;
    for (int q = 0; q < c.n_qubits; ++q) {
        ops.push_back({GateOp::Kind::Rz, q, -1, p++});
        ops.push_back({GateOp::Kind::Ry, q, -1, p++});
        ops.push_back({GateOp::Kind::Rz, q, -1, p++});
    }
    for (const auto& [a, b] : c.entanglers) {
        ops.push_back({GateOp::Kind::Cz, a, b, -1});
        ops.push_back({GateOp::Kind::Ry, a, -1, p++});
        ops.push_back({GateOp::Kind::Rz, a, -1, p++});
        ops.push_back({GateOp::Kind::Ry, b, -1, p++});
        ops.push_back({GateOp::Kind::Rz, b, -1, p++});
    }
    return ops;
}

State evaluate(const CircuitStructure& c, std::span<const double> params,
               State input) {
    c.validate();
    if (params.size() != c.param_count()) {
        throw std::invalid_argument(
            "parameter vector length " + std::to_string(params.size()) +
            " does not match 3N+4L = " + std::to_string(c.param_count()));
    }
    if (input.n_qubits() != c.n_qubits) {
        throw std::invalid_argument("input state qubit count mismatch");
    }
    for (const GateOp& op : gate_sequence(c)) {
        switch (op.kind) {
        case GateOp::Kind::Ry:
            input.ry(op.q0, params[op.param_index]);
            break;
        case GateOp::Kind::Rz:
            input.rz(op.q0, params[op.param_index]);
            break;
        case GateOp::Kind::Cz:
            input.cz(op.q0, op.q1);
            break;
        }
    }
    return input;
}

std::string to_json(const CircuitStructure& c) {
    c.validate();
    nlohmann::json j;
    j["n_qubits"] = c.n_qubits;
    auto& pairs = j["entanglers"] = nlohmann::json::array();
    for (const auto& [a, b] : c.entanglers) {
        pairs.push_back({a, b});
    }
    return j.dump();
}

CircuitStructure structure_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed circuit JSON: ") +
                                    e.what());
    }
    CircuitStructure c;
    try {
        c.n_qubits = j.at("n_qubits").get<int>();
        for (const auto& pair : j.at("entanglers")) {
            if (!pair.is_array() || pair.size() != 2) {
                throw std::invalid_argument("entangler entries must be pairs");
            }
            c.entanglers.emplace_back(pair[0].get<int>(), pair[1].get<int>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("invalid circuit JSON: ") +
                                    e.what());
    }
    c.validate();
    return c;
}

} // namespace neqc
