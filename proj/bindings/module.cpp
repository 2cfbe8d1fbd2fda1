// Python face of the library: the statevector primitives, the circuit
// evaluator and its gradients, training, and the two analysis pipelines.
// Heavy arrays cross the boundary as numpy; everything else is plain
// Python scalars and lists.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "neqc/adjoint.hpp"
#include "neqc/analysis.hpp"
#include "neqc/circuit.hpp"
#include "neqc/nn.hpp"
#include "neqc/rng.hpp"
#include "neqc/state.hpp"
#include "neqc/train.hpp"

namespace py = pybind11;

namespace {

py::array_t<std::complex<double>> amplitudes_array(const neqc::State& s) {
    py::array_t<std::complex<double>> out(s.dim());
    std::copy(s.amplitudes().begin(), s.amplitudes().end(),
              out.mutable_data());
    return out;
}

neqc::PairSampler sampler_for_record(const neqc::RunRecord& rec,
                                     std::uint64_t seed) {
    if (rec.config.model == neqc::Model::Sqc) {
        return neqc::sqc_sampler(rec.structure, seed);
    }
    const neqc::NNArchitecture arch =
        neqc::arch_for(rec.config.model,
                       static_cast<int>(rec.structure.param_count()),
                       rec.config.output_scale);
    const neqc::NNWeights weights =
        neqc::unflatten_weights(arch, rec.final_parameters);
    return neqc::neqc_sampler(rec.structure, arch, weights, seed);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Variational circuit training with network-generated "
              "parameters: statevector kernels, adjoint gradients, the "
              "training loop, and the expressibility/landscape analyses.";

    py::class_<neqc::State>(m, "State")
        .def(py::init<int>(), py::arg("n_qubits"))
        .def(py::init<int, std::vector<neqc::cx>>(), py::arg("n_qubits"),
             py::arg("amplitudes"))
        .def_property_readonly("n_qubits", &neqc::State::n_qubits)
        .def_property_readonly("dim", &neqc::State::dim)
        .def("amplitudes", &amplitudes_array)
        .def("norm", &neqc::State::norm);

    m.def("zero_state", &neqc::zero_state, py::arg("n"));
    m.def(
        "haar_random_state",
        [](int n, std::uint64_t seed) {
            neqc::Rng rng(seed);
            return neqc::haar_random_state(n, rng);
        },
        py::arg("n"), py::arg("seed"));
    m.def("apply_ry", &neqc::apply_ry, py::arg("state"), py::arg("qubit"),
          py::arg("theta"));
    m.def("apply_rz", &neqc::apply_rz, py::arg("state"), py::arg("qubit"),
          py::arg("theta"));
    m.def("apply_cz", &neqc::apply_cz, py::arg("state"), py::arg("a"),
          py::arg("b"));
    m.def("prob_zero", &neqc::prob_zero, py::arg("state"), py::arg("qubit"));
    m.def("cost", &neqc::cost, py::arg("state"));
    m.def("fidelity", &neqc::fidelity, py::arg("a"), py::arg("b"));
    m.def("derive_seed", &neqc::derive_seed, py::arg("base"),
          py::arg("purpose"), py::arg("index") = 0);

    py::class_<neqc::CircuitStructure>(m, "CircuitStructure")
        .def(py::init([](int n, std::vector<std::pair<int, int>> pairs) {
                 neqc::CircuitStructure c;
                 c.n_qubits = n;
                 c.entanglers = std::move(pairs);
                 c.validate();
                 return c;
             }),
             py::arg("n_qubits"), py::arg("entanglers"))
        .def_readonly("n_qubits", &neqc::CircuitStructure::n_qubits)
        .def_readonly("entanglers", &neqc::CircuitStructure::entanglers)
        .def_property_readonly("block_count",
                               &neqc::CircuitStructure::block_count)
        .def_property_readonly("param_count",
                               &neqc::CircuitStructure::param_count)
        .def("to_json",
             [](const neqc::CircuitStructure& c) { return neqc::to_json(c); });

    m.def("structure_from_json", &neqc::structure_from_json, py::arg("text"));
    m.def("block_count", &neqc::block_count, py::arg("n"));
    m.def(
        "random_structure",
        [](int n, int blocks, std::uint64_t seed) {
            neqc::Rng rng(seed);
            return neqc::random_structure(n, blocks, rng);
        },
        py::arg("n"), py::arg("blocks"), py::arg("seed"));

    m.def(
        "evaluate",
        [](const neqc::CircuitStructure& c, const std::vector<double>& params,
           const neqc::State& input) {
            return neqc::evaluate(c, params, input);
        },
        py::arg("structure"), py::arg("params"), py::arg("input"));
    m.def(
        "circuit_cost_grad",
        [](const neqc::CircuitStructure& c, const std::vector<double>& params,
           const neqc::State& input) {
            const neqc::CostGrad cg = neqc::circuit_cost_grad(c, params, input);
            py::array_t<double> grad(cg.grad.size());
            std::copy(cg.grad.begin(), cg.grad.end(), grad.mutable_data());
            return py::make_tuple(cg.value, grad);
        },
        py::arg("structure"), py::arg("params"), py::arg("input"));

    py::enum_<neqc::Model>(m, "Model")
        .value("SQC", neqc::Model::Sqc)
        .value("NEQC_NN", neqc::Model::NeqcNN)
        .value("NEQC_CNN", neqc::Model::NeqcCNN);
    m.def("model_name", &neqc::model_name, py::arg("model"));
    m.def("model_from_name", &neqc::model_from_name, py::arg("name"));

    py::class_<neqc::TrainConfig>(m, "TrainConfig")
        .def(py::init<>())
        .def_readwrite("n_qubits", &neqc::TrainConfig::n_qubits)
        .def_readwrite("n_blocks", &neqc::TrainConfig::n_blocks)
        .def_readwrite("model", &neqc::TrainConfig::model)
        .def_readwrite("learning_rate", &neqc::TrainConfig::learning_rate)
        .def_readwrite("momentum", &neqc::TrainConfig::momentum)
        .def_readwrite("loss_target", &neqc::TrainConfig::loss_target)
        .def_readwrite("plateau_window", &neqc::TrainConfig::plateau_window)
        .def_readwrite("plateau_delta", &neqc::TrainConfig::plateau_delta)
        .def_readwrite("max_iterations", &neqc::TrainConfig::max_iterations)
        .def_readwrite("output_scale", &neqc::TrainConfig::output_scale)
        .def("blocks", &neqc::TrainConfig::blocks)
        .def("validate", &neqc::TrainConfig::validate);

    py::class_<neqc::RunRecord>(m, "RunRecord")
        .def_readonly("config", &neqc::RunRecord::config)
        .def_readonly("structure", &neqc::RunRecord::structure)
        .def_readonly("input_seed", &neqc::RunRecord::input_seed)
        .def_readonly("init_seed", &neqc::RunRecord::init_seed)
        .def_readonly("run_index", &neqc::RunRecord::run_index)
        .def_readonly("loss_history", &neqc::RunRecord::loss_history)
        .def_readonly("final_parameters", &neqc::RunRecord::final_parameters)
        .def_readonly("wall_time_s", &neqc::RunRecord::wall_time_s)
        .def_readonly("failed", &neqc::RunRecord::failed)
        .def_property_readonly("stop_reason",
                               [](const neqc::RunRecord& r) {
                                   return neqc::stop_reason_name(r.stop_reason);
                               })
        .def_property_readonly("iterations_used",
                               &neqc::RunRecord::iterations_used)
        .def_property_readonly("final_loss", &neqc::RunRecord::final_loss)
        .def("to_json",
             [](const neqc::RunRecord& r) { return neqc::to_json(r); });
    m.def("run_record_from_json", &neqc::run_record_from_json,
          py::arg("text"));

    m.def(
        "train_one",
        [](const neqc::TrainConfig& cfg, const neqc::CircuitStructure& s,
           const neqc::State& input, std::uint64_t init_seed,
           std::optional<std::vector<double>> initial) {
            return neqc::train_one(cfg, s, input, init_seed,
                                   initial ? &*initial : nullptr);
        },
        py::arg("config"), py::arg("structure"), py::arg("input"),
        py::arg("init_seed"), py::arg("initial_params") = py::none());
    m.def(
        "run_experiment",
        [](int n_qubits, const std::vector<neqc::Model>& models, int runs,
           std::uint64_t base_seed, const neqc::TrainConfig& proto, int jobs) {
            return neqc::run_experiment(
                n_qubits, std::span<const neqc::Model>(models), runs,
                base_seed, proto, jobs);
        },
        py::arg("n_qubits"), py::arg("models"), py::arg("runs"),
        py::arg("base_seed"), py::arg("proto") = neqc::TrainConfig{},
        py::arg("jobs") = 1);

    m.def("haar_bin_prob", &neqc::haar_bin_prob, py::arg("lo"), py::arg("hi"),
          py::arg("n"));
    m.def(
        "haar_expressibility",
        [](int n, std::uint64_t seed, int k, int bins) {
            return neqc::estimate_expressibility(neqc::haar_sampler(n, seed),
                                                 k, bins, n);
        },
        py::arg("n"), py::arg("seed"), py::arg("k") = 5000,
        py::arg("bins") = 75);
    m.def(
        "sqc_expressibility",
        [](const neqc::CircuitStructure& c, std::uint64_t seed, int k,
           int bins) {
            return neqc::estimate_expressibility(neqc::sqc_sampler(c, seed), k,
                                                 bins, c.n_qubits);
        },
        py::arg("structure"), py::arg("seed"), py::arg("k") = 5000,
        py::arg("bins") = 75);
    m.def(
        "expressibility_from_record",
        [](const neqc::RunRecord& rec, std::uint64_t seed, int k, int bins) {
            return neqc::estimate_expressibility(sampler_for_record(rec, seed),
                                                 k, bins,
                                                 rec.structure.n_qubits);
        },
        py::arg("record"), py::arg("seed"), py::arg("k") = 5000,
        py::arg("bins") = 75);

    m.def(
        "landscape_from_record",
        [](const neqc::RunRecord& rec, std::uint64_t seed, int resolution,
           double lo, double hi) {
            const neqc::ModelSnapshot snap = neqc::snapshot_from_record(rec);
            const neqc::LandscapeGrid grid =
                neqc::landscape(snap, seed, resolution, lo, hi);
            py::array_t<double> values({resolution, resolution});
            std::copy(grid.values.begin(), grid.values.end(),
                      values.mutable_data());
            return py::make_tuple(values, grid.center_loss);
        },
        py::arg("record"), py::arg("seed"), py::arg("resolution") = 200,
        py::arg("lo") = -0.5, py::arg("hi") = 0.5);
}
