#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "neqc/circuit.hpp"
#include "neqc/nn.hpp"
#include "neqc/state.hpp"

namespace neqc {

/// SQC optimizes the circuit angles directly; the NEQC variants optimize a
/// generator network (plus its input alpha) that emits the angles.
enum class Model { Sqc, NeqcNN, NeqcCNN };

std::string model_name(Model m); // "sqc", "neqc-nn", "neqc-cnn"
Model model_from_name(std::string_view name);

/// Generator architecture implied by a model and a circuit's parameter
/// count. Throws for Model::Sqc, which has no network.
NNArchitecture arch_for(Model m, int theta_count, double output_scale);

struct TrainConfig {
    int n_qubits = 0;
    int n_blocks = -1; // -1: use block_count(n_qubits)
    Model model = Model::Sqc;
    double learning_rate = 0.1;
    double momentum = 0.9;
    double loss_target = 1e-3;
    int plateau_window = 100;
    double plateau_delta = 1e-4;
    int max_iterations = 20000;
    double output_scale = 1.0; // NEQC angle range is (-scale, scale)

    int blocks() const;
    void validate() const;
};

enum class StopReason { Target, Plateau, MaxIter, Nan };

std::string stop_reason_name(StopReason r);
StopReason stop_reason_from_name(std::string_view name);

/// One completed (or aborted) training run, with everything needed to
/// reproduce it and to feed the expressibility and landscape stages.
struct RunRecord {
    TrainConfig config;
    CircuitStructure structure;
    std::uint64_t input_seed = 0; // haar_random_state(n, Rng(input_seed))
    std::uint64_t init_seed = 0;  // initial trainable parameters
    int run_index = 0;
    std::vector<double> loss_history; // one entry per iteration
    StopReason stop_reason = StopReason::MaxIter;
    std::vector<double> final_parameters; // the ones that produced the
                                          // last loss_history entry
    double wall_time_s = 0.0;
    bool failed = false; // true iff stop_reason == Nan

    std::size_t iterations_used() const { return loss_history.size(); }
    double final_loss() const;
};

std::string to_json(const RunRecord& rec);
RunRecord run_record_from_json(const std::string& text);

/// Classical momentum: v' = mu * v + g; p' = p - lr * v'. Updates params
/// and velocity in place. Throws on length mismatch or non-finite
/// gradient entries.
struct OptimizerState {
    std::vector<double> velocity;
};

void sgd_momentum_step(std::vector<double>& params, std::span<const double> grads,
                       OptimizerState& opt, double lr, double mu);

/// Trains one model on one (structure, input) pair. Initial parameters are
/// drawn from init_seed — SQC angles uniform in [0, 2pi), network weights
/// per init_nn_weights — unless `initial_params` overrides them. Each
/// iteration records the loss at the current parameters before stepping,
/// so final_parameters always reproduce the last recorded loss. Stops on
/// loss < loss_target, on a checkpoint-to-checkpoint loss change below
/// plateau_delta (checked every plateau_window iterations, from the second
/// checkpoint on), on max_iterations, or on a non-finite loss.
RunRecord train_one(const TrainConfig& cfg, const CircuitStructure& structure,
                    const State& input, std::uint64_t init_seed,
                    const std::vector<double>* initial_params = nullptr);

/// The paired-run protocol: run index r gets its own randomly drawn
/// structure and Haar input state, shared by every model in that run, and
/// a per-model init seed. All seeds derive from base_seed, so the full
/// experiment is reproducible from one integer. A run that aborts (NaN) is
/// returned with failed=true; it never aborts the sweep. Records are
/// ordered run-major, then in `models` order. jobs > 1 distributes runs
/// across threads without changing any result.
std::vector<RunRecord> run_experiment(int n_qubits, std::span<const Model> models,
                                      int runs, std::uint64_t base_seed,
                                      const TrainConfig& proto = {},
                                      int jobs = 1);

} // namespace neqc
