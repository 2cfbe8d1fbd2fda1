#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "neqc/train.hpp"

namespace neqc {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitValidation = 2;

/// One experiment invocation, assembled from an optional JSON config file
/// with command-line flags layered on top (flags win). Environment
/// variables are never consulted: given the manifest and the base seed,
/// every output file is reproducible.
struct ExperimentManifest {
    int qubits_from = 3;
    int qubits_to = 3;
    std::vector<Model> models = {Model::Sqc, Model::NeqcNN, Model::NeqcCNN};
    int runs = 10;
    std::uint64_t base_seed = 1;
    int jobs = 1;
    std::string out_dir = "results";
    TrainConfig train; // hyperparameters; n_qubits and model are set per cell

    void validate() const;
};

/// Schema: {"qubits": N | [from, to], "models": [...], "runs": N,
/// "seed": S, "jobs": J, "out": DIR, "train": {hyperparameter overrides}}.
/// Every field is optional; unknown keys are rejected.
ExperimentManifest manifest_from_json(const std::string& text);
ExperimentManifest manifest_from_file(const std::string& path);

/// Trains the full sweep: per-run JSON under <out>/runs/, sweep.csv, and
/// summary.csv (per-cell mean iterations and mean final loss). Returns
/// kExitRuntime if any run aborted (its record is still written).
int cmd_train(const ExperimentManifest& m);

struct ExpressibilityOptions {
    std::string run_file;       // trained run: sampler implied by its model
    std::string structure_file; // bare structure: SQC sampling
    int k = 5000;
    int n_bins = 75;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
};

/// Writes the fidelity histogram CSV and a one-line result CSV; prints
/// "model=... n=... Expr=..." (Inf spelled verbatim) on stdout.
int cmd_expressibility(const ExpressibilityOptions& opt);

struct LandscapeOptions {
    std::string run_file;
    int resolution = 200;
    double lo = -0.5;
    double hi = 0.5;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
};

/// Writes the loss grid CSV plus its JSON sidecar for one converged run.
int cmd_landscape(const LandscapeOptions& opt);

/// Rebuilds sweep.csv and summary.csv from the run files under
/// <out>/runs/, for sweeps that were interrupted or post-edited.
int cmd_report(const std::string& out_dir);

} // namespace neqc
