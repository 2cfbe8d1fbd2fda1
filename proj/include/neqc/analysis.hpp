#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "neqc/circuit.hpp"
#include "neqc/nn.hpp"
#include "neqc/state.hpp"
#include "neqc/train.hpp"

namespace neqc {

/// Exact Haar probability of a fidelity landing in [lo, hi) for n qubits:
/// the integral of (d-1)(1-F)^(d-2) with d = 2^n, which telescopes to
/// (1-lo)^(d-1) - (1-hi)^(d-1). Using the integral instead of a midpoint
/// density removes discretization bias and makes underflow to exactly 0
/// (the source of infinite KL values at large n) well-defined.
double haar_bin_prob(double lo, double hi, int n);

/// Generator of independent state pairs, indexed so that sample i is
/// reproducible in isolation regardless of evaluation order.
using PairSampler = std::function<std::pair<State, State>(std::uint64_t)>;

/// Pairs of outputs of a fixed structure fed angle vectors uniform in
/// [0, 2pi), starting from |0...0>.
PairSampler sqc_sampler(const CircuitStructure& c, std::uint64_t seed);

/// Pairs of outputs of a trained generator network fed fresh inputs alpha
/// uniform in [0, 2pi)^4, starting from |0...0>. The weights stay fixed;
/// only alpha is resampled, so the spread of these states is exactly the
/// reachable set of the trained model.
PairSampler neqc_sampler(const CircuitStructure& c, const NNArchitecture& arch,
                         const NNWeights& trained, std::uint64_t seed);

/// Pairs of Haar-random states; the self-consistency baseline (KL near 0).
PairSampler haar_sampler(int n, std::uint64_t seed);

std::vector<double> sample_fidelities(const PairSampler& sampler, int k);

struct FidelityHistogram {
    int n_bins = 75;
    std::uint64_t total = 0;
    std::vector<std::uint64_t> counts; // uniform bins on [0, 1]

    double bin_lo(int i) const { return static_cast<double>(i) / n_bins; }
    double bin_hi(int i) const { return static_cast<double>(i + 1) / n_bins; }
};

FidelityHistogram build_histogram(std::span<const double> fidelities,
                                  int n_bins);

/// KL divergence of the empirical bin distribution against the analytic
/// Haar distribution: sum p_emp * ln(p_emp / p_haar). Empty bins contribute
/// zero; a populated bin whose Haar mass underflows to 0 makes the estimate
/// +infinity.
double expressibility_from_histogram(const FidelityHistogram& hist, int n);

/// The full pipeline: draw K fidelity pairs, bin them, take the KL against
/// Haar. Smaller = closer to Haar = more expressive.
double estimate_expressibility(const PairSampler& sampler, int k, int n_bins,
                               int n);

/// Everything needed to re-evaluate a trained model's loss at perturbed
/// parameters: the circuit, the (reconstructed) input state, and the
/// flattened trainable vector the run converged to.
struct ModelSnapshot {
    Model model = Model::Sqc;
    CircuitStructure structure;
    NNArchitecture arch{}; // meaningful for NEQC models only
    std::vector<double> parameters;
    State input{1};
};

/// Rebuilds the snapshot from a persisted run: the input state is redrawn
/// from the record's input seed.
ModelSnapshot snapshot_from_record(const RunRecord& rec);

/// Loss of the snapshot's model at an arbitrary point in its trainable
/// space. Same code path as training, so the loss at snap.parameters
/// equals the run's recorded final loss exactly.
double snapshot_loss(const ModelSnapshot& snap, std::span<const double> params);

/// Loss over a 2-D affine slice through the converged parameters:
/// Params(x, y) = Params(0,0) + x*d1 + y*d2 with d1, d2 unit Gaussian
/// directions rescaled by |Params(0,0)|. Grid point k on each axis sits at
/// lo + k*(hi-lo)/resolution, so an even resolution places (0, 0) — and
/// with it the converged loss, exactly — at cell (resolution/2,
/// resolution/2).
struct LandscapeGrid {
    int resolution = 200;
    double lo = -0.5;
    double hi = 0.5;
    std::uint64_t seed = 0;
    double center_loss = 0.0;
    std::vector<double> values; // row-major; row = y index, column = x index

    double at(int iy, int ix) const {
        return values[static_cast<std::size_t>(iy) * resolution + ix];
    }
};

LandscapeGrid landscape(const ModelSnapshot& snap, std::uint64_t seed,
                        int resolution = 200, double lo = -0.5,
                        double hi = 0.5);

/// CSV matrix (row = y index) and a JSON sidecar
/// {resolution, range, seed, center_loss}.
void write_landscape_csv(const LandscapeGrid& grid, const std::string& path);
void write_landscape_sidecar(const LandscapeGrid& grid,
                             const std::string& path);

/// CSV columns: bin_lo, bin_hi, count, p_emp, p_haar.
void write_histogram_csv(const FidelityHistogram& hist, int n,
                         const std::string& path);

} // namespace neqc
