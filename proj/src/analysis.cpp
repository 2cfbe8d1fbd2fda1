#include "neqc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "format.hpp"
#include "json.hpp"

namespace neqc {

double haar_bin_prob(double lo, double hi, int n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("qubit count out of range");
    }
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
        throw std::invalid_argument("need 0 <= lo < hi <= 1");
    }
    const double exponent = std::pow(2.0, n) - 1.0;
    return std::pow(1.0 - lo, exponent) - std::pow(1.0 - hi, exponent);
}

PairSampler sqc_sampler(const CircuitStructure& c, std::uint64_t seed) {
    c.validate();
    return [c, seed](std::uint64_t index) {
        Rng rng(derive_seed(seed, "pair", index));
        auto draw = [&] {
            std::vector<double> theta(c.param_count());
            for (double& t : theta) {
                t = rng.uniform(0.0, 2.0 * std::numbers::pi);
            }
            return evaluate(c, theta, State(c.n_qubits));
        };
        State a = draw();
        State b = draw();
        return std::make_pair(std::move(a), std::move(b));
    };
}

PairSampler neqc_sampler(const CircuitStructure& c, const NNArchitecture& arch,
                         const NNWeights& trained, std::uint64_t seed) {
    c.validate();
    if (static_cast<std::size_t>(arch.theta_count) != c.param_count()) {
        throw std::invalid_argument(
            "network output width does not match the circuit");
    }
    return [c, arch, trained, seed](std::uint64_t index) {
        Rng rng(derive_seed(seed, "pair", index));
        auto draw = [&] {
            NNWeights w = trained;
            for (double& v : w.alpha) {
                v = rng.uniform(0.0, 2.0 * std::numbers::pi);
            }
            return evaluate(c, nn_forward(arch, w), State(c.n_qubits));
        };
        State a = draw();
        State b = draw();
        return std::make_pair(std::move(a), std::move(b));
    };
}

PairSampler haar_sampler(int n, std::uint64_t seed) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("qubit count out of range");
    }
    return [n, seed](std::uint64_t index) {
        Rng rng(derive_seed(seed, "pair", index));
        State a = haar_random_state(n, rng);
        State b = haar_random_state(n, rng);
        return std::make_pair(std::move(a), std::move(b));
    };
}

std::vector<double> sample_fidelities(const PairSampler& sampler, int k) {
    if (k < 1) {
        throw std::invalid_argument("need at least one fidelity sample");
    }
    std::vector<double> fids(k);
    for (int i = 0; i < k; ++i) {
        const auto [a, b] = sampler(static_cast<std::uint64_t>(i));
        fids[i] = fidelity(a, b);
    }
    return fids;
}

FidelityHistogram build_histogram(std::span<const double> fidelities,
                                  int n_bins) {
    if (n_bins < 1) {
        throw std::invalid_argument("n_bins must be >= 1");
    }
    FidelityHistogram hist;
    hist.n_bins = n_bins;
    hist.total = fidelities.size();
    hist.counts.assign(n_bins, 0);
    for (const double f : fidelities) {
        // Rounding can push a fidelity a hair outside [0, 1]; clamp into
        // the edge bins rather than dropping the sample.
        int idx = static_cast<int>(f * n_bins);
        idx = std::max(0, std::min(idx, n_bins - 1));
        ++hist.counts[idx];
    }
    return hist;
}

double expressibility_from_histogram(const FidelityHistogram& hist, int n) {
    if (hist.total == 0) {
        throw std::invalid_argument("histogram is empty");
    }
    double kl = 0.0;
    for (int i = 0; i < hist.n_bins; ++i) {
        if (hist.counts[i] == 0) {
            continue; // lim p->0 of p ln p = 0
        }
        const double p_emp =
            static_cast<double>(hist.counts[i]) / static_cast<double>(hist.total);
        const double p_haar = haar_bin_prob(hist.bin_lo(i), hist.bin_hi(i), n);
        if (p_haar == 0.0) {
            // Observed mass where the Haar density has underflowed to zero:
            // the divergence is genuinely unbounded at this resolution.
            return std::numeric_limits<double>::infinity();
        }
        kl += p_emp * std::log(p_emp / p_haar);
    }
    return kl;
}

double estimate_expressibility(const PairSampler& sampler, int k, int n_bins,
                               int n) {
    const std::vector<double> fids = sample_fidelities(sampler, k);
    return expressibility_from_histogram(build_histogram(fids, n_bins), n);
}

ModelSnapshot snapshot_from_record(const RunRecord& rec) {
    ModelSnapshot snap;
    snap.model = rec.config.model;
    snap.structure = rec.structure;
    if (rec.config.model != Model::Sqc) {
        snap.arch = arch_for(rec.config.model,
                             static_cast<int>(rec.structure.param_count()),
                             rec.config.output_scale);
    }
    snap.parameters = rec.final_parameters;
    Rng rng(rec.input_seed);
    snap.input = haar_random_state(rec.structure.n_qubits, rng);
    return snap;
}

double snapshot_loss(const ModelSnapshot& snap, std::span<const double> params) {
    if (snap.model == Model::Sqc) {
        return cost(evaluate(snap.structure, params, snap.input));
    }
    const NNWeights w = unflatten_weights(snap.arch, params);
    return cost(evaluate(snap.structure, nn_forward(snap.arch, w), snap.input));
}

LandscapeGrid landscape(const ModelSnapshot& snap, std::uint64_t seed,
                        int resolution, double lo, double hi) {
    if (resolution < 1) {
        throw std::invalid_argument("resolution must be >= 1");
    }
    if (!(lo < hi)) {
        throw std::invalid_argument("need lo < hi");
    }
    const std::size_t dim = snap.parameters.size();
    double norm0 = 0.0;
    for (const double p : snap.parameters) {
        norm0 += p * p;
    }
    norm0 = std::sqrt(norm0);
    if (dim == 0 || norm0 == 0.0) {
        throw std::invalid_argument(
            "zero-norm parameter vector has no meaningful slice scale");
    }

    Rng rng(derive_seed(seed, "landscape-dir"));
    auto draw_direction = [&] {
        std::vector<double> d(dim);
        double norm = 0.0;
        for (double& v : d) {
            v = rng.normal();
            norm += v * v;
        }
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            throw std::runtime_error("degenerate slice direction");
        }
        const double scale = norm0 / norm; // unit direction times |Params(0,0)|
        for (double& v : d) {
            v *= scale;
        }
        return d;
    };
    const std::vector<double> d1 = draw_direction();
    const std::vector<double> d2 = draw_direction();

    LandscapeGrid grid;
    grid.resolution = resolution;
    grid.lo = lo;
    grid.hi = hi;
    grid.seed = seed;
    grid.values.resize(static_cast<std::size_t>(resolution) * resolution);

    std::vector<double> point(dim);
    const double span = hi - lo;
    for (int iy = 0; iy < resolution; ++iy) {
        const double y = lo + iy * span / resolution;
        for (int ix = 0; ix < resolution; ++ix) {
            const double x = lo + ix * span / resolution;
            for (std::size_t i = 0; i < dim; ++i) {
                point[i] = snap.parameters[i] + x * d1[i] + y * d2[i];
            }
            grid.values[static_cast<std::size_t>(iy) * resolution + ix] =
                snapshot_loss(snap, point);
        }
    }
    grid.center_loss = snapshot_loss(snap, snap.parameters);
    return grid;
}

void write_landscape_csv(const LandscapeGrid& grid, const std::string& path) {
    std::string out;
    out.reserve(static_cast<std::size_t>(grid.resolution) * grid.resolution * 20);
    for (int iy = 0; iy < grid.resolution; ++iy) {
        for (int ix = 0; ix < grid.resolution; ++ix) {
            if (ix != 0) {
                out += ',';
            }
            out += fmt_g17(grid.at(iy, ix));
        }
        out += '\n';
    }
    write_text_file(path, out);
}

void write_landscape_sidecar(const LandscapeGrid& grid,
                             const std::string& path) {
    nlohmann::json j;
    j["resolution"] = grid.resolution;
    j["range"] = {grid.lo, grid.hi};
    j["seed"] = grid.seed;
    j["center_loss"] = grid.center_loss;
    write_text_file(path, j.dump(2) + "\n");
}

void write_histogram_csv(const FidelityHistogram& hist, int n,
                         const std::string& path) {
    std::string out = "bin_lo,bin_hi,count,p_emp,p_haar\n";
    for (int i = 0; i < hist.n_bins; ++i) {
        const double p_emp =
            hist.total == 0
                ? 0.0
                : static_cast<double>(hist.counts[i]) /
                      static_cast<double>(hist.total);
        out += fmt_g17(hist.bin_lo(i)) + ',' + fmt_g17(hist.bin_hi(i)) + ',' +
               std::to_string(hist.counts[i]) + ',' + fmt_g17(p_emp) + ',' +
               fmt_g17(haar_bin_prob(hist.bin_lo(i), hist.bin_hi(i), n)) + '\n';
    }
    write_text_file(path, out);
}

} // namespace neqc
