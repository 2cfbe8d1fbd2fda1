#include "neqc/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "format.hpp"
#include "json.hpp"

#include "neqc/analysis.hpp"

namespace neqc {

namespace {

constexpr const char* kSweepHeader =
    "n_qubits,model,run,iterations,final_loss,stop_reason\n";
constexpr const char* kSummaryHeader =
    "n_qubits,model,mean_iterations,mean_final_loss\n";

std::string sweep_row(const RunRecord& rec) {
    return std::to_string(rec.config.n_qubits) + ',' +
           model_name(rec.config.model) + ',' + std::to_string(rec.run_index) +
           ',' + std::to_string(rec.iterations_used()) + ',' +
           fmt_g17(rec.final_loss()) + ',' + stop_reason_name(rec.stop_reason) +
           '\n';
}

/// sweep.csv in record order, summary.csv grouped by (n_qubits, model).
void write_aggregates(const std::vector<RunRecord>& records,
                      const std::string& out_dir) {
    std::string sweep = kSweepHeader;
    struct Cell {
        double iterations = 0.0;
        double loss = 0.0;
        int count = 0;
    };
    std::map<std::pair<int, int>, Cell> cells;
    for (const RunRecord& rec : records) {
        sweep += sweep_row(rec);
        Cell& cell =
            cells[{rec.config.n_qubits, static_cast<int>(rec.config.model)}];
        cell.iterations += static_cast<double>(rec.iterations_used());
        cell.loss += rec.final_loss();
        ++cell.count;
    }
    std::string summary = kSummaryHeader;
    for (const auto& [key, cell] : cells) {
        summary += std::to_string(key.first) + ',' +
                   model_name(static_cast<Model>(key.second)) + ',' +
                   fmt_g17(cell.iterations / cell.count) + ',' +
                   fmt_g17(cell.loss / cell.count) + '\n';
    }
    write_text_file(out_dir + "/sweep.csv", sweep);
    write_text_file(out_dir + "/summary.csv", summary);
}

std::string run_file_name(const RunRecord& rec) {
    return "n" + std::to_string(rec.config.n_qubits) + "_" +
           model_name(rec.config.model) + "_run" +
           std::to_string(rec.run_index) + ".json";
}

RunRecord load_run(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return run_record_from_json(text);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("run file '" + path + "' is corrupt: " +
                                 e.what());
    }
}

/// Expressibility and landscapes need the converged parameters; a run that
/// aborted has none worth analyzing.
void reject_failed(const RunRecord& rec, const std::string& path) {
    if (rec.failed) {
        throw std::runtime_error("run file '" + path +
                                 "' records an aborted run");
    }
}

} // namespace

void ExperimentManifest::validate() const {
    if (qubits_from < 2 || qubits_to > kMaxQubits || qubits_from > qubits_to) {
        throw std::invalid_argument("qubit range must satisfy 2 <= from <= to <= " +
                                    std::to_string(kMaxQubits));
    }
    if (models.empty()) {
        throw std::invalid_argument("at least one model is required");
    }
    if (runs < 1) {
        throw std::invalid_argument("runs must be >= 1");
    }
    if (jobs < 1) {
        throw std::invalid_argument("jobs must be >= 1");
    }
    if (out_dir.empty()) {
        throw std::invalid_argument("output directory must not be empty");
    }
}

ExperimentManifest manifest_from_json(const std::string& text) {
    ExperimentManifest m;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("manifest JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw std::invalid_argument("manifest must be a JSON object");
    }
    try {
        for (const auto& [key, val] : j.items()) {
            if (key == "qubits") {
                if (val.is_number_integer()) {
                    m.qubits_from = m.qubits_to = val.get<int>();
                } else if (val.is_array() && val.size() == 2) {
                    m.qubits_from = val[0].get<int>();
                    m.qubits_to = val[1].get<int>();
                } else {
                    throw std::invalid_argument(
                        "qubits must be an integer or [from, to]");
                }
            } else if (key == "models") {
                m.models.clear();
                for (const auto& name : val) {
                    m.models.push_back(model_from_name(name.get<std::string>()));
                }
            } else if (key == "runs") {
                m.runs = val.get<int>();
            } else if (key == "seed") {
                m.base_seed = val.get<std::uint64_t>();
            } else if (key == "jobs") {
                m.jobs = val.get<int>();
            } else if (key == "out") {
                m.out_dir = val.get<std::string>();
            } else if (key == "train") {
                for (const auto& [tkey, tval] : val.items()) {
                    if (tkey == "learning_rate") {
                        m.train.learning_rate = tval.get<double>();
                    } else if (tkey == "momentum") {
                        m.train.momentum = tval.get<double>();
                    } else if (tkey == "loss_target") {
                        m.train.loss_target = tval.get<double>();
                    } else if (tkey == "plateau_window") {
                        m.train.plateau_window = tval.get<int>();
                    } else if (tkey == "plateau_delta") {
                        m.train.plateau_delta = tval.get<double>();
                    } else if (tkey == "max_iterations") {
                        m.train.max_iterations = tval.get<int>();
                    } else if (tkey == "output_scale") {
                        m.train.output_scale = tval.get<double>();
                    } else if (tkey == "n_blocks") {
                        m.train.n_blocks = tval.get<int>();
                    } else {
                        throw std::invalid_argument("unknown train key '" +
                                                    tkey + "'");
                    }
                }
            } else {
                throw std::invalid_argument("unknown manifest key '" + key +
                                            "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("manifest JSON: ") + e.what());
    }
    return m;
}

ExperimentManifest manifest_from_file(const std::string& path) {
    return manifest_from_json(read_text_file(path));
}

int cmd_train(const ExperimentManifest& m) {
    try {
        m.validate();
        std::filesystem::create_directories(m.out_dir + "/runs");

        std::vector<RunRecord> all;
        bool any_failed = false;
        for (int n = m.qubits_from; n <= m.qubits_to; ++n) {
            // Decouple the qubit counts so adding one to the range never
            // reshuffles another's randomness.
            const std::uint64_t n_seed = derive_seed(m.base_seed, "qubits", n);
            std::vector<RunRecord> records =
                run_experiment(n, m.models, m.runs, n_seed, m.train, m.jobs);
            for (RunRecord& rec : records) {
                write_text_file(m.out_dir + "/runs/" + run_file_name(rec),
                                to_json(rec) + "\n");
                std::cout << "n=" << n << " model=" << model_name(rec.config.model)
                          << " run=" << rec.run_index
                          << " iterations=" << rec.iterations_used()
                          << " final_loss=" << fmt_g17(rec.final_loss())
                          << " stop=" << stop_reason_name(rec.stop_reason)
                          << "\n";
                any_failed = any_failed || rec.failed;
                all.push_back(std::move(rec));
            }
        }
        write_aggregates(all, m.out_dir);
        return any_failed ? kExitRuntime : kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int cmd_expressibility(const ExpressibilityOptions& opt) {
    try {
        if (opt.k < 1) {
            throw std::invalid_argument("K must be >= 1");
        }
        if (opt.n_bins < 1) {
            throw std::invalid_argument("bins must be >= 1");
        }
        if (opt.run_file.empty() == opt.structure_file.empty()) {
            throw std::invalid_argument(
                "exactly one of --run and --structure is required");
        }

        PairSampler sampler;
        int n = 0;
        std::string model;
        if (!opt.run_file.empty()) {
            const RunRecord rec = load_run(opt.run_file);
            reject_failed(rec, opt.run_file);
            n = rec.structure.n_qubits;
            model = model_name(rec.config.model);
            if (rec.config.model == Model::Sqc) {
                sampler = sqc_sampler(rec.structure, opt.seed);
            } else {
                const NNArchitecture arch =
                    arch_for(rec.config.model,
                             static_cast<int>(rec.structure.param_count()),
                             rec.config.output_scale);
                const NNWeights weights =
                    unflatten_weights(arch, rec.final_parameters);
                sampler = neqc_sampler(rec.structure, arch, weights, opt.seed);
            }
        } else {
            CircuitStructure c;
            try {
                c = structure_from_json(read_text_file(opt.structure_file));
            } catch (const std::invalid_argument& e) {
                throw std::runtime_error("structure file '" +
                                         opt.structure_file +
                                         "' is corrupt: " + e.what());
            }
            n = c.n_qubits;
            model = "sqc";
            sampler = sqc_sampler(c, opt.seed);
        }

        const std::vector<double> fids = sample_fidelities(sampler, opt.k);
        const FidelityHistogram hist = build_histogram(fids, opt.n_bins);
        const double expr = expressibility_from_histogram(hist, n);

        std::filesystem::create_directories(opt.out_dir);
        const std::string tag = model + "_n" + std::to_string(n);
        write_histogram_csv(hist, n, opt.out_dir + "/histogram_" + tag + ".csv");
        write_text_file(opt.out_dir + "/expressibility_" + tag + ".csv",
                        std::string("model,n_qubits,expr\n") + model + ',' +
                            std::to_string(n) + ',' + fmt_expr(expr) + '\n');
        std::cout << "model=" << model << " n=" << n
                  << " Expr=" << fmt_expr(expr) << "\n";
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int cmd_landscape(const LandscapeOptions& opt) {
    try {
        if (opt.run_file.empty()) {
            throw std::invalid_argument("--run is required");
        }
        const RunRecord rec = load_run(opt.run_file);
        reject_failed(rec, opt.run_file);
        const ModelSnapshot snap = snapshot_from_record(rec);
        const LandscapeGrid grid =
            landscape(snap, opt.seed, opt.resolution, opt.lo, opt.hi);

        std::filesystem::create_directories(opt.out_dir);
        const std::string tag = model_name(rec.config.model) + "_n" +
                                std::to_string(rec.config.n_qubits) + "_run" +
                                std::to_string(rec.run_index);
        write_landscape_csv(grid, opt.out_dir + "/landscape_" + tag + ".csv");
        write_landscape_sidecar(grid,
                                opt.out_dir + "/landscape_" + tag + ".json");
        std::cout << "landscape model=" << model_name(rec.config.model)
                  << " n=" << rec.config.n_qubits
                  << " center_loss=" << fmt_g17(grid.center_loss) << "\n";
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int cmd_report(const std::string& out_dir) {
    try {
        const std::string runs_dir = out_dir + "/runs";
        if (!std::filesystem::is_directory(runs_dir)) {
            throw std::runtime_error("no run directory at '" + runs_dir + "'");
        }
        std::vector<RunRecord> records;
        for (const auto& entry :
             std::filesystem::directory_iterator(runs_dir)) {
            if (entry.path().extension() == ".json") {
                records.push_back(load_run(entry.path().string()));
            }
        }
        if (records.empty()) {
            throw std::runtime_error("no run files under '" + runs_dir + "'");
        }
        std::sort(records.begin(), records.end(),
                  [](const RunRecord& a, const RunRecord& b) {
                      const auto key = [](const RunRecord& r) {
                          return std::make_tuple(r.config.n_qubits, r.run_index,
                                                 static_cast<int>(r.config.model));
                      };
                      return key(a) < key(b);
                  });
        write_aggregates(records, out_dir);
        std::cout << "aggregated " << records.size() << " runs into " << out_dir
                  << "/sweep.csv and summary.csv\n";
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

} // namespace neqc
