#include "neqc/train.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace neqc {

std::string model_name(Model m) {
    switch (m) {
    case Model::Sqc:
        return "sqc";
    case Model::NeqcNN:
        return "neqc-nn";
    case Model::NeqcCNN:
        return "neqc-cnn";
    }
    throw std::invalid_argument("unknown model");
}

Model model_from_name(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower == "sqc") {
        return Model::Sqc;
    }
    if (lower == "neqc-nn") {
        return Model::NeqcNN;
    }
    if (lower == "neqc-cnn") {
        return Model::NeqcCNN;
    }
    throw std::invalid_argument("unknown model '" + std::string(name) +
                                "' (expected sqc, neqc-nn or neqc-cnn)");
}

NNArchitecture arch_for(Model m, int theta_count, double output_scale) {
    if (m == Model::Sqc) {
        throw std::invalid_argument("sqc has no generator network");
    }
    NNArchitecture a;
    a.kind = m == Model::NeqcNN ? NNKind::Dense : NNKind::Conv;
    a.theta_count = theta_count;
    a.output_scale = output_scale;
    return a;
}

int TrainConfig::blocks() const {
    return n_blocks < 0 ? block_count(n_qubits) : n_blocks;
}

void TrainConfig::validate() const {
    if (n_qubits < 2 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("n_qubits must be in [2, " +
                                    std::to_string(kMaxQubits) + "]");
    }
    if (n_blocks != -1 && n_blocks < 1) {
        throw std::invalid_argument("n_blocks must be >= 1 (or -1 for the default)");
    }
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw std::invalid_argument("learning_rate must be positive");
    }
    if (!(momentum >= 0.0 && momentum < 1.0)) {
        throw std::invalid_argument("momentum must lie in [0, 1)");
    }
    if (!(loss_target > 0.0)) {
        throw std::invalid_argument("loss_target must be positive");
    }
    if (plateau_window < 1) {
        throw std::invalid_argument("plateau_window must be >= 1");
    }
    if (!(plateau_delta >= 0.0)) {
        throw std::invalid_argument("plateau_delta must be >= 0");
    }
    if (max_iterations < 1) {
        throw std::invalid_argument("max_iterations must be >= 1");
    }
    if (!(output_scale > 0.0)) {
        throw std::invalid_argument("output_scale must be positive");
    }
}

std::string stop_reason_name(StopReason r) {
    switch (r) {
    case StopReason::Target:
        return "target";
    case StopReason::Plateau:
        return "plateau";
    case StopReason::MaxIter:
        return "max_iter";
    case StopReason::Nan:
        return "nan";
    }
    throw std::invalid_argument("unknown stop reason");
}

StopReason stop_reason_from_name(std::string_view name) {
    if (name == "target") {
        return StopReason::Target;
    }
    if (name == "plateau") {
        return StopReason::Plateau;
    }
    if (name == "max_iter") {
        return StopReason::MaxIter;
    }
    if (name == "nan") {
        return StopReason::Nan;
    }
    throw std::invalid_argument("unknown stop reason '" + std::string(name) + "'");
}

double RunRecord::final_loss() const {
    return loss_history.empty() ? std::numeric_limits<double>::quiet_NaN()
                                : loss_history.back();
}

std::string to_json(const RunRecord& rec) {
    nlohmann::json j;
    j["config"] = {{"n_qubits", rec.config.n_qubits},
                   {"n_blocks", rec.config.blocks()},
                   {"model", model_name(rec.config.model)},
                   {"learning_rate", rec.config.learning_rate},
                   {"momentum", rec.config.momentum},
                   {"loss_target", rec.config.loss_target},
                   {"plateau_window", rec.config.plateau_window},
                   {"plateau_delta", rec.config.plateau_delta},
                   {"max_iterations", rec.config.max_iterations},
                   {"output_scale", rec.config.output_scale}};
    j["structure"] = nlohmann::json::parse(to_json(rec.structure));
    j["input_seed"] = rec.input_seed;
    j["init_seed"] = rec.init_seed;
    j["run_index"] = rec.run_index;
    j["loss_history"] = rec.loss_history;
    j["stop_reason"] = stop_reason_name(rec.stop_reason);
    j["final_parameters"] = rec.final_parameters;
    j["wall_time_s"] = rec.wall_time_s;
    j["failed"] = rec.failed;
    return j.dump(2);
}

RunRecord run_record_from_json(const std::string& text) {
    RunRecord rec;
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        const nlohmann::json& c = j.at("config");
        rec.config.n_qubits = c.at("n_qubits").get<int>();
        rec.config.n_blocks = c.at("n_blocks").get<int>();
        rec.config.model = model_from_name(c.at("model").get<std::string>());
        rec.config.learning_rate = c.at("learning_rate").get<double>();
        rec.config.momentum = c.at("momentum").get<double>();
        rec.config.loss_target = c.at("loss_target").get<double>();
        rec.config.plateau_window = c.at("plateau_window").get<int>();
        rec.config.plateau_delta = c.at("plateau_delta").get<double>();
        rec.config.max_iterations = c.at("max_iterations").get<int>();
        rec.config.output_scale = c.at("output_scale").get<double>();
        rec.structure = structure_from_json(j.at("structure").dump());
        rec.input_seed = j.at("input_seed").get<std::uint64_t>();
        rec.init_seed = j.at("init_seed").get<std::uint64_t>();
        rec.run_index = j.at("run_index").get<int>();
        rec.loss_history = j.at("loss_history").get<std::vector<double>>();
        rec.stop_reason =
            stop_reason_from_name(j.at("stop_reason").get<std::string>());
        rec.final_parameters =
            j.at("final_parameters").get<std::vector<double>>();
        rec.wall_time_s = j.at("wall_time_s").get<double>();
        rec.failed = j.at("failed").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("run record JSON: ") + e.what());
    }
    rec.config.validate();
    return rec;
}

void sgd_momentum_step(std::vector<double>& params, std::span<const double> grads,
                       OptimizerState& opt, double lr, double mu) {
    if (grads.size() != params.size() || opt.velocity.size() != params.size()) {
        throw std::invalid_argument(
            "parameter, gradient and velocity lengths differ");
    }
    for (std::size_t i = 0; i < grads.size(); ++i) {
        if (!std::isfinite(grads[i])) {
            throw std::runtime_error("non-finite gradient at component " +
                                     std::to_string(i));
        }
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        opt.velocity[i] = mu * opt.velocity[i] + grads[i];
        params[i] -= lr * opt.velocity[i];
    }
}

RunRecord train_one(const TrainConfig& cfg, const CircuitStructure& structure,
                    const State& input, std::uint64_t init_seed,
                    const std::vector<double>* initial_params) {
    cfg.validate();
    structure.validate();
    if (structure.n_qubits != cfg.n_qubits || input.n_qubits() != cfg.n_qubits) {
        throw std::invalid_argument(
            "structure, input and config disagree on the qubit count");
    }

    const std::size_t theta_count = structure.param_count();
    const bool is_sqc = cfg.model == Model::Sqc;
    NNArchitecture arch{};
    if (!is_sqc) {
        arch = arch_for(cfg.model, static_cast<int>(theta_count),
                        cfg.output_scale);
    }
    const std::size_t dim = is_sqc ? theta_count : nn_param_count(arch);

    std::vector<double> params;
    if (initial_params != nullptr) {
        if (initial_params->size() != dim) {
            throw std::invalid_argument("initial parameter override has length " +
                                        std::to_string(initial_params->size()) +
                                        ", model needs " + std::to_string(dim));
        }
        params = *initial_params;
    } else {
        Rng rng(init_seed);
        if (is_sqc) {
            params.resize(theta_count);
            for (double& p : params) {
                p = rng.uniform(0.0, 2.0 * std::numbers::pi);
            }
        } else {
            params = flatten_weights(init_nn_weights(arch, rng));
        }
    }

    RunRecord rec;
    rec.config = cfg;
    rec.structure = structure;
    rec.init_seed = init_seed;

    OptimizerState opt{std::vector<double>(dim, 0.0)};
    double checkpoint_loss = 0.0;
    bool have_checkpoint = false;

    const auto t0 = std::chrono::steady_clock::now();
    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        const CostGrad cg =
            is_sqc ? circuit_cost_grad(structure, params, input)
                   : neqc_cost_grad(structure, arch,
                                    unflatten_weights(arch, params), input);
        rec.loss_history.push_back(cg.value);

        if (!std::isfinite(cg.value)) {
            rec.stop_reason = StopReason::Nan;
            rec.failed = true;
            break;
        }
        if (cg.value < cfg.loss_target) {
            rec.stop_reason = StopReason::Target;
            break;
        }
        if (iter % cfg.plateau_window == 0) {
            if (have_checkpoint &&
                std::abs(cg.value - checkpoint_loss) < cfg.plateau_delta) {
                rec.stop_reason = StopReason::Plateau;
                break;
            }
            checkpoint_loss = cg.value;
            have_checkpoint = true;
        }
        if (iter == cfg.max_iterations) {
            rec.stop_reason = StopReason::MaxIter;
            break;
        }
        try {
            sgd_momentum_step(params, cg.grad, opt, cfg.learning_rate,
                              cfg.momentum);
        } catch (const std::runtime_error&) {
            rec.stop_reason = StopReason::Nan;
            rec.failed = true;
            break;
        }
    }
    const auto t1 = std::chrono::steady_clock::now();
    rec.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
    rec.final_parameters = std::move(params);
    return rec;
}

std::vector<RunRecord> run_experiment(int n_qubits, std::span<const Model> models,
                                      int runs, std::uint64_t base_seed,
                                      const TrainConfig& proto, int jobs) {
    if (runs < 1) {
        throw std::invalid_argument("runs must be >= 1");
    }
    if (models.empty()) {
        throw std::invalid_argument("at least one model is required");
    }

    // Per-cell configs validated up front so worker threads cannot throw.
    const int n_models = static_cast<int>(models.size());
    std::vector<TrainConfig> configs(n_models);
    for (int m = 0; m < n_models; ++m) {
        configs[m] = proto;
        configs[m].n_qubits = n_qubits;
        configs[m].model = models[m];
        configs[m].validate();
    }

    std::vector<RunRecord> records(static_cast<std::size_t>(runs) * n_models);
    auto run_cell = [&](int r, int m) {
        const std::uint64_t structure_seed = derive_seed(base_seed, "structure", r);
        const std::uint64_t input_seed = derive_seed(base_seed, "input", r);
        const std::uint64_t init_seed =
            derive_seed(base_seed, "init:" + model_name(models[m]), r);

        Rng structure_rng(structure_seed);
        const CircuitStructure structure =
            random_structure(n_qubits, configs[m].blocks(), structure_rng);
        Rng input_rng(input_seed);
        const State input = haar_random_state(n_qubits, input_rng);

        RunRecord rec = train_one(configs[m], structure, input, init_seed);
        rec.input_seed = input_seed;
        rec.run_index = r;
        records[static_cast<std::size_t>(r) * n_models + m] = std::move(rec);
    };

    const int total = runs * n_models;
    if (jobs <= 1) {
        for (int i = 0; i < total; ++i) {
            run_cell(i / n_models, i % n_models);
        }
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int t = 0; t < jobs; ++t) {
            pool.emplace_back([&] {
                for (int i; (i = next.fetch_add(1)) < total;) {
                    run_cell(i / n_models, i % n_models);
                }
            });
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }
    return records;
}

} // namespace neqc
