#include <charconv>
#include <cstdint>
#include <iostream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"

#include "neqc/cli.hpp"

namespace {

bool parse_int(std::string_view text, int& out) {
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end;
}

// "3" or "3..5".
void parse_qubit_range(const std::string& text, int& lo, int& hi) {
    const std::size_t pos = text.find("..");
    bool ok;
    if (pos == std::string::npos) {
        ok = parse_int(text, lo);
        hi = lo;
    } else {
        ok = parse_int(std::string_view(text).substr(0, pos), lo) &&
             parse_int(std::string_view(text).substr(pos + 2), hi);
    }
    if (!ok) {
        throw std::invalid_argument("--qubits expects N or A..B, got '" + text +
                                    "'");
    }
}

std::vector<neqc::Model> parse_models(const std::string& text) {
    std::vector<neqc::Model> models;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::size_t end = comma == std::string::npos ? text.size() : comma;
        models.push_back(neqc::model_from_name(text.substr(start, end - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return models;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Train SQC/NEQC variational circuits and analyze "
                 "convergence, expressibility, and loss landscapes"};
    app.require_subcommand(1);

    std::string cfg_path;
    std::string qubits_text;
    std::string models_text;
    std::string out_dir;
    int runs = 0;
    int jobs = 0;
    std::uint64_t seed = 0;
    CLI::App* train = app.add_subcommand(
        "train", "Run the training sweep and write run artifacts");
    train->add_option("--config", cfg_path, "JSON manifest file");
    train->add_option("--qubits", qubits_text, "Qubit count N or range A..B");
    train->add_option("--models", models_text,
                      "Comma-separated subset of sqc,neqc-nn,neqc-cnn");
    train->add_option("--runs", runs, "Paired runs per qubit count");
    train->add_option("--seed", seed, "Base seed (all randomness derives from it)");
    train->add_option("--jobs", jobs, "Worker threads");
    train->add_option("--out", out_dir, "Output directory");

    neqc::ExpressibilityOptions eopt;
    CLI::App* expr = app.add_subcommand(
        "expressibility", "Estimate the KL divergence against Haar fidelities");
    expr->add_option("--run", eopt.run_file, "Trained run JSON file");
    expr->add_option("--structure", eopt.structure_file,
                     "Circuit structure JSON (samples random angles)");
    expr->add_option("--k", eopt.k, "Number of fidelity pairs");
    expr->add_option("--bins", eopt.n_bins, "Histogram bins");
    expr->add_option("--seed", eopt.seed, "Sampling seed");
    expr->add_option("--out", eopt.out_dir, "Output directory");

    neqc::LandscapeOptions lopt;
    CLI::App* land = app.add_subcommand(
        "landscape", "Evaluate the loss over a random 2-D parameter slice");
    land->add_option("--run", lopt.run_file, "Trained run JSON file")
        ->required();
    land->add_option("--resolution", lopt.resolution, "Grid points per axis");
    land->add_option("--seed", lopt.seed, "Direction seed");
    land->add_option("--out", lopt.out_dir, "Output directory");

    std::string report_dir = "results";
    CLI::App* report = app.add_subcommand(
        "report", "Rebuild sweep.csv and summary.csv from existing run files");
    report->add_option("--out", report_dir, "Directory holding runs/");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e); // prints help or the parse error
        return rc == 0 ? neqc::kExitOk : neqc::kExitValidation;
    }

    try {
        if (train->parsed()) {
            neqc::ExperimentManifest m;
            if (train->count("--config") > 0) {
                m = neqc::manifest_from_file(cfg_path);
            }
            if (train->count("--qubits") > 0) {
                parse_qubit_range(qubits_text, m.qubits_from, m.qubits_to);
            }
            if (train->count("--models") > 0) {
                m.models = parse_models(models_text);
            }
            if (train->count("--runs") > 0) {
                m.runs = runs;
            }
            if (train->count("--seed") > 0) {
                m.base_seed = seed;
            }
            if (train->count("--jobs") > 0) {
                m.jobs = jobs;
            }
            if (train->count("--out") > 0) {
                m.out_dir = out_dir;
            }
            return neqc::cmd_train(m);
        }
        if (expr->parsed()) {
            return neqc::cmd_expressibility(eopt);
        }
        if (land->parsed()) {
            return neqc::cmd_landscape(lopt);
        }
        if (report->parsed()) {
            return neqc::cmd_report(report_dir);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return neqc::kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return neqc::kExitRuntime;
    }
    return neqc::kExitOk;
}
