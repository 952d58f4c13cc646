// solve: run one coupled Burgers experiment described by a key = value
// config file and write its CSV tables.
//
//   solve --config <path> [--out <dir>]
//
// Output directory precedence: --out, then `out` in the config, then the
// BURGERS_OUT_DIR environment variable, then the current directory.
// Exit codes: 0 success, 1 invalid input, 2 solver failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "coupled_burgers/experiment.hpp"

int main(int argc, char** argv) {
    namespace cb = coupled_burgers;

    CLI::App app{"Exponential cubic B-spline collocation solver for the coupled Burgers system"};
    std::string config_path;
    std::string out_dir;
    app.add_option("--config", config_path, "experiment config (key = value lines)")->required();
    app.add_option("--out", out_dir, "output directory for CSV files");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cb::kExitOk : cb::kExitInvalid;
    }

    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read config '" << config_path << "'\n";
        return cb::kExitInvalid;
    }
    std::ostringstream text;
    text << in.rdbuf();

    cb::ExperimentConfig config;
    try {
        config = cb::parse_config(text.str());
    } catch (const cb::ConfigError& e) {
        std::cerr << config_path << ": " << e.what() << '\n';
        return cb::kExitInvalid;
    }

    if (out_dir.empty()) out_dir = config.out_dir;
    if (out_dir.empty()) {
        if (const char* env = std::getenv("BURGERS_OUT_DIR"); env != nullptr) out_dir = env;
    }
    if (out_dir.empty()) out_dir = ".";

    return cb::run_experiment(config, out_dir, std::cerr);
}
