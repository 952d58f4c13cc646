#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coupled_burgers/problem_spec.hpp"

namespace coupled_burgers {

enum class Mode { kErrors, kMaxima, kConvergence, kProfile };

/// One experiment, read from a `key = value` document:
///
///   problem   = 1 | 2 | 3
///   k1, k2, k3 = overrides of the problem constants
///   N         = number of subintervals (all modes except convergence)
///   N_list    = comma-separated, increasing (convergence mode)
///   dt        = time step
///   p         = tension, or `search` (bounds p_lo, p_hi)
///   tfinal    = final time
///   snapshots = comma-separated output times, multiples of dt
///   out       = output directory
///   mode      = errors | maxima | convergence | profile
struct ExperimentConfig {
    int problem = 1;
    std::optional<double> k1;
    std::optional<double> k2;
    std::optional<double> k3;
    int n = 0;
    std::vector<int> n_list;
    double dt = 0.0;
    bool search_p = false;
    double p = 1.0;
    double p_lo = 1e-8;
    double p_hi = 10.0;
    double t_final = 0.0;
    std::vector<double> snapshots;
    std::string out_dir;
    Mode mode = Mode::kErrors;
};

/// Parse or validation failure. field() names the offending key (empty for
/// syntax errors) and line() is 1-based (0 when the key was missing).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, int line, const std::string& message);
    [[nodiscard]] const std::string& field() const noexcept { return field_; }
    [[nodiscard]] int line() const noexcept { return line_; }

private:
    std::string field_;
    int line_;
};

ExperimentConfig parse_config(std::string_view text);

/// Problem instance for a config, with the k overrides applied.
ProblemSpec make_problem(const ExperimentConfig& config);

/// Exit codes of run_experiment.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitSolverFailure = 2;

/// Runs the experiment and writes its CSV files into out_dir (created if
/// needed). Diagnostics go to `err`. Returns one of the exit codes above.
int run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                   std::ostream& err);

/// Fixed scientific formatting shared by every CSV cell (12 significant digits).
std::string format_number(double value);

}  // namespace coupled_burgers
