#include "coupled_burgers/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>

#include "coupled_burgers/analysis.hpp"
#include "coupled_burgers/banded_linalg.hpp"
#include "coupled_burgers/collocation_stepper.hpp"
#include "coupled_burgers/problems.hpp"

namespace coupled_burgers {

ConfigError::ConfigError(std::string field, int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      field_(std::move(field)),
      line_(line) {}

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "problem", "k1", "k2", "k3", "N", "N_list", "dt", "p", "p_lo", "p_hi",
    "tfinal", "snapshots", "out", "mode"};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Entry {
    std::string value;
    int line = 0;
};

double parse_double(const std::string& key, const Entry& e) {
    double v = 0.0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw ConfigError(key, e.line, "`" + key + "` expects a number, got '" + e.value + "'");
    }
    return v;
}

int parse_int(const std::string& key, std::string_view text, int line) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(key, line, "`" + key + "` expects an integer, got '" + std::string(text) + "'");
    }
    return v;
}

template <class Fn>
void for_each_item(const std::string& key, const Entry& e, Fn fn) {
    std::string_view rest = e.value;
    while (true) {
        const auto comma = rest.find(',');
        const std::string_view item = trim(rest.substr(0, comma));
        if (item.empty()) throw ConfigError(key, e.line, "`" + key + "` has an empty list item");
        fn(item);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
}

bool is_multiple(double t, double dt) {
    try {
        commensurate_steps(t, dt);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
    std::map<std::string, Entry, std::less<>> entries;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        ++line_no;
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected `key = value`");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError("", line_no, "missing key before '='");
        if (!kKnownKeys.contains(key)) throw ConfigError(key, line_no, "unknown key `" + key + "`");
        if (value.empty()) throw ConfigError(key, line_no, "`" + key + "` has no value");
        if (entries.contains(key)) throw ConfigError(key, line_no, "duplicate key `" + key + "`");
        entries.emplace(key, Entry{value, line_no});
    }

    auto line_of = [&](const std::string& key) {
        const auto it = entries.find(key);
        return it == entries.end() ? 0 : it->second.line;
    };
    auto fail = [&](const std::string& key, const std::string& msg) -> void {
        throw ConfigError(key, line_of(key), msg);
    };

    ExperimentConfig cfg;
    for (const auto& [key, e] : entries) {
        if (key == "problem") {
            cfg.problem = parse_int(key, e.value, e.line);
        } else if (key == "k1") {
            cfg.k1 = parse_double(key, e);
        } else if (key == "k2") {
            cfg.k2 = parse_double(key, e);
        } else if (key == "k3") {
            cfg.k3 = parse_double(key, e);
        } else if (key == "N") {
            cfg.n = parse_int(key, e.value, e.line);
        } else if (key == "N_list") {
            for_each_item(key, e, [&](std::string_view item) { cfg.n_list.push_back(parse_int(key, item, e.line)); });
        } else if (key == "dt") {
            cfg.dt = parse_double(key, e);
        } else if (key == "p") {
            if (e.value == "search") {
                cfg.search_p = true;
            } else {
                cfg.p = parse_double(key, e);
            }
        } else if (key == "p_lo") {
            cfg.p_lo = parse_double(key, e);
        } else if (key == "p_hi") {
            cfg.p_hi = parse_double(key, e);
        } else if (key == "tfinal") {
            cfg.t_final = parse_double(key, e);
        } else if (key == "snapshots") {
            for_each_item(key, e, [&](std::string_view item) {
                cfg.snapshots.push_back(parse_double(key, Entry{std::string(item), e.line}));
            });
        } else if (key == "out") {
            cfg.out_dir = e.value;
        } else if (key == "mode") {
            if (e.value == "errors") cfg.mode = Mode::kErrors;
            else if (e.value == "maxima") cfg.mode = Mode::kMaxima;
            else if (e.value == "convergence") cfg.mode = Mode::kConvergence;
            else if (e.value == "profile") cfg.mode = Mode::kProfile;
            else fail(key, "`mode` must be errors, maxima, convergence or profile");
        }
    }

    if (cfg.problem < 1 || cfg.problem > 3) fail("problem", "`problem` must be 1, 2 or 3");
    if (!entries.contains("dt")) fail("dt", "`dt` is required");
    if (!(cfg.dt > 0.0)) fail("dt", "`dt` must be positive");
    if (!entries.contains("tfinal") && cfg.snapshots.empty()) fail("tfinal", "`tfinal` is required");
    if (cfg.t_final < 0.0) fail("tfinal", "`tfinal` must be non-negative");
    for (double t : cfg.snapshots) {
        if (t < 0.0) fail("snapshots", "`snapshots` must be non-negative");
        if (!is_multiple(t, cfg.dt)) fail("snapshots", "`snapshots` must be multiples of dt");
    }
    if (!cfg.snapshots.empty()) {
        const double last = *std::max_element(cfg.snapshots.begin(), cfg.snapshots.end());
        if (!entries.contains("tfinal")) cfg.t_final = last;
        if (last > cfg.t_final * (1.0 + 1e-12)) fail("snapshots", "`snapshots` must not exceed tfinal");
    }
    if (!is_multiple(cfg.t_final, cfg.dt)) fail("tfinal", "`tfinal` must be a multiple of dt");

    if (cfg.mode == Mode::kConvergence) {
        if (cfg.n_list.size() < 2) fail("N_list", "convergence mode needs `N_list` with at least two entries");
        for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
            if (cfg.n_list[i] < 3) fail("N_list", "`N_list` entries must be >= 3");
            if (i > 0 && cfg.n_list[i] <= cfg.n_list[i - 1]) fail("N_list", "`N_list` must be increasing");
        }
    } else {
        if (!entries.contains("N")) fail("N", "`N` is required");
        if (cfg.n < 3) fail("N", "`N` must be at least 3");
    }

    if (cfg.search_p) {
        if (!(cfg.p_lo > 0.0)) fail("p_lo", "`p_lo` must be positive");
        if (!(cfg.p_hi > cfg.p_lo)) fail("p_hi", "`p_hi` must exceed p_lo");
    } else if (!(cfg.p > 0.0)) {
        fail("p", "`p` must be positive");
    }

    if (cfg.problem == 2 && cfg.k1 && *cfg.k1 != 2.0) fail("k1", "problem 2 fixes k1 = 2");
    if (cfg.problem == 3) {
        if (cfg.mode == Mode::kErrors || cfg.mode == Mode::kConvergence) {
            fail("mode", "problem 3 has no exact solution; use maxima or profile mode");
        }
        if (cfg.search_p) fail("p", "p = search needs a problem with an exact solution");
    }
    if (cfg.problem == 2) {
        try {
            traveling_wave_params(cfg.k2.value_or(1.0), cfg.k3.value_or(0.3));
        } catch (const std::invalid_argument& ex) {
            fail(cfg.k2 ? "k2" : "k3", ex.what());
        }
    }
    return cfg;
}

ProblemSpec make_problem(const ExperimentConfig& config) {
    switch (config.problem) {
        case 1:
            return problem1(config.k1.value_or(-2.0), config.k2.value_or(1.0), config.k3.value_or(1.0));
        case 2:
            return problem2(config.k2.value_or(1.0), config.k3.value_or(0.3));
        case 3:
            return problem3(config.k1.value_or(2.0), config.k2.value_or(10.0), config.k3.value_or(10.0));
        default:
            throw std::invalid_argument("make_problem: unknown problem id");
    }
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.11e", value);
    return buf;
}

namespace {

std::string format_time_tag(double t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", t);
    return buf;
}

std::ofstream open_csv(const std::filesystem::path& path, const std::string& header) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << header << '\n';
    return out;
}

std::vector<double> output_times(const ExperimentConfig& cfg) {
    std::vector<double> times = cfg.snapshots;
    if (times.empty()) times.push_back(cfg.t_final);
    return times;
}

double resolve_p(const ExperimentConfig& cfg, const ProblemSpec& problem, int n,
                 const std::filesystem::path& dir) {
    if (!cfg.search_p) return cfg.p;
    const TensionSearchResult found = search_p(problem, n, cfg.dt, cfg.t_final, cfg.p_lo, cfg.p_hi);
    // Convergence mode searches once per grid.
    const std::string name =
        cfg.mode == Mode::kConvergence ? "search_N" + std::to_string(n) + ".csv" : "search.csv";
    auto out = open_csv(dir / name, "p,linf");
    for (const auto& [p, v] : found.details.evaluations) out << format_number(p) << ',' << format_number(v) << '\n';
    return found.best_p;
}

void run_errors(const ExperimentConfig& cfg, const ProblemSpec& problem, const std::filesystem::path& dir) {
    const double p = resolve_p(cfg, problem, cfg.n, dir);
    const SplineParams params = make_params(problem.a, problem.b, cfg.n, p);
    const std::vector<double> times = output_times(cfg);
    const RunResult res = run(problem, params, cfg.dt, cfg.t_final, times);
    auto out = open_csv(dir / "errors.csv", "N,dt,p,t,linf_u,linf_v");
    for (std::size_t s = 0; s < times.size(); ++s) {
        const ErrorReport r = linf_error(res.snapshots[s], problem, params, times[s]);
        out << cfg.n << ',' << format_number(cfg.dt) << ',' << format_number(p) << ','
            << format_number(times[s]) << ',' << format_number(r.linf_u) << ','
            << format_number(r.linf_v) << '\n';
    }
}

void run_maxima(const ExperimentConfig& cfg, const ProblemSpec& problem, const std::filesystem::path& dir) {
    const double p = resolve_p(cfg, problem, cfg.n, dir);
    const SplineParams params = make_params(problem.a, problem.b, cfg.n, p);
    const std::vector<double> times = output_times(cfg);
    const MaxReport report = track_maxima(problem, params, cfg.dt, times);
    auto out = open_csv(dir / "maxima.csv", "t,max_u,x_u,max_v,x_v");
    for (const MaxEntry& e : report.entries) {
        out << format_number(e.t) << ',' << format_number(e.max_u) << ',' << format_number(e.x_u) << ','
            << format_number(e.max_v) << ',' << format_number(e.x_v) << '\n';
    }
}

void run_convergence(const ExperimentConfig& cfg, const ProblemSpec& problem,
                     const std::filesystem::path& dir) {
    auto out = open_csv(dir / "convergence.csv", "N,linf,order");
    double prev_err = 0.0;
    int prev_n = 0;
    for (int n : cfg.n_list) {
        const double p = resolve_p(cfg, problem, n, dir);
        const double err = run_linf(problem, n, cfg.dt, cfg.t_final, p);
        out << n << ',' << format_number(err) << ',';
        if (prev_n > 0) out << format_number(convergence_order(prev_err, err, prev_n, n));
        out << '\n';
        prev_err = err;
        prev_n = n;
    }
}

void run_profile(const ExperimentConfig& cfg, const ProblemSpec& problem, const std::filesystem::path& dir) {
    const double p = resolve_p(cfg, problem, cfg.n, dir);
    const SplineParams params = make_params(problem.a, problem.b, cfg.n, p);
    const std::vector<double> times = output_times(cfg);
    const RunResult res = run(problem, params, cfg.dt, cfg.t_final, times);
    const NodalWeights w = nodal_weights(params);
    for (std::size_t s = 0; s < times.size(); ++s) {
        const auto u = nodal_profile(res.snapshots[s].delta, w);
        const auto v = nodal_profile(res.snapshots[s].phi, w);
        auto out = open_csv(dir / ("profile_t" + format_time_tag(times[s]) + ".csv"), "x,u,v");
        for (std::size_t j = 0; j < u.size(); ++j) {
            out << format_number(params.knot(static_cast<int>(j))) << ',' << format_number(u[j].value) << ','
                << format_number(v[j].value) << '\n';
        }
    }
}

}  // namespace

int run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir, std::ostream& err) {
    ProblemSpec problem;
    try {
        problem = make_problem(config);
        std::filesystem::create_directories(out_dir);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitInvalid;
    }

    try {
        switch (config.mode) {
            case Mode::kErrors: run_errors(config, problem, out_dir); break;
            case Mode::kMaxima: run_maxima(config, problem, out_dir); break;
            case Mode::kConvergence: run_convergence(config, problem, out_dir); break;
            case Mode::kProfile: run_profile(config, problem, out_dir); break;
        }
    } catch (const SingularSystemError& ex) {
        err << "solver failure: " << ex.what() << '\n';
        return kExitSolverFailure;
    } catch (const std::exception& ex) {
        err << "run failed: " << ex.what() << '\n';
        return kExitSolverFailure;
    }
    return kExitOk;
}

}  // namespace coupled_burgers
