#include "coupled_burgers/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

#include "coupled_burgers/collocation_stepper.hpp"

namespace coupled_burgers {

std::size_t argmax_lowest(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("argmax_lowest: empty input");
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    return best;
}

ErrorReport linf_error(const CoefficientState& state, const ProblemSpec& problem,
                       const SplineParams& params, double t) {
    if (!problem.has_exact()) {
        throw std::invalid_argument("linf_error: " + problem.name + " has no exact solution");
    }
    const NodalWeights w = nodal_weights(params);
    const auto u = nodal_profile(state.delta, w);
    const auto v = nodal_profile(state.phi, w);

    std::vector<double> eu(u.size());
    std::vector<double> ev(v.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double x = params.knot(static_cast<int>(j));
        eu[j] = std::abs(problem.exact_u(x, t).value - u[j].value);
        ev[j] = std::abs(problem.exact_v(x, t).value - v[j].value);
    }
    const std::size_t ju = argmax_lowest(eu);
    const std::size_t jv = argmax_lowest(ev);

    ErrorReport r;
    r.linf_u = eu[ju];
    r.linf_v = ev[jv];
    r.argmax_x_u = params.knot(static_cast<int>(ju));
    r.argmax_x_v = params.knot(static_cast<int>(jv));
    r.n = params.n;
    r.p = params.p;
    r.t = t;
    return r;
}

double convergence_order(double e_coarse, double e_fine, int n_coarse, int n_fine) {
    if (!(e_coarse > 0.0) || !(e_fine > 0.0)) {
        throw std::invalid_argument("convergence_order: errors must be positive");
    }
    if (n_coarse <= 0 || n_fine <= n_coarse) {
        throw std::invalid_argument("convergence_order: need 0 < n_coarse < n_fine");
    }
    return std::log(e_coarse / e_fine) / std::log(static_cast<double>(n_fine) / n_coarse);
}

SearchResult minimize_log_scale(const Objective& objective, double lo, double hi,
                                const SearchOptions& options) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("minimize_log_scale: need 0 < lo < hi");
    if (options.grid_points < 3) throw std::invalid_argument("minimize_log_scale: grid_points < 3");

    SearchResult result;
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    const int m = options.grid_points;

    std::vector<double> grid(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        grid[static_cast<std::size_t>(k)] =
            k == 0 ? lo : (k == m - 1 ? hi : std::exp(log_lo + (log_hi - log_lo) * k / (m - 1)));
    }
    if (lo <= 1.0 && 1.0 <= hi && std::find(grid.begin(), grid.end(), 1.0) == grid.end()) {
        grid.push_back(1.0);
    }

    auto safe_eval = [&objective](double p) -> std::optional<double> {
        try {
            std::optional<double> v = objective(p);
            if (v && !std::isfinite(*v)) return std::nullopt;
            return v;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    };

    // Grid evaluations are independent; results are collected by index so
    // the outcome does not depend on scheduling.
    std::vector<std::optional<double>> values(grid.size());
    if (options.parallel) {
        std::vector<std::future<std::optional<double>>> jobs;
        jobs.reserve(grid.size());
        for (double p : grid) jobs.push_back(std::async(std::launch::async, safe_eval, p));
        for (std::size_t k = 0; k < grid.size(); ++k) values[k] = jobs[k].get();
    } else {
        for (std::size_t k = 0; k < grid.size(); ++k) values[k] = safe_eval(grid[k]);
    }

    double best_p = 0.0;
    double best_v = std::numeric_limits<double>::infinity();
    auto record = [&](double p, const std::optional<double>& v) {
        if (!v) {
            result.skipped.push_back(p);
            return;
        }
        result.evaluations.emplace_back(p, *v);
        if (*v < best_v) {
            best_v = *v;
            best_p = p;
        }
    };
    for (std::size_t k = 0; k < grid.size(); ++k) record(grid[k], values[k]);
    if (!std::isfinite(best_v)) throw std::runtime_error("minimize_log_scale: every candidate failed");

    // Golden section on log p over the bracket around the best log-grid point.
    std::size_t kbest = 0;
    for (std::size_t k = 0; k < static_cast<std::size_t>(m); ++k) {
        const auto& v = values[k];
        if (v && (!values[kbest] || *v < *values[kbest])) kbest = k;
    }
    double a = std::log(grid[kbest == 0 ? 0 : kbest - 1]);
    double b = std::log(grid[std::min<std::size_t>(kbest + 1, static_cast<std::size_t>(m - 1))]);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto eval_log = [&](double lp) {
        const double p = std::exp(lp);
        const std::optional<double> v = safe_eval(p);
        record(p, v);
        return v ? *v : std::numeric_limits<double>::infinity();
    };
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = eval_log(c);
    double fd = eval_log(d);
    while (std::exp(b - a) - 1.0 > options.rel_width) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval_log(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval_log(d);
        }
    }

    result.best_p = best_p;
    result.best_value = best_v;
    return result;
}

double run_linf(const ProblemSpec& problem, int n, double dt, double t_final, double p) {
    const SplineParams params = make_params(problem.a, problem.b, n, p);
    const RunResult res = run(problem, params, dt, t_final);
    return linf_error(res.final_state, problem, params, t_final).linf();
}

TensionSearchResult search_p(const ProblemSpec& problem, int n, double dt, double t_final,
                             double p_lo, double p_hi, const SearchOptions& options) {
    if (!problem.has_exact()) throw std::invalid_argument("search_p: problem has no exact solution");
    // Validate the run configuration once up front, so errors that do not
    // depend on p surface instead of being skipped per candidate.
    commensurate_steps(t_final, dt);
    (void)make_params(problem.a, problem.b, n, 1.0);

    Objective objective = [&](double p) -> std::optional<double> {
        try {
            return run_linf(problem, n, dt, t_final, p);
        } catch (const SingularSystemError&) {
            return std::nullopt;
        }
    };
    TensionSearchResult out;
    out.details = minimize_log_scale(objective, p_lo, p_hi, options);
    out.best_p = out.details.best_p;
    out.best_linf = out.details.best_value;
    return out;
}

MaxEntry nodal_maxima(const CoefficientState& state, const SplineParams& params) {
    const NodalWeights w = nodal_weights(params);
    const auto u = nodal_profile(state.delta, w);
    const auto v = nodal_profile(state.phi, w);
    std::vector<double> uv(u.size());
    std::vector<double> vv(v.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        uv[j] = u[j].value;
        vv[j] = v[j].value;
    }
    const std::size_t ju = argmax_lowest(uv);
    const std::size_t jv = argmax_lowest(vv);
    return MaxEntry{state.t, uv[ju], params.knot(static_cast<int>(ju)), vv[jv],
                    params.knot(static_cast<int>(jv))};
}

MaxReport track_maxima(const ProblemSpec& problem, const SplineParams& params, double dt,
                       std::span<const double> snapshot_times) {
    double t_final = 0.0;
    for (double t : snapshot_times) t_final = std::max(t_final, t);
    const RunResult res = run(problem, params, dt, t_final, snapshot_times);
    MaxReport report;
    for (std::size_t s = 0; s < res.snapshots.size(); ++s) {
        MaxEntry e = nodal_maxima(res.snapshots[s], params);
        e.t = snapshot_times[s];
        report.entries.push_back(e);
    }
    return report;
}

}  // namespace coupled_burgers
