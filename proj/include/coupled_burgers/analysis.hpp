#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "coupled_burgers/initial_fit.hpp"
#include "coupled_burgers/problem_spec.hpp"
#include "coupled_burgers/spline_basis.hpp"

namespace coupled_burgers {

/// Discrete maximum-norm error over the knots.
struct ErrorReport {
    double linf_u = 0.0;
    double linf_v = 0.0;
    double argmax_x_u = 0.0;
    double argmax_x_v = 0.0;
    int n = 0;
    double dt = 0.0;
    double p = 0.0;
    double t = 0.0;

    [[nodiscard]] double linf() const { return linf_u > linf_v ? linf_u : linf_v; }
};

/// Throws std::invalid_argument when the problem has no exact solution.
/// The dt field is left at zero; callers that know it fill it in.
ErrorReport linf_error(const CoefficientState& state, const ProblemSpec& problem,
                       const SplineParams& params, double t);

/// Index of the largest entry; ties resolve to the lowest index.
std::size_t argmax_lowest(std::span<const double> values);

/// ln(e_coarse / e_fine) / ln(n_fine / n_coarse).
/// Throws std::invalid_argument on non-positive errors or n_fine <= n_coarse.
double convergence_order(double e_coarse, double e_fine, int n_coarse, int n_fine);

struct SearchOptions {
    int grid_points = 40;
    double rel_width = 1e-3;  // golden-section stops when hi/lo - 1 < rel_width
    bool parallel = true;
};

struct SearchResult {
    double best_p = 0.0;
    double best_value = 0.0;
    std::vector<std::pair<double, double>> evaluations;  // (p, objective) in evaluation order
    std::vector<double> skipped;                          // p values whose evaluation failed
};

/// Objective that returns nullopt when a candidate cannot be evaluated.
using Objective = std::function<std::optional<double>(double p)>;

/// Log-spaced scan of [lo, hi] followed by golden-section refinement (in
/// log p) around the best grid point. The returned minimum is the best of
/// every evaluation, so it never exceeds the value at either endpoint, nor
/// at p = 1 when 1 lies in [lo, hi]. Throws std::runtime_error if every
/// candidate is skipped.
SearchResult minimize_log_scale(const Objective& objective, double lo, double hi,
                                const SearchOptions& options = {});

struct TensionSearchResult {
    double best_p = 0.0;
    double best_linf = 0.0;
    SearchResult details;
};

/// L-infinity error (max over U and V) of a full run at tension p.
double run_linf(const ProblemSpec& problem, int n, double dt, double t_final, double p);

/// Tension search on the run error; singular or otherwise failing p values
/// are skipped and reported.
TensionSearchResult search_p(const ProblemSpec& problem, int n, double dt, double t_final,
                             double p_lo = 1e-8, double p_hi = 10.0,
                             const SearchOptions& options = {});

struct MaxEntry {
    double t = 0.0;
    double max_u = 0.0;
    double x_u = 0.0;
    double max_v = 0.0;
    double x_v = 0.0;
};

struct MaxReport {
    std::vector<MaxEntry> entries;
};

/// Largest nodal U and V of a state, located at knots (lowest index on ties).
MaxEntry nodal_maxima(const CoefficientState& state, const SplineParams& params);

MaxReport track_maxima(const ProblemSpec& problem, const SplineParams& params, double dt,
                       std::span<const double> snapshot_times);

}  // namespace coupled_burgers
