#include "coupled_burgers/initial_fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coupled_burgers/banded_linalg.hpp"

namespace coupled_burgers {

std::vector<NodalValues> nodal_profile(std::span<const double> coeffs, const NodalWeights& w) {
    if (coeffs.size() < 4) throw std::invalid_argument("nodal_profile: too few coefficients");
    const std::size_t knots = coeffs.size() - 2;
    std::vector<NodalValues> out(knots);
    for (std::size_t m = 0; m < knots; ++m) {
        out[m] = nodal_values(coeffs[m], coeffs[m + 1], coeffs[m + 2], w);
    }
    return out;
}

namespace {

template <class Eval>
double sum_basis(std::span<const double> coeffs, const SplineParams& params, double x, Eval eval) {
    // Only B_{j-1} .. B_{j+2} are nonzero on [x_j, x_{j+1}].
    const int j = static_cast<int>(std::floor((x - params.a) / params.h));
    double acc = 0.0;
    for (int i = j - 2; i <= j + 3; ++i) {
        if (i < -1 || i > params.n + 1) continue;
        acc += coeffs[static_cast<std::size_t>(i + 1)] * eval(i, x, params);
    }
    return acc;
}

}  // namespace

double evaluate_spline(std::span<const double> coeffs, const SplineParams& params, double x) {
    return sum_basis(coeffs, params, x, eval_basis);
}

double evaluate_spline_d1(std::span<const double> coeffs, const SplineParams& params, double x) {
    return sum_basis(coeffs, params, x, eval_basis_d1);
}

double one_sided_slope_left(const SpaceFn& f, double a, double h) {
    return (-3.0 * f(a) + 4.0 * f(a + h) - f(a + 2.0 * h)) / (2.0 * h);
}

double one_sided_slope_right(const SpaceFn& f, double b, double h) {
    return (3.0 * f(b) - 4.0 * f(b - h) + f(b - 2.0 * h)) / (2.0 * h);
}

std::vector<double> fit_component(const SpaceFn& f, double slope_a, double slope_b,
                                  const SplineParams& params) {
    const NodalWeights w = nodal_weights(params);
    const auto n = static_cast<std::size_t>(params.n);

    // Slope conditions: beta_l c_{-1} + beta_r c_1 = f'(a), so
    //   c_{-1}  = c_1     + f'(a) / beta_l
    //   c_{n+1} = c_{n-1} + f'(b) / beta_r
    // Substituting into the value rows at x_0 and x_n folds the ghosts away.
    TridiagonalSystem sys;
    sys.diag.assign(n + 1, w.alpha2);
    sys.lower.assign(n, w.alpha1);
    sys.upper.assign(n, w.alpha1);
    sys.rhs.resize(n + 1);
    for (std::size_t m = 0; m <= n; ++m) sys.rhs[m] = f(params.knot(static_cast<int>(m)));
    sys.upper[0] = 2.0 * w.alpha1;
    sys.lower[n - 1] = 2.0 * w.alpha1;
    sys.rhs[0] -= w.alpha1 * slope_a / w.beta_l;
    sys.rhs[n] -= w.alpha1 * slope_b / w.beta_r;

    const std::vector<double> inner = solve_tridiagonal(sys);

    std::vector<double> coeffs(n + 3);
    std::copy(inner.begin(), inner.end(), coeffs.begin() + 1);
    coeffs[0] = inner[1] + slope_a / w.beta_l;
    coeffs[n + 2] = inner[n - 1] + slope_b / w.beta_r;
    return coeffs;
}

CoefficientState fit_initial(const ProblemSpec& problem, const SplineParams& params) {
    if (!problem.f || !problem.g) throw std::invalid_argument("fit_initial: missing initial data");

    auto slopes = [&](const SpaceFn& fn, const SpaceFn& dfn) {
        if (dfn) return std::pair{dfn(params.a), dfn(params.b)};
        return std::pair{one_sided_slope_left(fn, params.a, params.h),
                         one_sided_slope_right(fn, params.b, params.h)};
    };
    const auto [fa, fb] = slopes(problem.f, problem.df);
    const auto [ga, gb] = slopes(problem.g, problem.dg);

    CoefficientState state;
    state.delta = fit_component(problem.f, fa, fb, params);
    state.phi = fit_component(problem.g, ga, gb, params);
    state.t = 0.0;
    return state;
}

}  // namespace coupled_burgers
