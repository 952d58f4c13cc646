#pragma once

#include <span>
#include <vector>

#include "coupled_burgers/problem_spec.hpp"
#include "coupled_burgers/spline_basis.hpp"

namespace coupled_burgers {

/// Spline coefficients of U (delta) and V (phi) at one time level. Both
/// vectors hold indices -1 .. n+1, i.e. entry k is the coefficient of
/// B_{k-1}.
struct CoefficientState {
    std::vector<double> delta;
    std::vector<double> phi;
    double t = 0.0;

    static CoefficientState zeros(int n, double t = 0.0) {
        const auto len = static_cast<std::size_t>(n + 3);
        return {std::vector<double>(len, 0.0), std::vector<double>(len, 0.0), t};
    }

    /// Number of subintervals.
    [[nodiscard]] int intervals() const { return static_cast<int>(delta.size()) - 3; }

    [[nodiscard]] double delta_at(int i) const { return delta[static_cast<std::size_t>(i + 1)]; }
    [[nodiscard]] double phi_at(int i) const { return phi[static_cast<std::size_t>(i + 1)]; }
    double& delta_at(int i) { return delta[static_cast<std::size_t>(i + 1)]; }
    double& phi_at(int i) { return phi[static_cast<std::size_t>(i + 1)]; }
};

/// Nodal value and derivatives at every knot x_0 .. x_n of the spline with
/// the given coefficients (length n + 3).
std::vector<NodalValues> nodal_profile(std::span<const double> coeffs, const NodalWeights& w);

/// Spline value at an arbitrary x by direct basis summation.
double evaluate_spline(std::span<const double> coeffs, const SplineParams& params, double x);
double evaluate_spline_d1(std::span<const double> coeffs, const SplineParams& params, double x);

/// Coefficients of the spline interpolating f at all knots with end slopes
/// f'(a) = slope_a and f'(b) = slope_b. The two ghost coefficients are
/// eliminated through the slope conditions and the remaining n + 1 unknowns
/// are found from a tridiagonal solve.
std::vector<double> fit_component(const SpaceFn& f, double slope_a, double slope_b,
                                  const SplineParams& params);

/// Second-order one-sided estimates of f'(a) and f'(b) with step h.
double one_sided_slope_left(const SpaceFn& f, double a, double h);
double one_sided_slope_right(const SpaceFn& f, double b, double h);

/// Initial coefficients for U and V. End slopes come from the problem's
/// derivative functions when present, otherwise from one-sided differences.
CoefficientState fit_initial(const ProblemSpec& problem, const SplineParams& params);

}  // namespace coupled_burgers
