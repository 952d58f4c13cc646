#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "coupled_burgers/banded_linalg.hpp"
#include "coupled_burgers/initial_fit.hpp"
#include "coupled_burgers/problem_spec.hpp"
#include "coupled_burgers/spline_basis.hpp"

namespace coupled_burgers {

/// Time-level-n nodal quantities that freeze the nonlinear terms of the
/// linearized step: u = U^n(x_m), u_x = U_x^n(x_m), v = V^n(x_m),
/// v_x = V_x^n(x_m) for m = 0 .. n.
struct NonlinearWeights {
    std::vector<double> u;
    std::vector<double> u_x;
    std::vector<double> v;
    std::vector<double> v_x;
};

NonlinearWeights nonlinear_weights(const CoefficientState& state, const NodalWeights& w);

/// The fifteen coefficients of the two collocation rows at one node,
/// numbered 1..15 as
///
///   nu1 d_{m-1} + nu2 f_{m-1} + nu3 d_m + nu4 f_m + nu5 d_{m+1} + nu6 f_{m+1}
///       = nu7 d^n_{m-1} + nu8 d^n_m + nu9 d^n_{m+1}
///   nu10 d_{m-1} + nu11 f_{m-1} + nu12 d_m + nu13 f_m + nu14 d_{m+1} + nu15 f_{m+1}
///       = nu7 f^n_{m-1} + nu8 f^n_m + nu9 f^n_{m+1}
///
/// with d = delta^{n+1}, f = phi^{n+1} on the left.
struct NuCoefficients {
    std::array<double, 15> values{};

    [[nodiscard]] double operator()(int k) const { return values.at(static_cast<std::size_t>(k - 1)); }
    double& operator()(int k) { return values.at(static_cast<std::size_t>(k - 1)); }
};

/// Frozen nodal data (u, u_x, v, v_x) at a single node.
struct NodeState {
    double u = 0.0;
    double u_x = 0.0;
    double v = 0.0;
    double v_x = 0.0;
};

NuCoefficients nu_coefficients(const NodeState& node, const NodalWeights& w, double dt,
                               double k1, double k2, double k3);

/// Linear system for the interior unknowns (delta_0, phi_0, delta_1, phi_1,
/// ..., delta_n, phi_n) of one step. Bandwidth (3, 3).
struct AssembledSystem {
    BandedSystem system;
};

/// Builds the reduced system for the step from state.t to t_next = state.t + dt.
/// The ghost unknowns are eliminated with the Dirichlet data at t_next; the
/// right side is B x^n using the stored level-n ghosts, which satisfy the
/// boundary data at state.t.
AssembledSystem assemble(const CoefficientState& state, const ProblemSpec& problem,
                         const SplineParams& params, double dt, double t_next);

/// Recovers the ghost coefficients of `coeffs` (length n + 3) from the
/// Dirichlet values at both ends.
void restore_ghosts(std::span<double> coeffs, double left_value, double right_value,
                    const NodalWeights& w);

/// One Crank-Nicolson step with a single linear solve. The new state's time
/// is state.t + dt.
CoefficientState step(const CoefficientState& state, const ProblemSpec& problem,
                      const SplineParams& params, double dt);

/// As step(), but the new time level is given explicitly (t_next - state.t
/// must equal dt); used by run() to avoid accumulating round-off in t.
CoefficientState step_to(const CoefficientState& state, const ProblemSpec& problem,
                         const SplineParams& params, double dt, double t_next);

struct RunResult {
    CoefficientState final_state;
    std::vector<CoefficientState> snapshots;  // in the order requested
};

using StepObserver = std::function<void(const CoefficientState&)>;

/// Number of steps of size dt that reach t exactly (to 1e-9 relative).
/// Throws std::invalid_argument when t is not an integer multiple of dt.
long commensurate_steps(double t, double dt);

/// Fits the initial data and steps to t_final. Every snapshot time must be a
/// multiple of dt within [0, t_final]. The observer, when set, sees every
/// state after every step.
RunResult run(const ProblemSpec& problem, const SplineParams& params, double dt,
              double t_final, std::span<const double> snapshot_times = {},
              const StepObserver& observer = {});

}  // namespace coupled_burgers
