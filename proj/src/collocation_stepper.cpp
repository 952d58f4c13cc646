#include "coupled_burgers/collocation_stepper.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace coupled_burgers {

NonlinearWeights nonlinear_weights(const CoefficientState& state, const NodalWeights& w) {
    const std::vector<NodalValues> u = nodal_profile(state.delta, w);
    const std::vector<NodalValues> v = nodal_profile(state.phi, w);
    NonlinearWeights nw;
    nw.u.reserve(u.size());
    nw.u_x.reserve(u.size());
    nw.v.reserve(v.size());
    nw.v_x.reserve(v.size());
    for (std::size_t m = 0; m < u.size(); ++m) {
        nw.u.push_back(u[m].value);
        nw.u_x.push_back(u[m].d1);
        nw.v.push_back(v[m].value);
        nw.v_x.push_back(v[m].d1);
    }
    return nw;
}

NuCoefficients nu_coefficients(const NodeState& node, const NodalWeights& w, double dt,
                               double k1, double k2, double k3) {
    // Crank-Nicolson average with the level-(n+1) products replaced by
    //   (U U_x)^{n+1} ~ U^{n+1} U_x^n + U^n U_x^{n+1} - U^n U_x^n
    //   (U V)_x^{n+1} ~ U_x^{n+1} V^n + U_x^n V^{n+1} + U^{n+1} V_x^n + U^n V_x^{n+1} - (U V)_x^n
    // The level-n products cancel against the explicit half of the average,
    // leaving a right side that depends on the level-n coefficients linearly.
    const double two_dt = 2.0 / dt;
    const double cu = two_dt + k1 * node.u_x + k2 * node.v_x;  // multiplies U^{n+1}
    const double du = k1 * node.u + k2 * node.v;                // multiplies U_x^{n+1}
    const double cv = two_dt + k1 * node.v_x + k3 * node.u_x;  // multiplies V^{n+1}
    const double dv = k1 * node.v + k3 * node.u;                // multiplies V_x^{n+1}

    NuCoefficients nu;
    nu(1) = cu * w.alpha1 + du * w.beta_l - w.gamma1;
    nu(2) = k2 * node.u_x * w.alpha1 + k2 * node.u * w.beta_l;
    nu(3) = cu * w.alpha2 - w.gamma2;
    nu(4) = k2 * node.u_x * w.alpha2;
    nu(5) = cu * w.alpha1 + du * w.beta_r - w.gamma1;
    nu(6) = k2 * node.u_x * w.alpha1 + k2 * node.u * w.beta_r;

    nu(7) = two_dt * w.alpha1 + w.gamma1;
    nu(8) = two_dt * w.alpha2 + w.gamma2;
    nu(9) = nu(7);

    nu(10) = k3 * node.v_x * w.alpha1 + k3 * node.v * w.beta_l;
    nu(11) = cv * w.alpha1 + dv * w.beta_l - w.gamma1;
    nu(12) = k3 * node.v_x * w.alpha2;
    nu(13) = cv * w.alpha2 - w.gamma2;
    nu(14) = k3 * node.v_x * w.alpha1 + k3 * node.v * w.beta_r;
    nu(15) = cv * w.alpha1 + dv * w.beta_r - w.gamma1;
    return nu;
}

namespace {

void check_state(const CoefficientState& state, const SplineParams& params) {
    const auto len = static_cast<std::size_t>(params.n + 3);
    if (state.delta.size() != len || state.phi.size() != len) {
        throw std::invalid_argument("collocation: state length does not match n + 3");
    }
}

void check_dt(double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("collocation: dt must be positive");
}

}  // namespace

AssembledSystem assemble(const CoefficientState& state, const ProblemSpec& problem,
                         const SplineParams& params, double dt, double t_next) {
    check_state(state, params);
    check_dt(dt);

    const int n = params.n;
    const auto dim = static_cast<std::size_t>(2 * n + 2);
    const NodalWeights w = nodal_weights(params);
    const NonlinearWeights nw = nonlinear_weights(state, w);

    AssembledSystem out{BandedSystem{BandMatrix(dim, 3, 3), std::vector<double>(dim, 0.0)}};
    BandMatrix& mat = out.system.matrix;
    std::vector<double>& rhs = out.system.rhs;

    const double fl = problem.f1(t_next);
    const double fr = problem.f2(t_next);
    const double gl = problem.g1(t_next);
    const double gr = problem.g2(t_next);

    // Adds coef * (delta_j or phi_j) to `row`, folding ghosts through
    //   c_{-1}  = (left  - alpha2 c_0 - alpha1 c_1) / alpha1
    //   c_{n+1} = (right - alpha1 c_{n-1} - alpha2 c_n) / alpha1
    auto add = [&](std::size_t row, int j, int component, double coef) {
        auto col = [component](int k) { return static_cast<std::size_t>(2 * k + component); };
        if (j == -1) {
            const double left = component == 0 ? fl : gl;
            mat.at(row, col(0)) -= coef * w.alpha2 / w.alpha1;
            mat.at(row, col(1)) -= coef;
            rhs[row] -= coef * left / w.alpha1;
        } else if (j == n + 1) {
            const double right = component == 0 ? fr : gr;
            mat.at(row, col(n - 1)) -= coef;
            mat.at(row, col(n)) -= coef * w.alpha2 / w.alpha1;
            rhs[row] -= coef * right / w.alpha1;
        } else {
            mat.at(row, col(j)) += coef;
        }
    };

    for (int m = 0; m <= n; ++m) {
        const auto mm = static_cast<std::size_t>(m);
        const NodeState node{nw.u[mm], nw.u_x[mm], nw.v[mm], nw.v_x[mm]};
        const NuCoefficients nu = nu_coefficients(node, w, dt, problem.k1, problem.k2, problem.k3);
        const std::size_t ru = 2 * mm;
        const std::size_t rv = ru + 1;

        add(ru, m - 1, 0, nu(1));
        add(ru, m - 1, 1, nu(2));
        add(ru, m, 0, nu(3));
        add(ru, m, 1, nu(4));
        add(ru, m + 1, 0, nu(5));
        add(ru, m + 1, 1, nu(6));

        add(rv, m - 1, 0, nu(10));
        add(rv, m - 1, 1, nu(11));
        add(rv, m, 0, nu(12));
        add(rv, m, 1, nu(13));
        add(rv, m + 1, 0, nu(14));
        add(rv, m + 1, 1, nu(15));

        rhs[ru] += nu(7) * state.delta_at(m - 1) + nu(8) * state.delta_at(m) + nu(9) * state.delta_at(m + 1);
        rhs[rv] += nu(7) * state.phi_at(m - 1) + nu(8) * state.phi_at(m) + nu(9) * state.phi_at(m + 1);
    }
    return out;
}

void restore_ghosts(std::span<double> coeffs, double left_value, double right_value,
                    const NodalWeights& w) {
    const std::size_t last = coeffs.size() - 1;  // index of c_{n+1}
    coeffs[0] = (left_value - w.alpha2 * coeffs[1] - w.alpha1 * coeffs[2]) / w.alpha1;
    coeffs[last] = (right_value - w.alpha1 * coeffs[last - 2] - w.alpha2 * coeffs[last - 1]) / w.alpha1;
}

CoefficientState step_to(const CoefficientState& state, const ProblemSpec& problem,
                         const SplineParams& params, double dt, double t_next) {
    const AssembledSystem sys = assemble(state, problem, params, dt, t_next);
    const std::vector<double> x = solve_banded(sys.system);

    const int n = params.n;
    CoefficientState next = CoefficientState::zeros(n, t_next);
    for (int j = 0; j <= n; ++j) {
        const auto k = static_cast<std::size_t>(2 * j);
        next.delta_at(j) = x[k];
        next.phi_at(j) = x[k + 1];
    }
    const NodalWeights w = nodal_weights(params);
    restore_ghosts(next.delta, problem.f1(t_next), problem.f2(t_next), w);
    restore_ghosts(next.phi, problem.g1(t_next), problem.g2(t_next), w);
    return next;
}

CoefficientState step(const CoefficientState& state, const ProblemSpec& problem,
                      const SplineParams& params, double dt) {
    return step_to(state, problem, params, dt, state.t + dt);
}

long commensurate_steps(double t, double dt) {
    check_dt(dt);
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("time must be finite and non-negative");
    const long k = std::lround(t / dt);
    if (std::abs(static_cast<double>(k) * dt - t) > 1e-9 * std::max(t, dt)) {
        throw std::invalid_argument("time " + std::to_string(t) + " is not a multiple of dt = " +
                                    std::to_string(dt));
    }
    return k;
}

RunResult run(const ProblemSpec& problem, const SplineParams& params, double dt, double t_final,
              std::span<const double> snapshot_times, const StepObserver& observer) {
    const long total = commensurate_steps(t_final, dt);
    std::vector<long> wanted;
    wanted.reserve(snapshot_times.size());
    for (double ts : snapshot_times) {
        const long k = commensurate_steps(ts, dt);
        if (k > total) throw std::invalid_argument("snapshot time beyond t_final");
        wanted.push_back(k);
    }

    RunResult result;
    result.snapshots.resize(wanted.size());
    CoefficientState state = fit_initial(problem, params);
    auto capture = [&](long k) {
        for (std::size_t s = 0; s < wanted.size(); ++s) {
            if (wanted[s] == k) result.snapshots[s] = state;
        }
    };
    capture(0);
    for (long k = 1; k <= total; ++k) {
        state = step_to(state, problem, params, dt, static_cast<double>(k) * dt);
        if (observer) observer(state);
        capture(k);
    }
    result.final_state = std::move(state);
    return result;
}

}  // namespace coupled_burgers
