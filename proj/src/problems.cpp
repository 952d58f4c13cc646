#include "coupled_burgers/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace coupled_burgers {

ProblemSpec problem1(double k1, double k2, double k3) {
    using std::numbers::pi;
    ProblemSpec prob;
    prob.name = "problem1";
    prob.k1 = k1;
    prob.k2 = k2;
    prob.k3 = k3;
    prob.a = -pi;
    prob.b = pi;
    prob.f = [](double x) { return std::sin(x); };
    prob.g = prob.f;
    prob.df = [](double x) { return std::cos(x); };
    prob.dg = prob.df;
    const auto zero = [](double) { return 0.0; };
    prob.f1 = zero;
    prob.f2 = zero;
    prob.g1 = zero;
    prob.g2 = zero;
    prob.exact_u = [](double x, double t) {
        const double e = std::exp(-t);
        const double sx = std::sin(x);
        return SolutionJet{e * sx, -e * sx, e * std::cos(x), -e * sx};
    };
    prob.exact_v = prob.exact_u;
    return prob;
}

TravelingWaveParams traveling_wave_params(double k2, double k3) {
    if (2.0 * k2 - 1.0 == 0.0) throw std::invalid_argument("problem2: 2 k2 = 1 is singular");
    if (4.0 * k2 * k3 - 1.0 == 0.0) throw std::invalid_argument("problem2: 4 k2 k3 = 1 is singular");
    TravelingWaveParams tw;
    tw.amplitude = 0.5 * tw.a0 * (4.0 * k2 * k3 - 1.0) / (2.0 * k2 - 1.0);
    return tw;
}

ProblemSpec problem2(double k2, double k3) {
    const TravelingWaveParams tw = traveling_wave_params(k2, k3);
    const double amp = tw.amplitude;
    const double slope = 2.0 * amp * (2.0 * k2 - 1.0) / (4.0 * k2 * k3 - 1.0);
    const double u0 = tw.a0;
    const double v0 = tw.a0 * (2.0 * k3 - 1.0) / (2.0 * k2 - 1.0);
    const double speed = 2.0 * amp;

    // offset - slope tanh(amp (x - speed t))
    auto jet = [amp, slope, speed](double offset) {
        return [=](double x, double t) {
            const double th = std::tanh(amp * (x - speed * t));
            const double sech2 = 1.0 - th * th;
            SolutionJet j;
            j.value = offset - slope * th;
            j.x = -slope * amp * sech2;
            j.t = slope * amp * speed * sech2;
            j.xx = 2.0 * slope * amp * amp * th * sech2;
            return j;
        };
    };

    ProblemSpec prob;
    prob.name = "problem2";
    prob.k1 = 2.0;
    prob.k2 = k2;
    prob.k3 = k3;
    prob.a = 0.0;
    prob.b = 1.0;
    prob.exact_u = jet(u0);
    prob.exact_v = jet(v0);

    const JetFn eu = prob.exact_u;
    const JetFn ev = prob.exact_v;
    prob.f = [eu](double x) { return eu(x, 0.0).value; };
    prob.g = [ev](double x) { return ev(x, 0.0).value; };
    prob.df = [eu](double x) { return eu(x, 0.0).x; };
    prob.dg = [ev](double x) { return ev(x, 0.0).x; };
    prob.f1 = [eu, a = prob.a](double t) { return eu(a, t).value; };
    prob.f2 = [eu, b = prob.b](double t) { return eu(b, t).value; };
    prob.g1 = [ev, a = prob.a](double t) { return ev(a, t).value; };
    prob.g2 = [ev, b = prob.b](double t) { return ev(b, t).value; };
    return prob;
}

ProblemSpec problem3(double k1, double k2, double k3) {
    using std::numbers::pi;
    ProblemSpec prob;
    prob.name = "problem3";
    prob.k1 = k1;
    prob.k2 = k2;
    prob.k3 = k3;
    prob.a = 0.0;
    prob.b = 1.0;
    prob.f = [](double x) { return x <= 0.5 ? std::sin(2.0 * pi * x) : 0.0; };
    prob.g = [](double x) { return x <= 0.5 ? 0.0 : -std::sin(2.0 * pi * x); };
    prob.df = [](double x) { return x <= 0.5 ? 2.0 * pi * std::cos(2.0 * pi * x) : 0.0; };
    prob.dg = [](double x) { return x <= 0.5 ? 0.0 : -2.0 * pi * std::cos(2.0 * pi * x); };
    const auto zero = [](double) { return 0.0; };
    prob.f1 = zero;
    prob.f2 = zero;
    prob.g1 = zero;
    prob.g2 = zero;
    return prob;
}

std::pair<double, double> pde_residual(const ProblemSpec& problem, double x, double t) {
    if (!problem.has_exact()) {
        throw std::invalid_argument("pde_residual: " + problem.name + " has no exact solution");
    }
    const SolutionJet u = problem.exact_u(x, t);
    const SolutionJet v = problem.exact_v(x, t);
    const double uv_x = u.x * v.value + u.value * v.x;
    const double r1 = u.t - u.xx + problem.k1 * u.value * u.x + problem.k2 * uv_x;
    const double r2 = v.t - v.xx + problem.k1 * v.value * v.x + problem.k3 * uv_x;
    return {r1, r2};
}

double max_pde_residual(const ProblemSpec& problem, double t_max, int samples, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> xs(problem.a, problem.b);
    std::uniform_real_distribution<double> ts(0.0, t_max);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const auto [r1, r2] = pde_residual(problem, xs(rng), ts(rng));
        worst = std::max({worst, std::abs(r1), std::abs(r2)});
    }
    return worst;
}

}  // namespace coupled_burgers
