#include "coupled_burgers/spline_basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace coupled_burgers {

namespace kernels {

namespace {

// Below this |z| the closed forms lose more than a few ulps to cancellation
// (the worst one, z cosh z - sinh z ~ z^3/3, loses about 3/z^2 ulps).
constexpr double kSeriesThreshold = 0.5;

// sum_k t_k with t_0 = first and t_{k+1} = t_k * z^2 / ((k0 + 2k + 1)(k0 + 2k + 2)).
double even_series(double z, double first, int k0) {
    const double z2 = z * z;
    double term = first;
    double sum = first;
    for (int k = 0; k < 30; ++k) {
        const double d = static_cast<double>(k0 + 2 * k);
        term *= z2 / ((d + 1.0) * (d + 2.0));
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace

double sinhc(double z) {
    if (std::abs(z) < kSeriesThreshold) return even_series(z, 1.0, 1);
    return std::sinh(z) / z;
}

double coshm1_over_z2(double z) {
    if (std::abs(z) < kSeriesThreshold) return even_series(z, 0.5, 2);
    return (std::cosh(z) - 1.0) / (z * z);
}

double sinhmz_over_z3(double z) {
    if (std::abs(z) < kSeriesThreshold) return even_series(z, 1.0 / 6.0, 3);
    return (std::sinh(z) - z) / (z * z * z);
}

double zcoshmsinh_over_z3(double z) {
    // z cosh z - sinh z = z (cosh z - 1) - (sinh z - z)
    if (std::abs(z) < kSeriesThreshold) return coshm1_over_z2(z) - sinhmz_over_z3(z);
    return (z * std::cosh(z) - std::sinh(z)) / (z * z * z);
}

}  // namespace kernels

SplineParams make_params(double a, double b, int n, double p) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(p)) {
        throw std::invalid_argument("make_params: non-finite input");
    }
    if (n < 3) throw std::invalid_argument("make_params: need n >= 3, got " + std::to_string(n));
    if (!(b > a)) throw std::invalid_argument("make_params: need b > a");
    if (!(p > 0.0)) throw std::invalid_argument("make_params: tension p must be positive");

    SplineParams params;
    params.a = a;
    params.b = b;
    params.n = n;
    params.p = p;
    params.h = (b - a) / static_cast<double>(n);
    params.s = std::sinh(p * params.h);
    params.c = std::cosh(p * params.h);
    if (!std::isfinite(params.s) || !std::isfinite(params.c)) {
        throw std::invalid_argument("make_params: p*h too large, sinh/cosh overflow");
    }
    return params;
}

NodalWeights nodal_weights(const SplineParams& params) {
    using namespace kernels;
    const double z = params.ph();
    const double h = params.h;
    // (phc - s) / p^3 = h^3 g(z); every entry is a ratio against it.
    const double g = zcoshmsinh_over_z3(z);

    NodalWeights w;
    w.alpha1 = sinhmz_over_z3(z) / (2.0 * g);
    w.alpha2 = 1.0;
    w.beta_r = coshm1_over_z2(z) / (2.0 * h * g);
    w.beta_l = -w.beta_r;
    w.gamma1 = sinhc(z) / (2.0 * h * h * g);
    w.gamma2 = -2.0 * w.gamma1;
    return w;
}

PieceCoefficients piece_coefficients(const SplineParams& params) {
    const double p = params.p;
    const double ph = params.ph();
    const double s = params.s;
    const double c = params.c;
    const double den = ph * c - s;

    PieceCoefficients k;
    k.a1 = ph * c / den;
    k.b1 = 0.5 * p * (c * (c - 1.0) + s * s) / (den * (1.0 - c));
    k.b2 = p / (2.0 * den);
    k.c1 = 0.25 * (std::exp(-ph) * (1.0 - c) + s * (std::exp(-ph) - 1.0)) / (den * (1.0 - c));
    k.d1 = 0.25 * (std::exp(ph) * (c - 1.0) + s * (std::exp(ph) - 1.0)) / (den * (1.0 - c));
    return k;
}

double eval_basis_closed_form(int i, double x, const SplineParams& params,
                              const PieceCoefficients& k) {
    const double h = params.h;
    const double p = params.p;
    const double r = x - params.knot(i);
    const double ar = std::abs(r);
    if (ar >= 2.0 * h) return 0.0;
    if (ar <= h) return k.a1 + k.b1 * ar + k.c1 * std::exp(p * ar) + k.d1 * std::exp(-p * ar);
    const double u = ar - 2.0 * h;
    return k.b2 * (u - std::sinh(p * u) / p);
}

namespace {

enum class Derivative { kValue, kFirst, kSecond };

// Stable form of the basis. With t = |x - x_i| and D = (phc - s)/p^3:
//   t <= h     : 1 - (s/p) C2(t)/D + (2c + 1) S3(t)/(2D)
//   h < t < 2h : -S3(t - 2h)/(2D)
// where C2(t) = (cosh(pt) - 1)/p^2 and S3(t) = (sinh(pt) - pt)/p^3.
double eval_impl(int i, double x, const SplineParams& params, Derivative which) {
    using namespace kernels;
    const double h = params.h;
    const double p = params.p;
    const double r = x - params.knot(i);
    const double ar = std::abs(r);
    if (!(ar < 2.0 * h)) return 0.0;

    const double sign = r < 0.0 ? -1.0 : 1.0;
    const double d = h * h * h * zcoshmsinh_over_z3(params.ph());

    if (ar <= h) {
        const double t = ar;
        const double pt = p * t;
        const double s_over_p = h * sinhc(params.ph());
        const double lin = 0.5 * (2.0 * params.c + 1.0);
        switch (which) {
            case Derivative::kValue:
                return 1.0 - s_over_p * t * t * coshm1_over_z2(pt) / d +
                       lin * t * t * t * sinhmz_over_z3(pt) / d;
            case Derivative::kFirst:
                return sign * (-s_over_p * t * sinhc(pt) + lin * t * t * coshm1_over_z2(pt)) / d;
            case Derivative::kSecond:
                return (-s_over_p * std::cosh(pt) + lin * t * sinhc(pt)) / d;
        }
    }

    const double u = ar - 2.0 * h;
    const double pu = p * u;
    const double k = -0.5 / d;
    switch (which) {
        case Derivative::kValue:
            return k * u * u * u * sinhmz_over_z3(pu);
        case Derivative::kFirst:
            return sign * k * u * u * coshm1_over_z2(pu);
        case Derivative::kSecond:
            return k * u * sinhc(pu);
    }
    return 0.0;
}

}  // namespace

double eval_basis(int i, double x, const SplineParams& params) {
    return eval_impl(i, x, params, Derivative::kValue);
}

double eval_basis_d1(int i, double x, const SplineParams& params) {
    return eval_impl(i, x, params, Derivative::kFirst);
}

double eval_basis_d2(int i, double x, const SplineParams& params) {
    return eval_impl(i, x, params, Derivative::kSecond);
}

}  // namespace coupled_burgers
