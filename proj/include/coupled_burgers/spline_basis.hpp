#pragma once

// Exponential cubic B-spline (tension spline) basis on a uniform grid.
//
// Each basis function B_i is supported on [x_{i-2}, x_{i+2}] and is built from
// {1, x, exp(px), exp(-px)} on every subinterval, C2 across knots. The tension
// p > 0 interpolates between the classical cubic B-spline (p -> 0) and a
// sharper, almost piecewise-linear bell (large p).
//
// All quantities are evaluated through cancellation-free kernels so that the
// small-tension regime (p*h down to 1e-12) stays accurate in double precision.

namespace coupled_burgers {

struct SplineParams {
    double a = 0.0;  // left endpoint
    double b = 1.0;  // right endpoint
    int n = 3;       // number of subintervals
    double p = 1.0;  // tension
    double h = 0.0;  // (b - a) / n
    double s = 0.0;  // sinh(p h)
    double c = 0.0;  // cosh(p h)

    /// Knot x_i = a + i h; valid for the ghost indices -1 and n + 1 too.
    [[nodiscard]] double knot(int i) const { return a + static_cast<double>(i) * h; }
    [[nodiscard]] double ph() const { return p * h; }
};

/// Throws std::invalid_argument on n < 3, b <= a, p <= 0 or non-finite input.
SplineParams make_params(double a, double b, int n, double p);

/// Nodal identities of the basis, written as the weights the coefficient
/// triple (c_{m-1}, c_m, c_{m+1}) receives when U, U' or U'' is evaluated at
/// knot x_m:
///
///   U_m   = alpha1 c_{m-1} + alpha2 c_m + alpha1 c_{m+1}
///   U'_m  = beta_l c_{m-1}              + beta_r c_{m+1}
///   U''_m = gamma1 c_{m-1} + gamma2 c_m + gamma1 c_{m+1}
///
/// Hence beta_l = B_{m-1}'(x_m) = p(1-c)/(2(phc-s)) < 0 and
/// beta_r = B_{m+1}'(x_m) = p(c-1)/(2(phc-s)) > 0.
struct NodalWeights {
    double alpha1 = 0.0;
    double alpha2 = 1.0;
    double beta_l = 0.0;
    double beta_r = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

NodalWeights nodal_weights(const SplineParams& params);

/// Closed-form coefficients of the piecewise definition
///
///   [x_{i-2}, x_{i-1}]: b2((x_{i-2}-x) - sinh(p(x_{i-2}-x))/p)
///   [x_{i-1}, x_i]    : a1 + b1(x_i-x) + c1 exp(p(x_i-x)) + d1 exp(-p(x_i-x))
///   [x_i, x_{i+1}]    : a1 + b1(x-x_i) + c1 exp(p(x-x_i)) + d1 exp(-p(x-x_i))
///   [x_{i+1}, x_{i+2}]: b2((x-x_{i+2}) - sinh(p(x-x_{i+2}))/p)
///
/// These are provided for inspection and cross-checking. a1, c1 and d1 grow
/// like (ph)^-2 and cancel against each other, so evaluation never goes
/// through them; eval_basis uses an equivalent well-conditioned form.
struct PieceCoefficients {
    double a1 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double c1 = 0.0;
    double d1 = 0.0;
};

PieceCoefficients piece_coefficients(const SplineParams& params);

/// Evaluates the closed-form piecewise definition with the given coefficients.
/// Only meaningful for moderate p*h; used as an independent route in tests.
double eval_basis_closed_form(int i, double x, const SplineParams& params,
                              const PieceCoefficients& coeffs);

/// B_i(x) and its first two derivatives. Index i may be any integer
/// (i in [-1, n+1] covers the basis); the result is exactly zero outside
/// [x_{i-2}, x_{i+2}].
double eval_basis(int i, double x, const SplineParams& params);
double eval_basis_d1(int i, double x, const SplineParams& params);
double eval_basis_d2(int i, double x, const SplineParams& params);

struct NodalValues {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Value and derivatives at knot x_m of the spline whose local coefficients are
/// (prev, mid, next) = (c_{m-1}, c_m, c_{m+1}).
[[nodiscard]] constexpr NodalValues nodal_values(double prev, double mid, double next,
                                                 const NodalWeights& w) noexcept {
    return {w.alpha1 * prev + w.alpha2 * mid + w.alpha1 * next,
            w.beta_l * prev + w.beta_r * next,
            w.gamma1 * prev + w.gamma2 * mid + w.gamma1 * next};
}

namespace kernels {

// Entire even functions used by the stable basis representation. Each is
// evaluated by its Taylor series near zero and by the closed form elsewhere.

/// sinh(z)/z
double sinhc(double z);
/// (cosh(z) - 1)/z^2
double coshm1_over_z2(double z);
/// (sinh(z) - z)/z^3
double sinhmz_over_z3(double z);
/// (z cosh(z) - sinh(z))/z^3
double zcoshmsinh_over_z3(double z);

}  // namespace kernels

}  // namespace coupled_burgers
