#include "coupled_burgers/banded_linalg.hpp"

#include <algorithm>
#include <cmath>

namespace coupled_burgers {

namespace {

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys) {
    const std::size_t n = sys.diag.size();
    if (n == 0) throw std::invalid_argument("solve_tridiagonal: empty system");
    if (sys.rhs.size() != n || sys.lower.size() != n - 1 || sys.upper.size() != n - 1) {
        throw std::invalid_argument("solve_tridiagonal: inconsistent lengths");
    }
    if (!all_finite(sys.diag) || !all_finite(sys.lower) || !all_finite(sys.upper) ||
        !all_finite(sys.rhs)) {
        throw std::invalid_argument("solve_tridiagonal: non-finite entry");
    }

    auto row_scale = [&](std::size_t i) {
        double m = std::abs(sys.diag[i]);
        if (i > 0) m = std::max(m, std::abs(sys.lower[i - 1]));
        if (i + 1 < n) m = std::max(m, std::abs(sys.upper[i]));
        return m;
    };

    std::vector<double> cp(n, 0.0);
    std::vector<double> dp(n, 0.0);
    double pivot = sys.diag[0];
    if (std::abs(pivot) <= kPivotTolerance * row_scale(0) || pivot == 0.0) {
        throw SingularSystemError("solve_tridiagonal: singular pivot at row 0", 0);
    }
    if (n > 1) cp[0] = sys.upper[0] / pivot;
    dp[0] = sys.rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = sys.diag[i] - sys.lower[i - 1] * cp[i - 1];
        if (std::abs(pivot) <= kPivotTolerance * row_scale(i) || pivot == 0.0) {
            throw SingularSystemError("solve_tridiagonal: singular pivot at row " + std::to_string(i), i);
        }
        if (i + 1 < n) cp[i] = sys.upper[i] / pivot;
        dp[i] = (sys.rhs[i] - sys.lower[i - 1] * dp[i - 1]) / pivot;
    }

    std::vector<double> x(n);
    x[n - 1] = dp[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
    return x;
}

BandMatrix::BandMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), data_(n * (kl + ku + 1), 0.0) {}

double BandMatrix::operator()(std::size_t i, std::size_t j) const noexcept {
    if (!in_band(i, j)) return 0.0;
    return data_[i * (kl_ + ku_ + 1) + (j + kl_ - i)];
}

double& BandMatrix::at(std::size_t i, std::size_t j) {
    if (!in_band(i, j)) throw std::out_of_range("BandMatrix::at: entry outside band");
    return data_[i * (kl_ + ku_ + 1) + (j + kl_ - i)];
}

std::vector<double> BandMatrix::multiply(std::span<const double> x) const {
    if (x.size() != n_) throw std::invalid_argument("BandMatrix::multiply: size mismatch");
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j0 = i > kl_ ? i - kl_ : 0;
        const std::size_t j1 = std::min(n_ - 1, i + ku_);
        double acc = 0.0;
        for (std::size_t j = j0; j <= j1; ++j) acc += (*this)(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

std::vector<double> solve_banded(const BandedSystem& sys) {
    const BandMatrix& a = sys.matrix;
    const std::size_t n = a.size();
    const std::size_t kl = a.lower_bandwidth();
    const std::size_t ku = a.upper_bandwidth();
    if (n == 0) throw std::invalid_argument("solve_banded: empty system");
    if (sys.rhs.size() != n) throw std::invalid_argument("solve_banded: rhs length mismatch");
    if (!all_finite(a.storage()) || !all_finite(sys.rhs)) {
        throw std::invalid_argument("solve_banded: non-finite entry");
    }

    // Working rows span columns [i - kl, i + kl + ku]: after pivoting, a row
    // swapped into position k has no nonzero beyond k + kl + ku.
    const std::size_t uw = kl + ku;
    const std::size_t width = kl + uw + 1;
    std::vector<double> w(n * width, 0.0);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return w[i * width + (j + kl - i)]; };

    std::vector<double> scale(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j0 = i > kl ? i - kl : 0;
        const std::size_t j1 = std::min(n - 1, i + ku);
        for (std::size_t j = j0; j <= j1; ++j) {
            at(i, j) = a(i, j);
            scale[i] = std::max(scale[i], std::abs(a(i, j)));
        }
    }
    std::vector<double> rhs = sys.rhs;

    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t rlast = std::min(n - 1, k + kl);
        std::size_t piv = k;
        double best = std::abs(at(k, k));
        for (std::size_t r = k + 1; r <= rlast; ++r) {
            if (std::abs(at(r, k)) > best) {
                best = std::abs(at(r, k));
                piv = r;
            }
        }
        if (best == 0.0 || best <= kPivotTolerance * scale[piv]) {
            throw SingularSystemError("solve_banded: singular pivot at column " + std::to_string(k), k);
        }
        const std::size_t clast = std::min(n - 1, k + uw);
        if (piv != k) {
            for (std::size_t j = k; j <= clast; ++j) std::swap(at(k, j), at(piv, j));
            std::swap(rhs[k], rhs[piv]);
            std::swap(scale[k], scale[piv]);
        }
        const double pivot = at(k, k);
        for (std::size_t r = k + 1; r <= rlast; ++r) {
            const double f = at(r, k) / pivot;
            if (f == 0.0) continue;
            at(r, k) = 0.0;
            for (std::size_t j = k + 1; j <= clast; ++j) at(r, j) -= f * at(k, j);
            rhs[r] -= f * rhs[k];
        }
    }

    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        const std::size_t clast = std::min(n - 1, i + uw);
        double acc = rhs[i];
        for (std::size_t j = i + 1; j <= clast; ++j) acc -= at(i, j) * x[j];
        x[i] = acc / at(i, i);
    }
    return x;
}

}  // namespace coupled_burgers
