#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coupled_burgers {

/// Raised when elimination meets a pivot that is negligible against its row.
class SingularSystemError : public std::runtime_error {
public:
    SingularSystemError(const std::string& what, std::size_t row)
        : std::runtime_error(what), row_(row) {}
    [[nodiscard]] std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// Relative pivot threshold: a pivot below kPivotTolerance * (row max-norm)
/// is treated as singular.
inline constexpr double kPivotTolerance = 1e-14;

struct TridiagonalSystem {
    std::vector<double> lower;  // n - 1 entries, lower[i] = A(i + 1, i)
    std::vector<double> diag;   // n entries
    std::vector<double> upper;  // n - 1 entries, upper[i] = A(i, i + 1)
    std::vector<double> rhs;    // n entries
};

/// Thomas elimination (no pivoting). Throws std::invalid_argument on
/// inconsistent lengths or non-finite entries and SingularSystemError on a
/// vanishing pivot.
std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys);

/// Square matrix with kl sub- and ku super-diagonals. Row i keeps columns
/// [i - kl, i + ku] contiguously, so storage is n * (kl + ku + 1) doubles.
class BandMatrix {
public:
    BandMatrix(std::size_t n, std::size_t kl, std::size_t ku);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t lower_bandwidth() const noexcept { return kl_; }
    [[nodiscard]] std::size_t upper_bandwidth() const noexcept { return ku_; }

    [[nodiscard]] bool in_band(std::size_t i, std::size_t j) const noexcept {
        return j + kl_ >= i && j <= i + ku_ && i < n_ && j < n_;
    }

    /// Entry (i, j); zero outside the band.
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept;

    /// Mutable entry (i, j). Throws std::out_of_range outside the band.
    double& at(std::size_t i, std::size_t j);

    /// y = A x
    [[nodiscard]] std::vector<double> multiply(std::span<const double> x) const;

    [[nodiscard]] std::span<const double> storage() const noexcept { return data_; }

private:
    std::size_t n_;
    std::size_t kl_;
    std::size_t ku_;
    std::vector<double> data_;
};

struct BandedSystem {
    BandMatrix matrix;
    std::vector<double> rhs;
};

/// Gaussian elimination with partial pivoting restricted to the band
/// (fill-in grows the upper bandwidth to kl + ku). The input is not modified.
std::vector<double> solve_banded(const BandedSystem& sys);

}  // namespace coupled_burgers
