#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wicm {

using Vector = std::vector<double>;

/// Dense row-major matrix. Sizes in this library stay below a few thousand,
/// so a flat std::vector is all the storage we need.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    Matrix transposed() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when elimination meets a pivot below the singularity threshold.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(std::size_t pivot, double magnitude);
    std::size_t pivot() const noexcept { return pivot_; }
    double magnitude() const noexcept { return magnitude_; }

private:
    std::size_t pivot_;
    double magnitude_;
};

/// LU factorization with partial pivoting, PA = LU stored in place.
class LuFactorization {
public:
    explicit LuFactorization(Matrix a);

    Vector solve(std::span<const double> b) const;
    std::size_t size() const noexcept { return lu_.rows(); }

private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
};

Vector lu_solve(const Matrix& a, std::span<const double> b);

struct ConditionEstimate {
    double sigma_max = 0.0;
    double sigma_min = 0.0;

    /// K_2 = σ_max/σ_min; +inf when σ_min is zero.
    double condition() const noexcept;
    /// ‖A^{-1}‖_2 = 1/σ_min; +inf when σ_min is zero.
    double inverse_norm() const noexcept;
};

ConditionEstimate condition_number_2(const Matrix& a);

/// All singular values in descending order.
Vector singular_values(const Matrix& a);

Vector multiply(const Matrix& a, std::span<const double> x);
Matrix multiply(const Matrix& a, const Matrix& b);

/// Largest magnitude; NaN if any entry is NaN.
double max_abs(std::span<const double> v) noexcept;
double norm_inf(const Matrix& a) noexcept;

}  // namespace wicm
