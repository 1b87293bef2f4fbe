#include "wicm/linalg.hpp"

#include "wicm/kernels.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wicm {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

namespace {

std::string singular_message(std::size_t pivot, double magnitude) {
    std::ostringstream os;
    os << "matrix is numerically singular at pivot " << pivot << " (|pivot| = " << magnitude
       << ")";
    return os.str();
}

double max_entry(const Matrix& a) {
    double m = 0.0;
    for (double v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

SingularMatrixError::SingularMatrixError(std::size_t pivot, double magnitude)
    : std::runtime_error(singular_message(pivot, magnitude)), pivot_(pivot),
      magnitude_(magnitude) {}

LuFactorization::LuFactorization(Matrix a) : lu_(std::move(a)) {
    const double scale = max_entry(lu_);
    const double tol = std::numeric_limits<double>::epsilon() *
                       static_cast<double>(std::max<std::size_t>(lu_.rows(), 1)) * scale;
    kernels::lu_factor(lu_, perm_, tol);
}

Vector LuFactorization::solve(std::span<const double> b) const {
    const std::size_t n = lu_.rows();
    if (b.size() != n) throw DimensionError("lu solve: right-hand side has wrong length");
    Vector x(n);
    for (std::size_t r = 0; r < n; ++r) x[r] = b[perm_[r]];
    for (std::size_t r = 0; r < n; ++r) {
        const auto row = lu_.row(r);
        double acc = x[r];
        for (std::size_t c = 0; c < r; ++c) acc -= row[c] * x[c];
        x[r] = acc;
    }
    for (std::size_t r = n; r-- > 0;) {
        const auto row = lu_.row(r);
        double acc = x[r];
        for (std::size_t c = r + 1; c < n; ++c) acc -= row[c] * x[c];
        x[r] = acc / row[r];
    }
    return x;
}

Vector lu_solve(const Matrix& a, std::span<const double> b) {
    if (!a.square()) throw DimensionError("lu_solve: matrix must be square");
    if (b.size() != a.rows()) throw DimensionError("lu_solve: right-hand side has wrong length");
    return LuFactorization(a).solve(b);
}

double ConditionEstimate::condition() const noexcept {
    if (sigma_min == 0.0) return std::numeric_limits<double>::infinity();
    return sigma_max / sigma_min;
}

double ConditionEstimate::inverse_norm() const noexcept {
    if (sigma_min == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / sigma_min;
}

Vector singular_values(const Matrix& a) {
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        a.data().data(), static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    return Vector(s.data(), s.data() + s.size());
}

ConditionEstimate condition_number_2(const Matrix& a) {
    if (!a.square()) throw DimensionError("condition_number_2: matrix must be square");
    if (a.rows() == 0) return {};
    const Vector s = singular_values(a);
    return {s.front(), s.back()};
}

Vector multiply(const Matrix& a, std::span<const double> x) {
    Vector y(a.rows());
    kernels::matvec(a, x, y);
    return y;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    const auto rows = static_cast<long>(a.rows());
#pragma omp parallel for schedule(static)
    for (long r = 0; r < rows; ++r) {
        const auto ur = static_cast<std::size_t>(r);
        auto out = c.row(ur);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double s = a(ur, k);
            if (s == 0.0) continue;
            const auto brow = b.row(k);
            for (std::size_t col = 0; col < brow.size(); ++col) out[col] += s * brow[col];
        }
    }
    return c;
}

double max_abs(std::span<const double> v) noexcept {
    double m = 0.0;
    for (double x : v) {
        if (std::isnan(x)) return x;  // std::max would drop it
        m = std::max(m, std::abs(x));
    }
    return m;
}

double norm_inf(const Matrix& a) noexcept {
    double m = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        double s = 0.0;
        for (double v : a.row(r)) s += std::abs(v);
        m = std::max(m, s);
    }
    return m;
}

}  // namespace wicm
