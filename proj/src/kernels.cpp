#include "wicm/kernels.hpp"

#include <cmath>
#include <numeric>
#include <utility>

namespace wicm::kernels {

namespace {

void check_matvec(const Matrix& a, std::span<const double> x, std::span<double> y) {
    if (x.size() != a.cols() || y.size() != a.rows())
        throw DimensionError("matvec: operand sizes do not match matrix");
}

void check_rows(const Matrix& out, std::size_t row_offset, std::size_t col_offset,
                std::span<const double> scale, const Matrix& a) {
    if (scale.size() != a.rows() || row_offset + a.rows() > out.rows() ||
        col_offset + a.cols() > out.cols())
        throw DimensionError("add_scaled_rows: block does not fit");
}

// Returns the pivot row for column k and swaps it into place.
std::size_t select_pivot(Matrix& a, std::vector<std::size_t>& perm, std::size_t k,
                         double pivot_tol) {
    const std::size_t n = a.rows();
    std::size_t best = k;
    double best_mag = std::abs(a(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
        const double mag = std::abs(a(r, k));
        if (mag > best_mag) {
            best_mag = mag;
            best = r;
        }
    }
    if (!(best_mag > pivot_tol)) throw SingularMatrixError(k, best_mag);
    if (best != k) {
        auto rk = a.row(k);
        auto rb = a.row(best);
        std::swap_ranges(rk.begin(), rk.end(), rb.begin());
        std::swap(perm[k], perm[best]);
    }
    return best;
}

inline void eliminate_row(Matrix& a, std::size_t k, std::size_t r) {
    const std::size_t n = a.cols();
    const double factor = a(r, k) / a(k, k);
    a(r, k) = factor;
    if (factor == 0.0) return;
    const double* pivot_row = a.row(k).data();
    double* target = a.row(r).data();
    for (std::size_t c = k + 1; c < n; ++c) target[c] -= factor * pivot_row[c];
}

void init_perm(const Matrix& a, std::vector<std::size_t>& perm) {
    if (!a.square()) throw DimensionError("lu_factor: matrix must be square");
    perm.resize(a.rows());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
}

}  // namespace

void matvec(const Matrix& a, std::span<const double> x, std::span<double> y) {
    check_matvec(a, x, y);
    const auto rows = static_cast<long>(a.rows());
#pragma omp parallel for schedule(static)
    for (long r = 0; r < rows; ++r) {
        const auto row = a.row(static_cast<std::size_t>(r));
        double acc = 0.0;
        for (std::size_t c = 0; c < row.size(); ++c) acc += row[c] * x[c];
        y[static_cast<std::size_t>(r)] = acc;
    }
}

void add_scaled_rows(Matrix& out, std::size_t row_offset, std::size_t col_offset,
                     std::span<const double> scale, const Matrix& a) {
    check_rows(out, row_offset, col_offset, scale, a);
    const auto rows = static_cast<long>(a.rows());
#pragma omp parallel for schedule(static)
    for (long l = 0; l < rows; ++l) {
        const auto ul = static_cast<std::size_t>(l);
        const double s = scale[ul];
        if (s == 0.0) continue;
        const auto src = a.row(ul);
        auto dst = out.row(row_offset + ul).subspan(col_offset, a.cols());
        for (std::size_t c = 0; c < src.size(); ++c) dst[c] += s * src[c];
    }
}

void lu_factor(Matrix& a, std::vector<std::size_t>& perm, double pivot_tol) {
    init_perm(a, perm);
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        select_pivot(a, perm, k, pivot_tol);
        const auto last = static_cast<long>(n);
#pragma omp parallel for schedule(static)
        for (long r = static_cast<long>(k) + 1; r < last; ++r)
            eliminate_row(a, k, static_cast<std::size_t>(r));
    }
}

namespace serial {

void matvec(const Matrix& a, std::span<const double> x, std::span<double> y) {
    check_matvec(a, x, y);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const auto row = a.row(r);
        double acc = 0.0;
        for (std::size_t c = 0; c < row.size(); ++c) acc += row[c] * x[c];
        y[r] = acc;
    }
}

void add_scaled_rows(Matrix& out, std::size_t row_offset, std::size_t col_offset,
                     std::span<const double> scale, const Matrix& a) {
    check_rows(out, row_offset, col_offset, scale, a);
    for (std::size_t l = 0; l < a.rows(); ++l) {
        if (scale[l] == 0.0) continue;
        for (std::size_t c = 0; c < a.cols(); ++c)
            out(row_offset + l, col_offset + c) += scale[l] * a(l, c);
    }
}

void lu_factor(Matrix& a, std::vector<std::size_t>& perm, double pivot_tol) {
    init_perm(a, perm);
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        select_pivot(a, perm, k, pivot_tol);
        for (std::size_t r = k + 1; r < n; ++r) eliminate_row(a, k, r);
    }
}

}  // namespace serial

}  // namespace wicm::kernels
