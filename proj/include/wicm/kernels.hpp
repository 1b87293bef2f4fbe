#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version and a
// `serial::` reference with the same arithmetic order per output element, so
// results are bitwise identical regardless of thread count.

#include "wicm/linalg.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace wicm::kernels {

enum class Execution { parallel, serial };

/// y = A x
void matvec(const Matrix& a, std::span<const double> x, std::span<double> y);

/// out.row(row_offset + l) += scale[l] * a.row(l), columns starting at col_offset.
void add_scaled_rows(Matrix& out, std::size_t row_offset, std::size_t col_offset,
                     std::span<const double> scale, const Matrix& a);

/// In-place LU with partial pivoting. On return `a` holds L (unit diagonal,
/// strictly lower) and U; perm[r] is the original row now at position r.
/// Throws SingularMatrixError when the best pivot magnitude is <= pivot_tol.
void lu_factor(Matrix& a, std::vector<std::size_t>& perm, double pivot_tol);

/// Fills every entry of `m` from entry(r, c); rows are distributed over threads.
template <class Entry>
void fill(Matrix& m, Entry&& entry) {
    const auto rows = static_cast<long>(m.rows());
    const std::size_t cols = m.cols();
#pragma omp parallel for schedule(static)
    for (long r = 0; r < rows; ++r) {
        auto out = m.row(static_cast<std::size_t>(r));
        for (std::size_t c = 0; c < cols; ++c) out[c] = entry(static_cast<std::size_t>(r), c);
    }
}

namespace serial {

void matvec(const Matrix& a, std::span<const double> x, std::span<double> y);
void add_scaled_rows(Matrix& out, std::size_t row_offset, std::size_t col_offset,
                     std::span<const double> scale, const Matrix& a);
void lu_factor(Matrix& a, std::vector<std::size_t>& perm, double pivot_tol);

template <class Entry>
void fill(Matrix& m, Entry&& entry) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = entry(r, c);
}

}  // namespace serial

template <class Entry>
void fill(Matrix& m, Entry&& entry, Execution exec) {
    if (exec == Execution::serial)
        serial::fill(m, entry);
    else
        fill(m, entry);
}

}  // namespace wicm::kernels
