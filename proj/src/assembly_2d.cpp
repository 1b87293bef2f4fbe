#include "wicm/assembly.hpp"

#include <cmath>

namespace wicm {

namespace {

// Maps second-derivative samples along one line to values of the function
// vanishing at both ends.
Matrix dirichlet_line_operator(const WaveletBasis& basis, int level) {
    const std::vector<BoundaryCondition> bc = {
        {{{0, 0, 0.0, 1.0}}, 0.0},
        {{{0, 0, 1.0, 1.0}}, 0.0},
    };
    const Elimination e = reduce_to_integral_form(2, 1, bc, basis, level);
    Matrix line = basis.integral(level, 2).entries;
    const std::size_t m = line.rows();
    for (std::size_t l = 0; l < m; ++l) {
        const double x = std::ldexp(static_cast<double>(l), -level);
        for (std::size_t k = 0; k < m; ++k) line(l, k) += e.gain(0, k) + x * e.gain(1, k);
    }
    return line;
}

}  // namespace

DiscretizedSystem2D::DiscretizedSystem2D(BvpProblem2D problem, const WaveletBasis& basis, int level)
    : problem_(std::move(problem)), level_(level), side_((std::size_t{1} << level) + 1),
      line_(dirichlet_line_operator(basis, level)) {
    if (!problem_.source) throw AssemblyError("2D problem has no source term");
    grid_.resize(side_);
    for (std::size_t l = 0; l < side_; ++l) grid_[l] = std::ldexp(static_cast<double>(l), -level);
    source_.resize(side_ * side_);
    for (std::size_t r = 0; r < side_; ++r)
        for (std::size_t c = 0; c < side_; ++c) source_[r * side_ + c] = problem_.source(grid_[c], grid_[r]);
}

bool DiscretizedSystem2D::is_corner(std::size_t row, std::size_t col) const noexcept {
    const std::size_t last = side_ - 1;
    return (row == 0 || row == last) && (col == 0 || col == last);
}

Vector DiscretizedSystem2D::apply_x(std::span<const double> u2) const {
    if (u2.size() != side_ * side_) throw DimensionError("apply_x: grid size mismatch");
    Vector out(u2.size());
    const auto rows = static_cast<long>(side_);
#pragma omp parallel for schedule(static)
    for (long r = 0; r < rows; ++r) {
        const auto base = static_cast<std::size_t>(r) * side_;
        for (std::size_t c = 0; c < side_; ++c) {
            const auto a = line_.row(c);
            double acc = 0.0;
            for (std::size_t k = 0; k < side_; ++k) acc += a[k] * u2[base + k];
            out[base + c] = acc;
        }
    }
    return out;
}

Vector DiscretizedSystem2D::apply_y(std::span<const double> v2) const {
    if (v2.size() != side_ * side_) throw DimensionError("apply_y: grid size mismatch");
    Vector out(v2.size());
    const auto rows = static_cast<long>(side_);
#pragma omp parallel for schedule(static)
    for (long r = 0; r < rows; ++r) {
        const auto a = line_.row(static_cast<std::size_t>(r));
        for (std::size_t c = 0; c < side_; ++c) {
            double acc = 0.0;
            for (std::size_t k = 0; k < side_; ++k) acc += a[k] * v2[k * side_ + c];
            out[static_cast<std::size_t>(r) * side_ + c] = acc;
        }
    }
    return out;
}

Vector DiscretizedSystem2D::residual(std::span<const double> z) const {
    const std::size_t n = side_ * side_;
    if (z.size() != 2 * n) throw DimensionError("2D residual: expected " + std::to_string(2 * n) + " unknowns");
    const auto u2 = z.subspan(0, n);
    const auto v2 = z.subspan(n, n);
    const Vector u = apply_x(u2);
    const Vector w = apply_y(v2);
    Vector out(2 * n);
    for (std::size_t r = 0; r < side_; ++r) {
        for (std::size_t c = 0; c < side_; ++c) {
            const std::size_t g = r * side_ + c;
            out[g] = u2[g] + v2[g] + problem_.lambda * std::exp(u[g]) - source_[g];
            out[n + g] = is_corner(r, c) ? u2[g] : u[g] - w[g];
        }
    }
    return out;
}

Matrix DiscretizedSystem2D::jacobian(std::span<const double> z) const {
    const std::size_t n = side_ * side_;
    if (z.size() != 2 * n) throw DimensionError("2D jacobian: expected " + std::to_string(2 * n) + " unknowns");
    const Vector u = apply_x(z.subspan(0, n));
    Matrix jac(2 * n, 2 * n);
    const auto rows = static_cast<long>(side_);
#pragma omp parallel for schedule(static)
    for (long rr = 0; rr < rows; ++rr) {
        const auto r = static_cast<std::size_t>(rr);
        for (std::size_t c = 0; c < side_; ++c) {
            const std::size_t g = r * side_ + c;
            const auto a = line_.row(c);
            auto pde = jac.row(g);
            const double growth = problem_.lambda * std::exp(u[g]);
            for (std::size_t k = 0; k < side_; ++k) pde[r * side_ + k] = growth * a[k];
            pde[g] += 1.0;
            pde[n + g] += 1.0;

            auto link = jac.row(n + g);
            if (is_corner(r, c)) {
                link[g] = 1.0;
                continue;
            }
            for (std::size_t k = 0; k < side_; ++k) link[r * side_ + k] = a[k];
            const auto b = line_.row(r);
            for (std::size_t k = 0; k < side_; ++k) link[n + k * side_ + c] -= b[k];
        }
    }
    return jac;
}

DiscretizedSystem2D assemble_2d(const BvpProblem2D& problem, int level, const WaveletBasis& basis) {
    return DiscretizedSystem2D(problem, basis, level);
}

}  // namespace wicm
