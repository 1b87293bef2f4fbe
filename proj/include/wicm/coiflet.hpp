#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace wicm {

class CoifletError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Low-pass filter p_k of a Coiflet scaling function with support [0, 3N-1].
struct CoifletFilter {
    int n = 0;        ///< vanishing-moment parameter N (even, positive)
    int m1 = 0;       ///< first moment M1 = Σ k p_k / 2
    std::vector<double> p;

    int support_end() const noexcept { return 3 * n - 1; }

    /// Builds a filter from user coefficients; M1 is taken from the rounded
    /// first moment. Throws CoifletError if the invariants do not hold.
    static CoifletFilter from_coefficients(int n, std::vector<double> p);
};

/// Checks length 3N, Σp = 2 and Σ k p_k / 2 = M1. Throws CoifletError.
void validate(const CoifletFilter& filter);

/// The N = 6, M1 = 7 Coiflet, coefficients exactly as published (14 digits).
CoifletFilter load_filter();

/// φ(k), k = 0..3N-1: eigenvector of T_{m,k} = p_{2m-k} for eigenvalue 1.
std::vector<double> scaling_values_at_integers(const CoifletFilter& filter);

/// φ^(i)(k), k = 0..3N-1, 1 <= i <= N-1: eigenvector for eigenvalue 2^{-i}
/// satisfying the differentiated reproduction identities
/// Σ_l (M1 - l)^m φ^(i)(l) = i! δ_{mi} for m < N.
std::vector<double> derivative_values_at_integers(const CoifletFilter& filter, int order);

/// φ^∫n(k), k = 0..3N-1 (n-fold integral from 0).
std::vector<double> integral_values_at_integers(const CoifletFilter& filter, int tuple);

/// Immutable tables of φ, its formal derivatives and n-tuple integrals at the
/// integers, plus the continuation rules outside the support.
class ScalingTables {
public:
    ScalingTables(const CoifletFilter& filter, int max_tuple);

    int n() const noexcept { return n_; }
    int m1() const noexcept { return m1_; }
    int support_end() const noexcept { return support_end_; }
    int max_tuple() const noexcept { return static_cast<int>(integral_.size()) - 1; }

    std::span<const double> phi() const noexcept { return deriv_[0]; }
    /// φ^(i)(k) for k = 0..support_end; i = 0 is φ itself.
    std::span<const double> derivative(int order) const;
    /// φ^∫n(k) for k = 0..support_end.
    std::span<const double> integral(int tuple) const;

    /// φ^(i) at any integer (zero outside the support).
    double derivative_at(int order, std::int64_t k) const;
    /// φ^∫n at any integer: zero for k <= 0, tabulated inside, polynomial
    /// continuation of degree n-1 for k >= 3N-1.
    double integral_at(int tuple, std::int64_t k) const;
    /// Same continuation at a real argument x >= 3N-1.
    double integral_tail(int tuple, double x) const;

private:
    int n_;
    int m1_;
    int support_end_;
    std::vector<std::vector<double>> deriv_;     // [order][k]
    std::vector<std::vector<double>> integral_;  // [tuple][k], tuple 0 unused
};

ScalingTables build_scaling_tables(const CoifletFilter& filter, int max_tuple = 4);

/// φ at the integers by power iteration of the transition matrix from a unit
/// spike. Independent of the eigen-solver path; used as a cross-check.
std::vector<double> cascade_values_at_integers(const CoifletFilter& filter, int iterations);

/// φ(k / 2^level) for k = 0..(3N-1)·2^level by repeated refinement from
/// integer values.
std::vector<double> refine_to_dyadic(const CoifletFilter& filter,
                                     std::span<const double> integer_values, int level);

/// φ^∫n on the dyadic grid of spacing 2^-level, refined from the integer
/// tables through φ^∫n(x) = 2^-n Σ p_k φ^∫n(2x - k); off-grid values by local
/// degree-7 Lagrange interpolation.
class DyadicIntegrals {
public:
    DyadicIntegrals(const CoifletFilter& filter, const ScalingTables& tables, int level);

    int level() const noexcept { return level_; }
    /// Value on the grid point q / 2^level (any integer q).
    double at_grid(int tuple, std::int64_t q) const;
    /// Value at any real x.
    double value(int tuple, double x) const;

private:
    const ScalingTables* tables_;
    int level_;
    std::vector<std::vector<double>> values_;  // [tuple][q], q = 0..(3N-1)·2^level
};

}  // namespace wicm
