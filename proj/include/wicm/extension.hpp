#pragma once

#include "wicm/coiflet.hpp"
#include "wicm/kernels.hpp"
#include "wicm/linalg.hpp"

#include <memory>
#include <mutex>
#include <span>
#include <map>
#include <stdexcept>

namespace wicm {

class ExtensionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Coefficients of the order N-1 polynomial continuation of nodal samples
/// past x = 0 (zeta0) and x = 1 (zeta1).
struct ExtensionSystem {
    int n = 0;
    int m1 = 0;
    int alpha1 = 0;  ///< M1 - 1
    int alpha2 = 0;  ///< 3N - 2 - M1
    Matrix zeta0;    ///< N x (alpha1 + 1)
    Matrix zeta1;    ///< N x (alpha2 + 1)
};

ExtensionSystem build_extension_system(const ScalingTables& tables);

/// T_L,k at the exterior node m/2^j: Σ_i m^i ζ0[i][k] / i!. No j dependence.
/// 0 <= k <= alpha1, -alpha2 <= m <= 0.
double extension_polynomial_left(const ExtensionSystem& sys, int k, int m);

/// T_R,k at 1 + m/2^j: Σ_i m^i ζ1[i][k] / i!. 0 <= k <= alpha2, 0 <= m <= alpha1.
double extension_polynomial_right(const ExtensionSystem& sys, int k, int m);

/// Smallest j with 2^j - 3N + 2 + M1 > 0.
int minimal_level(const ScalingTables& tables);

/// Matrix of Φ^∫i_{j,k}(x_l), rows l (collocation node), columns k (sample).
struct IntegralOperator {
    int level = 0;
    int tuple = 0;
    Matrix entries;

    std::size_t nodes() const noexcept { return entries.rows(); }
    /// Φ^∫i_{j,k}(1), the last row.
    std::span<const double> boundary_row() const { return entries.row(entries.rows() - 1); }
    std::span<const double> row_at(std::size_t node) const { return entries.row(node); }
};

/// Assembles the modified integral basis at level j for tuple i (i = 0 gives
/// the identity). Throws ExtensionError below minimal_level.
IntegralOperator build_integral_operator(const ScalingTables& tables, const ExtensionSystem& sys,
                                         int level, int tuple,
                                         kernels::Execution exec = kernels::Execution::parallel);

class WaveletBasis;

/// i-tuple integrals of the sampled function at every node.
Vector approximate_multiple_integral(const IntegralOperator& op, std::span<const double> samples);

/// Row of Φ^∫i_{j,k}(x), k = 0..2^j, at an arbitrary x in [0, 1]; tuple >= 1.
Vector integral_basis_row(const WaveletBasis& basis, int level, int tuple, double x);

/// Tables, extension coefficients and a per-level cache of operators for one
/// filter. Thread-safe.
class WaveletBasis {
public:
    explicit WaveletBasis(const CoifletFilter& filter, int max_tuple = 4);

    const ScalingTables& tables() const noexcept { return tables_; }
    const ExtensionSystem& extension() const noexcept { return extension_; }
    int max_tuple() const noexcept { return tables_.max_tuple(); }

    const IntegralOperator& integral(int level, int tuple) const;

    /// φ^∫n at real arguments, built on first use.
    const DyadicIntegrals& fine_integrals() const;

private:
    CoifletFilter filter_;
    ScalingTables tables_;
    ExtensionSystem extension_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<int, int>, std::unique_ptr<IntegralOperator>> cache_;
    mutable std::once_flag fine_once_;
    mutable std::unique_ptr<DyadicIntegrals> fine_;
};

/// Shared basis for the built-in N = 6 Coiflet with tuples up to 4.
const WaveletBasis& default_basis();

}  // namespace wicm
