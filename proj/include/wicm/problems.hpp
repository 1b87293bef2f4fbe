#pragma once

#include "wicm/assembly.hpp"
#include "wicm/solver.hpp"

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wicm {

class ProblemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Σ α_i u^(i) = f on [0, 1], u(0) = a0, u(1) = a1, u''(0) = b0, u''(1) = b1.
BvpProblem linear_fourth_order(std::array<double, 5> alpha, std::function<double(double)> f,
                               double a0, double a1, double b0, double b1);

/// α4 I + Σ_{i<4} α_i Φ^∫(4-i) - α4 x³ Φ^∫4(1) - β(x) Φ^∫2(1) with
/// β = (α2 + α3 + α4) x - α4 x³, rows at the nodes. Kept for condition
/// diagnostics; the solver uses the eliminated system instead.
Matrix literal_fourth_order_matrix(std::array<double, 5> alpha, int level,
                                   const WaveletBasis& basis = default_basis());

/// System matrix of linear_fourth_order after boundary elimination.
Matrix eliminated_fourth_order_matrix(std::array<double, 5> alpha, int level,
                                      const WaveletBasis& basis = default_basis());

/// u'' + λ e^u = 0, u(0) = u(1) = 0. Exact solution on the lower branch when
/// it exists (λ <= λ_c); absent above the fold.
BvpProblem bratu_1d(double lambda);
double bratu_critical_lambda();
/// θ of the lower branch, or nullopt above the fold.
std::optional<double> bratu_theta(double lambda);

/// u'''' - e^x u'' + u + sin u = f with clamped data; exact u = 1 + sinh x.
BvpProblem fourth_order_geng();

/// u'''' = u''/(1+u) + q with four multipoint conditions; exact sin(θx + π/6),
/// θ = 2π/3.
BvpProblem five_point_bvp();
inline constexpr double kFivePointTheta = 2.0943951023931954923;  // 2π/3

/// Clamped-plate defaults.
inline constexpr double kPoissonRatio = 0.3;
inline constexpr double kClampedLambda = 0.0;
inline constexpr double kClampedMu = 2.0 / (1.0 - kPoissonRatio);

/// Large deflection of a circular plate: fields φ, S on y in [0, 1].
BvpProblem circular_plate(double q, double lambda = kClampedLambda, double mu = kClampedMu);

/// Load ramp q0, 2 q0, ... up to q (last value exactly q).
std::vector<double> ramp(double target, double step);

/// u_xx + u_yy + λ e^u = f with f manufactured from sin(πx) sin(πy).
BvpProblem2D bratu_2d(double lambda);

/// Max residual and boundary-condition defect of problem.exact over 100
/// points. Zero when no exact solution is attached.
double exact_solution_defect(const BvpProblem& problem);

struct Solution {
    std::string problem;
    int level = 0;
    std::vector<double> grid;
    Vector unknowns;
    std::vector<std::vector<Vector>> fields;  ///< [field][derivative] at nodes
    SolveReport report;
    std::optional<double> max_error;      ///< field 0 values against the exact solution
    std::optional<double> error_at_half;  ///< |u(1/2) - exact|
    std::map<std::string, double> scalars;
    std::shared_ptr<const DiscretizedSystem> system;

    /// y_{field, derivative}(x) from the wavelet representation.
    double evaluate(int field, int derivative, double x) const;
};

Solution solve(const BvpProblem& problem, int level, const NewtonConfig& cfg = {},
               const WaveletBasis& basis = default_basis());

using ProblemFamily = std::function<BvpProblem(double parameter)>;

/// Solves family(p) for p along cfg.continuation, warm-starting each stage.
Solution solve_family(const ProblemFamily& family, int level, const NewtonConfig& cfg,
                      const WaveletBasis& basis = default_basis());

/// W_m = -∫₀¹ φ(ξ)/ξ dξ from nodal plate fields, with the ξ = 0 value φ'(0).
double central_deflection(const Solution& plate);

struct Solution2D {
    int level = 0;
    std::vector<double> grid;
    Vector u;
    Vector u2;
    Vector v2;
    SolveReport report;
    double consistency = 0.0;  ///< max |A u2 - B v2| off the corners
    std::optional<double> max_error;
    std::optional<double> error_at_center;
};

Solution2D solve_2d(const BvpProblem2D& problem, int level, const NewtonConfig& cfg = {},
                    const WaveletBasis& basis = default_basis());

/// Continuation in the parameter of a 2D family along cfg.continuation.
Solution2D solve_2d_family(const std::function<BvpProblem2D(double)>& family, int level,
                           const NewtonConfig& cfg, const WaveletBasis& basis = default_basis());

struct RateEstimate {
    double rate = 0.0;
    std::vector<int> used_levels;
    std::vector<int> excluded_levels;  ///< error <= 0 (machine floor)
};

/// Negated least-squares slope of log2(error) against level.
RateEstimate estimate_convergence_rate(std::span<const double> errors, std::span<const int> levels);

}  // namespace wicm
