#pragma once

#include "wicm/assembly.hpp"
#include "wicm/linalg.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace wicm {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NewtonConfig {
    double residual_tol = 1e-12;  ///< max-norm of F
    double step_tol = 1e-13;      ///< max-norm of the update, relative to 1 + |u|
    int max_iters = 50;
    /// Parameter values visited in order; empty means a single solve.
    std::vector<double> continuation;
    bool estimate_condition = false;

    void validate() const;
};

struct StageReport {
    double parameter = 0.0;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
    std::vector<double> history;  ///< residual max-norm before each step and at exit
};

struct SolveReport {
    std::vector<StageReport> stages;
    bool converged = false;
    double final_residual = 0.0;
    int total_iterations = 0;
    std::optional<ConditionEstimate> jacobian_condition;
};

struct SolveResult {
    Vector solution;
    SolveReport report;
};

/// Undamped Newton with a fresh dense LU each step. Non-convergence is
/// reported, a singular Jacobian throws SolverError.
SolveResult newton_solve(const NonlinearSystem& system, const NewtonConfig& cfg,
                         std::span<const double> initial);

using SystemFamily = std::function<std::unique_ptr<NonlinearSystem>(double parameter)>;

/// Solves along cfg.continuation, warm-starting each stage from the previous
/// one. Stops at the first stage that fails to converge.
SolveResult continuation_solve(const SystemFamily& family, const NewtonConfig& cfg,
                               std::span<const double> initial);

}  // namespace wicm
