#include "wicm/solver.hpp"

#include <cmath>
#include <sstream>

namespace wicm {

namespace {

StageReport run_stage(const NonlinearSystem& system, const NewtonConfig& cfg, Vector& x,
                      std::size_t stage, double parameter, std::optional<ConditionEstimate>* cond) {
    StageReport out;
    out.parameter = parameter;
    Vector r = system.residual(x);
    double rnorm = max_abs(r);
    out.history.push_back(rnorm);
    while (rnorm > cfg.residual_tol && out.iterations < cfg.max_iters) {
        if (!std::isfinite(rnorm)) break;
        const Matrix jac = system.jacobian(x);
        Vector dx;
        try {
            dx = lu_solve(jac, r);
        } catch (const SingularMatrixError& e) {
            std::ostringstream os;
            os << "singular Jacobian at continuation stage " << stage << " (parameter " << parameter
               << "), iteration " << out.iterations + 1 << ": " << e.what();
            throw SolverError(os.str());
        }
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= dx[i];
        ++out.iterations;
        r = system.residual(x);
        rnorm = max_abs(r);
        out.history.push_back(rnorm);
        if (max_abs(dx) <= cfg.step_tol * (1.0 + max_abs(x))) break;
    }
    out.residual = rnorm;
    out.converged = rnorm <= cfg.residual_tol;
    if (cond && cfg.estimate_condition) *cond = condition_number_2(system.jacobian(x));
    return out;
}

void finish(SolveReport& report) {
    report.converged = !report.stages.empty();
    report.total_iterations = 0;
    for (const auto& s : report.stages) {
        report.converged = report.converged && s.converged;
        report.total_iterations += s.iterations;
    }
    if (!report.stages.empty()) report.final_residual = report.stages.back().residual;
}

}  // namespace

void NewtonConfig::validate() const {
    if (!(residual_tol > 0.0) || !(step_tol > 0.0)) throw SolverError("Newton tolerances must be positive");
    if (max_iters < 1) throw SolverError("max_iters must be at least 1");
}

SolveResult newton_solve(const NonlinearSystem& system, const NewtonConfig& cfg,
                         std::span<const double> initial) {
    cfg.validate();
    if (initial.size() != system.size())
        throw DimensionError("newton_solve: initial guess has " + std::to_string(initial.size()) +
                             " entries, system has " + std::to_string(system.size()));
    SolveResult result{Vector(initial.begin(), initial.end()), {}};
    result.report.stages.push_back(run_stage(system, cfg, result.solution, 0, 0.0, &result.report.jacobian_condition));
    finish(result.report);
    return result;
}

SolveResult continuation_solve(const SystemFamily& family, const NewtonConfig& cfg,
                               std::span<const double> initial) {
    cfg.validate();
    if (cfg.continuation.empty()) throw SolverError("continuation schedule is empty");
    SolveResult result{Vector(initial.begin(), initial.end()), {}};
    for (std::size_t stage = 0; stage < cfg.continuation.size(); ++stage) {
        const double p = cfg.continuation[stage];
        const auto system = family(p);
        if (system->size() != result.solution.size())
            throw DimensionError("continuation: system size changed between stages");
        const bool last = stage + 1 == cfg.continuation.size();
        auto report = run_stage(*system, cfg, result.solution, stage, p,
                                last ? &result.report.jacobian_condition : nullptr);
        result.report.stages.push_back(report);
        if (!report.converged) break;
    }
    finish(result.report);
    return result;
}

}  // namespace wicm
