#include "wicm/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace wicm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kExactTol = 1e-10;

template <class F>
double bisect(F&& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

BoundaryCondition point_condition(int field, int derivative, double x, double value) {
    return {{{field, derivative, x, 1.0}}, value};
}

BvpProblem checked(BvpProblem p) {
    const double defect = exact_solution_defect(p);
    if (defect > kExactTol) {
        std::ostringstream os;
        os << p.name << ": attached exact solution violates the problem (defect " << defect << ")";
        throw ProblemError(os.str());
    }
    return p;
}

std::vector<double> nodes_of(int level) {
    std::vector<double> g((std::size_t{1} << level) + 1);
    for (std::size_t l = 0; l < g.size(); ++l) g[l] = std::ldexp(static_cast<double>(l), -level);
    return g;
}

void fill_metrics(Solution& s, const BvpProblem& p) {
    s.fields = recover_lower_derivatives(*s.system, s.unknowns);
    if (p.exact) {
        const auto& u = s.fields[0][0];
        double worst = 0.0;
        for (std::size_t l = 0; l < u.size(); ++l)
            worst = std::max(worst, std::abs(u[l] - p.exact(0, 0, s.grid[l])));
        s.max_error = worst;
        const std::size_t half = (u.size() - 1) / 2;
        s.error_at_half = std::abs(u[half] - p.exact(0, 0, 0.5));
    }
    if (p.name == "plate") s.scalars["W_m"] = central_deflection(s);
}

}  // namespace

BvpProblem linear_fourth_order(std::array<double, 5> alpha, std::function<double(double)> f,
                               double a0, double a1, double b0, double b1) {
    if (alpha[4] == 0.0) throw ProblemError("alpha4 must be nonzero; the equation is not fourth order");
    if (!f) throw ProblemError("right-hand side is required");
    BvpProblem p;
    p.name = "linear4";
    p.order = 4;
    p.field_names = {"u"};
    p.equations = {[alpha, f](double x, std::span<const double> y, std::span<double> grad) {
        double acc = -f(x);
        for (std::size_t i = 0; i < 5; ++i) {
            acc += alpha[i] * y[i];
            if (!grad.empty()) grad[i] = alpha[i];
        }
        return acc;
    }};
    p.boundary = {point_condition(0, 0, 0.0, a0), point_condition(0, 0, 1.0, a1),
                  point_condition(0, 2, 0.0, b0), point_condition(0, 2, 1.0, b1)};
    p.parameters = {{"alpha0", alpha[0]}, {"alpha1", alpha[1]}, {"alpha2", alpha[2]},
                    {"alpha3", alpha[3]}, {"alpha4", alpha[4]}};
    return p;
}

Matrix literal_fourth_order_matrix(std::array<double, 5> alpha, int level, const WaveletBasis& basis) {
    if (alpha[4] == 0.0) throw ProblemError("alpha4 must be nonzero");
    const auto x = nodes_of(level);
    const std::size_t m = x.size();
    Matrix a(m, m);
    for (std::size_t l = 0; l < m; ++l) a(l, l) = alpha[4];
    for (int i = 0; i < 4; ++i) {
        const Matrix& op = basis.integral(level, 4 - i).entries;
        for (std::size_t l = 0; l < m; ++l)
            for (std::size_t k = 0; k < m; ++k) a(l, k) += alpha[static_cast<std::size_t>(i)] * op(l, k);
    }
    const auto end4 = basis.integral(level, 4).boundary_row();
    const auto end2 = basis.integral(level, 2).boundary_row();
    for (std::size_t l = 0; l < m; ++l) {
        const double x3 = x[l] * x[l] * x[l];
        const double beta = (alpha[2] + alpha[3] + alpha[4]) * x[l] - alpha[4] * x3;
        for (std::size_t k = 0; k < m; ++k) a(l, k) -= alpha[4] * x3 * end4[k] + beta * end2[k];
    }
    return a;
}

Matrix eliminated_fourth_order_matrix(std::array<double, 5> alpha, int level, const WaveletBasis& basis) {
    const auto sys = assemble(linear_fourth_order(alpha, [](double) { return 0.0; }, 0, 0, 0, 0), level, basis);
    return sys.jacobian(Vector(sys.size(), 0.0));
}

double bratu_critical_lambda() {
    // Fold where θ tanh(θ/4) = 4; λ = θ² / (2 cosh²(θ/4)).
    const double theta = bisect([](double t) { return t * std::tanh(t / 4.0) - 4.0; }, 1.0, 10.0);
    const double c = std::cosh(theta / 4.0);
    return theta * theta / (2.0 * c * c);
}

std::optional<double> bratu_theta(double lambda) {
    if (!(lambda > 0.0)) return std::nullopt;
    const double s = std::sqrt(2.0 * lambda);
    auto g = [s](double t) { return t - s * std::cosh(t / 4.0); };
    const double peak = 4.0 * std::asinh(4.0 / s);
    if (g(peak) < 0.0) return std::nullopt;
    return bisect(g, 0.0, peak);
}

BvpProblem bratu_1d(double lambda) {
    BvpProblem p;
    p.name = "bratu";
    p.order = 2;
    p.field_names = {"u"};
    p.parameters = {{"lambda", lambda}};
    p.equations = {[lambda](double, std::span<const double> y, std::span<double> grad) {
        const double e = lambda * std::exp(y[0]);
        if (!grad.empty()) {
            grad[0] = e;
            grad[2] = 1.0;
        }
        return y[2] + e;
    }};
    p.boundary = {point_condition(0, 0, 0.0, 0.0), point_condition(0, 0, 1.0, 0.0)};

    if (lambda == 0.0) {
        p.exact = [](int, int, double) { return 0.0; };
    } else if (lambda > 0.0) {
        if (const auto th = bratu_theta(lambda)) {
            const double theta = *th;
            const double shift = 2.0 * std::log(std::cosh(theta / 4.0));
            p.exact = [theta, shift](int, int d, double x) {
                const double z = x * theta / 2.0 - theta / 4.0;
                switch (d) {
                    case 0: return -2.0 * std::log(std::cosh(z)) + shift;
                    case 1: return -theta * std::tanh(z);
                    default: {
                        const double sech = 1.0 / std::cosh(z);
                        return -theta * theta / 2.0 * sech * sech;
                    }
                }
            };
        }
    } else {
        const double target = std::sqrt(2.0 * -lambda);
        const double k = bisect([target](double v) { return v / std::cos(v / 4.0) - target; }, 0.0,
                                2.0 * kPi - 1e-9);
        const double shift = std::log(2.0 * -lambda);
        p.exact = [k, shift](int, int d, double x) {
            const double z = k * x / 2.0 - k / 4.0;
            switch (d) {
                case 0: return 2.0 * std::log(k / std::cos(z)) - shift;
                case 1: return k * std::tan(z);
                default: {
                    const double sec = 1.0 / std::cos(z);
                    return k * k / 2.0 * sec * sec;
                }
            }
        };
    }
    return checked(std::move(p));
}

BvpProblem fourth_order_geng() {
    BvpProblem p;
    p.name = "geng";
    p.order = 4;
    p.field_names = {"u"};
    p.equations = {[](double x, std::span<const double> y, std::span<double> grad) {
        const double ex = std::exp(x);
        const double f = 1.0 + std::sin(1.0 + std::sinh(x)) - (ex - 2.0) * std::sinh(x);
        if (!grad.empty()) {
            grad[0] = 1.0 + std::cos(y[0]);
            grad[2] = -ex;
            grad[4] = 1.0;
        }
        return y[4] - ex * y[2] + y[0] + std::sin(y[0]) - f;
    }};
    p.boundary = {point_condition(0, 0, 0.0, 1.0), point_condition(0, 1, 0.0, 1.0),
                  point_condition(0, 0, 1.0, 1.0 + std::sinh(1.0)), point_condition(0, 1, 1.0, std::cosh(1.0))};
    p.exact = [](int, int d, double x) {
        if (d == 0) return 1.0 + std::sinh(x);
        return d % 2 == 0 ? std::sinh(x) : std::cosh(x);
    };
    return checked(std::move(p));
}

BvpProblem five_point_bvp() {
    constexpr double theta = kFivePointTheta;
    const double r3 = std::sqrt(3.0);
    BvpProblem p;
    p.name = "fivepoint";
    p.order = 4;
    p.field_names = {"u"};
    p.parameters = {{"theta", theta}};
    p.equations = {[](double x, std::span<const double> y, std::span<double> grad) {
        const double s = std::sin(theta * x + kPi / 6.0);
        const double t2 = theta * theta;
        const double q = t2 * t2 * s + t2 * s / (1.0 + s);
        const double inv = 1.0 / (1.0 + y[0]);
        if (!grad.empty()) {
            grad[0] = y[2] * inv * inv;
            grad[2] = -inv;
            grad[4] = 1.0;
        }
        return y[4] - y[2] * inv - q;
    }};
    p.boundary = {
        {{{0, 0, 0.0, 1.0}, {0, 0, 0.5, -0.5}}, 0.0},
        {{{0, 0, 1.0, 1.0}, {0, 0, 0.5, -0.25}, {0, 0, 0.75, -r3 / 6.0}}, 0.0},
        {{{0, 2, 0.0, 1.0}, {0, 2, 0.25, -r3 / 3.0}}, 0.0},
        {{{0, 2, 1.0, 1.0}, {0, 2, 0.25, -r3 / 12.0}, {0, 2, 0.75, -r3 / 4.0}}, 0.0},
    };
    p.exact = [](int, int d, double x) {
        const double a = theta * x + kPi / 6.0;
        const double scale = std::pow(theta, d);
        switch (d % 4) {
            case 0: return scale * std::sin(a);
            case 1: return scale * std::cos(a);
            case 2: return -scale * std::sin(a);
            default: return -scale * std::cos(a);
        }
    };
    return checked(std::move(p));
}

BvpProblem circular_plate(double q, double lambda, double mu) {
    BvpProblem p;
    p.name = "plate";
    p.order = 2;
    p.fields = 2;
    p.field_names = {"phi", "S"};
    p.parameters = {{"Q", q}, {"lambda", lambda}, {"mu", mu}};
    // y = [φ, φ', φ'', S, S', S'']
    p.equations = {
        [q](double x, std::span<const double> y, std::span<double> grad) {
            if (!grad.empty()) {
                grad[0] = -y[3];
                grad[2] = x * x;
                grad[3] = -y[0];
            }
            return x * x * y[2] - y[0] * y[3] - x * x * q;
        },
        [](double x, std::span<const double> y, std::span<double> grad) {
            if (!grad.empty()) {
                grad[0] = y[0];
                grad[5] = x * x;
            }
            return x * x * y[5] + 0.5 * y[0] * y[0];
        },
    };
    // At y = 0 both equations degenerate; their limits use φ'(0) and S'(0).
    p.overrides = {
        {0.0, 0,
         [q](double, std::span<const double> y, std::span<double> grad) {
             if (!grad.empty()) {
                 grad[1] = -y[4];
                 grad[2] = 1.0;
                 grad[4] = -y[1];
             }
             return y[2] - y[1] * y[4] - q;
         }},
        {0.0, 1,
         [](double, std::span<const double> y, std::span<double> grad) {
             if (!grad.empty()) {
                 grad[1] = y[1];
                 grad[5] = 1.0;
             }
             return y[5] + 0.5 * y[1] * y[1];
         }},
    };
    p.boundary = {
        point_condition(0, 0, 0.0, 0.0),
        point_condition(1, 0, 0.0, 0.0),
        {{{0, 0, 1.0, lambda - 1.0}, {0, 1, 1.0, -lambda}}, 0.0},
        {{{1, 0, 1.0, mu - 1.0}, {1, 1, 1.0, -mu}}, 0.0},
    };
    if (q == 0.0) p.exact = [](int, int, double) { return 0.0; };
    return checked(std::move(p));
}

std::vector<double> ramp(double target, double step) {
    if (!(step > 0.0)) throw ProblemError("ramp step must be positive");
    std::vector<double> out;
    const double dir = target < 0.0 ? -1.0 : 1.0;
    for (int i = 1; i * step < std::abs(target) - 1e-12; ++i) out.push_back(dir * i * step);
    out.push_back(target);
    return out;
}

BvpProblem2D bratu_2d(double lambda) {
    BvpProblem2D p;
    p.name = "bratu2d";
    p.lambda = lambda;
    p.exact = [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); };
    p.source = [lambda](double x, double y) {
        const double s = std::sin(kPi * x) * std::sin(kPi * y);
        return lambda * std::exp(s) - 2.0 * kPi * kPi * s;
    };
    return p;
}

double exact_solution_defect(const BvpProblem& p) {
    if (!p.exact) return 0.0;
    const std::size_t width = p.state_size();
    Vector y(width);
    Vector grad(width);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double x = i / 99.0;
        for (int f = 0; f < p.fields; ++f)
            for (int d = 0; d <= p.order; ++d)
                y[static_cast<std::size_t>(f * (p.order + 1) + d)] = p.exact(f, d, x);
        for (int e = 0; e < p.fields; ++e) {
            const PointwiseFn* fn = &p.equations[static_cast<std::size_t>(e)];
            for (const auto& o : p.overrides)
                if (o.equation == e && o.x == x) fn = &o.fn;
            worst = std::max(worst, std::abs((*fn)(x, y, grad)));
        }
    }
    for (const auto& bc : p.boundary) {
        double acc = -bc.value;
        for (const auto& t : bc.terms) acc += t.coeff * p.exact(t.field, t.derivative, t.x);
        worst = std::max(worst, std::abs(acc));
    }
    return worst;
}

double Solution::evaluate(int field, int derivative, double x) const {
    if (!system) throw ProblemError("solution has no discretization attached");
    return system->evaluate(field, derivative, x, unknowns);
}

Solution solve(const BvpProblem& problem, int level, const NewtonConfig& cfg, const WaveletBasis& basis) {
    if (!cfg.continuation.empty()) throw ProblemError("use solve_family for continuation");
    Solution s;
    s.problem = problem.name;
    s.level = level;
    s.system = std::make_shared<DiscretizedSystem>(problem, basis, level);
    s.grid = s.system->grid();
    auto result = newton_solve(*s.system, cfg, Vector(s.system->size(), 0.0));
    s.unknowns = std::move(result.solution);
    s.report = std::move(result.report);
    fill_metrics(s, problem);
    return s;
}

Solution solve_family(const ProblemFamily& family, int level, const NewtonConfig& cfg,
                      const WaveletBasis& basis) {
    if (cfg.continuation.empty()) throw ProblemError("continuation schedule is empty");
    const BvpProblem first = family(cfg.continuation.front());
    const std::size_t n = DiscretizedSystem(first, basis, level).size();
    auto result = continuation_solve(
        [&](double p) -> std::unique_ptr<NonlinearSystem> {
            return std::make_unique<DiscretizedSystem>(family(p), basis, level);
        },
        cfg, Vector(n, 0.0));
    const BvpProblem last = family(result.report.stages.back().parameter);
    Solution s;
    s.problem = last.name;
    s.level = level;
    s.system = std::make_shared<DiscretizedSystem>(last, basis, level);
    s.grid = s.system->grid();
    s.unknowns = std::move(result.solution);
    s.report = std::move(result.report);
    fill_metrics(s, last);
    return s;
}

double central_deflection(const Solution& plate) {
    if (plate.fields.size() < 1 || plate.fields[0].size() < 2)
        throw ProblemError("central_deflection needs the plate fields");
    const auto& phi = plate.fields[0][0];
    const auto& dphi = plate.fields[0][1];
    Vector g(phi.size());
    g[0] = dphi[0];
    for (std::size_t l = 1; l < g.size(); ++l) g[l] = phi[l] / plate.grid[l];
    if (!plate.system || plate.system->grid().size() != g.size())
        throw ProblemError("central_deflection: grid mismatch");
    const auto end = plate.system->basis().integral(plate.level, 1).boundary_row();
    double acc = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) acc += end[k] * g[k];
    return -acc;
}

namespace {

Solution2D finish_2d(const BvpProblem2D& problem, const DiscretizedSystem2D& sys, SolveResult result) {
    const std::size_t n = sys.side() * sys.side();
    Solution2D s;
    s.level = sys.level();
    s.grid = nodes_of(sys.level());
    s.u2.assign(result.solution.begin(), result.solution.begin() + static_cast<std::ptrdiff_t>(n));
    s.v2.assign(result.solution.begin() + static_cast<std::ptrdiff_t>(n), result.solution.end());
    s.report = std::move(result.report);
    s.u = sys.apply_x(s.u2);
    const Vector w = sys.apply_y(s.v2);
    for (std::size_t g = 0; g < n; ++g) s.consistency = std::max(s.consistency, std::abs(s.u[g] - w[g]));
    if (problem.exact) {
        double worst = 0.0;
        const std::size_t m = sys.side();
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c)
                worst = std::max(worst, std::abs(s.u[r * m + c] - problem.exact(s.grid[c], s.grid[r])));
        s.max_error = worst;
        const std::size_t mid = (m - 1) / 2;
        s.error_at_center = std::abs(s.u[mid * m + mid] - problem.exact(0.5, 0.5));
    }
    return s;
}

}  // namespace

Solution2D solve_2d(const BvpProblem2D& problem, int level, const NewtonConfig& cfg, const WaveletBasis& basis) {
    if (!cfg.continuation.empty()) throw ProblemError("use solve_2d_family for continuation");
    const auto sys = assemble_2d(problem, level, basis);
    return finish_2d(problem, sys, newton_solve(sys, cfg, Vector(sys.size(), 0.0)));
}

Solution2D solve_2d_family(const std::function<BvpProblem2D(double)>& family, int level,
                           const NewtonConfig& cfg, const WaveletBasis& basis) {
    if (cfg.continuation.empty()) throw ProblemError("continuation schedule is empty");
    const std::size_t n = 2 * ((std::size_t{1} << level) + 1) * ((std::size_t{1} << level) + 1);
    auto result = continuation_solve(
        [&](double p) -> std::unique_ptr<NonlinearSystem> {
            return std::make_unique<DiscretizedSystem2D>(family(p), basis, level);
        },
        cfg, Vector(n, 0.0));
    const BvpProblem2D last = family(result.report.stages.back().parameter);
    const auto sys = assemble_2d(last, level, basis);
    return finish_2d(last, sys, std::move(result));
}

RateEstimate estimate_convergence_rate(std::span<const double> errors, std::span<const int> levels) {
    if (errors.size() != levels.size()) throw ProblemError("errors and levels differ in length");
    if (levels.size() < 2) throw ProblemError("at least two levels are required");
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (levels[i] <= levels[i - 1]) throw ProblemError("levels must be strictly increasing");
    RateEstimate out;
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (errors[i] > 0.0 && std::isfinite(errors[i])) {
            out.used_levels.push_back(levels[i]);
            xs.push_back(levels[i]);
            ys.push_back(std::log2(errors[i]));
        } else {
            out.excluded_levels.push_back(levels[i]);
        }
    }
    if (xs.size() < 2)
        throw ProblemError("fewer than two levels remain above the machine-precision floor");
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    out.rate = -sxy / sxx;
    return out;
}

}  // namespace wicm
