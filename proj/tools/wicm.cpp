// wicm: tables, single solves, convergence studies and condition diagnostics.

#include "wicm/extension.hpp"
#include "wicm/problems.hpp"
#include "wicm/published.hpp"
#include "wicm/report.hpp"
#include "wicm/solver.hpp"

#include <CLI11.hpp>

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace wicm;

enum Exit { kOk = 0, kFailed = 1, kNotConverged = 2, kBadArgs = 3, kIo = 4 };

struct BadArgs : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Params = std::map<std::string, double>;

Params parse_params(const std::vector<std::string>& raw) {
    Params out;
    for (const auto& kv : raw) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw BadArgs("--param expects key=value, got '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        const std::string val = kv.substr(eq + 1);
        try {
            std::size_t used = 0;
            out[key] = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
        } catch (const std::exception&) {
            throw BadArgs("parameter '" + key + "' is not a number: '" + val + "'");
        }
    }
    return out;
}

double param(const Params& p, const std::string& key, double fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

void reject_unknown(const Params& p, std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : p) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }) == allowed.end())
            throw BadArgs("unknown parameter '" + k + "' for this problem");
    }
}

std::pair<int, int> parse_levels(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) throw BadArgs("--levels expects a..b, got '" + s + "'");
    try {
        const int a = std::stoi(s.substr(0, dots));
        const int b = std::stoi(s.substr(dots + 2));
        if (b <= a) throw BadArgs("--levels needs b > a");
        return {a, b};
    } catch (const BadArgs&) {
        throw;
    } catch (const std::exception&) {
        throw BadArgs("--levels expects integers a..b, got '" + s + "'");
    }
}

std::array<double, 5> parse_alpha(const std::string& s) {
    std::array<double, 5> a{};
    std::stringstream ss(s);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= 5) throw BadArgs("--alpha expects five comma-separated values");
        try {
            a[i++] = std::stod(item);
        } catch (const std::exception&) {
            throw BadArgs("--alpha value '" + item + "' is not a number");
        }
    }
    if (i != 5) throw BadArgs("--alpha expects five comma-separated values");
    return a;
}

double wall_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

void check_level(int level, int lowest) {
    if (level < lowest || level > 10)
        throw BadArgs("level " + std::to_string(level) + " outside the admissible range " +
                      std::to_string(lowest) + "..10");
}

void emit(const RunReport& report, const std::string& prefix, const std::vector<std::string>& header,
          const std::vector<std::vector<double>>& rows) {
    const std::string json = report.to_json();
    std::cout << json;
    if (prefix.empty()) return;
    if (!write_text(prefix + ".json", json)) throw IoFailure("cannot write " + prefix + ".json");
    if (!header.empty() && !write_csv(prefix + ".csv", header, rows))
        throw IoFailure("cannot write " + prefix + ".csv");
}

// ---------------------------------------------------------------- problems

// u = 1 + sinh x for the linear fourth-order family.
BvpProblem manufactured_linear(const std::array<double, 5>& alpha) {
    auto deriv = [](int d, double x) {
        if (d == 0) return 1.0 + std::sinh(x);
        return d % 2 == 0 ? std::sinh(x) : std::cosh(x);
    };
    auto f = [alpha, deriv](double x) {
        double acc = 0.0;
        for (int i = 0; i < 5; ++i) acc += alpha[static_cast<std::size_t>(i)] * deriv(i, x);
        return acc;
    };
    auto p = linear_fourth_order(alpha, f, deriv(0, 0.0), deriv(0, 1.0), deriv(2, 0.0), deriv(2, 1.0));
    p.exact = [deriv](int, int d, double x) { return deriv(d, x); };
    return p;
}

struct OneD {
    ProblemFamily family;
    double parameter = 0.0;
    std::vector<double> schedule;  // empty: no continuation
    Params shown;
};

OneD one_d(const std::string& id, const Params& p) {
    OneD out;
    const double step = param(p, "continuation_step", 0.0);
    if (id == "bratu") {
        reject_unknown(p, {"lambda", "continuation_step"});
        out.parameter = param(p, "lambda", 1.0);
        out.family = [](double l) { return bratu_1d(l); };
        out.shown = {{"lambda", out.parameter}};
    } else if (id == "geng") {
        reject_unknown(p, {});
        out.family = [](double) { return fourth_order_geng(); };
    } else if (id == "fivepoint") {
        reject_unknown(p, {});
        out.family = [](double) { return five_point_bvp(); };
    } else if (id == "plate") {
        reject_unknown(p, {"Q", "lambda", "mu", "continuation_step"});
        const double lambda = param(p, "lambda", kClampedLambda);
        const double mu = param(p, "mu", kClampedMu);
        out.parameter = param(p, "Q", 50.0);
        out.family = [lambda, mu](double q) { return circular_plate(q, lambda, mu); };
        out.shown = {{"Q", out.parameter}, {"lambda", lambda}, {"mu", mu}};
        // Load ramp in steps of 10 unless overridden.
        if (step == 0.0 && std::abs(out.parameter) > 10.0) out.schedule = ramp(out.parameter, 10.0);
    } else if (id == "linear4") {
        reject_unknown(p, {"alpha0", "alpha1", "alpha2", "alpha3", "alpha4"});
        std::array<double, 5> alpha{};
        for (int i = 0; i < 5; ++i) alpha[static_cast<std::size_t>(i)] = param(p, "alpha" + std::to_string(i), 1.0);
        if (alpha[4] == 0.0) throw BadArgs("alpha4 must be nonzero");
        out.family = [alpha](double) { return manufactured_linear(alpha); };
        for (int i = 0; i < 5; ++i) out.shown["alpha" + std::to_string(i)] = alpha[static_cast<std::size_t>(i)];
    } else {
        throw BadArgs("unknown problem '" + id + "' (bratu, geng, fivepoint, plate, linear4, bratu2d)");
    }
    if (step > 0.0) out.schedule = ramp(out.parameter, step);
    if (step < 0.0) throw BadArgs("continuation_step must be positive");
    return out;
}

Solution run_one_d(const OneD& setup, int level) {
    if (setup.schedule.empty()) return solve(setup.family(setup.parameter), level);
    NewtonConfig cfg;
    cfg.continuation = setup.schedule;
    return solve_family(setup.family, level, cfg);
}

Solution2D run_two_d(const Params& p, int level) {
    reject_unknown(p, {"lambda", "continuation_step"});
    const double lambda = param(p, "lambda", 1.0);
    const double step = param(p, "continuation_step", 0.0);
    if (step < 0.0) throw BadArgs("continuation_step must be positive");
    if (step == 0.0) return solve_2d(bratu_2d(lambda), level);
    NewtonConfig cfg;
    cfg.continuation = ramp(lambda, step);
    return solve_2d_family([](double l) { return bratu_2d(l); }, level, cfg);
}

LevelRecord record_for(int level, const SolveReport& r) {
    LevelRecord rec;
    rec.level = level;
    rec.points = (1 << level) + 1;
    rec.iterations = r.total_iterations;
    rec.converged = r.converged;
    rec.residual = r.final_residual;
    return rec;
}

Fields to_fields(const Params& p) { return Fields(p.begin(), p.end()); }

// ---------------------------------------------------------------- commands

int cmd_tables(const std::string& prefix, bool timing) {
    const double t0 = wall_seconds();
    const CoifletFilter filter = load_filter();
    const ScalingTables tables = build_scaling_tables(filter, 4);
    const double elapsed = wall_seconds() - t0;

    std::vector<std::vector<double>> rows;
    std::vector<std::vector<double>> diff;
    double worst = 0.0;
    for (int k = 1; k <= filter.support_end(); ++k) {
        std::vector<double> row{static_cast<double>(k)};
        for (int n = 1; n <= 4; ++n) {
            const double v = tables.integral(n)[static_cast<std::size_t>(k)];
            row.push_back(v);
            const double ref = published::integral_reference(k, n);
            const double rel = std::abs(v - ref) / std::abs(ref);
            worst = std::max(worst, rel);
            bool erratum = false;
            for (const auto& e : published::integral_table_errata()) erratum = erratum || (e.k == k && e.tuple == n);
            diff.push_back({static_cast<double>(k), static_cast<double>(n), v, ref, rel, erratum ? 1.0 : 0.0});
        }
        rows.push_back(std::move(row));
    }
    RunReport report;
    report.command = "tables";
    report.problem = "coiflet-integrals";
    report.parameters = {{"N", static_cast<double>(filter.n)}, {"M1", static_cast<double>(filter.m1)}};
    report.results = {{"max_relative_deviation", worst},
                      {"errata_applied", static_cast<double>(published::integral_table_errata().size())}};
    if (timing) report.results.push_back({"seconds", elapsed});
    report.converged = worst <= 1e-9;
    report.note = "reference values corrected for two dropped digits";
    emit(report, prefix, {"k", "phi_int_1", "phi_int_2", "phi_int_3", "phi_int_4"}, rows);
    if (!prefix.empty() &&
        !write_csv(prefix + "_diff.csv", {"k", "tuple", "computed", "reference", "relative_deviation", "erratum"}, diff))
        throw IoFailure("cannot write " + prefix + "_diff.csv");
    return report.converged ? kOk : kFailed;
}

int solve_body(const std::string& id, int level, const Params& p, const std::string& prefix, bool timing);

// A singular Jacobian ends Newton early; that is a non-convergence, so the
// report is still written.
int cmd_solve(const std::string& id, int level, const Params& p, const std::string& prefix, bool timing) {
    try {
        return solve_body(id, level, p, prefix, timing);
    } catch (const SolverError& e) {
        RunReport report;
        report.command = "solve";
        report.problem = id;
        report.parameters = to_fields(p);
        LevelRecord rec;
        rec.level = level;
        rec.points = (1 << level) + 1;
        rec.converged = false;
        rec.residual = NAN;
        report.levels.push_back(rec);
        report.converged = false;
        report.note = e.what();
        emit(report, prefix, {}, {});
        std::cerr << "wicm: " << e.what() << "\n";
        return kNotConverged;
    }
}

int solve_body(const std::string& id, int level, const Params& p, const std::string& prefix, bool timing) {
    RunReport report;
    report.command = "solve";
    report.problem = id;
    const double t0 = wall_seconds();
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    if (id == "bratu2d") {
        check_level(level, 4);
        const Solution2D s = run_two_d(p, level);
        LevelRecord rec = record_for(level, s.report);
        if (s.max_error) rec.metrics.push_back({"max_error", *s.max_error});
        if (s.error_at_center) rec.metrics.push_back({"error_at_center", *s.error_at_center});
        rec.metrics.push_back({"consistency", s.consistency});
        if (timing) rec.seconds = wall_seconds() - t0;
        report.parameters = {{"lambda", param(p, "lambda", 1.0)}};
        report.converged = s.report.converged;
        report.levels.push_back(rec);
        header = {"x", "y", "u", "u_xx", "u_yy"};
        const std::size_t m = s.grid.size();
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c)
                rows.push_back({s.grid[c], s.grid[r], s.u[r * m + c], s.u2[r * m + c], s.v2[r * m + c]});
    } else {
        const OneD setup = one_d(id, p);
        check_level(level, minimal_level(default_basis().tables()));
        const Solution s = run_one_d(setup, level);
        LevelRecord rec = record_for(level, s.report);
        if (s.max_error) rec.metrics.push_back({"max_error", *s.max_error});
        if (s.error_at_half) rec.metrics.push_back({"error_at_half", *s.error_at_half});
        for (const auto& [k, v] : s.scalars) rec.metrics.push_back({k, v});
        if (timing) rec.seconds = wall_seconds() - t0;
        report.parameters = to_fields(Params(setup.shown.begin(), setup.shown.end()));
        report.converged = s.report.converged;
        report.levels.push_back(rec);
        header = {"x"};
        const auto& prob = s.system->problem();
        for (int f = 0; f < prob.fields; ++f)
            for (int d = 0; d <= prob.order; ++d)
                header.push_back(prob.field_names[static_cast<std::size_t>(f)] + "_" + std::to_string(d));
        for (std::size_t l = 0; l < s.grid.size(); ++l) {
            std::vector<double> row{s.grid[l]};
            for (const auto& field : s.fields)
                for (const auto& y : field) row.push_back(y[l]);
            rows.push_back(std::move(row));
        }
    }
    if (!report.converged) report.note = "Newton did not converge";
    emit(report, prefix, header, rows);
    return report.converged ? kOk : kNotConverged;
}

int threads_for(std::size_t jobs) {
    int cap = 1;
    if (const char* env = std::getenv("WICM_THREADS")) {
        try {
            cap = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            throw BadArgs("WICM_THREADS must be a positive integer");
        }
    }
    return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(cap), jobs));
}

struct LevelOutcome {
    double error = 0.0;
    LevelRecord record;
};

int cmd_convergence(const std::string& id, const std::string& levels_arg, const std::string& probe,
                    const Params& p, const std::string& prefix, bool timing) {
    const auto [first, last] = parse_levels(levels_arg);
    const bool use_max = probe == "max";
    double probe_x = 0.5;
    if (!use_max) {
        try {
            probe_x = std::stod(probe);
        } catch (const std::exception&) {
            throw BadArgs("--probe expects a number or 'max'");
        }
        if (!(probe_x >= 0.0 && probe_x <= 1.0)) throw BadArgs("--probe must lie in [0, 1]");
    }
    std::vector<int> levels;
    for (int j = first; j <= last; ++j) levels.push_back(j);
    const int lowest = minimal_level(default_basis().tables());
    for (int j : levels) check_level(j, lowest);

    RunReport report;
    report.command = "convergence";
    report.problem = id;

    std::function<LevelOutcome(int)> run;
    std::optional<Solution> reference;
    if (id == "integral-sin") {
        reject_unknown(p, {"tuple"});
        const int tuple = static_cast<int>(param(p, "tuple", 1.0));
        if (tuple < 1 || tuple > 4) throw BadArgs("tuple must be in 1..4");
        report.parameters = {{"tuple", static_cast<double>(tuple)}};
        // n-tuple integral of sin(πx) from 0, evaluated at 1.
        const double pi = std::numbers::pi;
        const double exact[] = {2.0 / pi, 1.0 / pi, 1.0 / (2.0 * pi) - 2.0 / (pi * pi * pi),
                                1.0 / (6.0 * pi) - 1.0 / (pi * pi * pi)};
        run = [tuple, exact, pi](int j) {
            const auto& op = default_basis().integral(j, tuple);
            Vector samples(op.nodes());
            for (std::size_t l = 0; l < samples.size(); ++l) samples[l] = std::sin(pi * std::ldexp(double(l), -j));
            const Vector v = approximate_multiple_integral(op, samples);
            LevelOutcome o;
            o.error = std::abs(v.back() - exact[tuple - 1]);
            o.record.level = j;
            o.record.points = (1 << j) + 1;
            o.record.metrics = {{"error", o.error}};
            return o;
        };
    } else if (id == "bratu2d") {
        run = [&p, use_max](int j) {
            const Solution2D s = run_two_d(p, j);
            LevelOutcome o;
            o.record = record_for(j, s.report);
            o.error = use_max ? s.max_error.value_or(NAN) : s.error_at_center.value_or(NAN);
            o.record.metrics = {{"error", o.error}};
            return o;
        };
        if (!use_max && probe_x != 0.5) throw BadArgs("bratu2d probes the center; use --probe 0.5 or max");
        reject_unknown(p, {"lambda", "continuation_step"});
        if (param(p, "continuation_step", 0.0) < 0.0) throw BadArgs("continuation_step must be positive");
        report.parameters = {{"lambda", param(p, "lambda", 1.0)}};
    } else {
        Params local = p;
        const int ref_level = static_cast<int>(param(p, "reference_level", 8.0));
        local.erase("reference_level");
        const OneD setup = one_d(id, local);
        report.parameters = to_fields(Params(setup.shown.begin(), setup.shown.end()));
        const bool has_exact = static_cast<bool>(setup.family(setup.parameter).exact);
        if (!has_exact) {
            if (ref_level <= last) throw BadArgs("reference_level must exceed the studied levels");
            check_level(ref_level, lowest);
            reference = run_one_d(setup, ref_level);
            if (!reference->report.converged) throw std::runtime_error("reference solve did not converge");
            report.parameters.push_back({"reference_level", static_cast<double>(ref_level)});
        }
        run = [setup, use_max, probe_x, &reference](int j) {
            const Solution s = run_one_d(setup, j);
            LevelOutcome o;
            o.record = record_for(j, s.report);
            const auto& prob = s.system->problem();
            double err = 0.0;
            for (int f = 0; f < prob.fields; ++f) {
                if (use_max) {
                    for (std::size_t l = 0; l < s.grid.size(); ++l) {
                        const double truth = reference ? reference->evaluate(f, 0, s.grid[l]) : prob.exact(f, 0, s.grid[l]);
                        err = std::max(err, std::abs(s.fields[static_cast<std::size_t>(f)][0][l] - truth));
                    }
                } else {
                    const double truth = reference ? reference->evaluate(f, 0, probe_x) : prob.exact(f, 0, probe_x);
                    const double e = std::abs(s.evaluate(f, 0, probe_x) - truth);
                    o.record.metrics.push_back({"error_" + prob.field_names[static_cast<std::size_t>(f)], e});
                    err = std::max(err, e);
                }
            }
            o.error = err;
            o.record.metrics.push_back({"error", err});
            return o;
        };
    }

    std::vector<LevelOutcome> outcomes(levels.size());
    std::vector<std::string> failures(levels.size());
    const double t0 = wall_seconds();
    const int threads = threads_for(levels.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < static_cast<long>(levels.size()); ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const double start = wall_seconds();
        try {
            outcomes[ui] = run(levels[ui]);
        } catch (const std::exception& e) {
            failures[ui] = e.what();
        }
        if (timing) outcomes[ui].record.seconds = wall_seconds() - start;
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (failures[i].empty()) continue;
        std::cerr << "wicm: level " << levels[i] << ": " << failures[i] << "\n";
        return kNotConverged;
    }

    std::vector<double> errors;
    std::vector<std::vector<double>> rows;
    report.converged = true;
    for (const auto& o : outcomes) {
        errors.push_back(o.error);
        report.levels.push_back(o.record);
        report.converged = report.converged && o.record.converged;
        rows.push_back({static_cast<double>(o.record.level), static_cast<double>(o.record.points), o.error});
    }
    if (timing) report.results.push_back({"seconds", wall_seconds() - t0});
    try {
        const RateEstimate rate = estimate_convergence_rate(errors, levels);
        report.rate = rate.rate;
        report.excluded_levels = rate.excluded_levels;
    } catch (const ProblemError& e) {
        for (std::size_t i = 0; i < errors.size(); ++i)
            if (!(errors[i] > 0.0 && std::isfinite(errors[i]))) report.excluded_levels.push_back(levels[i]);
        report.note = e.what();
        emit(report, prefix, {"j", "m", "error"}, rows);
        std::cerr << "wicm: " << report.note << "\n";
        return kBadArgs;
    }
    if (!report.converged) report.note = "Newton did not converge at some level";
    emit(report, prefix, {"j", "m", "error"}, rows);
    return report.converged ? kOk : kNotConverged;
}

int cmd_condition(const std::string& alpha_arg, const std::string& levels_arg, const std::string& form,
                  const std::string& prefix) {
    const auto alpha = parse_alpha(alpha_arg);
    if (alpha[4] == 0.0) throw BadArgs("alpha4 must be nonzero");
    const auto [first, last] = parse_levels(levels_arg);
    const int lowest = minimal_level(default_basis().tables());
    RunReport report;
    report.command = "condition";
    report.problem = form == "literal" ? "linear4-literal" : "linear4-eliminated";
    for (int i = 0; i < 5; ++i) report.parameters.push_back({"alpha" + std::to_string(i), alpha[static_cast<std::size_t>(i)]});
    std::vector<std::vector<double>> rows;
    for (int j = first; j <= last; ++j) {
        check_level(j, lowest);
        const Matrix a = form == "literal" ? literal_fourth_order_matrix(alpha, j) : eliminated_fourth_order_matrix(alpha, j);
        const ConditionEstimate c = condition_number_2(a);
        LevelRecord rec;
        rec.level = j;
        rec.points = (1 << j) + 1;
        rec.metrics = {{"condition", c.condition()}, {"inverse_norm", c.inverse_norm()}};
        report.levels.push_back(rec);
        rows.push_back({static_cast<double>(j), c.condition(), c.inverse_norm()});
    }
    emit(report, prefix, {"j", "condition", "inverse_norm"}, rows);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wavelet integral collocation solver"};
    app.require_subcommand(1);
    bool timing = false;
    app.add_flag("--timing", timing, "Include wall-clock seconds in reports");

    std::string prefix;
    std::vector<std::string> raw_params;

    auto* tables = app.add_subcommand("tables", "Tabulate n-tuple integrals of the scaling function");
    tables->add_option("--out", prefix, "Output prefix for CSV/JSON");

    std::string problem;
    int level = 4;
    auto* solve_cmd = app.add_subcommand("solve", "Solve one problem at one level");
    solve_cmd->add_option("problem", problem, "bratu, geng, fivepoint, plate, linear4, bratu2d")->required();
    solve_cmd->add_option("--level", level, "Resolution level j");
    solve_cmd->add_option("--param", raw_params, "key=value (repeatable)");
    solve_cmd->add_option("--out", prefix, "Output prefix for CSV/JSON");

    std::string levels = "4..6";
    std::string probe = "0.5";
    auto* conv = app.add_subcommand("convergence", "Error against level and fitted rate");
    conv->add_option("problem", problem, "integral-sin, bratu, geng, fivepoint, plate, linear4, bratu2d")->required();
    conv->add_option("--levels", levels, "a..b");
    conv->add_option("--probe", probe, "Probe point in [0,1], or 'max'");
    conv->add_option("--param", raw_params, "key=value (repeatable)");
    conv->add_option("--out", prefix, "Output prefix for CSV/JSON");

    std::string alpha = "1,1,1,1,1";
    std::string form = "literal";
    auto* cond = app.add_subcommand("condition", "2-norm condition of the fourth-order system matrix");
    cond->add_option("--alpha", alpha, "a0,a1,a2,a3,a4");
    cond->add_option("--levels", levels, "a..b");
    cond->add_option("--form", form, "literal or eliminated")->check(CLI::IsMember({"literal", "eliminated"}));
    cond->add_option("--out", prefix, "Output prefix for CSV/JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadArgs;
    }

    try {
        const Params params = parse_params(raw_params);
        if (*tables) return cmd_tables(prefix, timing);
        if (*solve_cmd) return cmd_solve(problem, level, params, prefix, timing);
        if (*conv) return cmd_convergence(problem, levels, probe, params, prefix, timing);
        if (*cond) return cmd_condition(alpha, levels, form, prefix);
    } catch (const BadArgs& e) {
        std::cerr << "wicm: " << e.what() << "\n";
        return kBadArgs;
    } catch (const IoFailure& e) {
        std::cerr << "wicm: " << e.what() << "\n";
        return kIo;
    } catch (const ProblemError& e) {
        std::cerr << "wicm: " << e.what() << "\n";
        return kBadArgs;
    } catch (const std::exception& e) {
        std::cerr << "wicm: " << e.what() << "\n";
        return kFailed;
    }
    return kOk;
}
