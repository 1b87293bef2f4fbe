#include "wicm/problems.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace wicm;

namespace {

constexpr double kPi = std::numbers::pi;

double rate_over(const std::vector<double>& errors, int first) {
    std::vector<int> levels;
    for (std::size_t i = 0; i < errors.size(); ++i) levels.push_back(first + static_cast<int>(i));
    return estimate_convergence_rate(errors, levels).rate;
}

BvpProblem sinh_problem(std::array<double, 5> alpha) {
    auto d = [](int k, double x) { return k == 0 ? 1.0 + std::sinh(x) : (k % 2 == 0 ? std::sinh(x) : std::cosh(x)); };
    auto f = [alpha, d](double x) {
        double acc = 0.0;
        for (int i = 0; i < 5; ++i) acc += alpha[static_cast<std::size_t>(i)] * d(i, x);
        return acc;
    };
    auto p = linear_fourth_order(alpha, f, d(0, 0), d(0, 1), d(2, 0), d(2, 1));
    p.exact = [d](int, int k, double x) { return d(k, x); };
    return p;
}

}  // namespace

TEST_CASE("registered exact solutions satisfy their problems") {
    for (const auto& p : {bratu_1d(1.0), bratu_1d(-1.0), bratu_1d(0.0), bratu_1d(3.0), fourth_order_geng(),
                          five_point_bvp(), circular_plate(0.0), sinh_problem({1, 1, 1, 1, 1})}) {
        CAPTURE(p.name);
        CHECK(exact_solution_defect(p) <= 1e-10);
    }
}

TEST_CASE("five-point angle") {
    CHECK(kFivePointTheta == doctest::Approx(2 * kPi / 3));
    const auto p = five_point_bvp();
    CHECK(p.exact(0, 0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p.exact(0, 0, 1.0) == doctest::Approx(0.25 + std::sqrt(3.0) / 6.0 * std::sqrt(3.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("Bratu branch parameters") {
    CHECK(bratu_critical_lambda() == doctest::Approx(3.513830719).epsilon(1e-9));
    for (double l : {0.5, 1.0, 3.0}) {
        const auto t = bratu_theta(l);
        REQUIRE(t.has_value());
        CHECK(*t == doctest::Approx(std::sqrt(2 * l) * std::cosh(*t / 4)).epsilon(1e-13));
    }
    CHECK_FALSE(bratu_theta(3.6).has_value());
    CHECK_FALSE(bratu_theta(-1.0).has_value());
}

TEST_CASE("linear fourth-order problems") {
    const auto s = solve(sinh_problem({1, 1, 1, 1, 1}), 4);
    CHECK(s.report.converged);
    CHECK(*s.max_error <= 1e-11);

    // u = c: f = alpha0 c, zero second derivatives.
    const double c = 2.5;
    const auto k = solve(linear_fourth_order({3, 1, 1, 1, 1}, [c](double) { return 3 * c; }, c, c, 0, 0), 4);
    CHECK(max_abs(k.fields[0][4]) < 1e-12);
    for (double v : k.fields[0][0]) CHECK(v == doctest::Approx(c).epsilon(1e-12));

    CHECK_THROWS_AS(linear_fourth_order({1, 1, 1, 1, 0}, [](double) { return 0.0; }, 0, 0, 0, 0), ProblemError);

    // Pure fourth derivative: rows at x = 0 reduce to the identity row.
    const Matrix lit = literal_fourth_order_matrix({0, 0, 0, 0, 1}, 4);
    for (std::size_t col = 0; col < lit.cols(); ++col) CHECK(lit(0, col) == (col == 0 ? 1.0 : 0.0));
    const Matrix elim = eliminated_fourth_order_matrix({1, 1, 1, 1, 1}, 4);
    const auto sys = assemble(sinh_problem({1, 1, 1, 1, 1}), 4);
    const Matrix jac = sys.jacobian(Vector(sys.size(), 0.0));
    CHECK(std::ranges::equal(elim.data(), jac.data()));
}

TEST_CASE("Bratu accuracy and convergence") {
    std::vector<double> errors;
    for (int j = 4; j <= 6; ++j) errors.push_back(*solve(bratu_1d(1.0), j).error_at_half);
    CHECK(rate_over(errors, 4) >= 6.5);

    const auto neg = solve(bratu_1d(-1.0), 6);
    CHECK(*neg.max_error <= 1e-12);

    const auto zero = solve(bratu_1d(0.0), 5);
    for (double v : zero.fields[0][0]) CHECK(v == 0.0);

    // u = A2 u2.
    const auto s = solve(bratu_1d(1.0), 4);
    const Vector u = multiply(s.system->operator_for(0, 0), s.unknowns);
    for (std::size_t l = 0; l < u.size(); ++l) CHECK(u[l] == s.fields[0][0][l]);
}

TEST_CASE("fourth-order nonlinear problem") {
    const auto s = solve(fourth_order_geng(), 4);
    CHECK(s.report.converged);
    CHECK(*s.max_error <= 1e-13);
    const auto& p = s.system->problem();
    for (double x : {0.1, 0.5})
        CHECK(std::abs(s.evaluate(0, 0, x) - p.exact(0, 0, x)) <= 1e-13);
    CHECK(std::abs(s.fields[0][0][8] - p.exact(0, 0, 0.5)) <= 5e-13);

    // The original equation holds pointwise with the recovered derivatives.
    for (std::size_t l = 1; l + 1 < s.grid.size(); ++l) {
        const double x = s.grid[l];
        const double u = s.fields[0][0][l];
        const double lhs = s.fields[0][4][l] - std::exp(x) * s.fields[0][2][l] + u + std::sin(u);
        const double f = p.exact(0, 4, x) - std::exp(x) * p.exact(0, 2, x) + p.exact(0, 0, x) + std::sin(p.exact(0, 0, x));
        CHECK(std::abs(lhs - f) <= 10.0 * std::max(*s.max_error, 1e-14) + 1e-12);
    }
}

TEST_CASE("five-point problem") {
    std::vector<double> errors;
    for (int j = 4; j <= 6; ++j) errors.push_back(*solve(five_point_bvp(), j).max_error);
    CHECK(errors[0] <= 5e-9);
    CHECK(rate_over(errors, 4) >= 6.5);
}

TEST_CASE("circular plate") {
    const auto flat = solve(circular_plate(0.0), 4);
    for (const auto& field : flat.fields)
        for (const auto& y : field) CHECK(max_abs(y) == 0.0);

    auto plate = [](double q, int j) {
        NewtonConfig cfg;
        cfg.continuation = ramp(q, 10.0);
        return solve_family([](double p) { return circular_plate(p); }, j, cfg);
    };
    const auto ref = plate(50.0, 8);
    REQUIRE(ref.report.converged);
    std::vector<double> err_phi, err_s;
    double w4 = 0.0, w6 = 0.0;
    for (int j = 4; j <= 6; ++j) {
        const auto s = plate(50.0, j);
        REQUIRE(s.report.converged);
        err_phi.push_back(std::abs(s.evaluate(0, 0, 0.5) - ref.evaluate(0, 0, 0.5)));
        err_s.push_back(std::abs(s.evaluate(1, 0, 0.5) - ref.evaluate(1, 0, 0.5)));
        if (j == 4) w4 = s.scalars.at("W_m");
        if (j == 6) w6 = s.scalars.at("W_m");

        // Smooth fields: second differences shrink like h^2.
        const double h = std::ldexp(1.0, -j);
        for (const auto& f : s.fields)
            for (std::size_t l = 1; l + 1 < s.grid.size(); ++l)
                CHECK(std::abs(f[0][l + 1] - 2 * f[0][l] + f[0][l - 1]) <= 100.0 * h * h);
    }
    CHECK(rate_over(err_phi, 4) >= 6.5);
    CHECK(rate_over(err_s, 4) >= 6.5);
    CHECK(std::abs(w4 - w6) <= 1e-6 * std::abs(w6));

    double previous = 0.0;
    for (double q : {10.0, 30.0, 50.0}) {
        const double w = plate(q, 5).scalars.at("W_m");
        CHECK(w > previous);
        previous = w;
    }
}

TEST_CASE("two-dimensional Bratu") {
    const auto s4 = solve_2d(bratu_2d(1.0), 4);
    CHECK(s4.report.converged);
    CHECK(*s4.max_error <= 1e-6);
    CHECK(s4.consistency <= 1e-12);
    const auto s5 = solve_2d(bratu_2d(1.0), 5);
    CHECK(rate_over({*s4.error_at_center, *s5.error_at_center}, 4) >= 7.0);

    // lambda = 0 leaves the linear Poisson problem with the same exact solution.
    const auto p = solve_2d(bratu_2d(0.0), 4);
    CHECK(p.report.converged);
    CHECK(*p.max_error <= 1e-6);

    CHECK_THROWS_AS(solve_2d(bratu_2d(1.0), 4, NewtonConfig{.continuation = {1.0}}), ProblemError);
}

TEST_CASE("convergence rate estimation") {
    const std::vector<double> e{1e-2, 1e-4, 1e-6};
    const std::vector<int> j{3, 4, 5};
    CHECK(estimate_convergence_rate(e, j).rate == doctest::Approx(6.643856).epsilon(1e-6));
    const std::vector<double> flat{1e-3, 1e-3, 1e-3};
    CHECK(estimate_convergence_rate(flat, j).rate == doctest::Approx(0.0));

    const std::vector<double> floored{1e-2, 1e-4, 0.0};
    const auto r = estimate_convergence_rate(floored, j);
    CHECK(r.excluded_levels == std::vector<int>{5});
    CHECK(r.rate == doctest::Approx(6.643856).epsilon(1e-6));

    const std::vector<double> one{1e-2, 0.0, 0.0};
    CHECK_THROWS_AS(estimate_convergence_rate(one, j), ProblemError);
    const std::vector<int> bad{3, 3, 5};
    CHECK_THROWS_AS(estimate_convergence_rate(e, bad), ProblemError);
}

TEST_CASE("parameter ramps") {
    CHECK(ramp(50.0, 10.0) == std::vector<double>{10, 20, 30, 40, 50});
    CHECK(ramp(3.5, 0.5).back() == 3.5);
    CHECK(ramp(3.5, 0.5).size() == 7);
    CHECK(ramp(-2.0, 1.0) == std::vector<double>{-1, -2});
    CHECK_THROWS_AS(ramp(1.0, 0.0), ProblemError);
    CHECK_THROWS_AS(solve(bratu_1d(1.0), 4, NewtonConfig{.continuation = {1.0}}), ProblemError);
}
