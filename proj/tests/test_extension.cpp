#include "wicm/extension.hpp"
#include "wicm/problems.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

using namespace wicm;

namespace {

const WaveletBasis& basis() { return default_basis(); }

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

Vector samples(int level, auto&& f) {
    Vector s((std::size_t{1} << level) + 1);
    for (std::size_t l = 0; l < s.size(); ++l) s[l] = f(std::ldexp(static_cast<double>(l), -level));
    return s;
}

}  // namespace

TEST_CASE("extension system shapes and identities") {
    const auto& sys = basis().extension();
    CHECK(sys.alpha1 == 6);
    CHECK(sys.alpha2 == 9);
    CHECK(sys.zeta0.rows() == 6);
    CHECK(sys.zeta0.cols() == 7);
    CHECK(sys.zeta1.rows() == 6);
    CHECK(sys.zeta1.cols() == 10);

    double s0 = 0.0, s1 = 0.0;
    for (std::size_t k = 0; k < sys.zeta0.cols(); ++k) {
        s0 += sys.zeta0(0, k);
        s1 += static_cast<double>(k) * sys.zeta0(1, k);
    }
    CHECK(std::abs(s0 - 1.0) < 1e-9);
    CHECK(std::abs(s1 - 1.0) < 1e-8);
    for (int k = 0; k <= sys.alpha1; ++k) CHECK(extension_polynomial_left(sys, k, 0) == sys.zeta0(0, static_cast<std::size_t>(k)));
    CHECK_THROWS_AS(extension_polynomial_left(sys, 7, -1), ExtensionError);
    CHECK_THROWS_AS(extension_polynomial_left(sys, 0, -10), ExtensionError);
    CHECK_THROWS_AS(extension_polynomial_right(sys, 0, 7), ExtensionError);
}

// Far exterior weights grow to ~6e4 in absolute sum, so the 14-digit filter
// shows up scaled by that amplification.
TEST_CASE("exterior samples of polynomials are reproduced") {
    const auto& sys = basis().extension();
    for (int j : {4, 6}) {
        const double h = std::ldexp(1.0, -j);
        for (int d = 0; d <= 5; ++d) {
            auto f = [d](double x) { return std::pow(x, d); };
            for (int m = -sys.alpha2; m <= -1; ++m) {
                double left = 0.0, amp = 0.0;
                for (int k = 0; k <= sys.alpha1; ++k) {
                    left += extension_polynomial_left(sys, k, m) * f(k * h);
                    amp += std::abs(extension_polynomial_left(sys, k, m));
                }
                CHECK(std::abs(left - f(m * h)) < 1e-12 * amp);
            }
            for (int m = 1; m <= sys.alpha1; ++m) {
                double right = 0.0, amp = 0.0;
                for (int k = 0; k <= sys.alpha2; ++k) {
                    right += extension_polynomial_right(sys, k, m) * f(1.0 - k * h);
                    amp += std::abs(extension_polynomial_right(sys, k, m));
                }
                CHECK(std::abs(right - f(1.0 + m * h)) < 1e-12 * amp * std::max(1.0, f(1.0 + m * h)));
            }
        }
        double sq = 0.0;
        for (int k = 0; k <= sys.alpha1; ++k) sq += extension_polynomial_left(sys, k, -1) * (k * h) * (k * h);
        CHECK(sq == doctest::Approx(h * h).epsilon(1e-9));
    }
}

TEST_CASE("minimal level and admissibility") {
    CHECK(minimal_level(basis().tables()) == 4);
    CHECK_THROWS_AS(basis().integral(3, 1), ExtensionError);
    CHECK_THROWS_AS(basis().integral(4, 5), ExtensionError);
    const auto& id = basis().integral(4, 0);
    CHECK(id.entries(3, 3) == 1.0);
    CHECK(id.entries(3, 4) == 0.0);
    CHECK(&basis().integral(5, 2) == &basis().integral(5, 2));
}

TEST_CASE("integral operators are exact on low-degree polynomials") {
    for (int j : {4, 5, 6}) {
        for (int n = 1; n <= 4; ++n) {
            const auto& op = basis().integral(j, n);
            for (double v : op.row_at(0)) CHECK(v == 0.0);
            for (int d = 0; d <= 5; ++d) {
                const Vector got = approximate_multiple_integral(op, samples(j, [d](double x) { return std::pow(x, d); }));
                const double c = factorial(d) / factorial(d + n);
                double err = 0.0;
                for (std::size_t l = 0; l < got.size(); ++l)
                    err = std::max(err, std::abs(got[l] - c * std::pow(std::ldexp(double(l), -j), d + n)));
                CHECK(err < 1e-10);
            }
        }
    }
    const auto& op1 = basis().integral(4, 1);
    double row_sum = 0.0;
    for (double v : op1.boundary_row()) row_sum += v;
    CHECK(std::abs(row_sum - 1.0) < 1e-10);

    const Vector quad = approximate_multiple_integral(basis().integral(4, 2), samples(4, [](double x) { return std::pow(x, 4); }));
    CHECK(std::abs(quad.back() - 1.0 / 30.0) < 1e-10);
    const Vector cubic = approximate_multiple_integral(basis().integral(4, 3), samples(4, [](double x) { return std::pow(x, 5); }));
    CHECK(std::abs(cubic.back() - 1.0 / 336.0) < 1e-9);

    const Vector zero = approximate_multiple_integral(op1, Vector(17, 0.0));
    CHECK(std::all_of(zero.begin(), zero.end(), [](double v) { return v == 0.0; }));
    CHECK_THROWS_AS(approximate_multiple_integral(op1, Vector(16, 1.0)), DimensionError);
}

TEST_CASE("repeated single integration agrees with the double integral") {
    const int j = 5;
    const auto s = samples(j, [](double x) { return std::exp(x) * std::cos(3 * x); });
    const Vector once = approximate_multiple_integral(basis().integral(j, 1), s);
    const Vector twice = approximate_multiple_integral(basis().integral(j, 1), once);
    const Vector direct = approximate_multiple_integral(basis().integral(j, 2), s);
    double diff = 0.0;
    for (std::size_t l = 0; l < s.size(); ++l) diff = std::max(diff, std::abs(twice[l] - direct[l]));
    CHECK(diff < 1e-9);
}

TEST_CASE("single integral of sin(pi x) converges at high order") {
    std::vector<double> errors;
    for (int j = 4; j <= 7; ++j) {
        const Vector v = approximate_multiple_integral(basis().integral(j, 1), samples(j, [](double x) { return std::sin(std::numbers::pi * x); }));
        errors.push_back(std::abs(v.back() - 2.0 / std::numbers::pi));
    }
    const std::vector<int> levels{4, 5, 6, 7};
    CHECK(estimate_convergence_rate(errors, levels).rate >= 6.0);
}

TEST_CASE("off-node basis rows") {
    const int j = 4;
    const auto& op = basis().integral(j, 2);
    for (std::size_t l : {0u, 5u, 16u}) {
        const Vector row = integral_basis_row(basis(), j, 2, std::ldexp(double(l), -j));
        for (std::size_t k = 0; k < row.size(); ++k) CHECK(std::abs(row[k] - op.entries(l, k)) < 1e-12);
    }
    for (double x : {0.1, 0.37, 0.9}) {
        for (int n = 1; n <= 4; ++n) {
            const Vector row = integral_basis_row(basis(), j, n, x);
            const Vector s = samples(j, [](double t) { return t * t * t; });
            double v = 0.0;
            for (std::size_t k = 0; k < row.size(); ++k) v += row[k] * s[k];
            CHECK(std::abs(v - 6.0 / factorial(3 + n) * std::pow(x, 3 + n)) < 1e-9);
        }
    }
    CHECK_THROWS_AS(integral_basis_row(basis(), j, 1, 1.5), ExtensionError);
}

TEST_CASE("parallel and serial operator assembly agree bitwise") {
    const auto& b = basis();
    for (int n = 1; n <= 4; ++n) {
        const auto par = build_integral_operator(b.tables(), b.extension(), 6, n, kernels::Execution::parallel);
        const auto ser = build_integral_operator(b.tables(), b.extension(), 6, n, kernels::Execution::serial);
        CHECK(std::ranges::equal(par.entries.data(), ser.entries.data()));
    }
}
