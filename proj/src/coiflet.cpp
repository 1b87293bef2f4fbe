#include "wicm/coiflet.hpp"

#include "wicm/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <string>

namespace wicm {

namespace {

// Relative singular-value thresholds for "eigenvalue present" and "eigenspace
// one-dimensional" in the transition-matrix eigenproblems.
constexpr double kEigenPresentTol = 1e-9;
constexpr double kEigenGapTol = 1e-9;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double coefficient(const CoifletFilter& f, std::int64_t k) {
    if (k < 0 || k > f.support_end()) return 0.0;
    return f.p[static_cast<std::size_t>(k)];
}

// T_{m,k} = p_{2m-k} restricted to the interior integers 1..3N-2.
Eigen::MatrixXd transition_matrix(const CoifletFilter& f) {
    const int inner = f.support_end() - 1;
    Eigen::MatrixXd t(inner, inner);
    for (int m = 1; m <= inner; ++m)
        for (int k = 1; k <= inner; ++k) t(m - 1, k - 1) = coefficient(f, 2 * m - k);
    return t;
}

std::string order_label(int order) {
    return order == 0 ? std::string("phi") : "derivative order " + std::to_string(order);
}

// Vector v on the interior integers minimizing ‖(T - 2^{-order} I) v‖ subject to
// Σ_l (M1 - l)^m v_l = order! δ_{m,order}, m = 0..N-1.
std::vector<double> reproducing_eigenvector(const CoifletFilter& f, int order) {
    validate(f);
    const int inner = f.support_end() - 1;
    const double mu = std::ldexp(1.0, -order);
    const Eigen::MatrixXd shifted =
        transition_matrix(f) - mu * Eigen::MatrixXd::Identity(inner, inner);

    Eigen::JacobiSVD<Eigen::MatrixXd> spectrum(shifted);
    const auto& s = spectrum.singularValues();
    const double scale = s(0);
    if (s(inner - 1) > kEigenPresentTol * scale) {
        std::ostringstream os;
        os << "transition matrix has no eigenvalue 2^-" << order << " (" << order_label(order)
           << "): smallest singular value " << s(inner - 1);
        throw CoifletError(os.str());
    }
    if (s(inner - 2) <= kEigenGapTol * scale) {
        throw CoifletError("eigenspace for " + order_label(order) +
                           " is not one-dimensional; filter smoothness insufficient");
    }

    const int moments = f.n;
    Eigen::MatrixXd c(moments, inner);
    Eigen::VectorXd d = Eigen::VectorXd::Zero(moments);
    for (int m = 0; m < moments; ++m)
        for (int l = 1; l <= inner; ++l) c(m, l - 1) = std::pow(double(f.m1 - l), m);
    if (order < moments) d(order) = factorial(order);

    Eigen::JacobiSVD<Eigen::MatrixXd> csvd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd particular = csvd.solve(d);
    const Eigen::MatrixXd null_basis = csvd.matrixV().rightCols(inner - moments);
    const Eigen::MatrixXd reduced = shifted * null_basis;
    Eigen::JacobiSVD<Eigen::MatrixXd> rsvd(reduced, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd w = rsvd.solve(-shifted * particular);
    const Eigen::VectorXd v = particular + null_basis * w;

    std::vector<double> full(static_cast<std::size_t>(f.support_end()) + 1, 0.0);
    for (int l = 1; l <= inner; ++l) full[static_cast<std::size_t>(l)] = v(l - 1);
    return full;
}

struct IntegralTables {
    std::vector<std::vector<double>> values;  // [tuple][k]
};

// Tabulates φ^∫n(k) for n = 1..max_tuple using the dilation identity for
// integrals, the tail continuation, and the linear system on interior points.
IntegralTables integral_tables(const CoifletFilter& f, int max_tuple) {
    validate(f);
    if (max_tuple < 1) throw CoifletError("integral tuple must be >= 1");
    const int last = f.support_end();
    const int inner = last - 1;
    std::vector<double> anchor(static_cast<std::size_t>(max_tuple) + 1, 0.0);
    IntegralTables out;
    out.values.assign(static_cast<std::size_t>(max_tuple) + 1, {});

    auto tail_value = [&](int tuple, double x) {
        double acc = 0.0;
        double power = 1.0;
        for (int r = 0; r < tuple; ++r) {
            acc += power / factorial(r) * anchor[static_cast<std::size_t>(tuple - r)];
            power *= x - last;
        }
        return acc;
    };

    for (int n = 1; n <= max_tuple; ++n) {
        if (n == 1) {
            anchor[1] = 1.0;
        } else {
            double sum = 0.0;
            for (int j = 1; j <= n - 1; ++j)
                for (int k = 0; k <= last; ++k)
                    sum += coefficient(f, k) * std::pow(double(last - k), j) / factorial(j) *
                           anchor[static_cast<std::size_t>(n - j)];
            anchor[static_cast<std::size_t>(n)] = sum / (std::ldexp(1.0, n) - 2.0);
        }

        const double scale = std::ldexp(1.0, -n);
        Matrix system(static_cast<std::size_t>(inner), static_cast<std::size_t>(inner));
        Vector rhs(static_cast<std::size_t>(inner), 0.0);
        for (int i = 1; i <= inner; ++i) {
            const auto row = static_cast<std::size_t>(i - 1);
            for (int m = 1; m <= inner; ++m)
                system(row, static_cast<std::size_t>(m - 1)) =
                    (i == m ? 1.0 : 0.0) - scale * coefficient(f, 2 * i - m);
            for (int k = 0; k <= last; ++k)
                if (2 * i - k >= last) rhs[row] += scale * coefficient(f, k) * tail_value(n, 2 * i - k);
        }
        Vector interior;
        try {
            interior = lu_solve(system, rhs);
        } catch (const SingularMatrixError& e) {
            throw CoifletError("integral table system for tuple " + std::to_string(n) +
                               " is singular: " + e.what());
        }
        auto& row = out.values[static_cast<std::size_t>(n)];
        row.assign(static_cast<std::size_t>(last) + 1, 0.0);
        for (int k = 1; k <= inner; ++k) row[static_cast<std::size_t>(k)] = interior[static_cast<std::size_t>(k - 1)];
        row[static_cast<std::size_t>(last)] = anchor[static_cast<std::size_t>(n)];
    }
    return out;
}

}  // namespace

CoifletFilter CoifletFilter::from_coefficients(int n, std::vector<double> p) {
    CoifletFilter f;
    f.n = n;
    f.p = std::move(p);
    double first = 0.0;
    for (std::size_t k = 0; k < f.p.size(); ++k) first += static_cast<double>(k) * f.p[k];
    f.m1 = static_cast<int>(std::lround(first / 2.0));
    validate(f);
    return f;
}

void validate(const CoifletFilter& f) {
    if (f.n <= 0 || f.n % 2 != 0) throw CoifletError("N must be a positive even integer");
    if (f.p.size() != static_cast<std::size_t>(3 * f.n))
        throw CoifletError("filter must have 3N coefficients");
    double sum = 0.0;
    double first = 0.0;
    for (std::size_t k = 0; k < f.p.size(); ++k) {
        sum += f.p[k];
        first += static_cast<double>(k) * f.p[k];
    }
    // The published 14-digit coefficients sum to 2 + 1.8e-12.
    if (std::abs(sum - 2.0) > 1e-10)
        throw CoifletError("filter coefficients must sum to 2");
    if (std::abs(first / 2.0 - f.m1) > 1e-10)
        throw CoifletError("first moment Σ k p_k / 2 does not equal M1");
}

CoifletFilter load_filter() {
    CoifletFilter f;
    f.n = 6;
    f.m1 = 7;
    f.p = {
        -2.3926386572801E-03, -4.9326018541804E-03, 2.7140399711400E-02, 3.0647555946200E-02,
        -1.3931023707080E-01, -8.0606530717800E-02, 6.4599454329399E-01, 1.1162662132580E+00,
        5.3818905570800E-01,  -9.9615433862400E-02, -7.9923139434800E-02, 5.1491462932400E-02,
        1.2388695657060E-02,  -1.5831780392559E-02, -2.7171786005400E-03, 2.8869486640200E-03,
        6.3049939470800E-04,  -3.0583397359600E-04,
    };
    return f;
}

std::vector<double> scaling_values_at_integers(const CoifletFilter& filter) {
    return reproducing_eigenvector(filter, 0);
}

std::vector<double> derivative_values_at_integers(const CoifletFilter& filter, int order) {
    if (order < 1 || order > filter.n - 1) {
        throw CoifletError("derivative order " + std::to_string(order) + " outside [1, " +
                           std::to_string(filter.n - 1) + "]");
    }
    return reproducing_eigenvector(filter, order);
}

std::vector<double> integral_values_at_integers(const CoifletFilter& filter, int tuple) {
    return integral_tables(filter, tuple).values[static_cast<std::size_t>(tuple)];
}

ScalingTables::ScalingTables(const CoifletFilter& filter, int max_tuple)
    : n_(filter.n), m1_(filter.m1), support_end_(filter.support_end()) {
    deriv_.reserve(static_cast<std::size_t>(n_));
    deriv_.push_back(scaling_values_at_integers(filter));
    for (int i = 1; i < n_; ++i) deriv_.push_back(derivative_values_at_integers(filter, i));
    integral_ = integral_tables(filter, max_tuple).values;
}

std::span<const double> ScalingTables::derivative(int order) const {
    if (order < 0 || order >= n_) throw CoifletError("derivative order out of range");
    return deriv_[static_cast<std::size_t>(order)];
}

std::span<const double> ScalingTables::integral(int tuple) const {
    if (tuple < 1 || tuple > max_tuple()) throw CoifletError("integral tuple out of range");
    return integral_[static_cast<std::size_t>(tuple)];
}

double ScalingTables::derivative_at(int order, std::int64_t k) const {
    if (k < 0 || k > support_end_) return 0.0;
    return derivative(order)[static_cast<std::size_t>(k)];
}

double ScalingTables::integral_tail(int tuple, double x) const {
    double acc = 0.0;
    double power = 1.0;
    for (int r = 0; r < tuple; ++r) {
        acc += power / factorial(r) * integral_[static_cast<std::size_t>(tuple - r)]
                                               [static_cast<std::size_t>(support_end_)];
        power *= x - support_end_;
    }
    return acc;
}

double ScalingTables::integral_at(int tuple, std::int64_t k) const {
    if (tuple < 1 || tuple > max_tuple()) throw CoifletError("integral tuple out of range");
    if (k <= 0) return 0.0;
    if (k >= support_end_) return integral_tail(tuple, static_cast<double>(k));
    return integral_[static_cast<std::size_t>(tuple)][static_cast<std::size_t>(k)];
}

ScalingTables build_scaling_tables(const CoifletFilter& filter, int max_tuple) {
    return ScalingTables(filter, max_tuple);
}

std::vector<double> cascade_values_at_integers(const CoifletFilter& filter, int iterations) {
    validate(filter);
    const int last = filter.support_end();
    std::vector<double> v(static_cast<std::size_t>(last) + 1, 0.0);
    v[static_cast<std::size_t>(filter.m1)] = 1.0;
    std::vector<double> next(v.size());
    for (int it = 0; it < iterations; ++it) {
        for (int m = 0; m <= last; ++m) {
            double acc = 0.0;
            for (int k = 0; k <= last; ++k) acc += coefficient(filter, 2 * m - k) * v[static_cast<std::size_t>(k)];
            next[static_cast<std::size_t>(m)] = acc;
        }
        v.swap(next);
    }
    return v;
}

std::vector<double> refine_to_dyadic(const CoifletFilter& filter,
                                     std::span<const double> integer_values, int level) {
    const int last = filter.support_end();
    std::vector<double> current(integer_values.begin(), integer_values.end());
    for (int r = 1; r <= level; ++r) {
        const std::int64_t coarse_step = std::int64_t{1} << (r - 1);
        const std::int64_t points = static_cast<std::int64_t>(last) * (coarse_step * 2) + 1;
        std::vector<double> fine(static_cast<std::size_t>(points), 0.0);
        for (std::int64_t q = 0; q < points; ++q) {
            double acc = 0.0;
            for (int k = 0; k <= last; ++k) {
                const std::int64_t idx = q - k * coarse_step;
                if (idx < 0 || idx >= static_cast<std::int64_t>(current.size())) continue;
                acc += filter.p[static_cast<std::size_t>(k)] * current[static_cast<std::size_t>(idx)];
            }
            fine[static_cast<std::size_t>(q)] = acc;
        }
        current.swap(fine);
    }
    return current;
}

}  // namespace wicm

namespace wicm {

DyadicIntegrals::DyadicIntegrals(const CoifletFilter& filter, const ScalingTables& tables, int level)
    : tables_(&tables), level_(level) {
    if (level < 0 || level > 20) throw CoifletError("dyadic refinement level out of range");
    const int last = filter.support_end();
    values_.resize(static_cast<std::size_t>(tables.max_tuple()) + 1);
    for (int n = 1; n <= tables.max_tuple(); ++n) {
        const auto row = tables.integral(n);
        std::vector<double> current(row.begin(), row.end());
        for (int r = 1; r <= level; ++r) {
            const std::int64_t coarse = std::int64_t{1} << (r - 1);
            const std::int64_t points = static_cast<std::int64_t>(last) * coarse * 2 + 1;
            // Coarse grid value at index q (spacing 2^-(r-1)), with the
            // continuation rules outside [0, 3N-1].
            auto coarse_value = [&](std::int64_t q) {
                if (q <= 0) return 0.0;
                if (q >= static_cast<std::int64_t>(last) * coarse)
                    return tables.integral_tail(n, std::ldexp(static_cast<double>(q), -(r - 1)));
                return current[static_cast<std::size_t>(q)];
            };
            std::vector<double> fine(static_cast<std::size_t>(points));
            const double scale = std::ldexp(1.0, -n);
            for (std::int64_t q = 0; q < points; ++q) {
                if (q % 2 == 0) {
                    fine[static_cast<std::size_t>(q)] = current[static_cast<std::size_t>(q / 2)];
                    continue;
                }
                double acc = 0.0;
                for (int k = 0; k <= last; ++k)
                    acc += filter.p[static_cast<std::size_t>(k)] * coarse_value(q - k * coarse);
                fine[static_cast<std::size_t>(q)] = scale * acc;
            }
            current.swap(fine);
        }
        values_[static_cast<std::size_t>(n)] = std::move(current);
    }
}

double DyadicIntegrals::at_grid(int tuple, std::int64_t q) const {
    if (tuple < 1 || tuple >= static_cast<int>(values_.size())) throw CoifletError("integral tuple out of range");
    const auto& v = values_[static_cast<std::size_t>(tuple)];
    if (q <= 0) return 0.0;
    if (q >= static_cast<std::int64_t>(v.size()) - 1)
        return tables_->integral_tail(tuple, std::ldexp(static_cast<double>(q), -level_));
    return v[static_cast<std::size_t>(q)];
}

double DyadicIntegrals::value(int tuple, double x) const {
    const double scaled = std::ldexp(x, level_);
    const double base = std::floor(scaled);
    const double t = scaled - base;
    const auto q0 = static_cast<std::int64_t>(base);
    if (t == 0.0) return at_grid(tuple, q0);
    if (x >= tables_->support_end()) return tables_->integral_tail(tuple, x);
    constexpr int kPoints = 8;
    double acc = 0.0;
    for (int a = 0; a < kPoints; ++a) {
        const double na = a - (kPoints / 2 - 1);
        double w = 1.0;
        for (int b = 0; b < kPoints; ++b) {
            if (b == a) continue;
            const double nb = b - (kPoints / 2 - 1);
            w *= (t - nb) / (na - nb);
        }
        acc += w * at_grid(tuple, q0 + static_cast<std::int64_t>(na));
    }
    return acc;
}

}  // namespace wicm
