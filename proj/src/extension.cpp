#include "wicm/extension.hpp"

#include <cmath>
#include <string>

namespace wicm {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Matrix solve_side(const Matrix& s, const Matrix& r, const char* side) {
    const std::size_t n = s.rows();
    Matrix system = Matrix::identity(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) system(a, b) -= s(a, b);
    Matrix out(n, r.cols());
    try {
        LuFactorization lu(system);
        Vector column(n);
        for (std::size_t c = 0; c < r.cols(); ++c) {
            for (std::size_t a = 0; a < n; ++a) column[a] = r(a, c);
            const Vector x = lu.solve(column);
            for (std::size_t a = 0; a < n; ++a) out(a, c) = x[a];
        }
    } catch (const SingularMatrixError& e) {
        throw ExtensionError(std::string("extension system (I - S) is singular on the ") + side +
                             " side: " + e.what());
    }
    return out;
}

// Λ_{i,l,s} scaled so that Φ^∫i_{j,s-M1}(l/2^j) = Λ / 2^j.
double lambda_value(const ScalingTables& t, int tuple, int level, std::int64_t s, std::int64_t l) {
    const int m1 = t.m1();
    double value = t.integral_at(tuple, l - s + m1);
    double power = 1.0;  // l^{tuple-m} / (tuple-m)!, built from m = tuple downwards
    for (int m = tuple; m >= 1; --m) {
        value -= power * t.integral_at(m, m1 - s);
        power *= static_cast<double>(l) / static_cast<double>(tuple - m + 1);
    }
    return std::ldexp(value, -(tuple - 1) * level);
}

// Same reduction at a real node coordinate l = 2^j x.
double lambda_value_real(const ScalingTables& t, const DyadicIntegrals& fine, int tuple, int level,
                         std::int64_t s, double l) {
    const int m1 = t.m1();
    double value = fine.value(tuple, l - static_cast<double>(s) + m1);
    double power = 1.0;
    for (int m = tuple; m >= 1; --m) {
        value -= power * t.integral_at(m, m1 - s);
        power *= l / static_cast<double>(tuple - m + 1);
    }
    return std::ldexp(value, -(tuple - 1) * level);
}

}  // namespace

ExtensionSystem build_extension_system(const ScalingTables& tables) {
    ExtensionSystem sys;
    sys.n = tables.n();
    sys.m1 = tables.m1();
    sys.alpha1 = sys.m1 - 1;
    sys.alpha2 = 3 * sys.n - 2 - sys.m1;
    if (sys.alpha1 < 0 || sys.alpha2 < 0) throw ExtensionError("M1 outside the filter support");
    const auto n = static_cast<std::size_t>(sys.n);
    const int m1 = sys.m1;

    Matrix r0(n, static_cast<std::size_t>(sys.alpha1) + 1);
    Matrix r1(n, static_cast<std::size_t>(sys.alpha2) + 1);
    Matrix s0(n, n);
    Matrix s1(n, n);
    for (int i = 0; i < sys.n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        for (int k = 0; k <= sys.alpha1; ++k) r0(ui, static_cast<std::size_t>(k)) = tables.derivative_at(i, m1 - k);
        for (int k = 0; k <= sys.alpha2; ++k) r1(ui, static_cast<std::size_t>(k)) = tables.derivative_at(i, k + m1);
        for (int l = 0; l < sys.n; ++l) {
            const auto ul = static_cast<std::size_t>(l);
            // Left exterior nodes t = -alpha2..-1, right exterior t = 1..alpha1.
            for (int t = -sys.alpha2; t <= -1; ++t)
                s0(ui, ul) += std::pow(double(t), l) / factorial(l) * tables.derivative_at(i, m1 - t);
            for (int t = 1; t <= sys.alpha1; ++t)
                s1(ui, ul) += std::pow(double(t), l) / factorial(l) * tables.derivative_at(i, m1 - t);
        }
    }
    sys.zeta0 = solve_side(s0, r0, "left");
    sys.zeta1 = solve_side(s1, r1, "right");
    return sys;
}

double extension_polynomial_left(const ExtensionSystem& sys, int k, int m) {
    if (k < 0 || k > sys.alpha1 || m < -sys.alpha2 || m > 0)
        throw ExtensionError("extension_polynomial_left: index out of range");
    double acc = 0.0;
    for (int i = 0; i < sys.n; ++i)
        acc += std::pow(double(m), i) * sys.zeta0(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) / factorial(i);
    return acc;
}

double extension_polynomial_right(const ExtensionSystem& sys, int k, int m) {
    if (k < 0 || k > sys.alpha2 || m < 0 || m > sys.alpha1)
        throw ExtensionError("extension_polynomial_right: index out of range");
    double acc = 0.0;
    for (int i = 0; i < sys.n; ++i)
        acc += std::pow(double(m), i) * sys.zeta1(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) / factorial(i);
    return acc;
}

int minimal_level(const ScalingTables& tables) {
    int j = 0;
    while ((1 << j) - 3 * tables.n() + 2 + tables.m1() <= 0) ++j;
    return j;
}

IntegralOperator build_integral_operator(const ScalingTables& tables, const ExtensionSystem& sys,
                                         int level, int tuple, kernels::Execution exec) {
    const int jmin = minimal_level(tables);
    if (level < jmin || level > 20) {
        throw ExtensionError("resolution level " + std::to_string(level) +
                             " not admissible; minimal level is " + std::to_string(jmin));
    }
    if (tuple < 0 || tuple > tables.max_tuple())
        throw ExtensionError("integral tuple " + std::to_string(tuple) + " outside tabulated range");

    const std::int64_t last = std::int64_t{1} << level;
    const auto nodes = static_cast<std::size_t>(last) + 1;
    IntegralOperator op{level, tuple, Matrix(nodes, nodes)};
    if (tuple == 0) {
        op.entries = Matrix::identity(nodes);
        return op;
    }

    std::vector<std::vector<double>> left(static_cast<std::size_t>(sys.alpha1) + 1);
    for (int k = 0; k <= sys.alpha1; ++k)
        for (int m = -sys.alpha2; m <= -1; ++m) left[static_cast<std::size_t>(k)].push_back(extension_polynomial_left(sys, k, m));
    std::vector<std::vector<double>> right(static_cast<std::size_t>(sys.alpha2) + 1);
    for (int k = 0; k <= sys.alpha2; ++k)
        for (int m = 1; m <= sys.alpha1; ++m) right[static_cast<std::size_t>(k)].push_back(extension_polynomial_right(sys, k, m));

    const double inv_scale = std::ldexp(1.0, -level);
    auto entry = [&](std::size_t row, std::size_t col) {
        const auto l = static_cast<std::int64_t>(row);
        const auto k = static_cast<std::int64_t>(col);
        double v = lambda_value(tables, tuple, level, k, l);
        if (k <= sys.alpha1) {
            const auto& tl = left[static_cast<std::size_t>(k)];
            for (int m = -sys.alpha2; m <= -1; ++m)
                v += tl[static_cast<std::size_t>(m + sys.alpha2)] * lambda_value(tables, tuple, level, m, l);
        }
        if (last - k <= sys.alpha2) {
            const auto& tr = right[static_cast<std::size_t>(last - k)];
            for (int m = 1; m <= sys.alpha1; ++m)
                v += tr[static_cast<std::size_t>(m - 1)] * lambda_value(tables, tuple, level, last + m, l);
        }
        return v * inv_scale;
    };
    kernels::fill(op.entries, entry, exec);
    return op;
}

Vector approximate_multiple_integral(const IntegralOperator& op, std::span<const double> samples) {
    if (samples.size() != op.entries.cols())
        throw DimensionError("approximate_multiple_integral: expected " +
                             std::to_string(op.entries.cols()) + " samples, got " +
                             std::to_string(samples.size()));
    return multiply(op.entries, samples);
}

Vector integral_basis_row(const WaveletBasis& basis, int level, int tuple, double x) {
    const auto& tables = basis.tables();
    const auto& sys = basis.extension();
    if (tuple < 1 || tuple > tables.max_tuple()) throw ExtensionError("integral_basis_row: tuple out of range");
    if (!(x >= 0.0 && x <= 1.0)) throw ExtensionError("integral_basis_row: x outside [0, 1]");
    if (level < minimal_level(tables)) throw ExtensionError("integral_basis_row: level not admissible");
    const auto& fine = basis.fine_integrals();
    const std::int64_t last = std::int64_t{1} << level;
    const double l = std::ldexp(x, level);
    std::vector<double> lam(static_cast<std::size_t>(last + sys.alpha1 + sys.alpha2) + 1);
    for (std::int64_t s = -sys.alpha2; s <= last + sys.alpha1; ++s)
        lam[static_cast<std::size_t>(s + sys.alpha2)] = lambda_value_real(tables, fine, tuple, level, s, l);
    auto at = [&](std::int64_t s) { return lam[static_cast<std::size_t>(s + sys.alpha2)]; };

    Vector row(static_cast<std::size_t>(last) + 1);
    for (std::int64_t k = 0; k <= last; ++k) {
        double v = at(k);
        if (k <= sys.alpha1)
            for (int m = -sys.alpha2; m <= -1; ++m) v += extension_polynomial_left(sys, static_cast<int>(k), m) * at(m);
        if (last - k <= sys.alpha2)
            for (int m = 1; m <= sys.alpha1; ++m)
                v += extension_polynomial_right(sys, static_cast<int>(last - k), m) * at(last + m);
        row[static_cast<std::size_t>(k)] = std::ldexp(v, -level);
    }
    return row;
}

WaveletBasis::WaveletBasis(const CoifletFilter& filter, int max_tuple)
    : filter_(filter), tables_(filter, max_tuple), extension_(build_extension_system(tables_)) {}

const DyadicIntegrals& WaveletBasis::fine_integrals() const {
    std::call_once(fine_once_, [this] { fine_ = std::make_unique<DyadicIntegrals>(filter_, tables_, 14); });
    return *fine_;
}

const IntegralOperator& WaveletBasis::integral(int level, int tuple) const {
    std::lock_guard lock(mutex_);
    auto& slot = cache_[{level, tuple}];
    if (!slot)
        slot = std::make_unique<IntegralOperator>(build_integral_operator(tables_, extension_, level, tuple));
    return *slot;
}

const WaveletBasis& default_basis() {
    static const WaveletBasis basis(load_filter(), 4);
    return basis;
}

}  // namespace wicm
