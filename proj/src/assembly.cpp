#include "wicm/assembly.hpp"

#include "wicm/kernels.hpp"

#include <cmath>
#include <sstream>

namespace wicm {

namespace {

double taylor(double x, int power) {
    double v = 1.0;
    for (int k = 1; k <= power; ++k) v *= x / k;
    return v;
}

const Matrix& tuple_operator(const WaveletBasis& basis, int level, int tuple) {
    return basis.integral(level, tuple).entries;
}

}  // namespace

std::size_t node_index(double x, int level) {
    const double scaled = std::ldexp(x, level);
    const double rounded = std::round(scaled);
    const double last = std::ldexp(1.0, level);
    if (std::abs(scaled - rounded) > 1e-9 || rounded < 0.0 || rounded > last) {
        std::ostringstream os;
        os << "point " << x << " is not a collocation node at level " << level;
        throw AssemblyError(os.str());
    }
    return static_cast<std::size_t>(rounded);
}

Elimination reduce_to_integral_form(int order, int fields, std::span<const BoundaryCondition> conditions,
                                    const WaveletBasis& basis, int level) {
    if (order < 1 || fields < 1) throw AssemblyError("order and field count must be positive");
    const auto nconst = static_cast<std::size_t>(order * fields);
    if (conditions.size() != nconst) {
        throw AssemblyError("expected " + std::to_string(nconst) + " boundary conditions, got " +
                            std::to_string(conditions.size()));
    }
    const auto nodes = (std::size_t{1} << level) + 1;
    const std::size_t unknowns = nodes * static_cast<std::size_t>(fields);

    Matrix c(nconst, nconst);
    Matrix d(nconst, unknowns);
    Vector v(nconst);
    for (std::size_t q = 0; q < nconst; ++q) {
        v[q] = conditions[q].value;
        for (const auto& term : conditions[q].terms) {
            if (term.field < 0 || term.field >= fields)
                throw AssemblyError("boundary term refers to unknown field " + std::to_string(term.field));
            if (term.derivative < 0 || term.derivative > order)
                throw AssemblyError("boundary term derivative " + std::to_string(term.derivative) +
                                    " outside [0, " + std::to_string(order) + "]");
            const std::size_t node = node_index(term.x, level);
            const std::size_t block = static_cast<std::size_t>(term.field) * nodes;
            if (term.derivative == order) {
                d(q, block + node) += term.coeff;
            } else {
                const auto row = tuple_operator(basis, level, order - term.derivative).row(node);
                for (std::size_t k = 0; k < nodes; ++k) d(q, block + k) += term.coeff * row[k];
            }
            for (int r = term.derivative; r < order; ++r)
                c(q, static_cast<std::size_t>(term.field * order + r)) +=
                    term.coeff * taylor(term.x, r - term.derivative);
        }
    }

    const Vector s = singular_values(c);
    const double tol = 1e-12 * static_cast<double>(nconst) * (s.empty() ? 0.0 : s.front());
    std::size_t rank = 0;
    for (double sv : s)
        if (sv > tol) ++rank;
    if (rank < nconst) {
        throw AssemblyError("boundary conditions are not independent: rank " + std::to_string(rank) +
                            " of " + std::to_string(nconst) + " (defect " +
                            std::to_string(nconst - rank) + ")");
    }

    LuFactorization lu(c);
    Elimination out{Matrix(nconst, unknowns), lu.solve(v)};
    Vector column(nconst);
    for (std::size_t k = 0; k < unknowns; ++k) {
        for (std::size_t q = 0; q < nconst; ++q) column[q] = -d(q, k);
        const Vector g = lu.solve(column);
        for (std::size_t q = 0; q < nconst; ++q) out.gain(q, k) = g[q];
    }
    return out;
}

DiscretizedSystem::DiscretizedSystem(BvpProblem problem, const WaveletBasis& basis, int level)
    : problem_(std::move(problem)), basis_(&basis), level_(level), nodes_((std::size_t{1} << level) + 1) {
    const int n = problem_.order;
    const int nf = problem_.fields;
    if (n < 1 || n > basis.max_tuple())
        throw AssemblyError("problem order " + std::to_string(n) + " not supported by the basis");
    if (problem_.equations.size() != static_cast<std::size_t>(nf))
        throw AssemblyError("one pointwise equation per field is required");

    grid_.resize(nodes_);
    for (std::size_t l = 0; l < nodes_; ++l) grid_[l] = std::ldexp(static_cast<double>(l), -level);

    elimination_ = reduce_to_integral_form(n, nf, problem_.boundary, basis, level);

    const std::size_t unknowns = size();
    operators_.resize(problem_.state_size());
    offsets_.resize(problem_.state_size());
    for (int f = 0; f < nf; ++f) {
        for (int d = 0; d <= n; ++d) {
            Matrix a(nodes_, unknowns);
            Vector b(nodes_, 0.0);
            const std::size_t block = static_cast<std::size_t>(f) * nodes_;
            const Matrix& base = tuple_operator(basis, level, n - d);
            for (std::size_t l = 0; l < nodes_; ++l) {
                auto out = a.row(l);
                const auto src = base.row(l);
                for (std::size_t k = 0; k < nodes_; ++k) out[block + k] = src[k];
                for (int r = d; r < n; ++r) {
                    const double w = taylor(grid_[l], r - d);
                    const auto q = static_cast<std::size_t>(f * n + r);
                    const auto g = elimination_.gain.row(q);
                    for (std::size_t k = 0; k < unknowns; ++k) out[k] += w * g[k];
                    b[l] += w * elimination_.offset[q];
                }
            }
            operators_[slot(f, d)] = std::move(a);
            offsets_[slot(f, d)] = std::move(b);
        }
    }

    overrides_.resize(static_cast<std::size_t>(nf));
    for (std::size_t i = 0; i < problem_.overrides.size(); ++i) {
        const auto& o = problem_.overrides[i];
        if (o.equation < 0 || o.equation >= nf) throw AssemblyError("row override refers to unknown equation");
        overrides_[static_cast<std::size_t>(o.equation)][node_index(o.x, level)] = i;
    }
}

std::size_t DiscretizedSystem::slot(int field, int derivative) const {
    if (field < 0 || field >= problem_.fields || derivative < 0 || derivative > problem_.order)
        throw DimensionError("field/derivative index out of range");
    return static_cast<std::size_t>(field * (problem_.order + 1) + derivative);
}

const Matrix& DiscretizedSystem::operator_for(int field, int derivative) const {
    return operators_[slot(field, derivative)];
}

const Vector& DiscretizedSystem::offset_for(int field, int derivative) const {
    return offsets_[slot(field, derivative)];
}

const PointwiseFn& DiscretizedSystem::equation_at(std::size_t node, int equation) const {
    const auto& table = overrides_[static_cast<std::size_t>(equation)];
    const auto it = table.find(node);
    if (it != table.end()) return problem_.overrides[it->second].fn;
    return problem_.equations[static_cast<std::size_t>(equation)];
}

std::vector<Vector> DiscretizedSystem::all_fields(std::span<const double> u) const {
    if (u.size() != size())
        throw DimensionError("expected " + std::to_string(size()) + " unknowns, got " + std::to_string(u.size()));
    std::vector<Vector> y(operators_.size());
    for (std::size_t s = 0; s < operators_.size(); ++s) {
        y[s] = multiply(operators_[s], u);
        for (std::size_t l = 0; l < nodes_; ++l) y[s][l] += offsets_[s][l];
    }
    return y;
}

Vector DiscretizedSystem::residual(std::span<const double> u) const {
    const auto y = all_fields(u);
    Vector out(size());
    Vector state(y.size());
    Vector grad(y.size());
    for (int e = 0; e < problem_.fields; ++e) {
        for (std::size_t l = 0; l < nodes_; ++l) {
            for (std::size_t s = 0; s < y.size(); ++s) state[s] = y[s][l];
            out[static_cast<std::size_t>(e) * nodes_ + l] = equation_at(l, e)(grid_[l], state, grad);
        }
    }
    return out;
}

Matrix DiscretizedSystem::jacobian(std::span<const double> u) const {
    const auto y = all_fields(u);
    const std::size_t slots = y.size();
    Matrix jac(size(), size());
    Vector state(slots);
    Vector grad(slots);
    std::vector<Vector> scale(slots, Vector(nodes_));
    for (int e = 0; e < problem_.fields; ++e) {
        for (std::size_t l = 0; l < nodes_; ++l) {
            for (std::size_t s = 0; s < slots; ++s) state[s] = y[s][l];
            std::fill(grad.begin(), grad.end(), 0.0);
            equation_at(l, e)(grid_[l], state, grad);
            for (std::size_t s = 0; s < slots; ++s) scale[s][l] = grad[s];
        }
        for (std::size_t s = 0; s < slots; ++s)
            kernels::add_scaled_rows(jac, static_cast<std::size_t>(e) * nodes_, 0, scale[s], operators_[s]);
    }
    return jac;
}

double DiscretizedSystem::evaluate(int field, int derivative, double x, std::span<const double> u) const {
    if (u.size() != size()) throw DimensionError("evaluate: unknown vector has wrong length");
    const std::size_t s = slot(field, derivative);
    const double scaled = std::ldexp(x, level_);
    if (scaled == std::round(scaled) && scaled >= 0.0 && scaled <= static_cast<double>(nodes_ - 1)) {
        const auto l = static_cast<std::size_t>(scaled);
        const auto row = operators_[s].row(l);
        double acc = offsets_[s][l];
        for (std::size_t k = 0; k < row.size(); ++k) acc += row[k] * u[k];
        return acc;
    }
    const int n = problem_.order;
    if (derivative >= n) throw AssemblyError("evaluate: highest derivative is only available at nodes");
    const Vector base = integral_basis_row(*basis_, level_, n - derivative, x);
    const std::size_t block = static_cast<std::size_t>(field) * nodes_;
    double acc = 0.0;
    for (std::size_t k = 0; k < nodes_; ++k) acc += base[k] * u[block + k];
    for (int r = derivative; r < n; ++r) {
        const auto q = static_cast<std::size_t>(field * n + r);
        const auto g = elimination_.gain.row(q);
        double c = elimination_.offset[q];
        for (std::size_t k = 0; k < g.size(); ++k) c += g[k] * u[k];
        acc += taylor(x, r - derivative) * c;
    }
    return acc;
}

DiscretizedSystem assemble(const BvpProblem& problem, int level, const WaveletBasis& basis) {
    return DiscretizedSystem(problem, basis, level);
}

std::vector<std::vector<Vector>> recover_lower_derivatives(const DiscretizedSystem& sys,
                                                           std::span<const double> u) {
    if (u.size() != sys.size())
        throw DimensionError("recover_lower_derivatives: expected " + std::to_string(sys.size()) +
                             " unknowns, got " + std::to_string(u.size()));
    std::vector<std::vector<Vector>> out(static_cast<std::size_t>(sys.fields()));
    for (int f = 0; f < sys.fields(); ++f) {
        for (int d = 0; d <= sys.order(); ++d) {
            Vector v = multiply(sys.operator_for(f, d), u);
            const auto& b = sys.offset_for(f, d);
            for (std::size_t l = 0; l < v.size(); ++l) v[l] += b[l];
            out[static_cast<std::size_t>(f)].push_back(std::move(v));
        }
    }
    return out;
}

}  // namespace wicm
