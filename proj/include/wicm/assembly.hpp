#pragma once

#include "wicm/extension.hpp"
#include "wicm/linalg.hpp"

#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wicm {

class AssemblyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// coeff * y_{field, derivative}(x)
struct BoundaryTerm {
    int field = 0;
    int derivative = 0;
    double x = 0.0;
    double coeff = 1.0;
};

/// Σ terms = value. Points x must be collocation nodes.
struct BoundaryCondition {
    std::vector<BoundaryTerm> terms;
    double value = 0.0;
};

/// Pointwise equation T(x, y) = 0 with y laid out as y[field * (order + 1) + derivative].
/// `grad` receives ∂T/∂y in the same layout.
using PointwiseFn = std::function<double(double x, std::span<const double> y, std::span<double> grad)>;

/// Replaces equation `equation` at the node x by `fn` (singular collocation rows).
struct RowOverride {
    double x = 0.0;
    int equation = 0;
    PointwiseFn fn;
};

struct BvpProblem {
    std::string name;
    int order = 0;
    int fields = 1;
    std::vector<std::string> field_names;
    std::vector<PointwiseFn> equations;  ///< one per field
    std::vector<BoundaryCondition> boundary;
    std::vector<RowOverride> overrides;
    std::map<std::string, double> parameters;
    /// y_{field, derivative}(x) of a closed-form solution, when known.
    std::function<double(int field, int derivative, double x)> exact;

    std::size_t state_size() const noexcept {
        return static_cast<std::size_t>(fields) * static_cast<std::size_t>(order + 1);
    }
};

/// Boundary constants c_{f,r} = y_{f,r}(0), r < order, as affine functionals of
/// the stacked highest-derivative samples: c = gain * u + offset.
/// Constant index is f * order + r.
struct Elimination {
    Matrix gain;
    Vector offset;
};

/// Solves the boundary conditions for the initial values. Throws AssemblyError
/// when the conditions are dependent (reports the rank defect) or a point is
/// not a node of the level.
Elimination reduce_to_integral_form(int order, int fields, std::span<const BoundaryCondition> conditions,
                                    const WaveletBasis& basis, int level);

/// Square nonlinear system F(u) = 0 with an analytic Jacobian.
class NonlinearSystem {
public:
    virtual ~NonlinearSystem() = default;
    virtual std::size_t size() const = 0;
    virtual Vector residual(std::span<const double> u) const = 0;
    virtual Matrix jacobian(std::span<const double> u) const = 0;
};

class DiscretizedSystem : public NonlinearSystem {
public:
    DiscretizedSystem(BvpProblem problem, const WaveletBasis& basis, int level);

    int level() const noexcept { return level_; }
    int order() const noexcept { return problem_.order; }
    int fields() const noexcept { return problem_.fields; }
    std::size_t nodes() const noexcept { return nodes_; }
    const BvpProblem& problem() const noexcept { return problem_; }
    const WaveletBasis& basis() const noexcept { return *basis_; }
    const std::vector<double>& grid() const noexcept { return grid_; }
    const Elimination& elimination() const noexcept { return elimination_; }

    /// Modified operator mapping stacked u to nodal y_{field, derivative}.
    const Matrix& operator_for(int field, int derivative) const;
    /// Known boundary contribution b_{field, derivative}.
    const Vector& offset_for(int field, int derivative) const;

    /// y_{field, derivative}(x) for any x in [0, 1]; derivative < order
    /// unless x is a node.
    double evaluate(int field, int derivative, double x, std::span<const double> u) const;

    std::size_t size() const override { return nodes_ * static_cast<std::size_t>(problem_.fields); }
    Vector residual(std::span<const double> u) const override;
    Matrix jacobian(std::span<const double> u) const override;

private:
    std::size_t slot(int field, int derivative) const;
    std::vector<Vector> all_fields(std::span<const double> u) const;
    const PointwiseFn& equation_at(std::size_t node, int equation) const;

    BvpProblem problem_;
    const WaveletBasis* basis_;
    int level_;
    std::size_t nodes_;
    std::vector<double> grid_;
    Elimination elimination_;
    std::vector<Matrix> operators_;  // [slot]
    std::vector<Vector> offsets_;    // [slot]
    std::vector<std::map<std::size_t, std::size_t>> overrides_;  // [equation] node -> override
};

DiscretizedSystem assemble(const BvpProblem& problem, int level,
                           const WaveletBasis& basis = default_basis());

/// y_{field, derivative} at the nodes, indexed [field][derivative].
std::vector<std::vector<Vector>> recover_lower_derivatives(const DiscretizedSystem& sys,
                                                           std::span<const double> u);

/// Index of x in the dyadic grid of the level; throws if x is not a node.
std::size_t node_index(double x, int level);

/// 2D problem u_xx + u_yy + λ e^u = f on the unit square with u = 0 on the
/// boundary.
struct BvpProblem2D {
    std::string name;
    double lambda = 0.0;
    std::function<double(double x, double y)> source;
    std::function<double(double x, double y)> exact;
};

/// Unknowns [u2; v2] with u2 = u_xx, v2 = u_yy on the (2^j+1)^2 grid,
/// flattened row-major with x index fastest. Equations: PDE residual at every
/// node, then A u2 - B v2. At the four corners both A u2 and B v2 vanish
/// identically, so those rows are replaced by u2 = 0 (u vanishes along the
/// edges there).
class DiscretizedSystem2D : public NonlinearSystem {
public:
    DiscretizedSystem2D(BvpProblem2D problem, const WaveletBasis& basis, int level);

    int level() const noexcept { return level_; }
    std::size_t side() const noexcept { return side_; }
    const BvpProblem2D& problem() const noexcept { return problem_; }
    /// Dirichlet double-integral operator along one line.
    const Matrix& line_operator() const noexcept { return line_; }

    /// u = A u2 on the grid.
    Vector apply_x(std::span<const double> u2) const;
    /// u = B v2 on the grid.
    Vector apply_y(std::span<const double> v2) const;

    std::size_t size() const override { return 2 * side_ * side_; }
    Vector residual(std::span<const double> z) const override;
    Matrix jacobian(std::span<const double> z) const override;

private:
    bool is_corner(std::size_t row, std::size_t col) const noexcept;

    BvpProblem2D problem_;
    int level_;
    std::size_t side_;
    std::vector<double> grid_;
    Matrix line_;
    Vector source_;
};

DiscretizedSystem2D assemble_2d(const BvpProblem2D& problem, int level,
                                const WaveletBasis& basis = default_basis());

}  // namespace wicm
