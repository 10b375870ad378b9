#include "cpdrec/recovery.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace cpdrec {

namespace {

void check_compat(const KernelSpec& kernel, const PolySpace& space) {
    if (space.dim() != kernel.d)
        throw std::invalid_argument("polynomial space dimension does not match kernel");
    if (space.order() < kernel.min_poly_order()) {
        std::ostringstream msg;
        msg << "polynomial order q = " << space.order() << " too low for kernel order s = "
            << kernel.s << " (needs q >= " << kernel.min_poly_order() << ")";
        throw cpd_order_error(msg.str());
    }
}

void check_nodes(const NodeSet& nodes, const KernelSpec& kernel, const LinearFunctional& f) {
    if (nodes.dim() != kernel.d)
        throw std::invalid_argument("node dimension does not match kernel");
    if (f.dim() != kernel.d)
        throw std::invalid_argument("functional dimension does not match kernel");
}

// D'D''K(x, x): the functional applied to both kernel arguments at the same
// point.  For every supported case this limit is 0: phi_s(0) = 0, the mixed
// gradient term -sign s (r^(s-2) + (s-2) r^(s-4) (x_a - y_a)^2) vanishes as
// r -> 0 for s > 2, and the bilaplacian vanishes for s > 4.
double functional_diag(const LinearFunctional& f, const KernelSpec& kernel) {
    switch (f.kind()) {
        case LinearFunctional::Kind::PointEval:
            return kernel_eval(kernel, f.x(), f.x());
        case LinearFunctional::Kind::GradientComponentAt:
            return 0.0;
        case LinearFunctional::Kind::LaplacianAt:
            return kernel_bilaplacian(kernel, f.x(), f.x());
    }
    throw std::logic_error("unreachable functional kind");
}

struct ScaledSetup {
    Matrix Y;            // nodes the system is assembled on
    LinearFunctional f;  // functional moved to the same frame
    double scale;
};

ScaledSetup scaled_setup(const NodeSet& nodes, const LinearFunctional& f,
                         const std::optional<AffineScaling>& pre) {
    if (!pre)
        return {nodes.points(), f, 1.0};
    if (!(pre->scale > 0.0))
        throw std::invalid_argument("prescale factor must be positive");
    return {scale_points(*pre, nodes.points()), f.mapped(*pre), pre->scale};
}

Vector functional_kernel_column(const LinearFunctional& f, const KernelSpec& kernel,
                                const Matrix& pts) {
    Vector a(pts.rows());
    for (Index i = 0; i < pts.rows(); ++i)
        a(i) = f.apply_to_kernel(kernel, pts.row(i).transpose());
    return a;
}

}  // namespace

LinearFunctional::LinearFunctional(Kind kind, Vector x, int axis)
    : kind_(kind), x_(std::move(x)), axis_(axis) {
    if (x_.size() < 1)
        throw std::invalid_argument("functional point must have dimension >= 1");
    if (!x_.allFinite())
        throw std::invalid_argument("functional point must be finite");
    if (kind_ == Kind::GradientComponentAt && (axis_ < 0 || axis_ >= x_.size()))
        throw std::invalid_argument("gradient component axis out of range");
}

LinearFunctional LinearFunctional::point_eval(Vector x) {
    return LinearFunctional(Kind::PointEval, std::move(x), -1);
}

LinearFunctional LinearFunctional::laplacian_at(Vector x) {
    return LinearFunctional(Kind::LaplacianAt, std::move(x), -1);
}

LinearFunctional LinearFunctional::gradient_component_at(Vector x, int axis) {
    return LinearFunctional(Kind::GradientComponentAt, std::move(x), axis);
}

int LinearFunctional::derivative_order() const {
    switch (kind_) {
        case Kind::PointEval:
            return 0;
        case Kind::GradientComponentAt:
            return 1;
        case Kind::LaplacianAt:
            return 2;
    }
    throw std::logic_error("unreachable functional kind");
}

LinearFunctional LinearFunctional::mapped(const AffineScaling& t) const {
    return LinearFunctional(kind_, t.apply(x_), axis_);
}

double LinearFunctional::apply_to_kernel(const KernelSpec& k, const Vector& y) const {
    switch (kind_) {
        case Kind::PointEval:
            return kernel_eval(k, x_, y);
        case Kind::GradientComponentAt:
            return kernel_gradient(k, x_, y)(axis_);
        case Kind::LaplacianAt:
            return kernel_laplacian(k, x_, y);
    }
    throw std::logic_error("unreachable functional kind");
}

Vector LinearFunctional::apply_to_basis(const PolySpace& p) const {
    switch (kind_) {
        case Kind::PointEval:
            return eval_basis(p, x_);
        case Kind::GradientComponentAt:
            return gradient_basis(p, x_).col(axis_);
        case Kind::LaplacianAt:
            return laplacian_basis(p, x_);
    }
    throw std::logic_error("unreachable functional kind");
}

WeightReport differentiation_weights(const NodeSet& nodes, const LinearFunctional& f,
                                     const KernelSpec& kernel, const PolySpace& space,
                                     const std::optional<AffineScaling>& prescale) {
    check_compat(kernel, space);
    check_nodes(nodes, kernel, f);

    ScaledSetup setup = scaled_setup(nodes, f, prescale);
    Matrix K = kernel_gram(kernel, setup.Y);
    Matrix P = vandermonde(space, setup.Y);
    Vector a = functional_kernel_column(setup.f, kernel, setup.Y);
    Vector b = setup.f.apply_to_basis(space);

    NullBasis nb = null_basis(P);
    Consistency cons = is_consistent(P, b);
    if (!cons.consistent) {
        std::ostringstream msg;
        msg << "functional is not polynomially consistent on the node set "
            << "(constraint residual " << cons.residual << " on " << nodes.size()
            << " nodes)";
        throw consistency_error(msg.str());
    }

    SaddleProblem problem(std::move(K), std::move(P), std::move(a), std::move(b));
    StackedSolution sol = solve_stacked(problem, nb.M);
    Vector v = solve_secondary(problem, sol.w);

    WeightReport report;
    report.weights = sol.w * std::pow(setup.scale, -f.derivative_order());
    report.poly_part = std::move(v);
    report.worst_case = worst_case_error(nodes, report.weights, f, kernel, space);
    report.weight_l1 = report.weights.cwiseAbs().sum();
    if (nb.M.cols() > 0)
        report.cond = sol.cond;
    report.dim_null_P = space.size() - nb.rank;
    report.dim_null_Pt = nodes.size() - nb.rank;
    return report;
}

Vector optimal_weights_qp(const NodeSet& nodes, const LinearFunctional& f,
                          const KernelSpec& kernel, const PolySpace& space,
                          const std::optional<AffineScaling>& prescale) {
    check_compat(kernel, space);
    check_nodes(nodes, kernel, f);

    ScaledSetup setup = scaled_setup(nodes, f, prescale);
    Matrix K = kernel_gram(kernel, setup.Y);
    Matrix P = vandermonde(space, setup.Y);
    Vector b = setup.f.apply_to_basis(space);

    Consistency cons = is_consistent(P, b);
    if (!cons.consistent)
        throw consistency_error(
            "quadratic program is infeasible: functional is not polynomially "
            "consistent on the node set");

    Index n = nodes.size(), m = space.size();
    Matrix KKT = Matrix::Zero(n + m, n + m);
    KKT.topLeftCorner(n, n) = K;
    KKT.topRightCorner(n, m) = P;
    KKT.bottomLeftCorner(m, n) = P.transpose();
    Vector rhs(n + m);
    rhs.head(n) = functional_kernel_column(setup.f, kernel, setup.Y);
    rhs.tail(m) = b;

    // Minimal-norm least-squares solve of the (possibly singular) KKT system.
    Eigen::BDCSVD<Matrix> svd(KKT, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(rank_threshold_factor(KKT));
    Vector sol = svd.solve(rhs);
    return sol.head(n) * std::pow(setup.scale, -f.derivative_order());
}

double worst_case_error(const NodeSet& nodes, const Vector& u,
                        const LinearFunctional& f, const KernelSpec& kernel,
                        const PolySpace& space) {
    check_compat(kernel, space);
    check_nodes(nodes, kernel, f);
    if (u.size() != nodes.size())
        throw std::invalid_argument("weight vector length does not match node count");
    if (!(kernel.s > 2.0 * f.derivative_order()))
        throw kernel_derivative_error(
            "worst-case error needs s > twice the functional derivative order");

    Vector b = f.apply_to_basis(space);
    Matrix P = vandermonde(space, nodes);
    double defect = (P.transpose() * u - b).cwiseAbs().maxCoeff();
    if (defect > consistency_tol * (1.0 + b.cwiseAbs().maxCoeff()))
        throw consistency_error(
            "weights are not polynomially exact; the worst-case error formula "
            "does not apply");

    Vector kx = functional_kernel_column(f, kernel, nodes.points());
    Matrix K = kernel_gram(kernel, nodes.points());
    double e2 = functional_diag(f, kernel) - 2.0 * u.dot(kx) + u.dot(K * u);
    return std::sqrt(std::max(e2, 0.0));
}

Interpolant fit_interpolant(const NodeSet& nodes, const Vector& values,
                            const KernelSpec& kernel, const PolySpace& space) {
    check_compat(kernel, space);
    if (nodes.dim() != kernel.d)
        throw std::invalid_argument("node dimension does not match kernel");
    if (values.size() != nodes.size())
        throw std::invalid_argument("one value per node required");
    if (!values.allFinite())
        throw std::invalid_argument("data values must be finite");

    AffineScaling t;
    t.shift = nodes.points().colwise().mean().transpose();
    t.scale = (nodes.points().rowwise() - t.shift.transpose()).rowwise().norm().maxCoeff();
    if (t.scale == 0.0)
        t.scale = 1.0;  // single node; any scale works
    Matrix Y = scale_points(t, nodes.points());

    Matrix K = kernel_gram(kernel, Y);
    Matrix P = vandermonde(space, Y);
    SaddleProblem problem(std::move(K), std::move(P), values,
                          Vector::Zero(space.size()));
    StackedSolution sol = solve_stacked(problem);
    Vector v = solve_secondary(problem, sol.w);

    // One refinement step on the full saddle system.  At condition numbers
    // around 1e8 the first pass can leave node residuals near 1e-8 |f|;
    // re-solving for the residual pulls them back toward machine precision.
    Vector rf = values - problem.A * sol.w - problem.B * v;
    Vector rg = -problem.B.transpose() * sol.w;
    SaddleProblem correction(problem.A, problem.B, std::move(rf), std::move(rg));
    StackedSolution delta = solve_stacked(correction);
    sol.w += delta.w;
    v += solve_secondary(correction, delta.w);

    return Interpolant{nodes,  t,     std::move(Y), std::move(sol.w),
                       std::move(v), kernel, space,        sol.cond};
}

double eval_interpolant(const Interpolant& s, const Vector& x) {
    if (x.size() != s.kernel.d)
        throw std::invalid_argument("evaluation point dimension mismatch");
    Vector y = s.transform.apply(x);
    double acc = eval_basis(s.space, y).dot(s.poly_coeffs);
    for (Index j = 0; j < s.scaled_points.rows(); ++j)
        acc += s.coeffs(j) * radial_value(s.kernel, (y - s.scaled_points.row(j).transpose()).norm());
    return acc;
}

Vector eval_interpolant_gradient(const Interpolant& s, const Vector& x) {
    if (x.size() != s.kernel.d)
        throw std::invalid_argument("evaluation point dimension mismatch");
    Vector y = s.transform.apply(x);
    Vector g = gradient_basis(s.space, y).transpose() * s.poly_coeffs;
    for (Index j = 0; j < s.scaled_points.rows(); ++j)
        g += s.coeffs(j) * kernel_gradient(s.kernel, y, s.scaled_points.row(j).transpose());
    return g / s.transform.scale;  // chain rule for y = (x - z)/scale
}

Vector surface_gradient(const Interpolant& s, const Vector& x, const Vector& unit_normal) {
    if (unit_normal.size() != s.kernel.d)
        throw std::invalid_argument("normal dimension mismatch");
    if (std::abs(unit_normal.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("surface normal must have unit length");
    Vector g = eval_interpolant_gradient(s, x);
    return g - g.dot(unit_normal) * unit_normal;
}

}  // namespace cpdrec
