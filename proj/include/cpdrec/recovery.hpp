#pragma once

#include <optional>

#include "cpdrec/geometry.hpp"
#include "cpdrec/kernels.hpp"
#include "cpdrec/poly_basis.hpp"
#include "cpdrec/saddle.hpp"

namespace cpdrec {

// A linear functional acting at a single point: evaluation, the Laplacian,
// or one gradient component.
class LinearFunctional {
public:
    enum class Kind { PointEval, LaplacianAt, GradientComponentAt };

    static LinearFunctional point_eval(Vector x);
    static LinearFunctional laplacian_at(Vector x);
    static LinearFunctional gradient_component_at(Vector x, int axis);  // axis in [0, d)

    Kind kind() const { return kind_; }
    const Vector& x() const { return x_; }
    int axis() const { return axis_; }
    int dim() const { return static_cast<int>(x_.size()); }
    int derivative_order() const;  // 0, 1 or 2

    // The same functional attached to the mapped point t.apply(x); derivative
    // factors from the change of variables are the caller's concern.
    LinearFunctional mapped(const AffineScaling& t) const;

    // lambda applied to K(., y) for fixed y.
    double apply_to_kernel(const KernelSpec& k, const Vector& y) const;
    // (lambda p_j)_j over the monomial basis.
    Vector apply_to_basis(const PolySpace& p) const;

private:
    LinearFunctional(Kind kind, Vector x, int axis);

    Kind kind_;
    Vector x_;
    int axis_;
};

struct WeightReport {
    Vector weights;              // w, in the original coordinates
    Vector poly_part;            // secondary variable v of the solved system
                                 // (in the scaled frame when prescaling is on)
    double worst_case;           // E(w), evaluated on the original nodes
    double weight_l1;            // |w|_1
    std::optional<double> cond;  // stacked condition number; empty when
                                 // null(P^T) is trivial and the polynomial
                                 // block alone determines w
    Index dim_null_P;
    Index dim_null_Pt;
};

// Weights u with sum_i u_i sigma(x_i) ~ (lambda sigma) for the given point
// functional, exact on the attached polynomial space.  When a prescaling is
// supplied the saddle system is assembled on the scaled nodes and the weights
// are pulled back by scale^(-order).  The report includes the worst-case
// error, so the kernel must satisfy s > 2 * derivative order.
WeightReport differentiation_weights(const NodeSet& nodes, const LinearFunctional& f,
                                     const KernelSpec& kernel, const PolySpace& space,
                                     const std::optional<AffineScaling>& prescale = {});

// The same weights through the quadratic-program route: minimal-norm solution
// of the square KKT system of minimizing the native-space error subject to
// polynomial exactness.  Independent of the stacked path; used to cross-check it.
Vector optimal_weights_qp(const NodeSet& nodes, const LinearFunctional& f,
                          const KernelSpec& kernel, const PolySpace& space,
                          const std::optional<AffineScaling>& prescale = {});

// Worst-case error of the weight vector u over the unit ball of the native
// space:
//   E(u)^2 = D'D''K(x, x) - 2 sum_i u_i D'K(x, x_i) + sum_ij u_i u_j K(x_i, x_j).
// Requires s > 2 * derivative order and u polynomially exact (checked).
double worst_case_error(const NodeSet& nodes, const Vector& u,
                        const LinearFunctional& f, const KernelSpec& kernel,
                        const PolySpace& space);

// Kernel-plus-polynomial interpolant fitted on centroid-scaled nodes.
struct Interpolant {
    NodeSet nodes;            // original coordinates
    AffineScaling transform;
    Matrix scaled_points;     // transform applied to the nodes
    Vector coeffs;            // kernel coefficients, scaled frame
    Vector poly_coeffs;       // polynomial coefficients, scaled frame
    KernelSpec kernel;
    PolySpace space;
    double cond;              // condition number of the stacked fit system
};

Interpolant fit_interpolant(const NodeSet& nodes, const Vector& values,
                            const KernelSpec& kernel, const PolySpace& space);

double eval_interpolant(const Interpolant& s, const Vector& x);
Vector eval_interpolant_gradient(const Interpolant& s, const Vector& x);

// Tangential part of the interpolant gradient: grad sigma - (grad sigma . nu) nu
// for a unit normal nu.
Vector surface_gradient(const Interpolant& s, const Vector& x, const Vector& unit_normal);

}  // namespace cpdrec
