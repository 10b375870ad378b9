#pragma once

#include "cpdrec/types.hpp"

namespace cpdrec {

// Polyharmonic kernel K(x, y) = phi_s(|x - y|_2) on R^d:
//
//   phi_s(r) = sign_s * r^s          if s is not an even integer,
//   phi_s(r) = sign_s * r^s log r    if s is an even integer,
//
// with sign_s = (-1)^(floor(s/2) + 1).  The sign makes the kernel
// conditionally positive definite with respect to polynomials of total
// degree < q for every order q >= floor(s/2) + 1.
struct KernelSpec {
    double s;  // kernel order, > 0
    int d;     // ambient dimension, >= 1

    KernelSpec(double s_, int d_);

    bool even_integer() const;
    double sign() const;           // (-1)^(floor(s/2) + 1)
    int min_poly_order() const;    // smallest admissible attached order q
};

// phi_s(r) for r >= 0; the removable singularity at r = 0 evaluates to 0.
double radial_value(const KernelSpec& k, double r);

double kernel_eval(const KernelSpec& k, const Vector& x, const Vector& y);

// Laplacian in the first argument:
//   sign_s * s (s + d - 2) r^(s-2),
// valid for s > 2 with s not an even integer; 0 at coincident points.
double kernel_laplacian(const KernelSpec& k, const Vector& x, const Vector& y);

// Iterated Laplacian in the first argument:
//   sign_s * s (s - 2) (s + d - 2) (s + d - 4) r^(s-4),
// valid for s > 4 with s not an even integer; 0 at coincident points.
double kernel_bilaplacian(const KernelSpec& k, const Vector& x, const Vector& y);

// Gradient in the first argument, valid for s > 1 (any parity):
//   sign_s * s r^(s-2) (x - y)                     s not an even integer,
//   sign_s * (s log r + 1) r^(s-2) (x - y)         s an even integer.
// Zero at coincident points when s > 2; singular there for s <= 2.
Vector kernel_gradient(const KernelSpec& k, const Vector& x, const Vector& y);

// Gram matrix K_ij = K(x_i, x_j) over the rows of pts; symmetric, zero
// diagonal.
Matrix kernel_gram(const KernelSpec& k, const Matrix& pts);

}  // namespace cpdrec
