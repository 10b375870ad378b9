#pragma once

#include "cpdrec/types.hpp"

namespace cpdrec {

// Monomial basis of P^d_q, the polynomials of total degree < q in d
// variables.  Basis elements are ordered by total degree and, within one
// degree, by descending lexicographic exponent tuple, so for d = 2:
//   1, x, y, x^2, xy, y^2, x^3, ...
class PolySpace {
public:
    PolySpace(int d, int q);

    int dim() const { return d_; }
    int order() const { return q_; }
    Index size() const { return exps_.rows(); }       // binom(q - 1 + d, d)
    const Eigen::MatrixXi& exponents() const { return exps_; }

private:
    int d_;
    int q_;
    Eigen::MatrixXi exps_;  // size() x d
};

// Values (p_j(x))_j of all basis monomials.
Vector eval_basis(const PolySpace& p, const Vector& x);

// (Laplacian p_j)(x) for all basis monomials.
Vector laplacian_basis(const PolySpace& p, const Vector& x);

// Gradients of all basis monomials, one row per monomial.
Matrix gradient_basis(const PolySpace& p, const Vector& x);

// Vandermonde-type matrix P with P_ij = p_j(x_i).
Matrix vandermonde(const PolySpace& p, const Matrix& pts);
Matrix vandermonde(const PolySpace& p, const NodeSet& nodes);

}  // namespace cpdrec
