#pragma once

#include "cpdrec/types.hpp"

namespace cpdrec {

// Relative residual tolerance for deciding whether b lies in range(B^T).
inline constexpr double consistency_tol = 1e-8;
// Relative residual tolerance for the reduced (null-space) solve.
inline constexpr double reduced_tol = 1e-8;
// Relative residual tolerance for the secondary-variable solve.
inline constexpr double secondary_tol = 1e-6;

// Symmetric saddle-point system
//
//   [ A   B ] [w]   [a]
//   [ B^T 0 ] [v] = [b]
//
// with A an n x n symmetric matrix and B an n x m matrix.  B may be rank
// deficient; solvability then requires b in range(B^T) and A definite on the
// null space of B^T.
struct SaddleProblem {
    Matrix A;
    Matrix B;
    Vector a;
    Vector b;

    SaddleProblem(Matrix A_, Matrix B_, Vector a_, Vector b_);

    Index n() const { return A.rows(); }
    Index m() const { return B.cols(); }
};

// Orthonormal basis (columns of M) of the null space of B^T, plus rank(B).
struct NullBasis {
    Matrix M;    // n x (n - rank)
    Index rank;
};

struct RankNullity {
    Index rank;       // rank B
    Index nullity;    // dim null(B)   = m - rank
    Index nullity_t;  // dim null(B^T) = n - rank
};

struct Consistency {
    bool consistent;
    Vector w0;        // minimal-norm least-squares solution of B^T w = b
    double residual;  // | B^T w0 - b |_2
};

struct StackedSolution {
    Vector w;
    double cond;  // spectral condition number of the stacked matrix
};

// Relative singular-value cutoff factor: max(rows, cols) * machine epsilon.
// A singular value counts toward the rank iff it exceeds this times the
// largest singular value.
double rank_threshold_factor(const Matrix& B);

NullBasis null_basis(const Matrix& B);
RankNullity rank_nullity(const Matrix& B);

// Does B^T w = b admit a solution?  Decided by the residual of the
// minimal-norm least-squares attempt: consistent iff
// |B^T w0 - b|_2 <= tol * (1 + |b|_2).
Consistency is_consistent(const Matrix& B, const Vector& b,
                          double tol = consistency_tol);

// Primary path: the full-rank stacked system
//   [ M^T A ]       [ M^T a ]
//   [  B^T  ] w  =  [   b   ]
// solved by least squares.  The overload taking M lets callers reuse a null
// basis; M must have orthonormal columns spanning null(B^T).
StackedSolution solve_stacked(const SaddleProblem& p);
StackedSolution solve_stacked(const SaddleProblem& p, const Matrix& M);

// Null-space reduction: with w0 satisfying B^T w0 = b, solve
//   (M^T A M) u = M^T (a - A w0)
// and return w = w0 + M u.  Agrees with solve_stacked up to roundoff.
Vector solve_reduced(const SaddleProblem& p, const Vector& w0);
Vector solve_reduced(const SaddleProblem& p, const Vector& w0, const Matrix& M);

// Secondary variable: minimal-norm solution of B v = a - A w.
Vector solve_secondary(const SaddleProblem& p, const Vector& w);

}  // namespace cpdrec
