#include "cpdrec/saddle.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <limits>

namespace cpdrec {

namespace {

using SVD = Eigen::BDCSVD<Matrix>;

double inf_norm(const Vector& v) {
    return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace

SaddleProblem::SaddleProblem(Matrix A_, Matrix B_, Vector a_, Vector b_)
    : A(std::move(A_)), B(std::move(B_)), a(std::move(a_)), b(std::move(b_)) {
    if (A.rows() != A.cols())
        throw std::invalid_argument("saddle problem: A must be square");
    if (B.rows() != A.rows())
        throw std::invalid_argument("saddle problem: B must have as many rows as A");
    if (a.size() != A.rows() || b.size() != B.cols())
        throw std::invalid_argument("saddle problem: right-hand side sizes do not match");
    double scale = A.cwiseAbs().maxCoeff();
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + scale))
        throw std::invalid_argument("saddle problem: A must be symmetric");
}

double rank_threshold_factor(const Matrix& B) {
    return static_cast<double>(std::max(B.rows(), B.cols())) *
           std::numeric_limits<double>::epsilon();
}

NullBasis null_basis(const Matrix& B) {
    if (B.rows() < 1 || B.cols() < 1)
        throw std::invalid_argument("null_basis: matrix must be nonempty");
    SVD svd(B, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    double cutoff = rank_threshold_factor(B) * sv(0);
    Index rank = (sv.array() > cutoff).count();
    return {svd.matrixU().rightCols(B.rows() - rank), rank};
}

RankNullity rank_nullity(const Matrix& B) {
    if (B.rows() < 1 || B.cols() < 1)
        throw std::invalid_argument("rank_nullity: matrix must be nonempty");
    SVD svd(B);
    const auto& sv = svd.singularValues();
    double cutoff = rank_threshold_factor(B) * sv(0);
    Index rank = (sv.array() > cutoff).count();
    return {rank, B.cols() - rank, B.rows() - rank};
}

Consistency is_consistent(const Matrix& B, const Vector& b, double tol) {
    if (b.size() != B.cols())
        throw std::invalid_argument("is_consistent: b must have one entry per column of B");
    Matrix Bt = B.transpose();
    SVD svd(Bt, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(rank_threshold_factor(Bt));
    Vector w0 = svd.solve(b);
    double residual = (Bt * w0 - b).norm();
    return {residual <= tol * (1.0 + b.norm()), w0, residual};
}

StackedSolution solve_stacked(const SaddleProblem& p) {
    return solve_stacked(p, null_basis(p.B).M);
}

StackedSolution solve_stacked(const SaddleProblem& p, const Matrix& M) {
    if (M.rows() != p.n())
        throw std::invalid_argument("solve_stacked: null basis has wrong row count");
    Index n = p.n(), m = p.m(), k = M.cols();
    Matrix S(k + m, n);
    S.topRows(k) = M.transpose() * p.A;
    S.bottomRows(m) = p.B.transpose();
    Vector rhs(k + m);
    rhs.head(k) = M.transpose() * p.a;
    rhs.tail(m) = p.b;

    // k + m >= n always (rank B <= m), so S has n singular values and full
    // column rank whenever A is definite on null(B^T).  The solve truncates
    // singular values below the rank threshold, which keeps the extreme tail
    // of legitimately ill-conditioned systems usable; structural definiteness
    // failures are caught by solve_reduced and by the residual checks.
    SVD svd(S, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    svd.setThreshold(rank_threshold_factor(S));
    Vector w = svd.solve(rhs);

    double defect = inf_norm(p.B.transpose() * w - p.b);
    if (defect > consistency_tol * (1.0 + inf_norm(p.b)))
        throw consistency_error(
            "constraint block unsatisfied: right-hand side is not in the range of B^T");
    return {w, sv(0) / sv(sv.size() - 1)};
}

Vector solve_reduced(const SaddleProblem& p, const Vector& w0) {
    return solve_reduced(p, w0, null_basis(p.B).M);
}

Vector solve_reduced(const SaddleProblem& p, const Vector& w0, const Matrix& M) {
    if (w0.size() != p.n())
        throw std::invalid_argument("solve_reduced: w0 has wrong size");
    if (M.rows() != p.n())
        throw std::invalid_argument("solve_reduced: null basis has wrong row count");
    double constraint = inf_norm(p.B.transpose() * w0 - p.b);
    if (constraint > 1e-6 * (1.0 + inf_norm(p.b)))
        throw std::invalid_argument("solve_reduced: w0 does not satisfy the constraint block");
    if (M.cols() == 0)
        return w0;  // null(B^T) trivial: w0 is already the unique solution

    Matrix R = M.transpose() * p.A * M;
    Vector rhs = M.transpose() * (p.a - p.A * w0);
    Eigen::LDLT<Matrix> ldlt(R);
    Vector u = ldlt.solve(rhs);
    double scale = 1.0 + inf_norm(rhs) + R.cwiseAbs().maxCoeff() * inf_norm(u);
    if (!u.allFinite() || inf_norm(R * u - rhs) > reduced_tol * scale)
        throw definiteness_error(
            "reduced solve failed: kernel block is not definite on the null "
            "space of the polynomial block");
    return w0 + M * u;
}

Vector solve_secondary(const SaddleProblem& p, const Vector& w) {
    if (w.size() != p.n())
        throw std::invalid_argument("solve_secondary: w has wrong size");
    Vector rhs = p.a - p.A * w;
    SVD svd(p.B, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(rank_threshold_factor(p.B));
    Vector v = svd.solve(rhs);
    double scale = 1.0 + inf_norm(p.a) + inf_norm(p.A * w);
    if (inf_norm(p.B * v - rhs) > secondary_tol * scale)
        throw solve_error("secondary solve left a residual above tolerance");
    return v;
}

}  // namespace cpdrec
