#include <doctest.h>

#include <cmath>
#include <random>

#include "cpdrec/geometry.hpp"
#include "cpdrec/kernels.hpp"
#include "cpdrec/poly_basis.hpp"
#include "cpdrec/saddle.hpp"

using namespace cpdrec;

namespace {

// Saddle system for the Laplacian at the origin on Z_{d,r}, with the nodes
// scaled by their attained radius (the convention the grid experiment uses).
SaddleProblem grid_laplacian_problem(int d, double r) {
    auto X = grid_nodes(d, r);
    double scale = X.points().rowwise().norm().maxCoeff();
    Matrix pts = X.points() / scale;
    KernelSpec k(7.0, d);
    PolySpace space(d, 4);
    Matrix A = kernel_gram(k, pts);
    Matrix B = vandermonde(space, pts);
    Vector a(pts.rows());
    Vector origin = Vector::Zero(d);
    for (Index i = 0; i < pts.rows(); ++i)
        a(i) = kernel_laplacian(k, origin, pts.row(i).transpose());
    Vector b = laplacian_basis(space, origin);
    return SaddleProblem(std::move(A), std::move(B), std::move(a), std::move(b));
}

Matrix random_orthogonal(Index k, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix G(k, k);
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j)
            G(i, j) = gauss(rng);
    return Eigen::HouseholderQR<Matrix>(G).householderQ();
}

}  // namespace

TEST_CASE("saddle problem constructor validates shapes and symmetry") {
    Matrix A = Matrix::Identity(3, 3);
    Matrix B = Matrix::Ones(3, 2);
    Vector a = Vector::Zero(3), b = Vector::Zero(2);
    CHECK_NOTHROW(SaddleProblem(A, B, a, b));
    CHECK_THROWS_AS(SaddleProblem(Matrix::Ones(3, 2), B, a, b), std::invalid_argument);
    CHECK_THROWS_AS(SaddleProblem(A, Matrix::Ones(2, 2), a, b), std::invalid_argument);
    CHECK_THROWS_AS(SaddleProblem(A, B, Vector::Zero(2), b), std::invalid_argument);
    CHECK_THROWS_AS(SaddleProblem(A, B, a, Vector::Zero(3)), std::invalid_argument);
    Matrix Asym = A;
    Asym(0, 1) = 0.5;
    CHECK_THROWS_AS(SaddleProblem(Asym, B, a, b), std::invalid_argument);
}

TEST_CASE("null basis: full rank, rank deficient, and zero matrices") {
    // identity: trivial null space
    NullBasis nb = null_basis(Matrix::Identity(4, 4));
    CHECK(nb.rank == 4);
    CHECK(nb.M.cols() == 0);

    // zero matrix: everything is null
    nb = null_basis(Matrix::Zero(4, 3));
    CHECK(nb.rank == 0);
    CHECK(nb.M.cols() == 4);
    CHECK((nb.M.transpose() * nb.M - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <=
          1e-12);

    CHECK_THROWS_AS(null_basis(Matrix(0, 0)), std::invalid_argument);
}

TEST_CASE("null basis of deficient Vandermonde matrices") {
    // 9 nodes of Z_{2,sqrt2} against the 10 monomials of order 4
    auto X = grid_nodes(2, std::sqrt(2.0));
    Matrix B = vandermonde(PolySpace(2, 4), X);
    NullBasis nb = null_basis(B);
    RankNullity rn = rank_nullity(B);
    CHECK(nb.rank == 8);
    CHECK(rn.rank == 8);
    CHECK(rn.nullity == 2);
    CHECK(rn.nullity_t == 1);
    CHECK(nb.M.rows() == 9);
    CHECK(nb.M.cols() == 1);
    CHECK((nb.M.transpose() * nb.M - Matrix::Identity(1, 1)).cwiseAbs().maxCoeff() <=
          1e-10);
    double smax = B.cwiseAbs().maxCoeff();
    CHECK((B.transpose() * nb.M).cwiseAbs().maxCoeff() <= 1e-10 * smax);

    // the severely deficient end of the table: 221 nodes in d = 5
    auto X5 = grid_nodes(5, 2.0);
    RankNullity rn5 = rank_nullity(vandermonde(PolySpace(5, 4), X5));
    CHECK(rn5.rank == 56);
    CHECK(rn5.nullity == 0);
    CHECK(rn5.nullity_t == 165);
}

TEST_CASE("rank cutoff scales with the largest singular value") {
    Matrix B = Matrix::Zero(2, 2);
    B(0, 0) = 1.0;
    B(1, 1) = 1e-20;
    CHECK(rank_nullity(B).rank == 1);
    B(1, 1) = 1e-10;
    CHECK(rank_nullity(B).rank == 2);
}

TEST_CASE("consistency test on full-rank and deficient constraint blocks") {
    // five-point stencil: B^T has full column rank, everything is consistent
    auto X = grid_nodes(2, 1.0);
    Matrix B = vandermonde(PolySpace(2, 4), X);
    Vector b = laplacian_basis(PolySpace(2, 4), Vector::Zero(2));
    Consistency c = is_consistent(B, b);
    CHECK(c.consistent);
    CHECK(c.residual <= 1e-10);
    CHECK((B.transpose() * c.w0 - b).cwiseAbs().maxCoeff() <= 1e-10);

    // rank-1 block: range(B^T) = span{(1, 2)}
    Matrix R(3, 2);
    R << 1, 2, 2, 4, 3, 6;
    Vector in_range(2), off_range(2);
    in_range << 3, 6;
    off_range << 1, 3;
    CHECK(is_consistent(R, in_range).consistent);
    Consistency bad = is_consistent(R, off_range);
    CHECK_FALSE(bad.consistent);
    CHECK(bad.residual > 0.1);

    CHECK_THROWS_AS(is_consistent(R, Vector::Zero(3)), std::invalid_argument);
}

TEST_CASE("stacked solve reproduces the five-point stencil") {
    SaddleProblem p = grid_laplacian_problem(2, 1.0);
    StackedSolution sol = solve_stacked(p);
    REQUIRE(sol.w.size() == 5);
    // origin first, then the four neighbours
    CHECK(sol.w(0) == doctest::Approx(-4.0).epsilon(1e-9));
    for (Index i = 1; i < 5; ++i)
        CHECK(sol.w(i) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.cond == doctest::Approx(4.73872001868727).epsilon(1e-6));
}

TEST_CASE("stacked solve condition number on a deficient scaled grid") {
    SaddleProblem p = grid_laplacian_problem(2, 2.0);
    StackedSolution sol = solve_stacked(p);
    CHECK(sol.cond == doctest::Approx(386.8254765462868).epsilon(1e-6));
    // the constraint block holds
    CHECK((p.B.transpose() * sol.w - p.b).cwiseAbs().maxCoeff() <=
          consistency_tol * (1.0 + p.b.cwiseAbs().maxCoeff()));
}

TEST_CASE("stacked and reduced solves agree on deficient grids") {
    for (double r : {std::sqrt(2.0), std::sqrt(3.0), 2.0}) {
        SaddleProblem p = grid_laplacian_problem(3, r);
        NullBasis nb = null_basis(p.B);
        StackedSolution stacked = solve_stacked(p, nb.M);
        Consistency c = is_consistent(p.B, p.b);
        REQUIRE(c.consistent);
        Vector reduced = solve_reduced(p, c.w0, nb.M);
        CHECK((stacked.w - reduced).norm() <= 1e-8 * (1.0 + stacked.w.norm()));
        // residual invariant of the stacked least-squares solution
        Vector grad_res = nb.M.transpose() * (p.A * stacked.w - p.a);
        double scale = p.A.cwiseAbs().maxCoeff() * (1.0 + stacked.w.norm());
        CHECK(grad_res.cwiseAbs().maxCoeff() <= 1e-9 * scale);
    }
}

TEST_CASE("stacked solve rejects an inconsistent right-hand side") {
    Matrix A = Matrix::Identity(3, 3);
    Matrix B(3, 2);
    B << 1, 2, 1, 2, 1, 2;  // B^T w = (t, 2t), so (1, 3) is unreachable
    Vector a = Vector::Zero(3);
    Vector b(2);
    b << 1, 3;
    SaddleProblem p(A, B, a, b);
    CHECK_THROWS_AS(solve_stacked(p), consistency_error);
}

TEST_CASE("zero kernel block: reduced solve throws, stacked cond blows up") {
    auto X = grid_nodes(2, std::sqrt(2.0));
    Matrix B = vandermonde(PolySpace(2, 4), X);
    NullBasis nb = null_basis(B);
    REQUIRE(nb.M.cols() == 1);
    Matrix A = Matrix::Zero(9, 9);
    Vector a = nb.M.col(0);  // forces a nonzero reduced right-hand side
    Vector b = Vector::Zero(10);
    SaddleProblem p(A, B, a, b);
    CHECK_THROWS_AS(solve_reduced(p, Vector::Zero(9), nb.M), definiteness_error);
    StackedSolution sol = solve_stacked(p, nb.M);
    // the stacked matrix is structurally rank deficient; depending on how the
    // smallest singular value rounds this shows up as inf or merely huge
    CHECK(sol.cond > 1e12);
}

TEST_CASE("reduced solve validates its inputs") {
    SaddleProblem p = grid_laplacian_problem(2, std::sqrt(2.0));
    NullBasis nb = null_basis(p.B);
    CHECK_THROWS_AS(solve_reduced(p, Vector::Zero(3), nb.M), std::invalid_argument);
    // w0 violating the constraint block
    CHECK_THROWS_AS(solve_reduced(p, Vector::Ones(9), nb.M), std::invalid_argument);
}

TEST_CASE("reduced solve with a trivial null space returns w0") {
    SaddleProblem p = grid_laplacian_problem(2, 1.0);
    Consistency c = is_consistent(p.B, p.b);
    REQUIRE(c.consistent);
    Vector w = solve_reduced(p, c.w0, Matrix(5, 0));
    CHECK((w - c.w0).norm() == 0.0);
}

TEST_CASE("solution is invariant under a rotation of the null basis") {
    SaddleProblem p = grid_laplacian_problem(3, std::sqrt(2.0));
    NullBasis nb = null_basis(p.B);
    REQUIRE(nb.M.cols() == 3);
    std::mt19937_64 rng(7);
    Matrix Q = random_orthogonal(3, rng);
    StackedSolution s1 = solve_stacked(p, nb.M);
    StackedSolution s2 = solve_stacked(p, Matrix(nb.M * Q));
    CHECK((s1.w - s2.w).norm() <= 1e-10 * (1.0 + s1.w.norm()));
    CHECK(s1.cond == doctest::Approx(s2.cond).epsilon(1e-10));
}

TEST_CASE("homogeneous data yields the zero solution") {
    auto X = grid_nodes(2, std::sqrt(2.0));
    Matrix pts = X.points() / std::sqrt(2.0);
    KernelSpec k(7.0, 2);
    Matrix A = kernel_gram(k, pts);
    Matrix B = vandermonde(PolySpace(2, 4), pts);
    SaddleProblem p(A, B, Vector::Zero(9), Vector::Zero(10));
    StackedSolution sol = solve_stacked(p);
    CHECK(sol.w.norm() == 0.0);
    Vector v = solve_secondary(p, sol.w);
    CHECK(v.norm() == 0.0);
}

TEST_CASE("secondary solve returns the minimal-norm multiplier") {
    SaddleProblem p = grid_laplacian_problem(2, 1.0);
    StackedSolution sol = solve_stacked(p);
    Vector v = solve_secondary(p, sol.w);
    Vector rhs = p.a - p.A * sol.w;
    CHECK((p.B * v - rhs).cwiseAbs().maxCoeff() <=
          secondary_tol * (1.0 + rhs.cwiseAbs().maxCoeff()));
    // minimal norm means orthogonal to null(B)
    NullBasis nullB = null_basis(Matrix(p.B.transpose()));
    REQUIRE(nullB.M.cols() == 5);
    CHECK((nullB.M.transpose() * v).cwiseAbs().maxCoeff() <= 1e-8 * (1.0 + v.norm()));

    CHECK_THROWS_AS(solve_secondary(p, Vector::Zero(3)), std::invalid_argument);
}
