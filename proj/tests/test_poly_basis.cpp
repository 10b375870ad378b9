#include <doctest.h>

#include <cmath>
#include <random>

#include "cpdrec/geometry.hpp"
#include "cpdrec/poly_basis.hpp"
#include "cpdrec/saddle.hpp"
#include "oracles.hpp"

using namespace cpdrec;

namespace {

long long binom(int n, int k) {
    long long v = 1;
    for (int i = 1; i <= k; ++i)
        v = v * (n - k + i) / i;
    return v;
}

}  // namespace

TEST_CASE("basis size is binom(q - 1 + d, d)") {
    for (int d = 1; d <= 5; ++d)
        for (int q = 1; q <= 6; ++q)
            CHECK(PolySpace(d, q).size() == binom(q - 1 + d, d));
    CHECK_THROWS_AS(PolySpace(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(PolySpace(2, 0), std::invalid_argument);
}

TEST_CASE("monomial ordering: degree ascending, descending lex within degree") {
    PolySpace p(2, 3);
    REQUIRE(p.size() == 6);
    const int want[6][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    for (Index i = 0; i < 6; ++i) {
        CHECK(p.exponents()(i, 0) == want[i][0]);
        CHECK(p.exponents()(i, 1) == want[i][1]);
    }

    Vector x(2);
    x << 2.0, 3.0;
    Vector v = eval_basis(p, x);
    Vector want_v(6);
    want_v << 1.0, 2.0, 3.0, 4.0, 6.0, 9.0;
    CHECK((v - want_v).cwiseAbs().maxCoeff() == 0.0);

    // 3d spot check on the degree-2 block: x^2, xy, xz, y^2, yz, z^2
    PolySpace p3(3, 3);
    REQUIRE(p3.size() == 10);
    const int deg2[6][3] = {{2, 0, 0}, {1, 1, 0}, {1, 0, 1},
                            {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
    for (Index i = 0; i < 6; ++i)
        for (Index k = 0; k < 3; ++k)
            CHECK(p3.exponents()(4 + i, k) == deg2[i][k]);
}

TEST_CASE("laplacian of the basis at the origin picks out pure squares") {
    PolySpace p(2, 4);
    Vector v = laplacian_basis(p, Vector::Zero(2));
    // basis: 1, x, y, x^2, xy, y^2, x^3, x^2 y, x y^2, y^3
    REQUIRE(v.size() == 10);
    for (Index i = 0; i < 10; ++i) {
        if (i == 3 || i == 5)
            CHECK(v(i) == 2.0);
        else
            CHECK(v(i) == 0.0);
    }
}

TEST_CASE("basis derivatives match finite differences") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int d : {1, 2, 3, 4}) {
        PolySpace p(d, 5);
        for (int rep = 0; rep < 5; ++rep) {
            Vector x(d);
            for (int i = 0; i < d; ++i)
                x(i) = u(rng);
            Vector lap = laplacian_basis(p, x);
            Matrix grad = gradient_basis(p, x);
            for (Index j = 0; j < p.size(); ++j) {
                auto pj = [&](const Vector& z) { return eval_basis(p, z)(j); };
                CHECK(std::abs(oracle::fd_laplacian(pj, x) - lap(j)) <=
                      1e-5 * (1.0 + std::abs(lap(j))));
                Vector g = oracle::fd_gradient(pj, x);
                CHECK((g - grad.row(j).transpose()).norm() <=
                      1e-7 * (1.0 + grad.row(j).norm()));
            }
        }
    }
}

TEST_CASE("vandermonde rows and rank on the five-point stencil") {
    auto X = grid_nodes(2, 1.0);
    REQUIRE(X.size() == 5);
    PolySpace p(2, 4);
    Matrix P = vandermonde(p, X);
    REQUIRE(P.rows() == 5);
    REQUIRE(P.cols() == 10);

    // node (1, 0) against the basis 1, x, y, x^2, xy, y^2, x^3, x^2 y, x y^2, y^3
    Index row = -1;
    for (Index i = 0; i < X.size(); ++i)
        if (X.point(i)(0) == 1.0 && X.point(i)(1) == 0.0)
            row = i;
    REQUIRE(row >= 0);
    Vector want(10);
    want << 1, 1, 0, 1, 0, 0, 1, 0, 0, 0;
    CHECK((P.row(row).transpose() - want).cwiseAbs().maxCoeff() == 0.0);

    RankNullity rn = rank_nullity(P);
    CHECK(rn.rank == 5);
    CHECK(rn.nullity == 5);
    CHECK(rn.nullity_t == 0);
}

TEST_CASE("rank plus nullity equals the basis size on random node sets") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int d : {2, 3}) {
        PolySpace p(d, 4);
        for (Index n : {3, 8, 25}) {
            Matrix pts(n, d);
            for (Index i = 0; i < n; ++i)
                for (int k = 0; k < d; ++k)
                    pts(i, k) = u(rng);
            RankNullity rn = rank_nullity(vandermonde(p, pts));
            CHECK(rn.rank + rn.nullity == p.size());
            CHECK(rn.rank + rn.nullity_t == n);
            CHECK(rn.rank <= std::min<Index>(n, p.size()));
        }
    }
}

TEST_CASE("dimension mismatches are rejected") {
    PolySpace p(2, 3);
    CHECK_THROWS_AS(eval_basis(p, Vector::Zero(3)), std::invalid_argument);
    CHECK_THROWS_AS(laplacian_basis(p, Vector::Zero(1)), std::invalid_argument);
    CHECK_THROWS_AS(gradient_basis(p, Vector::Zero(3)), std::invalid_argument);
    CHECK_THROWS_AS(vandermonde(p, Matrix::Zero(4, 3)), std::invalid_argument);
}
