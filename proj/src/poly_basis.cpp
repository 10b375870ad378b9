#include "cpdrec/poly_basis.hpp"

#include <vector>

namespace cpdrec {

namespace {

// Exponent tuples of total degree `total`, first coordinate descending, then
// recursively on the rest; this is descending lex within one degree.
void gen_degree(int d, int pos, int remaining, std::vector<int>& cur,
                std::vector<std::vector<int>>& out) {
    if (pos == d - 1) {
        cur[pos] = remaining;
        out.push_back(cur);
        return;
    }
    for (int a = remaining; a >= 0; --a) {
        cur[pos] = a;
        gen_degree(d, pos + 1, remaining - a, cur, out);
    }
}

double ipow(double x, int e) {
    double v = 1.0;
    for (int i = 0; i < e; ++i)
        v *= x;
    return v;
}

// Monomial x^row with the exponent at position `skip` replaced by `sub`.
double monomial_except(const Eigen::MatrixXi& exps, Index row, const Vector& x,
                       int skip, int sub) {
    double v = ipow(x(skip), sub);
    for (Index k = 0; k < exps.cols(); ++k)
        if (k != skip)
            v *= ipow(x(k), exps(row, k));
    return v;
}

void check_dim(const PolySpace& p, Index got) {
    if (got != p.dim())
        throw std::invalid_argument("point dimension does not match polynomial space");
}

}  // namespace

PolySpace::PolySpace(int d, int q) : d_(d), q_(q) {
    if (d < 1)
        throw std::invalid_argument("polynomial space dimension must be at least 1");
    if (q < 1)
        throw std::invalid_argument("polynomial order must be at least 1");
    std::vector<std::vector<int>> rows;
    std::vector<int> cur(d);
    for (int total = 0; total < q; ++total)
        gen_degree(d, 0, total, cur, rows);
    exps_.resize(static_cast<Index>(rows.size()), d);
    for (Index i = 0; i < exps_.rows(); ++i)
        for (int k = 0; k < d; ++k)
            exps_(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
}

Vector eval_basis(const PolySpace& p, const Vector& x) {
    check_dim(p, x.size());
    const auto& e = p.exponents();
    Vector out(p.size());
    for (Index i = 0; i < e.rows(); ++i) {
        double v = 1.0;
        for (Index k = 0; k < e.cols(); ++k)
            v *= ipow(x(k), e(i, k));
        out(i) = v;
    }
    return out;
}

Vector laplacian_basis(const PolySpace& p, const Vector& x) {
    check_dim(p, x.size());
    const auto& e = p.exponents();
    Vector out = Vector::Zero(p.size());
    for (Index i = 0; i < e.rows(); ++i)
        for (Index k = 0; k < e.cols(); ++k) {
            int a = e(i, k);
            if (a >= 2)
                out(i) += a * (a - 1) *
                          monomial_except(e, i, x, static_cast<int>(k), a - 2);
        }
    return out;
}

Matrix gradient_basis(const PolySpace& p, const Vector& x) {
    check_dim(p, x.size());
    const auto& e = p.exponents();
    Matrix out = Matrix::Zero(p.size(), p.dim());
    for (Index i = 0; i < e.rows(); ++i)
        for (Index k = 0; k < e.cols(); ++k) {
            int a = e(i, k);
            if (a >= 1)
                out(i, k) = a * monomial_except(e, i, x, static_cast<int>(k), a - 1);
        }
    return out;
}

Matrix vandermonde(const PolySpace& p, const Matrix& pts) {
    check_dim(p, pts.cols());
    Matrix P(pts.rows(), p.size());
    for (Index i = 0; i < pts.rows(); ++i)
        P.row(i) = eval_basis(p, pts.row(i).transpose()).transpose();
    return P;
}

Matrix vandermonde(const PolySpace& p, const NodeSet& nodes) {
    return vandermonde(p, nodes.points());
}

}  // namespace cpdrec
