#include "cpdrec/kernels.hpp"

#include <cmath>

namespace cpdrec {

namespace {

double checked_distance(const KernelSpec& k, const Vector& x, const Vector& y) {
    if (x.size() != k.d || y.size() != k.d)
        throw std::invalid_argument("point dimension does not match kernel dimension");
    return (x - y).norm();
}

}  // namespace

KernelSpec::KernelSpec(double s_, int d_) : s(s_), d(d_) {
    if (!(s > 0.0))
        throw std::invalid_argument("kernel order s must be positive");
    if (d < 1)
        throw std::invalid_argument("kernel dimension d must be at least 1");
}

bool KernelSpec::even_integer() const {
    return s == std::floor(s) && static_cast<long long>(s) % 2 == 0;
}

double KernelSpec::sign() const {
    // (-1)^(floor(s/2) + 1)
    return static_cast<long long>(std::floor(s / 2.0)) % 2 == 0 ? -1.0 : 1.0;
}

int KernelSpec::min_poly_order() const {
    return static_cast<int>(std::floor(s / 2.0)) + 1;
}

double radial_value(const KernelSpec& k, double r) {
    if (!(r >= 0.0))
        throw std::invalid_argument("radius must be nonnegative");
    if (r == 0.0)
        return 0.0;
    double p = std::pow(r, k.s);
    return k.even_integer() ? k.sign() * p * std::log(r) : k.sign() * p;
}

double kernel_eval(const KernelSpec& k, const Vector& x, const Vector& y) {
    return radial_value(k, checked_distance(k, x, y));
}

double kernel_laplacian(const KernelSpec& k, const Vector& x, const Vector& y) {
    if (k.even_integer())
        throw kernel_derivative_error(
            "laplacian of an even-order polyharmonic kernel is not implemented");
    if (!(k.s > 2.0))
        throw kernel_derivative_error("kernel laplacian requires s > 2");
    double r = checked_distance(k, x, y);
    if (r == 0.0)
        return 0.0;
    return k.sign() * k.s * (k.s + k.d - 2.0) * std::pow(r, k.s - 2.0);
}

double kernel_bilaplacian(const KernelSpec& k, const Vector& x, const Vector& y) {
    if (k.even_integer())
        throw kernel_derivative_error(
            "bilaplacian of an even-order polyharmonic kernel is not implemented");
    if (!(k.s > 4.0))
        throw kernel_derivative_error("kernel bilaplacian requires s > 4");
    double r = checked_distance(k, x, y);
    if (r == 0.0)
        return 0.0;
    return k.sign() * k.s * (k.s - 2.0) * (k.s + k.d - 2.0) * (k.s + k.d - 4.0) *
           std::pow(r, k.s - 4.0);
}

Vector kernel_gradient(const KernelSpec& k, const Vector& x, const Vector& y) {
    if (!(k.s > 1.0))
        throw kernel_derivative_error("kernel gradient requires s > 1");
    double r = checked_distance(k, x, y);
    if (r == 0.0) {
        if (k.s <= 2.0)
            throw kernel_derivative_error(
                "kernel gradient is singular at coincident points for s <= 2");
        return Vector::Zero(k.d);
    }
    double factor = k.even_integer()
                        ? k.sign() * (k.s * std::log(r) + 1.0) * std::pow(r, k.s - 2.0)
                        : k.sign() * k.s * std::pow(r, k.s - 2.0);
    return factor * (x - y);
}

Matrix kernel_gram(const KernelSpec& k, const Matrix& pts) {
    if (pts.cols() != k.d)
        throw std::invalid_argument("point dimension does not match kernel dimension");
    Index n = pts.rows();
    Matrix K(n, n);
    for (Index i = 0; i < n; ++i) {
        K(i, i) = 0.0;
        for (Index j = 0; j < i; ++j) {
            double v = radial_value(k, (pts.row(i) - pts.row(j)).norm());
            K(i, j) = v;
            K(j, i) = v;
        }
    }
    return K;
}

}  // namespace cpdrec
