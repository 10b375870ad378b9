#include "cpdrec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace cpdrec {

namespace {

// 53-bit mantissa of a raw 64-bit draw, uniform on [0, 1).  Spelled out so
// the node sets are bit-identical across standard libraries.
double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

void check_ellipse(const EllipseSpec& spec) {
    if (!(spec.a > 0.0) || !(spec.b > 0.0))
        throw std::invalid_argument("ellipse semi-axes must be positive");
}

}  // namespace

Vector AffineScaling::apply(const Vector& x) const {
    if (x.size() != shift.size())
        throw std::invalid_argument("affine scaling: dimension mismatch");
    return (x - shift) / scale;
}

Vector AffineScaling::invert(const Vector& y) const {
    if (y.size() != shift.size())
        throw std::invalid_argument("affine scaling: dimension mismatch");
    return shift + scale * y;
}

Matrix scale_points(const AffineScaling& t, const Matrix& pts) {
    if (pts.cols() != t.shift.size())
        throw std::invalid_argument("affine scaling: dimension mismatch");
    return (pts.rowwise() - t.shift.transpose()) / t.scale;
}

PrescaleResult prescale(const NodeSet& nodes, const PrescaleConvention& c) {
    AffineScaling t;
    if (const GridByR* g = std::get_if<GridByR>(&c)) {
        if (!(g->r > 0.0))
            throw std::invalid_argument("prescale: radius must be positive");
        t.shift = Vector::Zero(nodes.dim());
        t.scale = g->r;
    } else {
        t.shift = nodes.points().colwise().mean().transpose();
        t.scale = (nodes.points().rowwise() - t.shift.transpose()).rowwise().norm().maxCoeff();
        if (!(t.scale > 0.0))
            throw std::invalid_argument("prescale: node set is degenerate (single point)");
    }
    return {NodeSet(scale_points(t, nodes.points())), t};
}

NodeSet grid_nodes(int d, double r) {
    if (d < 1)
        throw std::invalid_argument("grid_nodes: dimension must be at least 1");
    if (!(r >= 0.0))
        throw std::invalid_argument("grid_nodes: radius must be nonnegative");
    // Small slack so radii meant as sqrt(k) admit squared norm exactly k.
    double r2 = r * r + 1e-9;
    int reach = static_cast<int>(std::floor(std::sqrt(r2)));

    std::vector<std::vector<int>> kept;
    std::vector<int> alpha(static_cast<std::size_t>(d), -reach);
    while (true) {
        long long sq = 0;
        for (int a : alpha)
            sq += static_cast<long long>(a) * a;
        if (static_cast<double>(sq) <= r2)
            kept.push_back(alpha);
        int pos = d - 1;
        while (pos >= 0 && alpha[static_cast<std::size_t>(pos)] == reach) {
            alpha[static_cast<std::size_t>(pos)] = -reach;
            --pos;
        }
        if (pos < 0)
            break;
        ++alpha[static_cast<std::size_t>(pos)];
    }

    std::sort(kept.begin(), kept.end(),
              [](const std::vector<int>& u, const std::vector<int>& v) {
                  long long su = 0, sv = 0;
                  for (int a : u)
                      su += static_cast<long long>(a) * a;
                  for (int a : v)
                      sv += static_cast<long long>(a) * a;
                  if (su != sv)
                      return su < sv;
                  return u < v;
              });

    Matrix pts(static_cast<Index>(kept.size()), d);
    for (Index i = 0; i < pts.rows(); ++i)
        for (int k = 0; k < d; ++k)
            pts(i, k) = kept[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    return NodeSet(std::move(pts));
}

EllipseNodes ellipse_nodes(const EllipseSpec& spec) {
    check_ellipse(spec);
    if (spec.n < 1)
        throw std::invalid_argument("ellipse_nodes: need at least one node");
    if (!(spec.jitter >= 0.0) || spec.jitter >= 0.5)
        throw std::invalid_argument("ellipse_nodes: jitter must lie in [0, 0.5)");

    double h = 2.0 * std::numbers::pi / spec.n;
    std::mt19937_64 eng(spec.seed);
    Matrix pts(spec.n, 2);
    std::vector<double> params(static_cast<std::size_t>(spec.n));
    for (int i = 0; i < spec.n; ++i) {
        // One draw per node, in index order; part of the reproducibility contract.
        double u = to_unit(eng());
        double t = i * h + (2.0 * u - 1.0) * spec.jitter * h;
        params[static_cast<std::size_t>(i)] = t;
        pts(i, 0) = spec.a * std::cos(t);
        pts(i, 1) = spec.b * std::sin(t);
    }
    return {NodeSet(std::move(pts)), std::move(params)};
}

Vector ellipse_point(const EllipseSpec& spec, double t) {
    check_ellipse(spec);
    Vector x(2);
    x << spec.a * std::cos(t), spec.b * std::sin(t);
    return x;
}

Vector ellipse_normal(const EllipseSpec& spec, double t) {
    check_ellipse(spec);
    Vector nu(2);
    nu << std::cos(t) / spec.a, std::sin(t) / spec.b;
    return nu / nu.norm();
}

double test_function(const Vector& x) {
    if (x.size() != 2)
        throw std::invalid_argument("test_function is bivariate");
    return std::sin(std::numbers::pi * x(0)) * std::sin(std::numbers::pi * x(1));
}

Vector test_function_gradient(const Vector& x) {
    if (x.size() != 2)
        throw std::invalid_argument("test_function is bivariate");
    const double pi = std::numbers::pi;
    Vector g(2);
    g << pi * std::cos(pi * x(0)) * std::sin(pi * x(1)),
        pi * std::sin(pi * x(0)) * std::cos(pi * x(1));
    return g;
}

std::uint64_t split_seed(std::uint64_t base, std::uint64_t salt) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace cpdrec
