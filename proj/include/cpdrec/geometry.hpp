#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "cpdrec/types.hpp"

namespace cpdrec {

// Affine change of variables y = (x - shift) / scale.
struct AffineScaling {
    Vector shift;
    double scale = 1.0;

    Vector apply(const Vector& x) const;
    Vector invert(const Vector& y) const;
};

// Apply the scaling to every row of pts.
Matrix scale_points(const AffineScaling& t, const Matrix& pts);

// Prescaling conventions: divide by a prescribed radius around the origin,
// or center at the centroid and scale so the nodes fit in the unit ball.
struct GridByR {
    double r;
};
struct Centroid {};
using PrescaleConvention = std::variant<GridByR, Centroid>;

struct PrescaleResult {
    NodeSet nodes;
    AffineScaling transform;
};
PrescaleResult prescale(const NodeSet& nodes, const PrescaleConvention& c);

// All integer lattice points alpha with |alpha|_2 <= r, ordered by squared
// norm and then lexicographically, so the origin comes first.
NodeSet grid_nodes(int d, double r);

// Nodes on the ellipse x^2/a^2 + y^2/b^2 = 1: parameters t_i = i h + eps_i
// with h = 2 pi / n and eps_i drawn uniformly from [-jitter h, jitter h].
struct EllipseSpec {
    double a = 1.0;
    double b = 0.75;
    int n = 0;
    double jitter = 0.3;  // amplitude as a fraction of the step; < 0.5 keeps nodes distinct
    std::uint64_t seed = 0;
};

struct EllipseNodes {
    NodeSet nodes;
    std::vector<double> params;  // the jittered parameters t_i
};
EllipseNodes ellipse_nodes(const EllipseSpec& spec);

Vector ellipse_point(const EllipseSpec& spec, double t);
// Unit outward normal at parameter t.
Vector ellipse_normal(const EllipseSpec& spec, double t);

// Reference data for the interpolation experiments.
double test_function(const Vector& x);          // sin(pi x) sin(pi y)
Vector test_function_gradient(const Vector& x);

// Derive an independent stream seed from a base seed and a salt (splitmix64
// step), so experiment cells get decorrelated generators.
std::uint64_t split_seed(std::uint64_t base, std::uint64_t salt);

}  // namespace cpdrec
