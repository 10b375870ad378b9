#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpdrec/recovery.hpp"

namespace cpdrec {

// A stencil radius together with the label it was requested by, so that
// sqrt2/sqrt3 survive serialization exactly.
struct RadiusSpec {
    std::string label;
    double value;
};

// Accepts "sqrt2", "sqrt3" or any positive decimal number.
std::optional<RadiusSpec> parse_radius(const std::string& text);
std::vector<RadiusSpec> default_radii();

// Laplacian differentiation weights at the origin of integer-lattice ball
// stencils, one row per (d, r).
struct GridConfig {
    std::vector<int> dims = {2, 3, 4, 5};
    std::vector<RadiusSpec> radii = default_radii();
    double s = 7.0;
    int q = 4;
};

struct GridRow {
    int d = 0;
    RadiusSpec r;
    Index n = 0;
    Index dim_null_P = 0;
    Index dim_null_Pt = 0;
    std::optional<double> worst_case;
    std::optional<double> weight_l1;
    std::optional<double> cond;
    std::string error;  // empty on success
};

std::vector<GridRow> run_grid_experiment(const GridConfig& cfg);

// Interpolation of sin(pi x) sin(pi y) on jittered ellipse nodes, one row per
// (s, q, |X|).  Rows with |X| < 2q - 1 are reported as dashes.
struct EllipseCase {
    double s;
    int q;
};

struct EllipseConfig {
    std::vector<EllipseCase> cases = {{5.0, 3}, {7.0, 4}, {9.0, 5}};
    std::vector<int> sizes = {5, 10, 20, 40, 80, 160, 320};
    std::uint64_t seed = 1;
    double jitter = 0.3;
    int refine = 20;  // errors are sampled at parameter step h / refine
};

struct EllipseRow {
    double s = 0.0;
    int q = 0;
    int n = 0;
    bool skipped = false;  // |X| < 2q - 1
    std::optional<double> max_error;       // max |sigma - f| over the samples
    std::optional<double> max_grad_error;  // max |surface grad (sigma - f)|
    std::optional<double> cond;
    std::string error;
};

std::vector<EllipseRow> run_ellipse_experiment(const EllipseConfig& cfg);

// Full-precision CSV; parse is the exact inverse of the writer.
std::string grid_csv(const std::vector<GridRow>& rows);
std::string ellipse_csv(const std::vector<EllipseRow>& rows);
std::vector<GridRow> parse_grid_csv(const std::string& text);
std::vector<EllipseRow> parse_ellipse_csv(const std::string& text);

// Aligned tables for stdout (errors and cond in 2-significant-digit
// scientific notation, E and |w|_1 with one decimal) and markdown variants.
std::string grid_table(const std::vector<GridRow>& rows);
std::string ellipse_table(const std::vector<EllipseRow>& rows);
std::string grid_markdown(const std::vector<GridRow>& rows);
std::string ellipse_markdown(const std::vector<EllipseRow>& rows);

// 0 iff every requested row computed (skipped dash rows count as computed).
int exit_code(const std::vector<GridRow>& rows);
int exit_code(const std::vector<EllipseRow>& rows);

}  // namespace cpdrec
