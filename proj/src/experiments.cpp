#include "cpdrec/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <sstream>

namespace cpdrec {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string opt_num(const std::optional<double>& v) {
    return v ? num(*v) : "-";
}

std::string fixed1(const std::optional<double>& v) {
    if (!v)
        return "-";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.1f", *v);
    return buf;
}

std::string sci1(const std::optional<double>& v) {
    if (!v)
        return "-";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.1e", *v);
    return buf;
}

std::string pad(const std::string& s, int width) {
    if (static_cast<int>(s.size()) >= width)
        return s;
    return std::string(static_cast<std::size_t>(width) - s.size(), ' ') + s;
}

// Split a CSV line into exactly n fields; the last field absorbs any further
// commas so free-text status messages survive the round trip.
std::vector<std::string> split_fields(const std::string& line, std::size_t n) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos)
            throw std::runtime_error("malformed csv line: " + line);
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    out.push_back(line.substr(start));
    return out;
}

double parse_num(const std::string& s) {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size())
        throw std::runtime_error("malformed number in csv: " + s);
    return v;
}

std::optional<double> parse_opt(const std::string& s) {
    if (s == "-")
        return std::nullopt;
    return parse_num(s);
}

std::string status_of(const std::string& error) {
    return error.empty() ? "ok" : "error: " + error;
}

std::string error_of(const std::string& status, const std::string& line) {
    if (status == "ok")
        return {};
    if (status.rfind("error: ", 0) == 0)
        return status.substr(7);
    throw std::runtime_error("malformed status in csv line: " + line);
}

std::vector<std::string> body_lines(const std::string& text, const std::string& header) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != header)
        throw std::runtime_error("unexpected csv header: " + line);
    std::vector<std::string> out;
    while (std::getline(in, line))
        if (!line.empty())
            out.push_back(line);
    return out;
}

std::uint64_t cell_salt(double s, int q, int n) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &s, sizeof bits);
    return bits ^ (static_cast<std::uint64_t>(q) * 0x9e3779b97f4a7c15ull) ^
           (static_cast<std::uint64_t>(n) * 0xc2b2ae3d27d4eb4full);
}

}  // namespace

std::optional<RadiusSpec> parse_radius(const std::string& text) {
    if (text == "sqrt2")
        return RadiusSpec{text, std::sqrt(2.0)};
    if (text == "sqrt3")
        return RadiusSpec{text, std::sqrt(3.0)};
    try {
        double v = parse_num(text);
        if (!(v > 0.0) || !std::isfinite(v))
            return std::nullopt;
        return RadiusSpec{text, v};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::vector<RadiusSpec> default_radii() {
    return {{"1", 1.0},
            {"sqrt2", std::sqrt(2.0)},
            {"sqrt3", std::sqrt(3.0)},
            {"2", 2.0}};
}

std::vector<GridRow> run_grid_experiment(const GridConfig& cfg) {
    std::vector<GridRow> rows;
    for (int d : cfg.dims) {
        for (const RadiusSpec& rs : cfg.radii) {
            GridRow row;
            row.d = d;
            row.r = rs;
            try {
                NodeSet X = grid_nodes(d, rs.value);
                row.n = X.size();
                KernelSpec kernel(cfg.s, d);
                PolySpace space(d, cfg.q);
                RankNullity rn = rank_nullity(vandermonde(space, X));
                row.dim_null_P = rn.nullity;
                row.dim_null_Pt = rn.nullity_t;

                // Scale by the radius the stencil actually attains, so radii
                // that admit the same lattice points (sqrt2 vs sqrt3 in the
                // plane) produce identical rows.
                double attained = X.points().rowwise().norm().maxCoeff();
                std::optional<AffineScaling> pre;
                if (attained > 0.0)
                    pre = prescale(X, GridByR{attained}).transform;

                WeightReport rep = differentiation_weights(
                    X, LinearFunctional::laplacian_at(Vector::Zero(d)), kernel, space, pre);
                row.worst_case = rep.worst_case;
                row.weight_l1 = rep.weight_l1;
                row.cond = rep.cond;
                row.dim_null_P = rep.dim_null_P;
                row.dim_null_Pt = rep.dim_null_Pt;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<EllipseRow> run_ellipse_experiment(const EllipseConfig& cfg) {
    std::vector<EllipseRow> rows;
    for (const EllipseCase& c : cfg.cases) {
        for (int n : cfg.sizes) {
            EllipseRow row;
            row.s = c.s;
            row.q = c.q;
            row.n = n;
            if (n < 2 * c.q - 1) {
                // Not enough nodes for the polynomial space restricted to the
                // curve; reported as a dash row.
                row.skipped = true;
                rows.push_back(std::move(row));
                continue;
            }
            try {
                EllipseSpec es;
                es.n = n;
                es.jitter = cfg.jitter;
                es.seed = split_seed(cfg.seed, cell_salt(c.s, c.q, n));
                EllipseNodes en = ellipse_nodes(es);

                KernelSpec kernel(c.s, 2);
                PolySpace space(2, c.q);
                Vector f(n);
                for (Index i = 0; i < n; ++i)
                    f(i) = test_function(en.nodes.point(i));
                Interpolant sigma = fit_interpolant(en.nodes, f, kernel, space);
                row.cond = sigma.cond;

                int samples = n * cfg.refine;
                double step = 2.0 * std::numbers::pi / samples;
                double emax = 0.0, gmax = 0.0;
                for (int j = 0; j < samples; ++j) {
                    double t = j * step;
                    Vector x = ellipse_point(es, t);
                    Vector nu = ellipse_normal(es, t);
                    emax = std::max(emax, std::abs(eval_interpolant(sigma, x) - test_function(x)));
                    Vector gf = test_function_gradient(x);
                    Vector diff = surface_gradient(sigma, x, nu) - (gf - gf.dot(nu) * nu);
                    gmax = std::max(gmax, diff.norm());
                }
                row.max_error = emax;
                row.max_grad_error = gmax;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

namespace {
const char* kGridHeader = "d,r,n,dim_null_P,dim_null_Pt,worst_case,weight_l1,cond,status";
const char* kEllipseHeader = "s,q,n,max_error,max_grad_error,cond,status";
}  // namespace

std::string grid_csv(const std::vector<GridRow>& rows) {
    std::ostringstream out;
    out << kGridHeader << "\n";
    for (const GridRow& r : rows)
        out << r.d << ',' << r.r.label << ',' << r.n << ',' << r.dim_null_P << ','
            << r.dim_null_Pt << ',' << opt_num(r.worst_case) << ','
            << opt_num(r.weight_l1) << ',' << opt_num(r.cond) << ','
            << status_of(r.error) << "\n";
    return out.str();
}

std::vector<GridRow> parse_grid_csv(const std::string& text) {
    std::vector<GridRow> rows;
    for (const std::string& line : body_lines(text, kGridHeader)) {
        auto f = split_fields(line, 9);
        GridRow r;
        r.d = static_cast<int>(std::stoll(f[0]));
        auto rad = parse_radius(f[1]);
        if (!rad)
            throw std::runtime_error("malformed radius in csv: " + f[1]);
        r.r = *rad;
        r.n = std::stoll(f[2]);
        r.dim_null_P = std::stoll(f[3]);
        r.dim_null_Pt = std::stoll(f[4]);
        r.worst_case = parse_opt(f[5]);
        r.weight_l1 = parse_opt(f[6]);
        r.cond = parse_opt(f[7]);
        r.error = error_of(f[8], line);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string ellipse_csv(const std::vector<EllipseRow>& rows) {
    std::ostringstream out;
    out << kEllipseHeader << "\n";
    for (const EllipseRow& r : rows) {
        std::string status = r.skipped ? "skipped" : status_of(r.error);
        out << num(r.s) << ',' << r.q << ',' << r.n << ',' << opt_num(r.max_error)
            << ',' << opt_num(r.max_grad_error) << ',' << opt_num(r.cond) << ','
            << status << "\n";
    }
    return out.str();
}

std::vector<EllipseRow> parse_ellipse_csv(const std::string& text) {
    std::vector<EllipseRow> rows;
    for (const std::string& line : body_lines(text, kEllipseHeader)) {
        auto f = split_fields(line, 7);
        EllipseRow r;
        r.s = parse_num(f[0]);
        r.q = static_cast<int>(std::stoll(f[1]));
        r.n = static_cast<int>(std::stoll(f[2]));
        r.max_error = parse_opt(f[3]);
        r.max_grad_error = parse_opt(f[4]);
        r.cond = parse_opt(f[5]);
        if (f[6] == "skipped")
            r.skipped = true;
        else
            r.error = error_of(f[6], line);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string grid_table(const std::vector<GridRow>& rows) {
    std::ostringstream out;
    out << pad("d", 3) << pad("r", 8) << pad("|X|", 6) << pad("dim N(P)", 10)
        << pad("dim N(P^T)", 12) << pad("E(w)", 8) << pad("|w|_1", 8)
        << pad("cond", 10) << "  status\n";
    for (const GridRow& r : rows)
        out << pad(std::to_string(r.d), 3) << pad(r.r.label, 8)
            << pad(std::to_string(r.n), 6) << pad(std::to_string(r.dim_null_P), 10)
            << pad(std::to_string(r.dim_null_Pt), 12) << pad(fixed1(r.worst_case), 8)
            << pad(fixed1(r.weight_l1), 8) << pad(sci1(r.cond), 10) << "  "
            << status_of(r.error) << "\n";
    return out.str();
}

std::string ellipse_table(const std::vector<EllipseRow>& rows) {
    std::ostringstream out;
    out << pad("s", 4) << pad("q", 4) << pad("|X|", 6) << pad("max", 10)
        << pad("maxg", 10) << pad("cond", 10) << "  status\n";
    for (const EllipseRow& r : rows) {
        char sbuf[40];
        std::snprintf(sbuf, sizeof sbuf, "%g", r.s);
        out << pad(sbuf, 4) << pad(std::to_string(r.q), 4)
            << pad(std::to_string(r.n), 6) << pad(sci1(r.max_error), 10)
            << pad(sci1(r.max_grad_error), 10) << pad(sci1(r.cond), 10) << "  "
            << (r.skipped ? "skipped" : status_of(r.error)) << "\n";
    }
    return out.str();
}

std::string grid_markdown(const std::vector<GridRow>& rows) {
    std::ostringstream out;
    out << "| d | r | n | dim N(P) | dim N(P^T) | E(w) | w_l1 | cond | status |\n";
    out << "|---|---|---|----------|------------|------|------|------|--------|\n";
    for (const GridRow& r : rows)
        out << "| " << r.d << " | " << r.r.label << " | " << r.n << " | "
            << r.dim_null_P << " | " << r.dim_null_Pt << " | " << fixed1(r.worst_case)
            << " | " << fixed1(r.weight_l1) << " | " << sci1(r.cond) << " | "
            << status_of(r.error) << " |\n";
    return out.str();
}

std::string ellipse_markdown(const std::vector<EllipseRow>& rows) {
    std::ostringstream out;
    out << "| s | q | n | max | maxg | cond | status |\n";
    out << "|---|---|---|-----|------|------|--------|\n";
    for (const EllipseRow& r : rows) {
        char sbuf[40];
        std::snprintf(sbuf, sizeof sbuf, "%g", r.s);
        out << "| " << sbuf << " | " << r.q << " | " << r.n << " | "
            << sci1(r.max_error) << " | " << sci1(r.max_grad_error) << " | "
            << sci1(r.cond) << " | " << (r.skipped ? "skipped" : status_of(r.error))
            << " |\n";
    }
    return out.str();
}

int exit_code(const std::vector<GridRow>& rows) {
    for (const GridRow& r : rows)
        if (!r.error.empty())
            return 1;
    return 0;
}

int exit_code(const std::vector<EllipseRow>& rows) {
    for (const EllipseRow& r : rows)
        if (!r.error.empty())
            return 1;
    return 0;
}

}  // namespace cpdrec
