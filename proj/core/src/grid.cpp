#include "pcp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "pcp/errors.hpp"

namespace pcp {

namespace {

std::string point_string(std::span<const double> x) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(x[i]);
    }
    return s + ")";
}

void format_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace

std::int64_t SpatialGrid::total_nodes() const {
    std::int64_t n = 1;
    for (std::int64_t c : node_counts) n *= c;
    return n;
}

double SpatialGrid::axis_coord(int axis, std::int64_t i) const {
    if (i == node_counts[axis] - 1) return upper[axis];
    return lower[axis] + static_cast<double>(i) * spacing[axis];
}

void SpatialGrid::node_coord(std::int64_t flat, std::span<double> out) const {
    for (int axis = dim() - 1; axis >= 0; --axis) {
        const std::int64_t c = node_counts[axis];
        out[axis] = axis_coord(axis, flat % c);
        flat /= c;
    }
}

std::vector<double> SpatialGrid::node_coord(std::int64_t flat) const {
    std::vector<double> out(static_cast<std::size_t>(dim()));
    node_coord(flat, out);
    return out;
}

std::int64_t SpatialGrid::nearest_node(std::span<const double> point) const {
    std::int64_t flat = 0;
    for (int axis = 0; axis < dim(); ++axis) {
        const std::int64_t c = node_counts[axis];
        double u = (point[axis] - lower[axis]) / spacing[axis];
        std::int64_t i = static_cast<std::int64_t>(std::llround(u));
        i = std::clamp<std::int64_t>(i, 0, c - 1);
        flat = flat * c + i;
    }
    return flat;
}

SpatialGrid build_grid(std::span<const double> lower,
                       std::span<const double> upper,
                       std::span<const double> spacing) {
    if (lower.size() != upper.size() || lower.size() != spacing.size())
        throw std::invalid_argument("grid bounds/spacing dimension mismatch");
    if (lower.empty()) throw std::invalid_argument("grid dimension must be >= 1");

    SpatialGrid grid;
    grid.lower.assign(lower.begin(), lower.end());
    grid.upper.assign(upper.begin(), upper.end());
    const int d = grid.dim();
    grid.spacing.resize(d);
    grid.node_counts.resize(d);
    for (int axis = 0; axis < d; ++axis) {
        if (!(upper[axis] > lower[axis]))
            throw std::invalid_argument("grid box must have upper > lower");
        if (!(spacing[axis] > 0.0))
            throw std::invalid_argument("grid spacing must be positive");
        const double span = upper[axis] - lower[axis];
        const std::int64_t cells =
            std::max<std::int64_t>(1, std::llround(span / spacing[axis]));
        grid.node_counts[axis] = cells + 1;
        grid.spacing[axis] = span / static_cast<double>(cells);
    }
    return grid;
}

SpatialGrid build_grid(std::span<const double> lower,
                       std::span<const double> upper, double spacing) {
    std::vector<double> s(lower.size(), spacing);
    return build_grid(lower, upper, s);
}

void ValueField::validate() const {
    if (static_cast<std::int64_t>(values.size()) != grid.total_nodes())
        throw std::invalid_argument("value field size does not match grid");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            throw numerical_error("non-finite field value at node " +
                                  point_string(grid.node_coord(static_cast<std::int64_t>(i))));
    }
}

ValueField sample_field(const std::function<double(std::span<const double>)>& fn,
                        const SpatialGrid& grid, double time_label) {
    ValueField field;
    field.grid = grid;
    field.time_label = time_label;
    const std::int64_t n = grid.total_nodes();
    field.values.resize(static_cast<std::size_t>(n));
    std::vector<double> x(static_cast<std::size_t>(grid.dim()));
    for (std::int64_t i = 0; i < n; ++i) {
        grid.node_coord(i, x);
        const double v = fn(x);
        if (!std::isfinite(v))
            throw numerical_error("non-finite sample at node " + point_string(x));
        field.values[static_cast<std::size_t>(i)] = v;
    }
    return field;
}

namespace {

// Per-axis clamped cell index and fraction. Shared by interpolate() and
// interpolation_weights() so both agree bitwise.
struct AxisCell {
    std::int64_t i0;
    double frac;
};

AxisCell locate(const SpatialGrid& grid, int axis, double p) {
    const std::int64_t c = grid.node_counts[axis];
    const double lo = grid.lower[axis];
    const double hi = grid.upper[axis];
    if (p <= lo) return {0, 0.0};
    if (p >= hi) return {c - 2, 1.0};
    double u = (p - lo) / grid.spacing[axis];
    std::int64_t i0 = static_cast<std::int64_t>(u);
    if (i0 > c - 2) i0 = c - 2;
    double frac = u - static_cast<double>(i0);
    if (frac < 0.0) frac = 0.0;
    if (frac > 1.0) frac = 1.0;
    return {i0, frac};
}

}  // namespace

double interpolate(const ValueField& field, std::span<const double> point) {
    const SpatialGrid& grid = field.grid;
    const int d = grid.dim();
    if (static_cast<int>(point.size()) != d)
        throw std::invalid_argument("interpolation point dimension mismatch");

    AxisCell cells[16];
    if (d > 16) throw std::invalid_argument("grid dimension > 16 unsupported");
    for (int axis = 0; axis < d; ++axis) {
        if (!std::isfinite(point[axis]))
            throw std::invalid_argument("non-finite interpolation point");
        cells[axis] = locate(grid, axis, point[axis]);
    }

    double acc = 0.0;
    const unsigned corners = 1u << d;
    for (unsigned corner = 0; corner < corners; ++corner) {
        double weight = 1.0;
        std::int64_t flat = 0;
        for (int axis = 0; axis < d; ++axis) {
            const bool high = (corner >> axis) & 1u;
            weight *= high ? cells[axis].frac : 1.0 - cells[axis].frac;
            flat = flat * grid.node_counts[axis] + cells[axis].i0 + (high ? 1 : 0);
        }
        acc += weight * field.values[static_cast<std::size_t>(flat)];
    }
    return acc;
}

std::vector<std::pair<std::int64_t, double>> interpolation_weights(
    const SpatialGrid& grid, std::span<const double> point) {
    const int d = grid.dim();
    if (static_cast<int>(point.size()) != d)
        throw std::invalid_argument("interpolation point dimension mismatch");
    std::vector<AxisCell> cells(static_cast<std::size_t>(d));
    for (int axis = 0; axis < d; ++axis) {
        if (!std::isfinite(point[axis]))
            throw std::invalid_argument("non-finite interpolation point");
        cells[axis] = locate(grid, axis, point[axis]);
    }
    std::vector<std::pair<std::int64_t, double>> out;
    const unsigned corners = 1u << d;
    out.reserve(corners);
    for (unsigned corner = 0; corner < corners; ++corner) {
        double weight = 1.0;
        std::int64_t flat = 0;
        for (int axis = 0; axis < d; ++axis) {
            const bool high = (corner >> axis) & 1u;
            weight *= high ? cells[axis].frac : 1.0 - cells[axis].frac;
            flat = flat * grid.node_counts[axis] + cells[axis].i0 + (high ? 1 : 0);
        }
        out.emplace_back(flat, weight);
    }
    return out;
}

std::int32_t policy_lookup(const PolicyField& policy, std::span<const double> point) {
    const std::int64_t node = policy.grid.nearest_node(point);
    return policy.controls[static_cast<std::size_t>(node)];
}

namespace {

void require_same_grid(const ValueField& a, const ValueField& b) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument("value fields live on different grids");
}

bool node_in_box(std::span<const double> x, std::span<const double> lo,
                 std::span<const double> hi) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
}

}  // namespace

double sup_diff(const ValueField& a, const ValueField& b) {
    require_same_grid(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

FieldDiff field_diff(const ValueField& a, const ValueField& b,
                     std::span<const double> box_lower,
                     std::span<const double> box_upper) {
    require_same_grid(a, b);
    if (static_cast<int>(box_lower.size()) != a.grid.dim() ||
        static_cast<int>(box_upper.size()) != a.grid.dim())
        throw std::invalid_argument("interior box dimension mismatch");
    FieldDiff diff;
    diff.min_signed = std::numeric_limits<double>::infinity();
    diff.max_signed = -std::numeric_limits<double>::infinity();
    std::vector<double> x(static_cast<std::size_t>(a.grid.dim()));
    bool any = false;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        a.grid.node_coord(static_cast<std::int64_t>(i), x);
        if (!node_in_box(x, box_lower, box_upper)) continue;
        any = true;
        const double d = a.values[i] - b.values[i];
        diff.sup_abs = std::max(diff.sup_abs, std::abs(d));
        diff.min_signed = std::min(diff.min_signed, d);
        diff.max_signed = std::max(diff.max_signed, d);
    }
    if (!any) throw std::invalid_argument("interior box contains no grid nodes");
    return diff;
}

double sup_diff(const ValueField& a, const ValueField& b,
                std::span<const double> box_lower,
                std::span<const double> box_upper) {
    return field_diff(a, b, box_lower, box_upper).sup_abs;
}

void ValueSurface::validate() const {
    if (levels.empty()) throw std::invalid_argument("empty value surface");
    for (std::size_t i = 1; i < levels.size(); ++i) {
        if (!(levels[i].time > levels[i - 1].time))
            throw std::invalid_argument("surface levels must ascend in time");
    }
    for (const auto& level : levels) level.values.validate();
}

const SurfaceLevel& ValueSurface::level_at(double t, double tol) const {
    for (const auto& level : levels)
        if (std::abs(level.time - t) <= tol) return level;
    throw std::invalid_argument("no surface level at time " + std::to_string(t));
}

double ValueSurface::value(double t, std::span<const double> x) const {
    if (levels.empty()) throw std::invalid_argument("empty value surface");
    if (t <= levels.front().time) return interpolate(levels.front().values, x);
    if (t >= levels.back().time) return interpolate(levels.back().values, x);
    std::size_t hi = 1;
    while (levels[hi].time < t) ++hi;
    const auto& a = levels[hi - 1];
    const auto& b = levels[hi];
    const double w = (t - a.time) / (b.time - a.time);
    return (1.0 - w) * interpolate(a.values, x) + w * interpolate(b.values, x);
}

void write_field_csv(const ValueField& field, std::ostream& os) {
    const int d = field.grid.dim();
    std::string line;
    for (int axis = 0; axis < d; ++axis) {
        line += "x_" + std::to_string(axis + 1);
        line += ',';
    }
    line += "value\n";
    os << line;
    std::vector<double> x(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < field.values.size(); ++i) {
        field.grid.node_coord(static_cast<std::int64_t>(i), x);
        line.clear();
        for (int axis = 0; axis < d; ++axis) {
            format_double(line, x[static_cast<std::size_t>(axis)]);
            line += ',';
        }
        format_double(line, field.values[i]);
        line += '\n';
        os << line;
    }
}

std::vector<std::filesystem::path> write_surface_csv(
    const ValueSurface& surface, const std::filesystem::path& dir,
    const std::string& prefix) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const auto& level : surface.levels) {
        char label[40];
        std::snprintf(label, sizeof(label), "%.6f", level.time);
        const auto path = dir / (prefix + "_t" + label + ".csv");
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot open " + path.string());
        write_field_csv(level.values, os);
        written.push_back(path);
    }
    return written;
}

}  // namespace pcp
