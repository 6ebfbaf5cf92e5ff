#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace pcp {

/// Uniform rectangular grid. Node counts are derived from the requested
/// spacing by rounding; the stored spacing is span/(count-1) per axis, so
/// counts and spacing are always mutually consistent.
struct SpatialGrid {
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> spacing;
    std::vector<std::int64_t> node_counts;

    int dim() const { return static_cast<int>(lower.size()); }
    std::int64_t total_nodes() const;

    /// Coordinate of node i along an axis; the last node snaps to upper.
    double axis_coord(int axis, std::int64_t i) const;

    /// Row-major flat indexing: the last axis varies fastest.
    void node_coord(std::int64_t flat, std::span<double> out) const;
    std::vector<double> node_coord(std::int64_t flat) const;
    std::int64_t nearest_node(std::span<const double> point) const;

    bool operator==(const SpatialGrid& other) const = default;
};

SpatialGrid build_grid(std::span<const double> lower,
                       std::span<const double> upper,
                       std::span<const double> spacing);
SpatialGrid build_grid(std::span<const double> lower,
                       std::span<const double> upper, double spacing);

/// Nodal values at one time level. Immutable by convention after
/// construction; shareable across threads.
struct ValueField {
    SpatialGrid grid;
    std::vector<double> values;
    double time_label = 0.0;

    void validate() const;  // sizes match, all values finite
};

/// Per-node control indices (argmax record of a maximization step).
struct PolicyField {
    SpatialGrid grid;
    std::vector<std::int32_t> controls;
    double time_label = 0.0;
};

/// Samples fn at every node. Throws pcp::numerical_error on a non-finite
/// sample (reported with node coordinates).
ValueField sample_field(const std::function<double(std::span<const double>)>& fn,
                        const SpatialGrid& grid, double time_label);

/// Multilinear interpolation with clamping to the grid box (constant
/// extrapolation outside). Weights are nonnegative and sum to 1, so the
/// operator is monotone and reproduces nodal values exactly at nodes.
double interpolate(const ValueField& field, std::span<const double> point);

/// The (node, weight) pairs interpolate() combines; exposed for property
/// checks. Sum of weights is 1 up to roundoff.
std::vector<std::pair<std::int64_t, double>> interpolation_weights(
    const SpatialGrid& grid, std::span<const double> point);

/// Nearest-node control lookup.
std::int32_t policy_lookup(const PolicyField& policy, std::span<const double> point);

/// max |a - b| over all nodes, or over nodes inside [box_lower, box_upper].
double sup_diff(const ValueField& a, const ValueField& b);
double sup_diff(const ValueField& a, const ValueField& b,
                std::span<const double> box_lower,
                std::span<const double> box_upper);

struct FieldDiff {
    double sup_abs = 0.0;
    double min_signed = 0.0;  // min over nodes of (a - b)
    double max_signed = 0.0;
};
FieldDiff field_diff(const ValueField& a, const ValueField& b,
                     std::span<const double> box_lower,
                     std::span<const double> box_upper);

struct SurfaceLevel {
    double time = 0.0;
    ValueField values;
    std::optional<PolicyField> policy;
};

/// Value fields at uniformly spaced time levels, ascending in time; the
/// last level sits at the horizon and holds the sampled terminal cost.
struct ValueSurface {
    std::vector<SurfaceLevel> levels;

    void validate() const;
    const SurfaceLevel& front() const { return levels.front(); }
    const SurfaceLevel& back() const { return levels.back(); }

    /// Level whose time matches t up to tolerance; throws if none does.
    const SurfaceLevel& level_at(double t, double tol = 1e-9) const;

    /// Space-time evaluation: multilinear in space, linear in time between
    /// levels, clamped (constant) beyond the first/last level.
    double value(double t, std::span<const double> x) const;
};

/// CSV: header x_1,...,x_d,value then one row per node in flat-index order.
void write_field_csv(const ValueField& field, std::ostream& os);

/// One file per level, named <prefix>_t<time_label>.csv inside dir.
/// Returns the written paths in level order.
std::vector<std::filesystem::path> write_surface_csv(
    const ValueSurface& surface, const std::filesystem::path& dir,
    const std::string& prefix);

}  // namespace pcp
