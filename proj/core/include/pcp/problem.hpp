#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace pcp {

/// Coefficient callbacks write into caller-provided buffers so solver hot
/// loops run allocation-free. `a` is the control point (a vector in R^m).
using DriftFn = std::function<void(double t, std::span<const double> x,
                                   std::span<const double> a,
                                   std::span<double> out)>;
/// Diffusion output is row-major d x p.
using DiffusionFn = std::function<void(double t, std::span<const double> x,
                                       std::span<const double> a,
                                       std::span<double> out)>;
using RunningCostFn = std::function<double(double t, std::span<const double> x,
                                           std::span<const double> a)>;
using TerminalCostFn = std::function<double(std::span<const double> x)>;

/// Declared coefficient bounds: `coefficient_bound` covers drift/diffusion
/// magnitudes and their space-Lipschitz / time-Holder-1/2 constants,
/// `cost_bound` covers the running cost and the terminal cost's Lipschitz
/// constant.
struct DeclaredBounds {
    double coefficient_bound = 0.0;
    double cost_bound = 0.0;
};

/// A finite-horizon controlled diffusion with running and terminal cost.
///
/// The control set is a finite, duplicate-free list of points; solvers
/// maximize over it by enumeration. Immutable after construction; coefficient
/// callbacks must be reentrant (they are evaluated concurrently).
struct ControlProblem {
    int state_dim = 1;  // d
    int noise_dim = 1;  // p
    double horizon = 1.0;

    std::vector<std::vector<double>> controls;

    DriftFn drift;
    DiffusionFn diffusion;
    RunningCostFn running_cost;
    TerminalCostFn terminal_cost;

    std::optional<DeclaredBounds> declared_bounds;

    /// Throws std::invalid_argument if dimensions, horizon, control list or
    /// callbacks are malformed.
    void validate() const;

    int control_count() const { return static_cast<int>(controls.size()); }

    /// Bounds-checked control lookup.
    std::span<const double> control(int a) const;
};

struct CoeffEval {
    std::vector<double> drift;      // d
    std::vector<double> diffusion;  // d x p, row-major
    double running_cost = 0.0;
};

/// Evaluates the coefficient triple at (t, x, controls[a]).
/// Pure; throws on an out-of-range control index or a non-finite value
/// (a non-finite coefficient signals an ill-posed problem definition).
CoeffEval eval_coeffs(const ControlProblem& problem, double t,
                      std::span<const double> x, int a);

struct LipschitzEstimate {
    double sup_norm = 0.0;
    double space_lipschitz = 0.0;
    double time_holder = 0.0;  // Holder exponent 1/2
};

/// Empirical sup-norm / Lipschitz / Holder constants over sampled point
/// pairs. These are estimates from below; they are never proofs.
struct LipschitzReport {
    LipschitzEstimate drift;
    LipschitzEstimate diffusion;
    LipschitzEstimate running_cost;
    LipschitzEstimate terminal_cost;  // time_holder is 0 by construction

    /// Aggregates over the (t,x,a)-dependent coefficients b, sigma, f.
    double sup_norm() const;
    double space_lipschitz() const;
    double time_holder() const;

    /// True if the sampled constants respect the declared bounds (with a
    /// small slack for sampling noise in the ratios).
    bool within(const DeclaredBounds& bounds, double slack = 1e-9) const;
};

/// Samples coefficient magnitudes and difference quotients over
/// [0, horizon] x box, maximizing over all controls. Deterministic given
/// the seed. Throws on a degenerate box or sample_count < 2.
LipschitzReport estimate_lipschitz(const ControlProblem& problem,
                                   std::span<const double> box_lower,
                                   std::span<const double> box_upper,
                                   int sample_count, std::uint64_t seed);

}  // namespace pcp
