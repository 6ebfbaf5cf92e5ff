#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "pcp/grid.hpp"
#include "pcp/problem.hpp"

namespace pcp {

/// Discrete noise increment for one time step: atoms are stored as lattice
/// offsets in units of scale = sqrt(step), so moment identities that are
/// exact for the +-sqrt(h) tensor law evaluate to exact zeros instead of
/// sqrt-roundoff residue.
struct ZetaSupport {
    int dim = 1;       // p
    double step = 0.0;  // h
    double scale = 0.0; // sqrt(h)

    struct Atom {
        std::vector<double> offsets;  // physical point = scale * offsets
        double probability = 0.0;
    };
    std::vector<Atom> atoms;

    std::vector<double> point(std::size_t atom_index) const;
    void validate() const;  // probabilities positive, sum to 1 within 1e-15
};

/// The 2^p-atom tensor law with coordinates +-sqrt(h), each probability
/// 2^-p. Mean zero, covariance h*I, fourth moment h^2 (all exact).
ZetaSupport zeta_support(int p, double h);

struct MomentReport {
    double mean_norm = 0.0;
    double second_moment_error = 0.0;  // max_{i,j} |E z_i z_j - h delta_ij|
    double higher_moment_max = 0.0;    // max_{3<=k<=k_max, i} |E z_i^k|
    int k_max = 0;
};

/// Exact finite-sum moments over the atoms. For lattice-structured
/// supports the sums factor as (integer sign sums) * h^(k/2), which is why
/// the standard support reports exactly zero errors.
MomentReport moment_report(const ZetaSupport& support, int k_max);

/// Time-stepping parameters: grid, sub-step `time_step` (h), and the
/// policy interval (a multiple of h; equal to h for the plain scheme).
struct SchemeConfig {
    double time_step = 0.0;
    SpatialGrid grid;
    double policy_interval = 0.0;  // 0 means "equal to time_step"

    double effective_policy_interval() const {
        return policy_interval > 0.0 ? policy_interval : time_step;
    }
    /// Checks positivity, that policy_interval/time_step is an integer, and
    /// that the horizon is an integer number of policy intervals.
    void validate(const ControlProblem& problem) const;
    int substeps_per_interval() const;
};

/// One linear backward step with the control frozen: at each node x,
///   out(x) = f_a(t,x) h + sum_atoms prob * interp(next, x + b_a h + sigma_a z).
/// Nodes are processed by a parallel map with disjoint writes, so results
/// are bitwise schedule-independent.
ValueField sl_substep(const ValueField& next, const ControlProblem& problem,
                      int control_index, double t, double h);

/// One maximizing backward step: nodewise max over controls of the linear
/// step, argmax recorded with ties broken by the smallest control index.
/// Requires next.time_label == t + h.
std::pair<ValueField, PolicyField> sl_step(const ValueField& next,
                                           const ControlProblem& problem,
                                           double t, double h);

/// Backward recursion from the sampled terminal condition, maximizing every
/// step (policy_interval must equal time_step). Returns every time level,
/// ascending, with the argmax policy attached to all levels below the
/// horizon.
ValueSurface sl_solve(const ControlProblem& problem, const SchemeConfig& config);

/// Value under piecewise-constant policies: per policy interval, each
/// control runs m = policy_interval/time_step linear substeps (running cost
/// accumulated with the frozen control); the interval-start field is the
/// nodewise max over controls. With m = 1 this is exactly sl_solve.
/// Levels are the interval starts plus the horizon.
ValueSurface pcp_solve(const ControlProblem& problem, const SchemeConfig& config);

/// Smooth test function with caller-supplied exact derivatives.
struct SmoothTestFunction {
    std::function<double(double, std::span<const double>)> value;
    std::function<double(double, std::span<const double>)> time_derivative;
    std::function<void(double, std::span<const double>, std::span<double>)> gradient;
    /// Row-major d x d second derivative matrix.
    std::function<void(double, std::span<const double>, std::span<double>)> hessian;
};

/// Generator of the controlled diffusion applied to phi:
///   dphi/dt + b . grad(phi) + 1/2 tr(sigma sigma^T hess(phi)).
double generator_apply(const SmoothTestFunction& phi, const ControlProblem& problem,
                       int control_index, double t, std::span<const double> x);

/// | L_a phi(t,x) - (E[phi(t+h, x + b h + sigma z)] - phi(t,x)) / h |
/// with the expectation taken as the exact finite sum over the standard
/// zeta support (no interpolation involved).
double truncation_error(const SmoothTestFunction& phi, const ControlProblem& problem,
                        int control_index, double t, std::span<const double> x,
                        double h);

}  // namespace pcp
