#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "pcp/grid.hpp"
#include "pcp/problem.hpp"

namespace pcp {

enum class PolicyMode { open_loop, feedback };

/// A control process held constant on consecutive intervals of length
/// interval_length: either a fixed control index per interval (open loop)
/// or a per-interval policy field looked up at the state observed at the
/// interval start (feedback).
struct PiecewisePolicy {
    double interval_length = 0.0;
    PolicyMode mode = PolicyMode::open_loop;
    std::vector<int> open_loop;
    std::vector<PolicyField> feedback;

    int interval_count() const {
        return static_cast<int>(mode == PolicyMode::open_loop ? open_loop.size()
                                                              : feedback.size());
    }
    int control_at(int interval, std::span<const double> state) const;

    /// Checks interval coverage of [0, duration] and control index validity.
    void validate(const ControlProblem& problem, double duration) const;
};

PiecewisePolicy constant_policy(int control_index, double interval_length,
                                int intervals);

struct PathSample {
    std::vector<double> times;                 // elapsed, times[0] == 0
    std::vector<std::vector<double>> states;   // one state per time
    std::vector<double> running_costs;         // quadrature of f up to each time
    double accumulated_cost = 0.0;             // == running_costs.back()
};

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(path_count)
    std::int64_t path_count = 0;
    std::uint64_t seed = 0;
};

/// Piecewise-constant perturbation of coefficient arguments: on interval n
/// the coefficients are read at (t + time_shift[n], x + space_shift[n]) with
/// time_shift in (-epsilon^2, 0] and |space_shift| <= epsilon.
struct ShakeShift {
    double time_shift = 0.0;
    std::vector<double> space_shift;
};

struct ShakeSequence {
    double interval_length = 0.0;
    std::vector<ShakeShift> shifts;
    double epsilon = 0.0;

    void validate(int state_dim, double horizon) const;
};

/// Euler-Maruyama path under a piecewise-constant policy, started at
/// (start_time, start_state), run to the problem horizon with
/// interval_length/steps_per_interval substeps. Noise is counter-based in
/// (seed, path_index, step), so paths reproduce bitwise under any scheduling.
/// Throws pcp::numerical_error on a non-finite state (no silent clamping).
PathSample simulate_path(const ControlProblem& problem,
                         const PiecewisePolicy& policy, double start_time,
                         std::span<const double> start_state,
                         int steps_per_interval, std::uint64_t seed,
                         std::int64_t path_index = 0);

/// Monte Carlo estimate of the expected total cost (running + terminal)
/// under the policy. Paths are independent streams derived from
/// (seed, path index); accumulation is deterministic pairwise summation, so
/// the estimate is independent of worker count and execution order.
MCEstimate mc_cost(const ControlProblem& problem, const PiecewisePolicy& policy,
                   double start_time, std::span<const double> start_state,
                   std::int64_t path_count, int steps_per_interval,
                   std::uint64_t seed);

/// Problem whose drift and diffusion read the originals at shifted
/// arguments; running and terminal cost are unchanged. A zero shake returns
/// coefficients that agree bitwise with the original's.
ControlProblem shaken_problem(const ControlProblem& problem,
                              const ShakeSequence& shake);

/// CSV: header time,x_1,...,x_d,cost; cost is the running-cost quadrature
/// accumulated up to each row's time.
void write_path_csv(const PathSample& path, std::ostream& os);

}  // namespace pcp
