#include "pcp/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>

#include "pcp/errors.hpp"
#include "pcp/parallel.hpp"
#include "pcp/rng.hpp"

namespace pcp {

int PiecewisePolicy::control_at(int interval, std::span<const double> state) const {
    if (interval < 0 || interval >= interval_count())
        throw std::invalid_argument("policy interval " + std::to_string(interval) +
                                    " out of range");
    if (mode == PolicyMode::open_loop)
        return open_loop[static_cast<std::size_t>(interval)];
    return policy_lookup(feedback[static_cast<std::size_t>(interval)], state);
}

void PiecewisePolicy::validate(const ControlProblem& problem, double duration) const {
    if (!(interval_length > 0.0))
        throw std::invalid_argument("policy interval length must be positive");
    const double covered = interval_length * interval_count();
    if (covered < duration - 1e-9 * std::max(1.0, duration))
        throw std::invalid_argument("policy too short: covers " +
                                    std::to_string(covered) + " of " +
                                    std::to_string(duration));
    if (mode == PolicyMode::open_loop) {
        for (int a : open_loop) problem.control(a);  // bounds check
    } else {
        for (const auto& field : feedback)
            for (std::int32_t a : field.controls) problem.control(a);
    }
}

PiecewisePolicy constant_policy(int control_index, double interval_length,
                                int intervals) {
    PiecewisePolicy policy;
    policy.interval_length = interval_length;
    policy.mode = PolicyMode::open_loop;
    policy.open_loop.assign(static_cast<std::size_t>(intervals), control_index);
    return policy;
}

namespace {

struct PathResult {
    double total_cost = 0.0;  // running-cost quadrature + terminal cost
};

// Shared Euler-Maruyama stepper. The observer sees (elapsed, state,
// accumulated running cost) at the start and after every step; both
// simulate_path and mc_cost run exactly this arithmetic.
template <class Observer>
PathResult run_path(const ControlProblem& problem, const PiecewisePolicy& policy,
                    double start_time, std::span<const double> start_state,
                    int steps_per_interval, std::uint64_t seed,
                    std::int64_t path_index, Observer&& observe) {
    const double duration = problem.horizon - start_time;
    const double h_pol = policy.interval_length;
    const int n_intervals =
        std::max(1, static_cast<int>(std::ceil(duration / h_pol - 1e-9)));

    const std::size_t d = static_cast<std::size_t>(problem.state_dim);
    const std::size_t p = static_cast<std::size_t>(problem.noise_dim);
    std::vector<double> x(start_state.begin(), start_state.end());
    std::vector<double> b(d), sig(d * p), dw(p);

    double cost = 0.0;
    observe(0.0, x, cost);

    std::uint64_t step_counter = 0;
    for (int n = 0; n < n_intervals; ++n) {
        const double interval_start = n * h_pol;
        const double interval_len =
            std::min(h_pol, duration - interval_start);
        if (interval_len <= 0.0) break;
        const double dt = interval_len / steps_per_interval;
        const double sqrt_dt = std::sqrt(dt);
        const int control_index = policy.control_at(n, x);
        const auto ctrl = problem.control(control_index);

        for (int j = 0; j < steps_per_interval; ++j) {
            const double elapsed = interval_start + j * dt;
            const double t_abs = start_time + elapsed;
            problem.drift(t_abs, x, ctrl, b);
            problem.diffusion(t_abs, x, ctrl, sig);
            cost += problem.running_cost(t_abs, x, ctrl) * dt;

            for (std::size_t k = 0; k < p; ++k)
                dw[k] = sqrt_dt * rng::normal(seed,
                                              static_cast<std::uint64_t>(path_index),
                                              step_counter,
                                              static_cast<std::uint32_t>(k));
            ++step_counter;

            for (std::size_t i = 0; i < d; ++i) {
                double dx = b[i] * dt;
                for (std::size_t k = 0; k < p; ++k) dx += sig[i * p + k] * dw[k];
                x[i] += dx;
                if (!std::isfinite(x[i]))
                    throw numerical_error(
                        "path " + std::to_string(path_index) +
                        ": non-finite state at elapsed time " +
                        std::to_string(elapsed + dt));
            }
            const double next_elapsed =
                (j + 1 == steps_per_interval) ? interval_start + interval_len
                                              : interval_start + (j + 1) * dt;
            observe(next_elapsed, x, cost);
        }
    }

    PathResult result;
    result.total_cost = cost + problem.terminal_cost(x);
    if (!std::isfinite(result.total_cost))
        throw numerical_error("path " + std::to_string(path_index) +
                              ": non-finite terminal cost");
    return result;
}

void validate_start(const ControlProblem& problem, double start_time,
                    std::span<const double> start_state, int steps_per_interval) {
    problem.validate();
    if (start_time < 0.0 || start_time > problem.horizon)
        throw std::invalid_argument("start time outside [0, horizon]");
    if (static_cast<int>(start_state.size()) != problem.state_dim)
        throw std::invalid_argument("start state dimension mismatch");
    if (steps_per_interval < 1)
        throw std::invalid_argument("steps_per_interval must be >= 1");
}

}  // namespace

PathSample simulate_path(const ControlProblem& problem,
                         const PiecewisePolicy& policy, double start_time,
                         std::span<const double> start_state,
                         int steps_per_interval, std::uint64_t seed,
                         std::int64_t path_index) {
    validate_start(problem, start_time, start_state, steps_per_interval);
    policy.validate(problem, problem.horizon - start_time);

    PathSample sample;
    auto record = [&](double elapsed, const std::vector<double>& x, double cost) {
        sample.times.push_back(elapsed);
        sample.states.push_back(x);
        sample.running_costs.push_back(cost);
        sample.accumulated_cost = cost;
    };
    run_path(problem, policy, start_time, start_state, steps_per_interval, seed,
             path_index, record);
    return sample;
}

MCEstimate mc_cost(const ControlProblem& problem, const PiecewisePolicy& policy,
                   double start_time, std::span<const double> start_state,
                   std::int64_t path_count, int steps_per_interval,
                   std::uint64_t seed) {
    validate_start(problem, start_time, start_state, steps_per_interval);
    policy.validate(problem, problem.horizon - start_time);
    if (path_count < 2) throw std::invalid_argument("path_count must be >= 2");

    std::vector<double> values(static_cast<std::size_t>(path_count));
    auto discard = [](double, const std::vector<double>&, double) {};
    parallel_for(static_cast<std::size_t>(path_count), [&](std::size_t i) {
        values[i] = run_path(problem, policy, start_time, start_state,
                             steps_per_interval, seed,
                             static_cast<std::int64_t>(i), discard)
                        .total_cost;
    });

    const double n = static_cast<double>(path_count);
    const double mean = pairwise_sum(values) / n;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double dev = values[i] - mean;
        sq[i] = dev * dev;
    }
    const double sample_var = pairwise_sum(sq) / (n - 1.0);

    MCEstimate estimate;
    estimate.mean = mean;
    estimate.std_error = std::sqrt(sample_var / n);
    estimate.path_count = path_count;
    estimate.seed = seed;
    return estimate;
}

void ShakeSequence::validate(int state_dim, double horizon) const {
    if (!(interval_length > 0.0))
        throw std::invalid_argument("shake interval length must be positive");
    if (epsilon < 0.0) throw std::invalid_argument("shake epsilon must be >= 0");
    if (interval_length * shifts.size() < horizon - 1e-9)
        throw std::invalid_argument("shake shifts do not cover the horizon");
    const double eps_sq = epsilon * epsilon;
    for (const auto& shift : shifts) {
        const bool time_ok = (epsilon == 0.0)
                                 ? shift.time_shift == 0.0
                                 : (shift.time_shift > -eps_sq &&
                                    shift.time_shift <= 0.0);
        if (!time_ok)
            throw std::invalid_argument(
                "shake time shift must lie in (-epsilon^2, 0]");
        if (static_cast<int>(shift.space_shift.size()) != state_dim)
            throw std::invalid_argument("shake space shift dimension mismatch");
        double norm_sq = 0.0;
        for (double e : shift.space_shift) norm_sq += e * e;
        if (norm_sq > eps_sq * (1.0 + 1e-12))
            throw std::invalid_argument("shake space shift exceeds epsilon");
    }
}

ControlProblem shaken_problem(const ControlProblem& problem,
                              const ShakeSequence& shake) {
    problem.validate();
    shake.validate(problem.state_dim, problem.horizon);

    struct ShakeData {
        double interval_length;
        std::vector<ShakeShift> shifts;
    };
    auto data = std::make_shared<const ShakeData>(
        ShakeData{shake.interval_length, shake.shifts});

    auto shifted_call = [data](const auto& fn, double t, std::span<const double> x,
                               std::span<const double> a, std::span<double> out) {
        const auto n = std::clamp<std::int64_t>(
            static_cast<std::int64_t>(std::floor(t / data->interval_length)), 0,
            static_cast<std::int64_t>(data->shifts.size()) - 1);
        const ShakeShift& shift = data->shifts[static_cast<std::size_t>(n)];
        std::vector<double> xs(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            xs[i] = x[i] + shift.space_shift[i];
        fn(t + shift.time_shift, xs, a, out);
    };

    ControlProblem shaken = problem;
    shaken.drift = [shifted_call, inner = problem.drift](
                       double t, std::span<const double> x,
                       std::span<const double> a, std::span<double> out) {
        shifted_call(inner, t, x, a, out);
    };
    shaken.diffusion = [shifted_call, inner = problem.diffusion](
                           double t, std::span<const double> x,
                           std::span<const double> a, std::span<double> out) {
        shifted_call(inner, t, x, a, out);
    };
    return shaken;
}

void write_path_csv(const PathSample& path, std::ostream& os) {
    const std::size_t d = path.states.empty() ? 0 : path.states.front().size();
    std::string line = "time,";
    for (std::size_t axis = 0; axis < d; ++axis)
        line += "x_" + std::to_string(axis + 1) + ",";
    line += "cost\n";
    os << line;

    char buf[40];
    for (std::size_t row = 0; row < path.times.size(); ++row) {
        line.clear();
        std::snprintf(buf, sizeof(buf), "%.17g", path.times[row]);
        line += buf;
        for (std::size_t axis = 0; axis < d; ++axis) {
            std::snprintf(buf, sizeof(buf), ",%.17g", path.states[row][axis]);
            line += buf;
        }
        std::snprintf(buf, sizeof(buf), ",%.17g", path.running_costs[row]);
        line += buf;
        line += '\n';
        os << line;
    }
}

}  // namespace pcp
