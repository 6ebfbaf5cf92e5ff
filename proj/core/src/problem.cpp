#include "pcp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace pcp {

void ControlProblem::validate() const {
    if (state_dim <= 0) throw std::invalid_argument("state_dim must be positive");
    if (noise_dim <= 0) throw std::invalid_argument("noise_dim must be positive");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("horizon must be a positive finite time");
    if (controls.empty()) throw std::invalid_argument("control set must be nonempty");
    for (std::size_t i = 0; i < controls.size(); ++i) {
        if (controls[i].empty())
            throw std::invalid_argument("control points must be nonempty vectors");
        for (std::size_t j = i + 1; j < controls.size(); ++j) {
            if (controls[i] == controls[j])
                throw std::invalid_argument("control set contains duplicates");
        }
    }
    if (!drift || !diffusion || !running_cost || !terminal_cost)
        throw std::invalid_argument("all coefficient callbacks must be set");
}

std::span<const double> ControlProblem::control(int a) const {
    if (a < 0 || a >= control_count())
        throw std::invalid_argument("control index " + std::to_string(a) +
                                    " out of range [0, " +
                                    std::to_string(control_count()) + ")");
    return controls[static_cast<std::size_t>(a)];
}

CoeffEval eval_coeffs(const ControlProblem& problem, double t,
                      std::span<const double> x, int a) {
    const auto ctrl = problem.control(a);
    const std::size_t d = static_cast<std::size_t>(problem.state_dim);
    const std::size_t p = static_cast<std::size_t>(problem.noise_dim);

    CoeffEval out;
    out.drift.assign(d, 0.0);
    out.diffusion.assign(d * p, 0.0);
    problem.drift(t, x, ctrl, out.drift);
    problem.diffusion(t, x, ctrl, out.diffusion);
    out.running_cost = problem.running_cost(t, x, ctrl);

    auto finite = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(),
                           [](double y) { return std::isfinite(y); });
    };
    if (!finite(out.drift) || !finite(out.diffusion) ||
        !std::isfinite(out.running_cost)) {
        throw std::invalid_argument(
            "coefficient evaluation produced a non-finite value at t=" +
            std::to_string(t));
    }
    return out;
}

double LipschitzReport::sup_norm() const {
    return std::max({drift.sup_norm, diffusion.sup_norm, running_cost.sup_norm});
}

double LipschitzReport::space_lipschitz() const {
    return std::max({drift.space_lipschitz, diffusion.space_lipschitz,
                     running_cost.space_lipschitz});
}

double LipschitzReport::time_holder() const {
    return std::max({drift.time_holder, diffusion.time_holder,
                     running_cost.time_holder});
}

bool LipschitzReport::within(const DeclaredBounds& bounds, double slack) const {
    const double c0 = bounds.coefficient_bound + slack;
    const double c1 = bounds.cost_bound + slack;
    return drift.sup_norm <= c0 && diffusion.sup_norm <= c0 &&
           drift.space_lipschitz <= c0 && diffusion.space_lipschitz <= c0 &&
           drift.time_holder <= c0 && diffusion.time_holder <= c0 &&
           running_cost.sup_norm <= c1 && running_cost.space_lipschitz <= c1 &&
           running_cost.time_holder <= c1 && terminal_cost.space_lipschitz <= c1;
}

namespace {

double vec_norm(std::span<const double> v) {
    double s = 0.0;
    for (double y : v) s += y * y;
    return std::sqrt(s);
}

double vec_dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

struct Sampler {
    const ControlProblem& problem;
    std::vector<double> b0, b1, s0, s1;

    explicit Sampler(const ControlProblem& pr)
        : problem(pr),
          b0(static_cast<std::size_t>(pr.state_dim)),
          b1(static_cast<std::size_t>(pr.state_dim)),
          s0(static_cast<std::size_t>(pr.state_dim * pr.noise_dim)),
          s1(static_cast<std::size_t>(pr.state_dim * pr.noise_dim)) {}

    void accumulate_pair(LipschitzReport& rep, double t0,
                         std::span<const double> x0, double t1,
                         std::span<const double> x1, int a) {
        const auto ctrl = problem.control(a);
        problem.drift(t0, x0, ctrl, b0);
        problem.drift(t1, x1, ctrl, b1);
        problem.diffusion(t0, x0, ctrl, s0);
        problem.diffusion(t1, x1, ctrl, s1);
        const double f0 = problem.running_cost(t0, x0, ctrl);
        const double f1 = problem.running_cost(t1, x1, ctrl);

        auto update_sup = [](LipschitzEstimate& e, double v) {
            e.sup_norm = std::max(e.sup_norm, v);
        };
        update_sup(rep.drift, std::max(vec_norm(b0), vec_norm(b1)));
        update_sup(rep.diffusion, std::max(vec_norm(s0), vec_norm(s1)));
        update_sup(rep.running_cost, std::max(std::abs(f0), std::abs(f1)));

        if (t0 == t1) {
            const double dx = vec_dist(x0, x1);
            if (dx > 0.0) {
                rep.drift.space_lipschitz =
                    std::max(rep.drift.space_lipschitz, vec_dist(b0, b1) / dx);
                rep.diffusion.space_lipschitz =
                    std::max(rep.diffusion.space_lipschitz, vec_dist(s0, s1) / dx);
                rep.running_cost.space_lipschitz =
                    std::max(rep.running_cost.space_lipschitz,
                             std::abs(f0 - f1) / dx);
            }
        } else {
            const double dt = std::sqrt(std::abs(t0 - t1));
            rep.drift.time_holder =
                std::max(rep.drift.time_holder, vec_dist(b0, b1) / dt);
            rep.diffusion.time_holder =
                std::max(rep.diffusion.time_holder, vec_dist(s0, s1) / dt);
            rep.running_cost.time_holder =
                std::max(rep.running_cost.time_holder, std::abs(f0 - f1) / dt);
        }
    }
};

}  // namespace

LipschitzReport estimate_lipschitz(const ControlProblem& problem,
                                   std::span<const double> box_lower,
                                   std::span<const double> box_upper,
                                   int sample_count, std::uint64_t seed) {
    problem.validate();
    const std::size_t d = static_cast<std::size_t>(problem.state_dim);
    if (box_lower.size() != d || box_upper.size() != d)
        throw std::invalid_argument("box dimension mismatch");
    for (std::size_t i = 0; i < d; ++i) {
        if (!(box_lower[i] < box_upper[i]))
            throw std::invalid_argument("degenerate domain box");
    }
    if (sample_count < 2) throw std::invalid_argument("sample_count must be >= 2");

    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw_x = [&](std::vector<double>& x) {
        for (std::size_t i = 0; i < d; ++i)
            x[i] = box_lower[i] + (box_upper[i] - box_lower[i]) * unit(gen);
    };

    LipschitzReport rep;
    Sampler sampler(problem);
    std::vector<double> x0(d), x1(d);
    const double T = problem.horizon;

    for (int n = 0; n < sample_count; ++n) {
        for (int a = 0; a < problem.control_count(); ++a) {
            // Space pair: common t, independent x. Every 4th pair is anchored
            // at the lower corner to catch constants attained near edges.
            const double ts = T * unit(gen);
            draw_x(x0);
            draw_x(x1);
            if (n % 4 == 0)
                for (std::size_t i = 0; i < d; ++i) x1[i] = box_lower[i];
            sampler.accumulate_pair(rep, ts, x0, ts, x1, a);

            // Time pair: common x; one endpoint biased toward t=0, where
            // Holder-1/2 quotients of t^(1/2)-type coefficients peak.
            draw_x(x0);
            double u = unit(gen);
            const double t0 = T * u * u;
            double t1 = T * unit(gen);
            if (t0 == t1) t1 = (t1 < T / 2) ? t1 + T / 4 : t1 - T / 4;
            sampler.accumulate_pair(rep, t0, x0, t1, x0, a);
        }

        // Terminal cost pairs (space only).
        draw_x(x0);
        draw_x(x1);
        const double g0 = problem.terminal_cost(x0);
        const double g1 = problem.terminal_cost(x1);
        rep.terminal_cost.sup_norm =
            std::max(rep.terminal_cost.sup_norm, std::max(std::abs(g0), std::abs(g1)));
        const double dx = vec_dist(x0, x1);
        if (dx > 0.0)
            rep.terminal_cost.space_lipschitz =
                std::max(rep.terminal_cost.space_lipschitz, std::abs(g0 - g1) / dx);
    }

    auto check_finite = [](const LipschitzEstimate& e) {
        return std::isfinite(e.sup_norm) && std::isfinite(e.space_lipschitz) &&
               std::isfinite(e.time_holder);
    };
    if (!check_finite(rep.drift) || !check_finite(rep.diffusion) ||
        !check_finite(rep.running_cost) || !check_finite(rep.terminal_cost))
        throw std::invalid_argument("coefficient sampling produced non-finite values");
    return rep;
}

}  // namespace pcp
