#include "pcp/benchmarks.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace pcp {

BenchmarkName benchmark_name_from_string(std::string_view s) {
    if (s == "constant_coeff") return BenchmarkName::constant_coeff;
    if (s == "sine_heat") return BenchmarkName::sine_heat;
    if (s == "uncertain_vol_quadratic") return BenchmarkName::uncertain_vol_quadratic;
    if (s == "uncertain_vol_butterfly") return BenchmarkName::uncertain_vol_butterfly;
    if (s == "deterministic_drift") return BenchmarkName::deterministic_drift;
    throw std::invalid_argument("unknown benchmark name: " + std::string(s));
}

std::string to_string(BenchmarkName name) {
    switch (name) {
        case BenchmarkName::constant_coeff: return "constant_coeff";
        case BenchmarkName::sine_heat: return "sine_heat";
        case BenchmarkName::uncertain_vol_quadratic: return "uncertain_vol_quadratic";
        case BenchmarkName::uncertain_vol_butterfly: return "uncertain_vol_butterfly";
        case BenchmarkName::deterministic_drift: return "deterministic_drift";
    }
    throw std::invalid_argument("unknown benchmark enum value");
}

double BenchmarkSpec::parameter(const std::string& key, double fallback) const {
    auto it = parameters.find(key);
    return it == parameters.end() ? fallback : it->second;
}

namespace {

void require_known_keys(const BenchmarkSpec& spec,
                        const std::set<std::string>& known) {
    for (const auto& [key, value] : spec.parameters) {
        if (!known.contains(key))
            throw std::invalid_argument("benchmark " + to_string(spec.name) +
                                        ": unknown parameter '" + key + "'");
        if (!std::isfinite(value))
            throw std::invalid_argument("benchmark parameter '" + key +
                                        "' is not finite");
    }
}

double require_positive(double v, const char* what) {
    if (!(v > 0.0))
        throw std::invalid_argument(std::string(what) + " must be positive");
    return v;
}

ControlProblem uncertain_vol_problem(const BenchmarkSpec& spec,
                                     TerminalCostFn terminal,
                                     double terminal_lipschitz) {
    const double smin = spec.parameter("sigma_min", 0.1);
    const double smax = spec.parameter("sigma_max", 0.2);
    const double T = require_positive(spec.parameter("horizon", 1.0), "horizon");
    const bool geometric = spec.parameter("geometric", 0.0) != 0.0;
    if (!(smin > 0.0) || !(smin < smax))
        throw std::invalid_argument("require 0 < sigma_min < sigma_max");

    ControlProblem problem;
    problem.state_dim = 1;
    problem.noise_dim = 1;
    problem.horizon = T;
    problem.controls = {{smin}, {smax}};
    problem.drift = [](double, std::span<const double>, std::span<const double>,
                       std::span<double> out) { out[0] = 0.0; };
    if (geometric) {
        problem.diffusion = [](double, std::span<const double> x,
                               std::span<const double> a, std::span<double> out) {
            out[0] = a[0] * x[0];
        };
    } else {
        problem.diffusion = [](double, std::span<const double>,
                               std::span<const double> a, std::span<double> out) {
            out[0] = a[0];
        };
        if (terminal_lipschitz > 0.0)
            problem.declared_bounds = DeclaredBounds{smax, terminal_lipschitz};
    }
    problem.running_cost = [](double, std::span<const double>,
                              std::span<const double>) { return 0.0; };
    problem.terminal_cost = std::move(terminal);
    return problem;
}

}  // namespace

ControlProblem make_benchmark(const BenchmarkSpec& spec) {
    switch (spec.name) {
        case BenchmarkName::constant_coeff: {
            require_known_keys(spec, {"drift", "sigma", "horizon"});
            const double b = spec.parameter("drift", 1.0);
            const double s = spec.parameter("sigma", 1.0);
            const double T = require_positive(spec.parameter("horizon", 1.0), "horizon");
            ControlProblem problem;
            problem.horizon = T;
            problem.controls = {{0.0}};
            problem.drift = [b](double, std::span<const double>,
                                std::span<const double>, std::span<double> out) {
                out[0] = b;
            };
            problem.diffusion = [s](double, std::span<const double>,
                                    std::span<const double>, std::span<double> out) {
                out[0] = s;
            };
            problem.running_cost = [](double, std::span<const double>,
                                      std::span<const double>) { return 0.0; };
            problem.terminal_cost = [](std::span<const double> x) { return x[0]; };
            problem.declared_bounds =
                DeclaredBounds{std::max(std::abs(b), std::abs(s)), 1.0};
            return problem;
        }
        case BenchmarkName::sine_heat: {
            require_known_keys(spec, {"sigma", "horizon"});
            const double s = require_positive(spec.parameter("sigma", 1.0), "sigma");
            const double T = require_positive(spec.parameter("horizon", 1.0), "horizon");
            ControlProblem problem;
            problem.horizon = T;
            problem.controls = {{0.0}};
            problem.drift = [](double, std::span<const double>,
                               std::span<const double>, std::span<double> out) {
                out[0] = 0.0;
            };
            problem.diffusion = [s](double, std::span<const double>,
                                    std::span<const double>, std::span<double> out) {
                out[0] = s;
            };
            problem.running_cost = [](double, std::span<const double>,
                                      std::span<const double>) { return 0.0; };
            problem.terminal_cost = [](std::span<const double> x) {
                return std::sin(x[0]);
            };
            problem.declared_bounds = DeclaredBounds{s, 1.0};
            return problem;
        }
        case BenchmarkName::uncertain_vol_quadratic: {
            require_known_keys(spec, {"sigma_min", "sigma_max", "horizon", "geometric"});
            return uncertain_vol_problem(
                spec, [](std::span<const double> x) { return x[0] * x[0]; },
                /*terminal_lipschitz=*/0.0);
        }
        case BenchmarkName::uncertain_vol_butterfly: {
            require_known_keys(spec, {"sigma_min", "sigma_max", "horizon",
                                      "geometric", "strike", "width"});
            const double strike = spec.parameter("strike", 0.0);
            const double width = require_positive(spec.parameter("width", 0.5), "width");
            return uncertain_vol_problem(
                spec,
                [strike, width](std::span<const double> x) {
                    return std::max(0.0, width - std::abs(x[0] - strike));
                },
                /*terminal_lipschitz=*/1.0);
        }
        case BenchmarkName::deterministic_drift: {
            require_known_keys(spec, {"horizon"});
            const double T = require_positive(spec.parameter("horizon", 1.0), "horizon");
            ControlProblem problem;
            problem.horizon = T;
            problem.controls = {{-1.0}, {1.0}};
            problem.drift = [](double, std::span<const double>,
                               std::span<const double> a, std::span<double> out) {
                out[0] = a[0];
            };
            problem.diffusion = [](double, std::span<const double>,
                                   std::span<const double>, std::span<double> out) {
                out[0] = 0.0;
            };
            problem.running_cost = [](double, std::span<const double>,
                                      std::span<const double>) { return 0.0; };
            problem.terminal_cost = [](std::span<const double> x) {
                return std::abs(x[0]);
            };
            problem.declared_bounds = DeclaredBounds{1.0, 1.0};
            return problem;
        }
    }
    throw std::invalid_argument("unknown benchmark enum value");
}

bool has_closed_form(BenchmarkName name) {
    return name != BenchmarkName::uncertain_vol_butterfly;
}

double closed_form_value(const BenchmarkSpec& spec, double t,
                         std::span<const double> x) {
    const double T = spec.parameter("horizon", 1.0);
    const double tau = T - t;
    switch (spec.name) {
        case BenchmarkName::constant_coeff:
            return x[0] + spec.parameter("drift", 1.0) * tau;
        case BenchmarkName::sine_heat: {
            const double s = spec.parameter("sigma", 1.0);
            return std::exp(-0.5 * s * s * tau) * std::sin(x[0]);
        }
        case BenchmarkName::uncertain_vol_quadratic: {
            const double smax = spec.parameter("sigma_max", 0.2);
            if (spec.parameter("geometric", 0.0) != 0.0)
                return x[0] * x[0] * std::exp(smax * smax * tau);
            return x[0] * x[0] + smax * smax * tau;
        }
        case BenchmarkName::deterministic_drift:
            return std::abs(x[0]) + tau;
        case BenchmarkName::uncertain_vol_butterfly:
            throw std::invalid_argument(
                "uncertain_vol_butterfly has no closed form; "
                "use a fine-grid reference");
    }
    throw std::invalid_argument("unknown benchmark enum value");
}

}  // namespace pcp
