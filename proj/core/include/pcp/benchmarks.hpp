#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>

#include "pcp/problem.hpp"

namespace pcp {

/// Packaged test problems. The uncertain-volatility pair are bang-bang
/// problems with the two-point control set {sigma_min, sigma_max}.
enum class BenchmarkName {
    constant_coeff,
    sine_heat,
    uncertain_vol_quadratic,
    uncertain_vol_butterfly,
    deterministic_drift,
};

BenchmarkName benchmark_name_from_string(std::string_view s);
std::string to_string(BenchmarkName name);

struct BenchmarkSpec {
    BenchmarkName name = BenchmarkName::sine_heat;
    std::map<std::string, double> parameters;

    double parameter(const std::string& key, double fallback) const;
};

/// Builds the problem for a spec. Throws std::invalid_argument on unknown
/// parameter names or out-of-range values (e.g. sigma_min >= sigma_max).
///
/// Coefficients per benchmark (all 1-d state and noise):
///   constant_coeff           b=drift, sigma=sigma, f=0, g(x)=x, one control
///   sine_heat                b=0, sigma=sigma, f=0, g=sin, one control
///   uncertain_vol_quadratic  b=0, sigma in {sigma_min, sigma_max}, g(x)=x^2
///   uncertain_vol_butterfly  b=0, sigma in {sigma_min, sigma_max},
///                            g(x)=max(0, width - |x - strike|)
///   deterministic_drift      b in {-1,+1}, sigma=0, f=0, g(x)=|x|
///
/// With geometric=1 the uncertain-vol diffusions become sigma*x. The x^2
/// terminal cost is unbounded, so declared cost bounds only hold on
/// truncated domains; the quadratic benchmark carries no declared_bounds.
ControlProblem make_benchmark(const BenchmarkSpec& spec);

bool has_closed_form(BenchmarkName name);

/// Exact value function where one is known:
///   constant_coeff           x + drift*(T-t)
///   sine_heat                exp(-sigma^2 (T-t)/2) sin(x)
///   uncertain_vol_quadratic  x^2 + sigma_max^2 (T-t)     (arithmetic form)
///                            x^2 exp(sigma_max^2 (T-t))  (geometric form)
///   deterministic_drift      |x| + (T-t)
/// Throws std::invalid_argument for the butterfly (use a fine-grid
/// reference instead).
double closed_form_value(const BenchmarkSpec& spec, double t,
                         std::span<const double> x);

}  // namespace pcp
