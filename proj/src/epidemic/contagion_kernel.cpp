#include "ppto/epidemic/contagion_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppto::epidemic {

namespace {

bool in_unit(double x)
{
    return x >= 0.0 && x <= 1.0;
}

} // namespace

void ContagionParams::validate() const
{
    if (!in_unit(beta_asymptomatic) || !in_unit(beta_presymptomatic) || !in_unit(beta_symptomatic))
        throw std::invalid_argument("beta values must lie in [0, 1]");
    if (!(beta_asymptomatic <= beta_presymptomatic && beta_presymptomatic <= beta_symptomatic))
        throw std::invalid_argument("beta values must satisfy beta_A <= beta_P <= beta_Y");
    if (!(distance_scale > 0.0) || !(duration_scale > 0.0))
        throw std::invalid_argument("distance_scale and duration_scale must be positive");
    if (!in_unit(alpha_s_value))
        throw std::invalid_argument("alpha_s must lie in [0, 1]");
    if (tau_range.min < 1 || tau_range.max < tau_range.min)
        throw std::invalid_argument("tau range must satisfy 1 <= min <= max");
    if (epsilon_range.min < 1 || epsilon_range.max < epsilon_range.min)
        throw std::invalid_argument("epsilon range must satisfy 1 <= min <= max");
}

double ContagionParams::beta(InfectorClass c) const
{
    switch (c) {
    case InfectorClass::asymptomatic:
        return beta_asymptomatic;
    case InfectorClass::presymptomatic:
        return beta_presymptomatic;
    case InfectorClass::symptomatic:
        return beta_symptomatic;
    }
    return 0.0;
}

double proximity_factor(double distance, double duration, const ContagionParams& params)
{
    if (distance < 0.0 || duration < 0.0 || std::isnan(distance) || std::isnan(duration))
        throw std::invalid_argument("contact distance and duration must be non-negative");
    return std::exp(-distance / params.distance_scale) * -std::expm1(-duration / params.duration_scale);
}

double transmission_probability(InfectorClass infector, double distance, double duration,
                                const ContagionParams& params)
{
    return std::clamp(params.beta(infector) * proximity_factor(distance, duration, params), 0.0, 1.0);
}

} // namespace ppto::epidemic
