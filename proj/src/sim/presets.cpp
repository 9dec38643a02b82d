#include "ppto/sim/config.hpp"

namespace ppto::sim {

// Values from scripts/calibrate.py; see README for the sweep results.
SimConfig experiment1_preset()
{
    SimConfig c;
    c.population = 10000;
    c.days = 30;
    c.tests_per_day = 100;
    c.ppto_iterations = 100;
    c.window_days = 14;
    c.initial_symptomatic = 5;
    c.mean_degree = 10.0;
    c.heavy_pair_fraction = 0.0;
    c.heavy_pair_weight = 0.9;
    c.contagion.beta_asymptomatic = 0.1;
    c.contagion.beta_presymptomatic = 0.1;
    c.contagion.beta_symptomatic = 0.3;
    c.contagion.distance_scale = 2.0;
    c.contagion.duration_scale = 15.0;
    c.contagion.alpha_s_value = 0.9;
    c.contagion.tau_range = {5, 15};
    c.contagion.epsilon_range = {1, 12};
    c.swab = {0.6, 1.0};
    c.ppto_max_rounds = 3;
    return c;
}

// Faster spread: the app-usage sweep needs an epidemic that K = 100 only dents.
SimConfig experiment2_preset()
{
    SimConfig c = experiment1_preset();
    c.policy = policy::PolicyKind::ppto;
    c.contagion.beta_asymptomatic = 0.135;
    c.contagion.beta_presymptomatic = 0.135;
    c.contagion.beta_symptomatic = 0.4;
    return c;
}

} // namespace ppto::sim
