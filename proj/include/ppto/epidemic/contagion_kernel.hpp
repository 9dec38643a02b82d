#pragma once

// Transmission kernel shared by the ground-truth contagion and by the
// device-side trajectory sampler. It only knows infector classes and contact
// geometry; no agent state lives here.

namespace ppto::epidemic {

enum class InfectorClass { asymptomatic, presymptomatic, symptomatic };

struct DayRange {
    int min = 1;
    int max = 1;
};

struct ContagionParams {
    double beta_asymptomatic = 0.1;
    double beta_presymptomatic = 0.15;
    double beta_symptomatic = 0.2;
    double distance_scale = 2.0;  // meters
    double duration_scale = 15.0; // minutes
    double alpha_s_value = 0.9;
    DayRange tau_range{5, 15};
    DayRange epsilon_range{1, 12};

    /// Throws std::invalid_argument on the first violated constraint.
    void validate() const;

    double beta(InfectorClass c) const;
};

/// exp(-l / distance_scale) * (1 - exp(-r / duration_scale)); in [0, 1).
double proximity_factor(double distance, double duration, const ContagionParams& params);

/// beta_class * proximity_factor, clamped to [0, 1]. Rejects negative l or r.
double transmission_probability(InfectorClass infector, double distance, double duration,
                                const ContagionParams& params);

} // namespace ppto::epidemic
