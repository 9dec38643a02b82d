#pragma once

#include <span>
#include <vector>

#include "ppto/contacts/contact.hpp"
#include "ppto/epidemic/contagion_kernel.hpp"
#include "ppto/epidemic/ledger.hpp"

namespace ppto::epidemic {

/// Contagion probability for a single contact. Zero unless the target is
/// susceptible and the infector is asymptomatic, presymptomatic or
/// symptomatic. Throws std::invalid_argument for negative distance/duration.
double delta(HealthState infector, HealthState target, double distance, double duration,
             const ContagionParams& params);

struct StepReport {
    std::vector<AgentId> new_infections;
    std::vector<AgentId> new_symptomatics;
    std::vector<AgentId> recoveries;
};

/// Puts `id` into A (with probability alpha_s) or P and samples its clock.
void infect(PopulationLedger& ledger, AgentId id, const ContagionParams& params, Rng& rng);

/// One day of disease dynamics on `ledger.day()`:
///  1. one Bernoulli(delta) draw per susceptible/infectious contact, in the
///     given order; only agents infectious at the start of the day transmit;
///  2. P -> Y once the incubation clock elapses (fresh tau sampled at onset);
///  3. A -> R and Y -> R once their recovery clock elapses.
/// Contacts must be dated today and must not involve isolated agents.
StepReport contagion_step(PopulationLedger& ledger, std::span<const contacts::Contact> contacts,
                          const ContagionParams& params, Rng& rng);

} // namespace ppto::epidemic
