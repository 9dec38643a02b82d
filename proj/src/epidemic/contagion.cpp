#include "ppto/epidemic/contagion.hpp"

#include <stdexcept>
#include <string>

namespace ppto::epidemic {

namespace {

InfectorClass infector_class(HealthState s)
{
    switch (s) {
    case HealthState::asymptomatic:
        return InfectorClass::asymptomatic;
    case HealthState::presymptomatic:
        return InfectorClass::presymptomatic;
    default:
        return InfectorClass::symptomatic;
    }
}

// Infected before today, so able to transmit on this day's contacts.
bool transmits_today(const Individual& p, Day today)
{
    return is_infected(p.state) && p.infection_day.value_or(today) < today;
}

int sample_days(const DayRange& range, Rng& rng)
{
    return uniform_int(rng, range.min, range.max);
}

} // namespace

double delta(HealthState infector, HealthState target, double distance, double duration,
             const ContagionParams& params)
{
    if (distance < 0.0 || duration < 0.0)
        throw std::invalid_argument("contact distance and duration must be non-negative");
    if (target != HealthState::susceptible || !is_infected(infector))
        return 0.0;
    return transmission_probability(infector_class(infector), distance, duration, params);
}

void infect(PopulationLedger& ledger, AgentId id, const ContagionParams& params, Rng& rng)
{
    auto& p = ledger.at(id);
    const bool asymptomatic = bernoulli(rng, p.alpha_s);
    p.infection_day = ledger.day();
    if (asymptomatic) {
        p.tau = sample_days(params.tau_range, rng);
        ledger.set_state(id, HealthState::asymptomatic);
    } else {
        p.epsilon = sample_days(params.epsilon_range, rng);
        ledger.set_state(id, HealthState::presymptomatic);
    }
}

StepReport contagion_step(PopulationLedger& ledger, std::span<const contacts::Contact> contacts,
                          const ContagionParams& params, Rng& rng)
{
    const Day today = ledger.day();
    StepReport report;

    for (const auto& c : contacts) {
        if (!ledger.contains(c.u) || !ledger.contains(c.v))
            throw std::out_of_range("contact endpoint missing from ledger (" + std::to_string(c.u) + ", " +
                                    std::to_string(c.v) + ")");
        if (c.day != today)
            throw std::invalid_argument("contact dated day " + std::to_string(c.day) + " applied on day " +
                                        std::to_string(today));
        const auto& a = ledger.at(c.u);
        const auto& b = ledger.at(c.v);
        if (a.isolated || b.isolated)
            throw std::logic_error("contact involves an isolated agent");

        const Individual* target = nullptr;
        const Individual* source = nullptr;
        if (a.state == HealthState::susceptible && transmits_today(b, today)) {
            target = &a;
            source = &b;
        } else if (b.state == HealthState::susceptible && transmits_today(a, today)) {
            target = &b;
            source = &a;
        } else {
            continue;
        }
        const double p = delta(source->state, target->state, c.distance, c.duration, params);
        if (bernoulli(rng, p)) {
            const AgentId id = target->id;
            infect(ledger, id, params, rng);
            report.new_infections.push_back(id);
        }
    }

    for (const auto& p : ledger.individuals()) {
        if (p.state != HealthState::presymptomatic || p.infection_day == today)
            continue;
        if (today >= *p.infection_day + p.epsilon)
            report.new_symptomatics.push_back(p.id);
    }
    for (AgentId id : report.new_symptomatics) {
        auto& p = ledger.at(id);
        p.symptom_onset_day = today;
        p.tau = sample_days(params.tau_range, rng);
        ledger.set_state(id, HealthState::symptomatic);
    }

    for (const auto& p : ledger.individuals()) {
        if (p.state == HealthState::asymptomatic && today >= *p.infection_day + p.tau)
            report.recoveries.push_back(p.id);
        else if (p.state == HealthState::symptomatic && today >= *p.symptom_onset_day + p.tau)
            report.recoveries.push_back(p.id);
    }
    for (AgentId id : report.recoveries)
        ledger.set_state(id, HealthState::recovered);

    return report;
}

} // namespace ppto::epidemic
