#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "ppto/epidemic/health_state.hpp"
#include "ppto/rng.hpp"

namespace ppto::epidemic {

struct Individual {
    AgentId id = 0;
    HealthState state = HealthState::susceptible;
    std::optional<Day> infection_day;
    std::optional<Day> symptom_onset_day;
    double alpha_s = 0.0;
    int tau = 0;     // recovery clock of the current infectious phase
    int epsilon = 0; // incubation
    bool isolated = false;
    double app_active_prob = 1.0;
};

/// The S/A/P/Y/R partition of a fixed population plus the isolation set.
/// Class counts are maintained incrementally; every state change goes
/// through `set_state`, which rejects illegal transitions.
class PopulationLedger {
public:
    PopulationLedger(std::size_t population, double alpha_s, double app_active_prob);

    Day day() const { return day_; }
    void advance_day() { ++day_; }

    std::size_t size() const { return people_.size(); }
    bool contains(AgentId id) const { return id < people_.size(); }

    const Individual& at(AgentId id) const;
    Individual& at(AgentId id);

    const std::vector<Individual>& individuals() const { return people_; }

    std::size_t count(HealthState s) const { return counts_[static_cast<std::size_t>(s)]; }
    std::size_t infected_count() const;
    std::size_t isolated_count() const { return isolated_; }

    void set_state(AgentId id, HealthState next);
    void isolate(AgentId id);

    std::vector<AgentId> members(HealthState s) const;

    /// Sum of class counts equals the population and matches a recount.
    bool check_conservation() const;

private:
    Day day_ = 0;
    std::vector<Individual> people_;
    std::array<std::size_t, health_state_count> counts_{};
    std::size_t isolated_ = 0;
};

} // namespace ppto::epidemic
