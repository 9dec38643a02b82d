#include "ppto/epidemic/ledger.hpp"

#include <stdexcept>
#include <string>

namespace ppto::epidemic {

PopulationLedger::PopulationLedger(std::size_t population, double alpha_s, double app_active_prob)
    : people_(population)
{
    for (std::size_t i = 0; i < population; ++i) {
        auto& p = people_[i];
        p.id = static_cast<AgentId>(i);
        p.alpha_s = alpha_s;
        p.app_active_prob = app_active_prob;
    }
    counts_[static_cast<std::size_t>(HealthState::susceptible)] = population;
}

const Individual& PopulationLedger::at(AgentId id) const
{
    if (!contains(id))
        throw std::out_of_range("agent " + std::to_string(id) + " is not in the ledger");
    return people_[id];
}

Individual& PopulationLedger::at(AgentId id)
{
    if (!contains(id))
        throw std::out_of_range("agent " + std::to_string(id) + " is not in the ledger");
    return people_[id];
}

std::size_t PopulationLedger::infected_count() const
{
    return count(HealthState::asymptomatic) + count(HealthState::presymptomatic) + count(HealthState::symptomatic);
}

void PopulationLedger::set_state(AgentId id, HealthState next)
{
    auto& p = at(id);
    if (!is_legal_transition(p.state, next))
        throw std::logic_error("illegal transition " + std::string(to_string(p.state)) + " -> " +
                               std::string(to_string(next)) + " for agent " + std::to_string(id));
    --counts_[static_cast<std::size_t>(p.state)];
    ++counts_[static_cast<std::size_t>(next)];
    p.state = next;
}

void PopulationLedger::isolate(AgentId id)
{
    auto& p = at(id);
    if (!p.isolated) {
        p.isolated = true;
        ++isolated_;
    }
}

std::vector<AgentId> PopulationLedger::members(HealthState s) const
{
    std::vector<AgentId> out;
    for (const auto& p : people_)
        if (p.state == s)
            out.push_back(p.id);
    return out;
}

bool PopulationLedger::check_conservation() const
{
    std::array<std::size_t, health_state_count> recount{};
    for (const auto& p : people_)
        ++recount[static_cast<std::size_t>(p.state)];
    std::size_t total = 0;
    for (std::size_t i = 0; i < recount.size(); ++i) {
        if (recount[i] != counts_[i])
            return false;
        total += counts_[i];
    }
    return total == people_.size();
}

} // namespace ppto::epidemic
