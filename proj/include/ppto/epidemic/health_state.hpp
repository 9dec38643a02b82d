#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace ppto::epidemic {

enum class HealthState : std::uint8_t {
    susceptible,
    asymptomatic,
    presymptomatic,
    symptomatic,
    recovered,
};

inline constexpr int health_state_count = 5;

constexpr bool is_infected(HealthState s)
{
    return s == HealthState::asymptomatic || s == HealthState::presymptomatic || s == HealthState::symptomatic;
}

std::string_view to_string(HealthState s);

/// Whether `from -> to` is one of S->A, S->P, P->Y, A->R, Y->R.
bool is_legal_transition(HealthState from, HealthState to);

} // namespace ppto::epidemic
