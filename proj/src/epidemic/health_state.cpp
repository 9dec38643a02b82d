#include "ppto/epidemic/health_state.hpp"

namespace ppto::epidemic {

std::string_view to_string(HealthState s)
{
    switch (s) {
    case HealthState::susceptible:
        return "S";
    case HealthState::asymptomatic:
        return "A";
    case HealthState::presymptomatic:
        return "P";
    case HealthState::symptomatic:
        return "Y";
    case HealthState::recovered:
        return "R";
    }
    return "?";
}

bool is_legal_transition(HealthState from, HealthState to)
{
    using enum HealthState;
    switch (from) {
    case susceptible:
        return to == asymptomatic || to == presymptomatic;
    case presymptomatic:
        return to == symptomatic;
    case asymptomatic:
    case symptomatic:
        return to == recovered;
    case recovered:
        return false;
    }
    return false;
}

} // namespace ppto::epidemic
