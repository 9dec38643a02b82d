#pragma once

#include "ppto/rng.hpp"

namespace ppto::contacts {

/// One undirected contact event; stored with u < v.
struct Contact {
    AgentId u = 0;
    AgentId v = 0;
    Day day = 0;
    double distance = 0.0; // meters
    double duration = 0.0; // minutes

    friend bool operator==(const Contact&, const Contact&) = default;
};

} // namespace ppto::contacts
