#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ppto/epidemic/ledger.hpp"
#include "ppto/sim/config.hpp"

namespace ppto::sim {

struct DayMetrics {
    Day day = 0;
    std::size_t susceptible = 0;
    std::size_t asymptomatic = 0;
    std::size_t presymptomatic = 0;
    std::size_t symptomatic = 0;
    std::size_t recovered = 0;
    std::size_t isolated = 0;
    std::size_t new_infections = 0;
    std::size_t cum_infections = 0;
    std::size_t tests_used = 0;
};

inline constexpr std::string_view metrics_csv_header =
    "day,S,A,P,Y,R,isolated,new_infections,cum_infections,tests_used";

struct SimulationResult {
    std::vector<DayMetrics> days;
    std::vector<std::string> ppto_log; // one line per day for the ppto policy
    epidemic::PopulationLedger final_ledger{0, 0.0, 1.0};
    std::size_t initial_infected = 0;
    std::size_t device_count = 0;
    std::size_t max_accepted_per_iteration = 0;
    std::size_t hop_budget_hits = 0;
};

/// Runs the daily loop for `config.days` days: contacts, device logging,
/// contagion, testing policy, end-of-day isolation.
SimulationResult run_simulation(const SimConfig& config);

void write_metrics_csv(std::ostream& out, std::span<const DayMetrics> days);
std::string metrics_csv(std::span<const DayMetrics> days);

} // namespace ppto::sim
