#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppto/sim/simulation.hpp"

namespace ppto::sim {

enum class SuiteKind { uncontrolled, policy_comparison, rho_sweep };

SuiteKind parse_suite(std::string_view name);
std::string_view to_string(SuiteKind kind);

struct SuiteRunSpec {
    std::string group; // e.g. "ppto" or "rho=0.75"
    std::string stem;  // output file stem
    SimConfig config;
};

/// Seeds are base.seed + i for i in [0, seeds), shared across groups.
std::vector<SuiteRunSpec> plan_suite(SuiteKind kind, const SimConfig& base, int seeds);

struct GroupSummary {
    std::string group;
    std::vector<double> cum_infections; // seed order
    double mean = 0.0;
    double stddev = 0.0;
};

struct SuiteRunOutcome {
    SuiteRunSpec spec;
    SimulationResult result;
};

struct SuiteResult {
    SuiteKind kind = SuiteKind::uncontrolled;
    std::vector<SuiteRunOutcome> runs;
    std::vector<GroupSummary> summary;
};

inline constexpr std::string_view summary_csv_header = "group,runs,mean_cum_infections,std_cum_infections";

/// Runs every planned run on up to `jobs` threads. With `out`, writes one
/// metrics CSV per run, a .log per ppto run and summary.csv.
SuiteResult run_experiment_suite(SuiteKind kind, const SimConfig& base, int seeds,
                                 const std::optional<std::filesystem::path>& out = std::nullopt, unsigned jobs = 1);

std::vector<GroupSummary> summarize(const std::vector<SuiteRunOutcome>& runs);
void write_summary_csv(std::ostream& out, const std::vector<GroupSummary>& summary);

} // namespace ppto::sim
