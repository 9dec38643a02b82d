#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "ppto/epidemic/ledger.hpp"
#include "ppto/rng.hpp"

namespace ppto::policy {

struct SwabTest {
    double sensitivity = 1.0;
    double specificity = 1.0;

    void validate() const; // both in (0.5, 1]
};

enum class TestResult { negative, positive };

/// Infected (A/P/Y) test positive with probability `sensitivity`; everyone
/// else with probability 1 - specificity. Isolated agents are rejected.
TestResult run_test(const epidemic::Individual& individual, const SwabTest& test, Rng& rng);

enum class PolicyKind { none, ts, tsdc, ppto };

PolicyKind parse_policy(std::string_view name);
std::string_view to_string(PolicyKind kind);

struct PolicyDecision {
    Day day = 0;
    std::vector<AgentId> tested;
    std::vector<AgentId> positives;
};

/// Fills a test budget from priority tiers. Each tier is filtered to
/// `eligible`, deduplicated against earlier picks and, if it does not fit in
/// what is left of K, truncated to a uniform random subset. Leftover tests go
/// to uniform random eligible agents. The result has min(K, |eligible|)
/// distinct ids.
std::vector<AgentId> fill_budget(std::span<const std::vector<AgentId>> tiers, std::span<const AgentId> eligible,
                                 int k, Rng& rng);

/// Newly symptomatic first, random fill after.
std::vector<AgentId> policy_ts(std::span<const AgentId> new_symptomatics, std::span<const AgentId> eligible, int k,
                               Rng& rng);

/// Newly symptomatic, then their direct contacts, then random fill.
std::vector<AgentId> policy_tsdc(std::span<const AgentId> new_symptomatics,
                                 const std::function<std::vector<AgentId>(AgentId)>& direct_contacts_of,
                                 std::span<const AgentId> eligible, int k, Rng& rng);

/// Highest-ranked eligible candidates in the given order, then random fill.
std::vector<AgentId> policy_ranked(std::span<const AgentId> ranked_candidates, std::span<const AgentId> eligible,
                                   int k, Rng& rng);

} // namespace ppto::policy
