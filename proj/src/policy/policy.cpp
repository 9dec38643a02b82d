#include "ppto/policy/policy.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace ppto::policy {

void SwabTest::validate() const
{
    if (!(sensitivity > 0.5 && sensitivity <= 1.0) || !(specificity > 0.5 && specificity <= 1.0))
        throw std::invalid_argument("test sensitivity and specificity must lie in (0.5, 1]");
}

TestResult run_test(const epidemic::Individual& individual, const SwabTest& test, Rng& rng)
{
    if (individual.isolated)
        throw std::logic_error("cannot test an isolated agent");
    const double p_positive = epidemic::is_infected(individual.state) ? test.sensitivity : 1.0 - test.specificity;
    return bernoulli(rng, p_positive) ? TestResult::positive : TestResult::negative;
}

PolicyKind parse_policy(std::string_view name)
{
    if (name == "none")
        return PolicyKind::none;
    if (name == "ts")
        return PolicyKind::ts;
    if (name == "tsdc")
        return PolicyKind::tsdc;
    if (name == "ppto")
        return PolicyKind::ppto;
    throw std::invalid_argument("unknown policy '" + std::string(name) + "' (expected none, ts, tsdc or ppto)");
}

std::string_view to_string(PolicyKind kind)
{
    switch (kind) {
    case PolicyKind::none:
        return "none";
    case PolicyKind::ts:
        return "ts";
    case PolicyKind::tsdc:
        return "tsdc";
    case PolicyKind::ppto:
        return "ppto";
    }
    return "?";
}

std::vector<AgentId> fill_budget(std::span<const std::vector<AgentId>> tiers, std::span<const AgentId> eligible,
                                 int k, Rng& rng)
{
    if (k < 0)
        throw std::invalid_argument("K must be non-negative");
    const auto budget = static_cast<std::size_t>(k);
    const std::unordered_set<AgentId> allowed(eligible.begin(), eligible.end());
    std::unordered_set<AgentId> chosen;
    std::vector<AgentId> out;

    for (const auto& tier : tiers) {
        if (out.size() >= budget)
            break;
        std::vector<AgentId> fresh;
        std::unordered_set<AgentId> in_tier;
        for (AgentId id : tier)
            if (allowed.contains(id) && !chosen.contains(id) && in_tier.insert(id).second)
                fresh.push_back(id);
        const std::size_t room = budget - out.size();
        if (fresh.size() > room) {
            std::shuffle(fresh.begin(), fresh.end(), rng);
            fresh.resize(room);
        }
        for (AgentId id : fresh) {
            chosen.insert(id);
            out.push_back(id);
        }
    }

    if (out.size() < budget) {
        std::vector<AgentId> pool;
        pool.reserve(eligible.size());
        for (AgentId id : eligible)
            if (!chosen.contains(id))
                pool.push_back(id);
        const std::size_t take = std::min(budget - out.size(), pool.size());
        // Partial Fisher-Yates: the first `take` slots become a uniform sample.
        for (std::size_t i = 0; i < take; ++i) {
            const auto j = std::uniform_int_distribution<std::size_t>(i, pool.size() - 1)(rng);
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
    }
    return out;
}

std::vector<AgentId> policy_ts(std::span<const AgentId> new_symptomatics, std::span<const AgentId> eligible, int k,
                               Rng& rng)
{
    const std::vector<std::vector<AgentId>> tiers{{new_symptomatics.begin(), new_symptomatics.end()}};
    return fill_budget(tiers, eligible, k, rng);
}

std::vector<AgentId> policy_tsdc(std::span<const AgentId> new_symptomatics,
                                 const std::function<std::vector<AgentId>(AgentId)>& direct_contacts_of,
                                 std::span<const AgentId> eligible, int k, Rng& rng)
{
    std::vector<std::vector<AgentId>> tiers(2);
    tiers[0].assign(new_symptomatics.begin(), new_symptomatics.end());
    for (AgentId s : new_symptomatics) {
        auto contacts = direct_contacts_of(s);
        tiers[1].insert(tiers[1].end(), contacts.begin(), contacts.end());
    }
    std::sort(tiers[1].begin(), tiers[1].end());
    tiers[1].erase(std::unique(tiers[1].begin(), tiers[1].end()), tiers[1].end());
    return fill_budget(tiers, eligible, k, rng);
}

std::vector<AgentId> policy_ranked(std::span<const AgentId> ranked_candidates, std::span<const AgentId> eligible,
                                   int k, Rng& rng)
{
    if (k < 0)
        throw std::invalid_argument("K must be non-negative");
    const std::unordered_set<AgentId> allowed(eligible.begin(), eligible.end());
    std::vector<AgentId> head;
    std::unordered_set<AgentId> taken;
    for (AgentId id : ranked_candidates) {
        if (head.size() >= static_cast<std::size_t>(k))
            break;
        if (allowed.contains(id) && taken.insert(id).second)
            head.push_back(id);
    }
    // The head already fits in K, so it passes through the tier untruncated.
    const std::vector<std::vector<AgentId>> tiers{std::move(head)};
    return fill_budget(tiers, eligible, k, rng);
}

} // namespace ppto::policy
