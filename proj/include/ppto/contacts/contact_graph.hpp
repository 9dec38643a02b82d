#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "ppto/contacts/contact.hpp"
#include "ppto/rng.hpp"

namespace ppto::contacts {

/// Truncated-exponential samplers for contact distance and duration.
struct ContactSampling {
    double distance_mean = 1.5;  // meters, rate parameter before truncation
    double distance_max = 5.0;
    double duration_mean = 20.0; // minutes
    double duration_max = 120.0;

    void validate() const;
};

struct PairWeight {
    AgentId u = 0;
    AgentId v = 0;
    double weight = 0.0;
};

/// Time-invariant pairwise daily contact probabilities w(u, v).
///
/// Listed pairs carry an explicit weight; every other pair carries the
/// uniform background weight. The background is never materialised, so a
/// 10^4-agent population costs O(listed pairs) memory.
class ContactGraph {
public:
    ContactGraph(std::size_t population, double background_weight, std::vector<PairWeight> listed,
                 ContactSampling sampling);

    std::size_t population() const { return population_; }
    double background_weight() const { return background_; }
    std::span<const PairWeight> listed_pairs() const { return listed_; }
    const ContactSampling& sampling() const { return sampling_; }

    double weight(AgentId u, AgentId v) const;
    bool is_listed(AgentId u, AgentId v) const;
    double expected_degree(AgentId u) const;

private:
    std::uint64_t key(AgentId u, AgentId v) const;

    std::size_t population_;
    double background_;
    std::vector<PairWeight> listed_;
    std::unordered_map<std::uint64_t, double> index_;
    std::vector<double> listed_degree_;
    std::vector<std::size_t> listed_count_;
    ContactSampling sampling_;
};

/// Two-tier structure: each agent gets the same number of recurrent
/// ("household/colleague") partners on a random circulant, whose weights
/// carry `heavy_pair_fraction` of the mean degree, each capped at
/// `heavy_weight_cap`; the rest of the degree is spread uniformly over all
/// other pairs. Expected daily degree equals `mean_degree` for every agent.
ContactGraph build_graph(std::size_t population, double mean_degree, double heavy_pair_fraction, Rng& rng,
                         double heavy_weight_cap = 0.9, ContactSampling sampling = {});

/// Draws C(day): every pair whose endpoints are both active appears with
/// probability w(u, v). Output is sorted by (u, v), each pair at most once.
/// `active` is indexed by agent id.
std::vector<Contact> sample_day(const ContactGraph& graph, Day day, const std::vector<bool>& active, Rng& rng);

/// Sample in (0, max] from an exponential with the given mean, truncated.
double sample_truncated_exponential(double mean, double max, Rng& rng);

/// Edge-list text format:
///   # contact-graph n=<n> background=<w> distance_mean=.. distance_max=.. duration_mean=.. duration_max=..
///   u v w
/// one listed pair per line; unlisted pairs take the background weight.
void write_edge_list(std::ostream& out, const ContactGraph& graph);
ContactGraph read_edge_list(std::istream& in);

} // namespace ppto::contacts
