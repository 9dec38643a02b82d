#pragma once

// Device-side trajectory protocol and the daily Monte-Carlo driver.
//
// Everything in this header works on anonymised device logs, tokens and
// population-level aggregates. It must not include anything that exposes
// agent identities, health states or the ground-truth contact log; the
// privacy test enforces the include set.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "ppto/device/device_store.hpp"
#include "ppto/epidemic/contagion_kernel.hpp"
#include "ppto/rng.hpp"

namespace ppto::engine {

using device::DeviceRecord;
using device::DeviceStore;
using device::TokenId;
using device::TokenRouter;
using epidemic::ContagionParams;

/// Infected-population mix published once per day by the health authority.
struct PrevalenceEstimate {
    double asymptomatic = 1.0 / 3.0;
    double presymptomatic = 1.0 / 3.0;
    double symptomatic = 1.0 / 3.0;

    /// Fractions |B| / |A u P u Y|; uniform when nobody is infected.
    static PrevalenceEstimate from_counts(std::size_t a, std::size_t p, std::size_t y);
    void validate() const;
};

/// delta-hat: the transmission probability averaged over infector classes.
double mixture_probability(const PrevalenceEstimate& prevalence, const ContagionParams& kernel, double distance,
                           double duration);

/// Which earlier contacts enter the "not infected before" product of gamma.
enum class GammaProduct {
    preceding_contacts, // contacts ordered before the candidate (day, then log order)
    whole_window,       // every contact in the backward window
};

struct TrajectoryRequest {
    std::uint32_t iteration = 0;
    TokenId token;
};

/// FIFO of in-flight requests. Each request carries the propagation round it
/// will be delivered in: one more than the request being handled when it was
/// sent, so the queue is always ordered by round.
class MessageBus {
public:
    void send(const TrajectoryRequest& request)
    {
        queue_.push_back({request, round_ + 1});
        ++sent_;
    }
    TrajectoryRequest receive()
    {
        const auto e = queue_.front();
        queue_.pop_front();
        round_ = e.round;
        return e.request;
    }
    /// Round of the next request to be received.
    int next_round() const { return queue_.front().round; }
    /// Starts a new iteration: the next send is delivered in round 1.
    void restart() { round_ = 0; }
    bool empty() const { return queue_.empty(); }
    std::size_t pending() const { return queue_.size(); }
    std::size_t sent() const { return sent_; }
    void clear() { queue_.clear(); }

private:
    struct Envelope {
        TrajectoryRequest request;
        int round = 0;
    };
    std::deque<Envelope> queue_;
    std::size_t sent_ = 0;
    int round_ = 0;
};

struct TrajectoryContext {
    Day today = 0;
    int window = 14;
    PrevalenceEstimate prevalence;
    ContagionParams kernel;
    GammaProduct gamma_product = GammaProduct::preceding_contacts;
};

/// Unnormalised backward weights gamma(c) for the given contacts, which must
/// be in log order.
std::vector<double> backward_weights(std::span<const DeviceRecord> candidates, const TrajectoryContext& ctx);

/// Samples at most one earlier contact (days [today - window, t' - 1]) with
/// probability gamma(c) / sum(gamma) and sends a request to its peer token.
/// Returns whether a request was sent.
bool backward_trajectory(const DeviceStore& store, Day t_prime, std::uint32_t iteration,
                         const TrajectoryContext& ctx, MessageBus& bus, Rng& rng);

/// One independent Bernoulli(delta-hat) per contact in days [t' + 1, today];
/// each success sends a request to the peer token. Returns requests sent.
std::size_t forward_trajectory(const DeviceStore& store, Day t_prime, std::uint32_t iteration,
                               const TrajectoryContext& ctx, MessageBus& bus, Rng& rng);

enum class HandleOutcome { accepted, duplicate };

/// Device reaction to a request for one of its own tokens: raise f_n and
/// score once per iteration, then propagate backward and forward from the
/// day of the record owning the token.
HandleOutcome handle_request(DeviceStore& store, const TrajectoryRequest& request, const TrajectoryContext& ctx,
                             MessageBus& bus, Rng& rng);

/// Anonymous score report (x, g).
struct InfectionScore {
    std::uint64_t pseudonym = 0;
    std::uint32_t score = 0;
};

/// Descending by score; equal scores in seeded uniform order; zeros dropped.
std::vector<InfectionScore> rank_scores(std::vector<InfectionScore> scores, Rng& rng);

struct Selection {
    std::vector<std::uint64_t> selected;
    std::size_t shortfall = 0;
};

/// The K largest positive scores. Throws std::invalid_argument for K < 0.
Selection select_top_k(std::vector<InfectionScore> scores, int k, Rng& rng);

struct PptoSettings {
    int tests = 100;      // K
    int iterations = 100; // N
    int window = 14;      // t_w
    std::size_t device_count = 0;
    std::size_t hop_budget = 0; // per iteration; 0 means 10 * device_count
    int max_rounds = 0;         // propagation rounds per iteration; 0 drains to quiescence
    GammaProduct gamma_product = GammaProduct::preceding_contacts;

    void validate() const;
};

struct DailyDiagnostics {
    std::size_t iterations_run = 0;
    std::size_t seeds_available = 0;
    std::size_t seeds_without_tokens = 0;
    std::size_t requests_sent = 0;
    std::size_t requests_delivered = 0; // matched a device
    std::size_t requests_accepted = 0;  // raised a flag
    std::size_t requests_duplicate = 0;
    std::size_t requests_unmatched = 0;
    std::size_t requests_expired = 0; // still in flight when the round limit stopped the iteration
    std::size_t devices_touched = 0;
    std::size_t max_accepted_per_iteration = 0;
    std::size_t hop_budget_hits = 0;
    std::vector<std::size_t> score_histogram; // bin b: scores in [2^b, 2^(b+1))
};

/// One line, key=value pairs.
std::string format_diagnostics(Day day, const DailyDiagnostics& diagnostics);

struct DailyResult {
    std::vector<InfectionScore> ranking;
    Selection selection;
    DailyDiagnostics diagnostics;
};

class PptoEngine {
public:
    PptoEngine(ContagionParams kernel, PptoSettings settings);

    const PptoSettings& settings() const { return settings_; }

    /// Runs N trajectory iterations seeded from the recent positives' token
    /// sets H_u. Device protocol state must have been reset for the day.
    DailyResult run_day(Day today, std::span<const std::vector<TokenId>> seed_tokens,
                        const PrevalenceEstimate& prevalence, const TokenRouter& router, Rng& rng) const;

private:
    ContagionParams kernel_;
    PptoSettings settings_;
};

} // namespace ppto::engine
