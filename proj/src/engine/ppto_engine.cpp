#include "ppto/engine/ppto_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace ppto::engine {

using epidemic::InfectorClass;

PrevalenceEstimate PrevalenceEstimate::from_counts(std::size_t a, std::size_t p, std::size_t y)
{
    const std::size_t total = a + p + y;
    if (total == 0)
        return {};
    const auto t = static_cast<double>(total);
    return {static_cast<double>(a) / t, static_cast<double>(p) / t, static_cast<double>(y) / t};
}

void PrevalenceEstimate::validate() const
{
    for (double f : {asymptomatic, presymptomatic, symptomatic})
        if (!(f >= 0.0 && f <= 1.0))
            throw std::invalid_argument("prevalence fractions must lie in [0, 1]");
    if (std::abs(asymptomatic + presymptomatic + symptomatic - 1.0) > 1e-9)
        throw std::invalid_argument("prevalence fractions must sum to 1");
}

double mixture_probability(const PrevalenceEstimate& prevalence, const ContagionParams& kernel, double distance,
                           double duration)
{
    return prevalence.asymptomatic *
               epidemic::transmission_probability(InfectorClass::asymptomatic, distance, duration, kernel) +
           prevalence.presymptomatic *
               epidemic::transmission_probability(InfectorClass::presymptomatic, distance, duration, kernel) +
           prevalence.symptomatic *
               epidemic::transmission_probability(InfectorClass::symptomatic, distance, duration, kernel);
}

std::vector<double> backward_weights(std::span<const DeviceRecord> candidates, const TrajectoryContext& ctx)
{
    std::vector<double> gamma;
    gamma.reserve(candidates.size());
    double survival = 1.0;
    for (const auto& c : candidates) {
        const double d = mixture_probability(ctx.prevalence, ctx.kernel, c.distance, c.duration);
        if (ctx.gamma_product == GammaProduct::preceding_contacts) {
            gamma.push_back(survival * d);
        } else {
            gamma.push_back(d);
        }
        survival *= 1.0 - d;
    }
    if (ctx.gamma_product == GammaProduct::whole_window)
        for (auto& g : gamma)
            g *= survival;
    return gamma;
}

bool backward_trajectory(const DeviceStore& store, Day t_prime, std::uint32_t iteration,
                         const TrajectoryContext& ctx, MessageBus& bus, Rng& rng)
{
    const auto window = store.records_between(ctx.today - ctx.window, t_prime - 1);
    if (window.empty())
        return false;
    const auto gamma = backward_weights(window, ctx);
    double total = 0.0;
    for (double g : gamma)
        total += g;
    if (!(total > 0.0))
        return false;

    const double target = uniform01(rng) * total;
    double acc = 0.0;
    std::size_t chosen = gamma.size();
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        acc += gamma[i];
        if (target < acc) {
            chosen = i;
            break;
        }
    }
    if (chosen == gamma.size()) {
        // Rounding left target at the upper edge: take the last positive weight.
        for (std::size_t i = gamma.size(); i-- > 0;)
            if (gamma[i] > 0.0) {
                chosen = i;
                break;
            }
    }
    bus.send({iteration, window[chosen].peer_token});
    return true;
}

std::size_t forward_trajectory(const DeviceStore& store, Day t_prime, std::uint32_t iteration,
                               const TrajectoryContext& ctx, MessageBus& bus, Rng& rng)
{
    std::size_t sent = 0;
    for (const auto& c : store.records_between(t_prime + 1, ctx.today)) {
        if (bernoulli(rng, mixture_probability(ctx.prevalence, ctx.kernel, c.distance, c.duration))) {
            bus.send({iteration, c.peer_token});
            ++sent;
        }
    }
    return sent;
}

HandleOutcome handle_request(DeviceStore& store, const TrajectoryRequest& request, const TrajectoryContext& ctx,
                             MessageBus& bus, Rng& rng)
{
    const DeviceRecord* record = store.find_own(request.token);
    if (record == nullptr)
        throw std::logic_error("request delivered to a device that does not own the token");
    if (!store.raise_flag(request.iteration))
        return HandleOutcome::duplicate;
    const Day t_prime = record->day;
    backward_trajectory(store, t_prime, request.iteration, ctx, bus, rng);
    forward_trajectory(store, t_prime, request.iteration, ctx, bus, rng);
    return HandleOutcome::accepted;
}

std::vector<InfectionScore> rank_scores(std::vector<InfectionScore> scores, Rng& rng)
{
    std::erase_if(scores, [](const InfectionScore& s) { return s.score == 0; });
    std::shuffle(scores.begin(), scores.end(), rng);
    std::stable_sort(scores.begin(), scores.end(),
                     [](const InfectionScore& a, const InfectionScore& b) { return a.score > b.score; });
    return scores;
}

Selection select_top_k(std::vector<InfectionScore> scores, int k, Rng& rng)
{
    if (k < 0)
        throw std::invalid_argument("K must be non-negative");
    const auto ranked = rank_scores(std::move(scores), rng);
    Selection out;
    const auto take = std::min(ranked.size(), static_cast<std::size_t>(k));
    out.selected.reserve(take);
    for (std::size_t i = 0; i < take; ++i)
        out.selected.push_back(ranked[i].pseudonym);
    out.shortfall = static_cast<std::size_t>(k) - take;
    return out;
}

void PptoSettings::validate() const
{
    if (tests < 0)
        throw std::invalid_argument("K must be non-negative");
    if (iterations < 1)
        throw std::invalid_argument("N must be at least 1");
    if (window < 1)
        throw std::invalid_argument("window must be at least one day");
    if (max_rounds < 0)
        throw std::invalid_argument("max_rounds must be non-negative");
}

std::string format_diagnostics(Day day, const DailyDiagnostics& d)
{
    std::ostringstream out;
    out << "day=" << day << " iterations=" << d.iterations_run << " seeds=" << d.seeds_available
        << " seeds_without_tokens=" << d.seeds_without_tokens << " sent=" << d.requests_sent
        << " delivered=" << d.requests_delivered << " accepted=" << d.requests_accepted
        << " duplicates=" << d.requests_duplicate << " unmatched=" << d.requests_unmatched
        << " expired=" << d.requests_expired
        << " devices_touched=" << d.devices_touched << " max_accepted_per_iteration=" << d.max_accepted_per_iteration
        << " hop_budget_hits=" << d.hop_budget_hits << " score_histogram=";
    for (std::size_t b = 0; b < d.score_histogram.size(); ++b) {
        if (b > 0)
            out << ',';
        out << (std::size_t{1} << b) << ':' << d.score_histogram[b];
    }
    return out.str();
}

PptoEngine::PptoEngine(ContagionParams kernel, PptoSettings settings)
    : kernel_(std::move(kernel)), settings_(settings)
{
    kernel_.validate();
    settings_.validate();
}

DailyResult PptoEngine::run_day(Day today, std::span<const std::vector<TokenId>> seed_tokens,
                                const PrevalenceEstimate& prevalence, const TokenRouter& router, Rng& rng) const
{
    prevalence.validate();
    DailyResult result;
    auto& diag = result.diagnostics;

    std::vector<const std::vector<TokenId>*> seeds;
    for (const auto& tokens : seed_tokens) {
        if (tokens.empty())
            ++diag.seeds_without_tokens;
        else
            seeds.push_back(&tokens);
    }
    diag.seeds_available = seeds.size();
    if (seeds.empty())
        return result;

    const TrajectoryContext ctx{today, settings_.window, prevalence, kernel_, settings_.gamma_product};
    const std::size_t hop_budget =
        settings_.hop_budget > 0 ? settings_.hop_budget : 10 * std::max<std::size_t>(settings_.device_count, 1);

    MessageBus bus;
    std::vector<DeviceStore*> touched;
    std::unordered_set<const DeviceStore*> seen;

    for (int n = 1; n <= settings_.iterations; ++n) {
        const auto iteration = static_cast<std::uint32_t>(n);
        const auto& tokens = *seeds[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(seeds.size()) - 1))];
        const auto& start = tokens[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(tokens.size()) - 1))];
        bus.restart();
        bus.send({iteration, start});

        std::size_t hops = 0;
        std::size_t accepted = 0;
        while (!bus.empty()) {
            if (settings_.max_rounds > 0 && bus.next_round() > settings_.max_rounds) {
                diag.requests_expired += bus.pending();
                bus.clear();
                break;
            }
            if (hops >= hop_budget) {
                ++diag.hop_budget_hits;
                bus.clear();
                break;
            }
            const auto request = bus.receive();
            ++hops;
            DeviceStore* target = router.find(request.token);
            if (target == nullptr) {
                ++diag.requests_unmatched;
                continue;
            }
            ++diag.requests_delivered;
            if (handle_request(*target, request, ctx, bus, rng) == HandleOutcome::accepted) {
                ++accepted;
                if (seen.insert(target).second)
                    touched.push_back(target);
            } else {
                ++diag.requests_duplicate;
            }
        }
        diag.requests_accepted += accepted;
        diag.max_accepted_per_iteration = std::max(diag.max_accepted_per_iteration, accepted);
        ++diag.iterations_run;
    }
    diag.requests_sent = bus.sent();
    diag.devices_touched = touched.size();

    std::vector<InfectionScore> reports;
    reports.reserve(touched.size());
    for (const DeviceStore* d : touched) {
        reports.push_back({d->pseudonym(), d->score()});
        const auto bin = static_cast<std::size_t>(std::bit_width(d->score()) - 1);
        if (diag.score_histogram.size() <= bin)
            diag.score_histogram.resize(bin + 1, 0);
        ++diag.score_histogram[bin];
    }
    result.ranking = rank_scores(reports, rng);
    const auto take = std::min(result.ranking.size(), static_cast<std::size_t>(settings_.tests));
    for (std::size_t i = 0; i < take; ++i)
        result.selection.selected.push_back(result.ranking[i].pseudonym);
    result.selection.shortfall = static_cast<std::size_t>(settings_.tests) - take;
    return result;
}

} // namespace ppto::engine
