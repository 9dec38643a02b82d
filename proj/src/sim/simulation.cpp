#include "ppto/sim/simulation.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "ppto/contacts/contact_graph.hpp"
#include "ppto/device/device_store.hpp"
#include "ppto/engine/ppto_engine.hpp"
#include "ppto/epidemic/contagion.hpp"
#include "ppto/policy/policy.hpp"

namespace ppto::sim {

namespace {

using contacts::Contact;
using epidemic::HealthState;
using epidemic::PopulationLedger;

// Seeds enter as symptomatic with onset on day 1, so they circulate for one
// day and are isolated at its end like any other new symptomatic.
void seed_symptomatic(PopulationLedger& ledger, AgentId id, const epidemic::ContagionParams& params, Rng& rng)
{
    auto& p = ledger.at(id);
    p.infection_day = 0;
    p.epsilon = 1;
    p.symptom_onset_day = 1;
    p.tau = uniform_int(rng, params.tau_range.min, params.tau_range.max);
    ledger.set_state(id, HealthState::presymptomatic);
    ledger.set_state(id, HealthState::symptomatic);
}

engine::PrevalenceEstimate model_prevalence(const epidemic::ContagionParams& k)
{
    const double alpha = k.alpha_s_value;
    const double tau = 0.5 * (k.tau_range.min + k.tau_range.max);
    const double eps = 0.5 * (k.epsilon_range.min + k.epsilon_range.max);
    const double a = alpha * tau;
    const double p = (1.0 - alpha) * eps;
    const double y = (1.0 - alpha) * tau;
    const double total = a + p + y;
    return {a / total, p / total, y / total};
}

class Simulation {
public:
    explicit Simulation(const SimConfig& config)
        : config_(config),
          ledger_(config.population, config.contagion.alpha_s_value, config.rho),
          contacts_rng_(make_stream(config.seed, Stream::contacts)),
          disease_rng_(make_stream(config.seed, Stream::disease)),
          devices_rng_(make_stream(config.seed, Stream::devices)),
          policy_rng_(make_stream(config.seed, Stream::policy)),
          ppto_rng_(make_stream(config.seed, Stream::ppto)),
          tests_rng_(make_stream(config.seed, Stream::tests)),
          pseudonym_rng_(make_stream(config.seed, Stream::pseudonyms)),
          devices_(config.population),
          known_positive_day_(config.population),
          engine_(config.contagion,
                  engine::PptoSettings{config.tests_per_day, std::max(config.ppto_iterations, 1),
                                       config.window_days, config.population,
                                       static_cast<std::size_t>(config.hop_budget_factor) * config.population,
                                       config.ppto_max_rounds, config.gamma_product})
    {
        config_.validate();
        router_.reserve(static_cast<std::size_t>(config.mean_degree * static_cast<double>(config.population) *
                                                 (config.window_days + 2)));
        Rng graph_rng = make_stream(config.seed, Stream::graph);
        graph_.emplace(contacts::build_graph(config.population, config.mean_degree, config.heavy_pair_fraction,
                                             graph_rng, config.heavy_pair_weight, config.contact_sampling));
    }

    SimulationResult run()
    {
        seed_infections();
        for (Day t = 1; t <= config_.days; ++t)
            step();
        SimulationResult out;
        out.days = std::move(days_);
        out.ppto_log = std::move(log_);
        out.initial_infected = initial_infected_;
        out.device_count = devices_.size();
        out.max_accepted_per_iteration = max_accepted_;
        out.hop_budget_hits = hop_hits_;
        out.final_ledger = std::move(ledger_);
        return out;
    }

private:
    void seed_infections()
    {
        std::vector<AgentId> ids(config_.population);
        for (std::size_t i = 0; i < ids.size(); ++i)
            ids[i] = static_cast<AgentId>(i);
        std::shuffle(ids.begin(), ids.end(), disease_rng_);
        ids.resize(config_.initial_symptomatic);
        std::sort(ids.begin(), ids.end());
        for (AgentId id : ids)
            seed_symptomatic(ledger_, id, config_.contagion, disease_rng_);
        seeds_ = ids;
        initial_infected_ = ids.size();
    }

    void step()
    {
        ledger_.advance_day();
        const Day t = ledger_.day();

        for (auto& d : devices_)
            device::prune_window(d, t, config_.window_days, router_);

        std::vector<bool> active(config_.population);
        for (const auto& p : ledger_.individuals())
            active[p.id] = !p.isolated;
        auto contacts = contacts::sample_day(*graph_, t, active, contacts_rng_);

        for (const auto& c : contacts) {
            const double rho_u = ledger_.at(c.u).app_active_prob;
            const double rho_v = ledger_.at(c.v).app_active_prob;
            if (device::apply_app_usage(rho_u, rho_v, devices_rng_))
                device::update_dev_data(devices_[c.u], devices_[c.v], t, c.distance, c.duration, router_,
                                        devices_rng_);
        }

        auto report = epidemic::contagion_step(ledger_, contacts, config_.contagion, disease_rng_);
        cum_infections_ += report.new_infections.size();

        std::vector<AgentId> new_symptomatics = report.new_symptomatics;
        if (t == 1)
            new_symptomatics.insert(new_symptomatics.end(), seeds_.begin(), seeds_.end());
        std::sort(new_symptomatics.begin(), new_symptomatics.end());
        for (AgentId id : new_symptomatics)
            mark_known_positive(id, t);

        history_.push_back(std::move(contacts));
        while (history_.size() > static_cast<std::size_t>(config_.window_days) + 1)
            history_.pop_front();

        const auto tested = choose_tests(new_symptomatics);
        std::vector<AgentId> positives;
        for (AgentId id : tested)
            if (policy::run_test(ledger_.at(id), config_.swab, tests_rng_) == policy::TestResult::positive)
                positives.push_back(id);
        for (AgentId id : positives)
            mark_known_positive(id, t);

        for (AgentId id : new_symptomatics)
            ledger_.isolate(id);
        for (AgentId id : positives)
            ledger_.isolate(id);

        DayMetrics m;
        m.day = t;
        m.susceptible = ledger_.count(HealthState::susceptible);
        m.asymptomatic = ledger_.count(HealthState::asymptomatic);
        m.presymptomatic = ledger_.count(HealthState::presymptomatic);
        m.symptomatic = ledger_.count(HealthState::symptomatic);
        m.recovered = ledger_.count(HealthState::recovered);
        m.isolated = ledger_.isolated_count();
        m.new_infections = report.new_infections.size();
        m.cum_infections = cum_infections_;
        m.tests_used = tested.size();
        days_.push_back(m);
    }

    void mark_known_positive(AgentId id, Day t)
    {
        if (!known_positive_day_[id])
            known_positive_day_[id] = t;
    }

    std::vector<AgentId> eligible(const std::vector<AgentId>& exclude) const
    {
        std::vector<AgentId> out;
        out.reserve(config_.population);
        for (const auto& p : ledger_.individuals())
            if (!p.isolated && !std::binary_search(exclude.begin(), exclude.end(), p.id))
                out.push_back(p.id);
        return out;
    }

    std::vector<AgentId> choose_tests(const std::vector<AgentId>& new_symptomatics)
    {
        const int k = config_.tests_per_day;
        switch (config_.policy) {
        case policy::PolicyKind::none:
            return {};
        case policy::PolicyKind::ts:
            return policy::policy_ts(new_symptomatics, eligible({}), k, policy_rng_);
        case policy::PolicyKind::tsdc: {
            const auto neighbours = window_contacts_of(new_symptomatics);
            auto lookup = [&](AgentId id) {
                const auto it = neighbours.find(id);
                return it == neighbours.end() ? std::vector<AgentId>{} : it->second;
            };
            return policy::policy_tsdc(new_symptomatics, lookup, eligible({}), k, policy_rng_);
        }
        case policy::PolicyKind::ppto:
            return ppto_tests(new_symptomatics);
        }
        return {};
    }

    std::unordered_map<AgentId, std::vector<AgentId>> window_contacts_of(const std::vector<AgentId>& who) const
    {
        const std::unordered_set<AgentId> wanted(who.begin(), who.end());
        std::unordered_map<AgentId, std::vector<AgentId>> out;
        for (const auto& day : history_)
            for (const auto& c : day) {
                if (wanted.contains(c.u))
                    out[c.u].push_back(c.v);
                if (wanted.contains(c.v))
                    out[c.v].push_back(c.u);
            }
        return out;
    }

    std::vector<AgentId> ppto_tests(const std::vector<AgentId>& new_symptomatics)
    {
        const Day t = ledger_.day();

        // Fresh report pseudonyms each day; the mapping back to agents stays here.
        std::unordered_map<std::uint64_t, AgentId> owner_of;
        owner_of.reserve(devices_.size());
        for (std::size_t i = 0; i < devices_.size(); ++i) {
            std::uint64_t x = pseudonym_rng_();
            while (owner_of.contains(x))
                x = pseudonym_rng_();
            owner_of.emplace(x, static_cast<AgentId>(i));
            devices_[i].reset_protocol_state(x);
        }

        // H_u: peer tokens logged by each recent positive within the window.
        std::vector<std::vector<device::TokenId>> seed_tokens;
        for (std::size_t i = 0; i < devices_.size(); ++i) {
            const auto& known = known_positive_day_[i];
            if (!known || *known < t - config_.window_days)
                continue;
            std::vector<device::TokenId> tokens;
            for (const auto& r : devices_[i].records_between(t - config_.window_days, t))
                tokens.push_back(r.peer_token);
            seed_tokens.push_back(std::move(tokens));
        }

        const auto prevalence =
            config_.prevalence_source == PrevalenceSource::ground_truth
                ? engine::PrevalenceEstimate::from_counts(ledger_.count(HealthState::asymptomatic),
                                                          ledger_.count(HealthState::presymptomatic),
                                                          ledger_.count(HealthState::symptomatic))
                : model_prevalence(config_.contagion);

        const auto day = engine_.run_day(t, seed_tokens, prevalence, router_, ppto_rng_);
        max_accepted_ = std::max(max_accepted_, day.diagnostics.max_accepted_per_iteration);
        hop_hits_ += day.diagnostics.hop_budget_hits;
        log_.push_back(engine::format_diagnostics(t, day.diagnostics));

        std::vector<AgentId> ranked;
        ranked.reserve(day.ranking.size());
        for (const auto& s : day.ranking)
            ranked.push_back(owner_of.at(s.pseudonym));
        // New symptomatics come first, as under the baselines; the ranking fills the rest.
        if (new_symptomatics.size() >= static_cast<std::size_t>(config_.tests_per_day))
            return policy::policy_ts(new_symptomatics, eligible({}), config_.tests_per_day, policy_rng_);
        ranked.insert(ranked.begin(), new_symptomatics.begin(), new_symptomatics.end());
        return policy::policy_ranked(ranked, eligible({}), config_.tests_per_day, policy_rng_);
    }

    SimConfig config_;
    PopulationLedger ledger_;
    std::optional<contacts::ContactGraph> graph_;
    Rng contacts_rng_;
    Rng disease_rng_;
    Rng devices_rng_;
    Rng policy_rng_;
    Rng ppto_rng_;
    Rng tests_rng_;
    Rng pseudonym_rng_;
    std::vector<device::DeviceStore> devices_;
    device::TokenRouter router_;
    std::vector<std::optional<Day>> known_positive_day_;
    std::deque<std::vector<Contact>> history_;
    engine::PptoEngine engine_;
    std::vector<AgentId> seeds_;
    std::size_t initial_infected_ = 0;
    std::size_t cum_infections_ = 0;
    std::size_t max_accepted_ = 0;
    std::size_t hop_hits_ = 0;
    std::vector<DayMetrics> days_;
    std::vector<std::string> log_;
};

} // namespace

SimulationResult run_simulation(const SimConfig& config)
{
    config.validate();
    return Simulation(config).run();
}

void write_metrics_csv(std::ostream& out, std::span<const DayMetrics> days)
{
    out << metrics_csv_header << '\n';
    for (const auto& m : days)
        out << m.day << ',' << m.susceptible << ',' << m.asymptomatic << ',' << m.presymptomatic << ','
            << m.symptomatic << ',' << m.recovered << ',' << m.isolated << ',' << m.new_infections << ','
            << m.cum_infections << ',' << m.tests_used << '\n';
}

std::string metrics_csv(std::span<const DayMetrics> days)
{
    std::ostringstream out;
    write_metrics_csv(out, days);
    return out.str();
}

} // namespace ppto::sim
