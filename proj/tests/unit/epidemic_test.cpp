#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ppto/epidemic/contagion.hpp"

using namespace ppto;
using namespace ppto::epidemic;
using contacts::Contact;

namespace {

ContagionParams kernel(double ba, double bp, double by, double ls = 2.0, double rs = 10.0)
{
    ContagionParams p;
    p.beta_asymptomatic = ba;
    p.beta_presymptomatic = bp;
    p.beta_symptomatic = by;
    p.distance_scale = ls;
    p.duration_scale = rs;
    return p;
}

// Walks the legal path S -> P -> Y for fixtures.
void make_symptomatic(PopulationLedger& ledger, AgentId id, Day infected, Day onset, int tau)
{
    auto& p = ledger.at(id);
    ledger.set_state(id, HealthState::presymptomatic);
    ledger.set_state(id, HealthState::symptomatic);
    p.infection_day = infected;
    p.symptom_onset_day = onset;
    p.epsilon = onset - infected;
    p.tau = tau;
}

} // namespace

TEST_CASE("delta is zero unless a susceptible meets an infectious agent")
{
    const auto p = kernel(0.1, 0.15, 0.2);
    CHECK(delta(HealthState::asymptomatic, HealthState::recovered, 1.0, 10.0, p) == 0.0);
    CHECK(delta(HealthState::susceptible, HealthState::susceptible, 0.0, 60.0, p) == 0.0);
    CHECK(delta(HealthState::recovered, HealthState::susceptible, 0.0, 60.0, p) == 0.0);
    CHECK(delta(HealthState::symptomatic, HealthState::asymptomatic, 0.0, 60.0, p) == 0.0);
}

TEST_CASE("delta closed form for a symptomatic infector")
{
    // Frozen from an independent double-precision evaluation of
    // 0.2 * exp(-1/2) * (1 - exp(-15/10)).
    const auto p = kernel(0.1, 0.15, 0.2, 2.0, 10.0);
    CHECK(delta(HealthState::symptomatic, HealthState::susceptible, 1.0, 15.0, p) ==
          doctest::Approx(0.09423907529520416).epsilon(1e-12));
}

TEST_CASE("delta rejects negative geometry")
{
    const auto p = kernel(0.1, 0.15, 0.2);
    CHECK_THROWS_AS(delta(HealthState::symptomatic, HealthState::susceptible, -1.0, 10.0, p), std::invalid_argument);
    CHECK_THROWS_AS(delta(HealthState::symptomatic, HealthState::susceptible, 1.0, -0.5, p), std::invalid_argument);
}

TEST_CASE("delta is monotone in distance, duration and infector class")
{
    const auto p = kernel(0.1, 0.15, 0.2);
    const HealthState classes[] = {HealthState::asymptomatic, HealthState::presymptomatic, HealthState::symptomatic};
    for (double l = 0.0; l <= 5.0; l += 0.25) {
        for (double r = 0.0; r <= 120.0; r += 7.5) {
            double prev_class = 0.0;
            for (auto c : classes) {
                const double d = delta(c, HealthState::susceptible, l, r, p);
                CHECK(d >= 0.0);
                CHECK(d <= 1.0);
                CHECK(d >= prev_class);
                prev_class = d;
                CHECK(delta(c, HealthState::susceptible, l + 0.25, r, p) <= d);
                CHECK(delta(c, HealthState::susceptible, l, r + 7.5, p) >= d);
            }
        }
    }
}

TEST_CASE("kernel parameters are validated")
{
    CHECK_NOTHROW(kernel(0.1, 0.1, 0.1).validate());
    CHECK_THROWS_AS(kernel(0.2, 0.1, 0.3).validate(), std::invalid_argument);
    CHECK_THROWS_AS(kernel(0.1, 0.2, 1.5).validate(), std::invalid_argument);
    CHECK_THROWS_AS(kernel(0.1, 0.2, 0.3, 0.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(kernel(0.1, 0.2, 0.3, 2.0, -1.0).validate(), std::invalid_argument);
}

TEST_CASE("ledger rejects illegal transitions and keeps counts")
{
    PopulationLedger ledger(4, 0.5, 1.0);
    CHECK(ledger.count(HealthState::susceptible) == 4);
    CHECK_THROWS_AS(ledger.set_state(0, HealthState::recovered), std::logic_error);
    CHECK_THROWS_AS(ledger.set_state(0, HealthState::symptomatic), std::logic_error);
    ledger.set_state(0, HealthState::asymptomatic);
    CHECK_THROWS_AS(ledger.set_state(0, HealthState::symptomatic), std::logic_error);
    ledger.set_state(0, HealthState::recovered);
    CHECK_THROWS_AS(ledger.set_state(0, HealthState::susceptible), std::logic_error);
    CHECK(ledger.count(HealthState::recovered) == 1);
    CHECK(ledger.check_conservation());
    CHECK_THROWS_AS(ledger.at(4), std::out_of_range);
}

TEST_CASE("empty contact set only advances clocks")
{
    PopulationLedger ledger(3, 1.0, 1.0);
    ledger.advance_day();
    make_symptomatic(ledger, 0, 0, 1, 2);
    Rng rng(7);
    const auto report = contagion_step(ledger, {}, kernel(0.1, 0.15, 0.2), rng);
    CHECK(report.new_infections.empty());
    CHECK(ledger.count(HealthState::susceptible) == 2);
}

TEST_CASE("an all-recovered population is absorbing")
{
    PopulationLedger ledger(3, 1.0, 1.0);
    for (AgentId id = 0; id < 3; ++id) {
        ledger.set_state(id, HealthState::asymptomatic);
        ledger.set_state(id, HealthState::recovered);
    }
    ledger.advance_day();
    std::vector<Contact> contacts{{0, 1, 1, 0.1, 100.0}, {1, 2, 1, 0.1, 100.0}};
    Rng rng(3);
    const auto report = contagion_step(ledger, contacts, kernel(1.0, 1.0, 1.0, 1e6, 1e-6), rng);
    CHECK(report.new_infections.empty());
    CHECK(report.recoveries.empty());
    CHECK(ledger.count(HealthState::recovered) == 3);
}

TEST_CASE("two-agent trace: certain transmission, then recovery after tau")
{
    // Hand trace: v is symptomatic, u susceptible with alpha_s = 1; one contact
    // with delta = 1 puts u in A on day 1; u recovers exactly on day 1 + tau.
    PopulationLedger ledger(2, 1.0, 1.0);
    ledger.advance_day();
    make_symptomatic(ledger, 1, 0, 1, 100);
    auto p = kernel(1.0, 1.0, 1.0, 1e9, 1e-9);
    p.alpha_s_value = 1.0;
    Rng rng(11);
    const std::vector<Contact> c{{0, 1, 1, 0.0, 60.0}};
    const auto first = contagion_step(ledger, c, p, rng);
    REQUIRE(first.new_infections == std::vector<AgentId>{0});
    const auto& u = ledger.at(0);
    CHECK(u.state == HealthState::asymptomatic);
    CHECK(u.infection_day == 1);
    CHECK(u.tau >= p.tau_range.min);
    CHECK(u.tau <= p.tau_range.max);

    const int tau = u.tau;
    for (int step = 1; step < tau; ++step) {
        ledger.advance_day();
        contagion_step(ledger, {}, p, rng);
        CHECK(ledger.at(0).state == HealthState::asymptomatic);
    }
    ledger.advance_day();
    const auto last = contagion_step(ledger, {}, p, rng);
    CHECK(ledger.at(0).state == HealthState::recovered);
    CHECK(last.recoveries == std::vector<AgentId>{0});
}

TEST_CASE("agents infected today do not transmit today")
{
    // 0 is symptomatic; 1 and 2 susceptible. Contacts 0-1 and 1-2 on the
    // same day with delta = 1: only 1 gets infected.
    PopulationLedger ledger(3, 1.0, 1.0);
    ledger.advance_day();
    make_symptomatic(ledger, 0, 0, 1, 100);
    Rng rng(5);
    const std::vector<Contact> c{{0, 1, 1, 0.0, 60.0}, {1, 2, 1, 0.0, 60.0}};
    const auto report = contagion_step(ledger, c, kernel(1.0, 1.0, 1.0, 1e9, 1e-9), rng);
    CHECK(report.new_infections == std::vector<AgentId>{1});
    CHECK(ledger.at(2).state == HealthState::susceptible);
}

TEST_CASE("presymptomatic agents turn symptomatic after epsilon")
{
    PopulationLedger ledger(1, 0.0, 1.0);
    ledger.advance_day();
    auto p = kernel(0.1, 0.15, 0.2);
    p.alpha_s_value = 0.0;
    Rng rng(2);
    infect(ledger, 0, p, rng);
    const auto& u = ledger.at(0);
    REQUIRE(u.state == HealthState::presymptomatic);
    const int eps = u.epsilon;
    CHECK(eps >= p.epsilon_range.min);
    CHECK(eps <= p.epsilon_range.max);
    Day onset = 0;
    for (int step = 0; step < 40 && onset == 0; ++step) {
        ledger.advance_day();
        const auto r = contagion_step(ledger, {}, p, rng);
        if (!r.new_symptomatics.empty())
            onset = ledger.day();
    }
    CHECK(onset == 1 + eps);
    CHECK(u.symptom_onset_day == onset);
}

TEST_CASE("contagion_step rejects corrupt input")
{
    PopulationLedger ledger(2, 1.0, 1.0);
    ledger.advance_day();
    Rng rng(1);
    const auto p = kernel(0.1, 0.15, 0.2);
    const std::vector<Contact> missing{{0, 7, 1, 1.0, 1.0}};
    CHECK_THROWS_AS(contagion_step(ledger, missing, p, rng), std::out_of_range);
    const std::vector<Contact> wrong_day{{0, 1, 2, 1.0, 1.0}};
    CHECK_THROWS_AS(contagion_step(ledger, wrong_day, p, rng), std::invalid_argument);
    ledger.isolate(1);
    const std::vector<Contact> isolated{{0, 1, 1, 1.0, 1.0}};
    CHECK_THROWS_AS(contagion_step(ledger, isolated, p, rng), std::logic_error);
}

TEST_CASE("random dynamics conserve the population and never lose recoveries")
{
    const std::size_t n = 200;
    PopulationLedger ledger(n, 0.6, 1.0);
    auto p = kernel(0.3, 0.4, 0.5);
    p.alpha_s_value = 0.6;
    Rng rng(99);
    ledger.advance_day();
    for (AgentId id = 0; id < 10; ++id)
        infect(ledger, id, p, rng);
    std::size_t prev_r = 0;
    for (int day = 0; day < 60; ++day) {
        std::vector<Contact> c;
        for (AgentId u = 0; u < n; ++u)
            for (int k = 0; k < 3; ++k) {
                const auto v = static_cast<AgentId>(uniform_int(rng, 0, static_cast<int>(n) - 1));
                if (v != u)
                    c.push_back({std::min(u, v), std::max(u, v), ledger.day(), uniform01(rng) * 5, uniform01(rng) * 60});
            }
        contagion_step(ledger, c, p, rng);
        CHECK(ledger.check_conservation());
        CHECK(ledger.count(HealthState::recovered) >= prev_r);
        prev_r = ledger.count(HealthState::recovered);
        ledger.advance_day();
    }
}

TEST_CASE("no contacts and no infected means nothing ever changes")
{
    PopulationLedger ledger(50, 0.5, 1.0);
    Rng rng(4);
    for (int day = 0; day < 30; ++day) {
        ledger.advance_day();
        const auto r = contagion_step(ledger, {}, kernel(0.1, 0.15, 0.2), rng);
        CHECK(r.new_infections.empty());
        CHECK(r.recoveries.empty());
    }
    CHECK(ledger.count(HealthState::susceptible) == 50);
}
