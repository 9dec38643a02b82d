#include "ppto/sim/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ppto::sim {

namespace {

using nlohmann::json;

std::string_view to_string(PrevalenceSource s)
{
    return s == PrevalenceSource::ground_truth ? "ground_truth" : "symptomatic_model";
}

PrevalenceSource parse_prevalence(const std::string& s)
{
    if (s == "ground_truth")
        return PrevalenceSource::ground_truth;
    if (s == "symptomatic_model")
        return PrevalenceSource::symptomatic_model;
    throw std::invalid_argument("prevalence_source must be ground_truth or symptomatic_model");
}

std::string_view to_string(engine::GammaProduct g)
{
    return g == engine::GammaProduct::preceding_contacts ? "preceding_contacts" : "whole_window";
}

engine::GammaProduct parse_gamma(const std::string& s)
{
    if (s == "preceding_contacts")
        return engine::GammaProduct::preceding_contacts;
    if (s == "whole_window")
        return engine::GammaProduct::whole_window;
    throw std::invalid_argument("gamma_product must be preceding_contacts or whole_window");
}

json to_json(const SimConfig& c)
{
    const auto& k = c.contagion;
    const auto& s = c.contact_sampling;
    return json{
        {"population", c.population},
        {"days", c.days},
        {"tests_per_day", c.tests_per_day},
        {"ppto_iterations", c.ppto_iterations},
        {"window_days", c.window_days},
        {"initial_symptomatic", c.initial_symptomatic},
        {"mean_degree", c.mean_degree},
        {"heavy_pair_fraction", c.heavy_pair_fraction},
        {"heavy_pair_weight", c.heavy_pair_weight},
        {"rho", c.rho},
        {"beta_asymptomatic", k.beta_asymptomatic},
        {"beta_presymptomatic", k.beta_presymptomatic},
        {"beta_symptomatic", k.beta_symptomatic},
        {"distance_scale", k.distance_scale},
        {"duration_scale", k.duration_scale},
        {"alpha_s", k.alpha_s_value},
        {"tau_min", k.tau_range.min},
        {"tau_max", k.tau_range.max},
        {"epsilon_min", k.epsilon_range.min},
        {"epsilon_max", k.epsilon_range.max},
        {"contact_distance_mean", s.distance_mean},
        {"contact_distance_max", s.distance_max},
        {"contact_duration_mean", s.duration_mean},
        {"contact_duration_max", s.duration_max},
        {"test_sensitivity", c.swab.sensitivity},
        {"test_specificity", c.swab.specificity},
        {"policy", std::string(policy::to_string(c.policy))},
        {"seed", c.seed},
        {"prevalence_source", std::string(to_string(c.prevalence_source))},
        {"gamma_product", std::string(to_string(c.gamma_product))},
        {"hop_budget_factor", c.hop_budget_factor},
        {"ppto_max_rounds", c.ppto_max_rounds},
    };
}

template <typename T>
void read(const json& j, const char* key, T& into)
{
    if (const auto it = j.find(key); it != j.end()) {
        try {
            into = it->get<T>();
        } catch (const json::exception&) {
            throw std::invalid_argument(std::string("config key '") + key + "' has the wrong type");
        }
    }
}

} // namespace

void SimConfig::validate() const
{
    auto fail = [](const std::string& what) { throw std::invalid_argument("invalid config: " + what); };
    if (population < 2)
        fail("population must be at least 2");
    if (days < 1)
        fail("days must be at least 1");
    if (tests_per_day < 0)
        fail("tests_per_day must be non-negative");
    if (policy == policy::PolicyKind::ppto && ppto_iterations < 1)
        fail("ppto_iterations must be at least 1 for the ppto policy");
    if (window_days < 1)
        fail("window_days must be at least 1");
    if (initial_symptomatic > population)
        fail("initial_symptomatic exceeds the population");
    if (!(rho >= 0.0 && rho <= 1.0))
        fail("rho must lie in [0, 1]");
    if (hop_budget_factor < 1)
        fail("hop_budget_factor must be at least 1");
    if (ppto_max_rounds < 0)
        fail("ppto_max_rounds must be non-negative");
    if (!(mean_degree > 0.0) || mean_degree >= static_cast<double>(population))
        fail("mean_degree must lie in (0, population)");
    if (!(heavy_pair_fraction >= 0.0 && heavy_pair_fraction <= 1.0))
        fail("heavy_pair_fraction must lie in [0, 1]");
    if (!(heavy_pair_weight > 0.0 && heavy_pair_weight <= 1.0))
        fail("heavy_pair_weight must lie in (0, 1]");
    try {
        contagion.validate();
        contact_sampling.validate();
        swab.validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
}

SimConfig parse_config(std::string_view text, const SimConfig& base)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw std::invalid_argument("config must be a JSON object");

    const json known = to_json(base);
    for (const auto& [key, value] : j.items())
        if (!known.contains(key))
            throw std::invalid_argument("unknown config key '" + key + "'");

    SimConfig c = base;
    auto& k = c.contagion;
    auto& s = c.contact_sampling;
    read(j, "population", c.population);
    read(j, "days", c.days);
    read(j, "tests_per_day", c.tests_per_day);
    read(j, "ppto_iterations", c.ppto_iterations);
    read(j, "window_days", c.window_days);
    read(j, "initial_symptomatic", c.initial_symptomatic);
    read(j, "mean_degree", c.mean_degree);
    read(j, "heavy_pair_fraction", c.heavy_pair_fraction);
    read(j, "heavy_pair_weight", c.heavy_pair_weight);
    read(j, "rho", c.rho);
    read(j, "beta_asymptomatic", k.beta_asymptomatic);
    read(j, "beta_presymptomatic", k.beta_presymptomatic);
    read(j, "beta_symptomatic", k.beta_symptomatic);
    read(j, "distance_scale", k.distance_scale);
    read(j, "duration_scale", k.duration_scale);
    read(j, "alpha_s", k.alpha_s_value);
    read(j, "tau_min", k.tau_range.min);
    read(j, "tau_max", k.tau_range.max);
    read(j, "epsilon_min", k.epsilon_range.min);
    read(j, "epsilon_max", k.epsilon_range.max);
    read(j, "contact_distance_mean", s.distance_mean);
    read(j, "contact_distance_max", s.distance_max);
    read(j, "contact_duration_mean", s.duration_mean);
    read(j, "contact_duration_max", s.duration_max);
    read(j, "test_sensitivity", c.swab.sensitivity);
    read(j, "test_specificity", c.swab.specificity);
    read(j, "seed", c.seed);
    read(j, "hop_budget_factor", c.hop_budget_factor);
    read(j, "ppto_max_rounds", c.ppto_max_rounds);
    std::string name;
    if (j.contains("policy")) {
        read(j, "policy", name);
        c.policy = policy::parse_policy(name);
    }
    if (j.contains("prevalence_source")) {
        read(j, "prevalence_source", name);
        c.prevalence_source = parse_prevalence(name);
    }
    if (j.contains("gamma_product")) {
        read(j, "gamma_product", name);
        c.gamma_product = parse_gamma(name);
    }
    c.validate();
    return c;
}

SimConfig load_config(const std::filesystem::path& path, const SimConfig& base)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), base);
}

std::string dump_config(const SimConfig& config)
{
    return to_json(config).dump(2);
}

} // namespace ppto::sim
