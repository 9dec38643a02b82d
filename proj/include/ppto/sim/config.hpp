#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "ppto/contacts/contact_graph.hpp"
#include "ppto/engine/ppto_engine.hpp"
#include "ppto/epidemic/contagion_kernel.hpp"
#include "ppto/policy/policy.hpp"

namespace ppto::sim {

/// How the daily infected-class mix fed to the trajectory sampler is obtained.
enum class PrevalenceSource {
    ground_truth,      // |A|, |P|, |Y| counts of the day
    symptomatic_model, // stationary mix implied by alpha_s and the mean clocks
};

struct SimConfig {
    std::size_t population = 10000;
    int days = 30;
    int tests_per_day = 100;
    int ppto_iterations = 100;
    int window_days = 14;
    std::size_t initial_symptomatic = 5;
    double mean_degree = 10.0;
    double heavy_pair_fraction = 0.3;
    double heavy_pair_weight = 0.9;
    double rho = 1.0;
    epidemic::ContagionParams contagion;
    contacts::ContactSampling contact_sampling;
    policy::SwabTest swab;
    policy::PolicyKind policy = policy::PolicyKind::none;
    std::uint64_t seed = 1;
    PrevalenceSource prevalence_source = PrevalenceSource::ground_truth;
    engine::GammaProduct gamma_product = engine::GammaProduct::preceding_contacts;
    int hop_budget_factor = 10;
    int ppto_max_rounds = 3;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Calibrated defaults for the uncontrolled and policy-comparison runs.
SimConfig experiment1_preset();
/// Calibrated defaults for the app-usage sweep.
SimConfig experiment2_preset();

/// Config files are one flat JSON object of key/value pairs; keys not
/// present keep the value from `base`, unknown keys are rejected.
SimConfig parse_config(std::string_view text, const SimConfig& base = experiment1_preset());
SimConfig load_config(const std::filesystem::path& path, const SimConfig& base = experiment1_preset());
std::string dump_config(const SimConfig& config);

} // namespace ppto::sim
