#include <algorithm>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "ppto/sim/suite.hpp"

namespace fs = std::filesystem;
using namespace ppto;

namespace {

int run_simulate(const std::optional<std::string>& config_path, std::optional<std::uint64_t> seed,
                 const std::optional<std::string>& policy_name, std::optional<int> days, const std::string& out_dir)
{
    sim::SimConfig config = config_path ? sim::load_config(*config_path) : sim::experiment1_preset();
    if (seed)
        config.seed = *seed;
    if (policy_name)
        config.policy = policy::parse_policy(*policy_name);
    if (days)
        config.days = *days;
    config.validate();

    const auto result = sim::run_simulation(config);

    fs::create_directories(out_dir);
    const std::string stem = std::string(policy::to_string(config.policy)) + "_seed" + std::to_string(config.seed);
    const auto csv_path = fs::path(out_dir) / (stem + ".csv");
    std::ofstream csv(csv_path);
    sim::write_metrics_csv(csv, result.days);
    if (!csv)
        throw std::runtime_error("failed writing " + csv_path.string());
    if (!result.ppto_log.empty()) {
        std::ofstream log(fs::path(out_dir) / (stem + ".log"));
        for (const auto& line : result.ppto_log)
            log << line << '\n';
    }
    std::cout << csv_path.string() << '\n';
    return 0;
}

int run_suite(const std::string& name, int seeds, const std::string& out_dir,
              const std::optional<std::string>& config_path, std::optional<std::uint64_t> seed, unsigned jobs)
{
    const auto kind = sim::parse_suite(name);
    sim::SimConfig base = kind == sim::SuiteKind::rho_sweep ? sim::experiment2_preset() : sim::experiment1_preset();
    if (config_path)
        base = sim::load_config(*config_path, base);
    if (seed)
        base.seed = *seed;

    const auto result = sim::run_experiment_suite(kind, base, seeds, fs::path(out_dir), jobs);
    sim::write_summary_csv(std::cout, result.summary);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"SAPSR epidemic simulator with privacy-preserving test optimisation"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> policy_name;
    std::optional<int> days;
    std::string out_dir = "out";

    auto* simulate = app.add_subcommand("simulate", "run one simulation and write its daily CSV");
    simulate->add_option("--config", config_path, "JSON config file (defaults to the experiment-1 preset)")
        ->check(CLI::ExistingFile);
    simulate->add_option("--seed", seed, "master seed");
    simulate->add_option("--policy", policy_name, "testing policy")
        ->check(CLI::IsMember({"none", "ts", "tsdc", "ppto"}));
    simulate->add_option("--days", days, "horizon T in days")->check(CLI::PositiveNumber);
    simulate->add_option("--out", out_dir, "output directory");

    std::string suite_name;
    int seeds = 20;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::optional<std::string> suite_config;
    std::optional<std::uint64_t> suite_seed;
    std::string suite_out = "out";
    auto* suite = app.add_subcommand("suite", "run an experiment suite and write per-run CSVs plus summary.csv");
    suite->add_option("--name", suite_name, "suite name")
        ->required()
        ->check(CLI::IsMember({"uncontrolled", "policy-comparison", "rho-sweep"}));
    suite->add_option("--seeds", seeds, "number of matched seeds")->check(CLI::PositiveNumber);
    suite->add_option("--out", suite_out, "output directory");
    suite->add_option("--config", suite_config, "JSON config file overriding the suite preset")
        ->check(CLI::ExistingFile);
    suite->add_option("--seed", suite_seed, "first seed");
    suite->add_option("--jobs", jobs, "parallel runs")->check(CLI::PositiveNumber);

    std::string preset = "experiment1";
    std::optional<std::string> shown_config;
    auto* show = app.add_subcommand("config", "print the resolved configuration as JSON");
    show->add_option("--preset", preset, "base preset")->check(CLI::IsMember({"experiment1", "experiment2"}));
    show->add_option("--config", shown_config, "JSON config file applied on top of the preset")
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*show) {
            const auto base = preset == "experiment2" ? sim::experiment2_preset() : sim::experiment1_preset();
            std::cout << sim::dump_config(shown_config ? sim::load_config(*shown_config, base) : base) << '\n';
            return 0;
        }
        if (*simulate)
            return run_simulate(config_path, seed, policy_name, days, out_dir);
        return run_suite(suite_name, seeds, suite_out, suite_config, suite_seed, jobs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
