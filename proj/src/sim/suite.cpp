#include "ppto/sim/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace ppto::sim {

SuiteKind parse_suite(std::string_view name)
{
    if (name == "uncontrolled")
        return SuiteKind::uncontrolled;
    if (name == "policy-comparison")
        return SuiteKind::policy_comparison;
    if (name == "rho-sweep")
        return SuiteKind::rho_sweep;
    throw std::invalid_argument("unknown suite '" + std::string(name) +
                                "' (expected uncontrolled, policy-comparison or rho-sweep)");
}

std::string_view to_string(SuiteKind kind)
{
    switch (kind) {
    case SuiteKind::uncontrolled:
        return "uncontrolled";
    case SuiteKind::policy_comparison:
        return "policy-comparison";
    case SuiteKind::rho_sweep:
        return "rho-sweep";
    }
    return "?";
}

std::vector<SuiteRunSpec> plan_suite(SuiteKind kind, const SimConfig& base, int seeds)
{
    if (seeds < 1)
        throw std::invalid_argument("a suite needs at least one seed");

    struct Group {
        std::string name;
        SimConfig config;
    };
    std::vector<Group> groups;
    switch (kind) {
    case SuiteKind::uncontrolled: {
        SimConfig c = base;
        c.policy = policy::PolicyKind::none;
        c.tests_per_day = 0;
        groups.push_back({"none", c});
        break;
    }
    case SuiteKind::policy_comparison:
        for (auto p : {policy::PolicyKind::ts, policy::PolicyKind::tsdc, policy::PolicyKind::ppto}) {
            SimConfig c = base;
            c.policy = p;
            groups.push_back({std::string(policy::to_string(p)), c});
        }
        break;
    case SuiteKind::rho_sweep:
        for (double rho : {1.0, 0.75, 0.5}) {
            SimConfig c = base;
            c.policy = policy::PolicyKind::ppto;
            c.rho = rho;
            char name[32];
            std::snprintf(name, sizeof name, "rho=%.2f", rho);
            groups.push_back({name, c});
        }
        break;
    }

    std::vector<SuiteRunSpec> out;
    for (const auto& g : groups)
        for (int i = 0; i < seeds; ++i) {
            SuiteRunSpec spec{g.name, {}, g.config};
            spec.config.seed = base.seed + static_cast<std::uint64_t>(i);
            std::string stem = g.name;
            for (auto& ch : stem)
                if (ch == '=')
                    ch = '_';
            spec.stem = stem + "_seed" + std::to_string(spec.config.seed);
            out.push_back(std::move(spec));
        }
    return out;
}

std::vector<GroupSummary> summarize(const std::vector<SuiteRunOutcome>& runs)
{
    std::vector<GroupSummary> out;
    for (const auto& r : runs) {
        auto it = std::find_if(out.begin(), out.end(), [&](const GroupSummary& g) { return g.group == r.spec.group; });
        if (it == out.end()) {
            out.push_back({r.spec.group, {}, 0.0, 0.0});
            it = std::prev(out.end());
        }
        const double cum = r.result.days.empty() ? 0.0 : static_cast<double>(r.result.days.back().cum_infections);
        it->cum_infections.push_back(cum);
    }
    for (auto& g : out) {
        const auto n = static_cast<double>(g.cum_infections.size());
        double sum = 0.0;
        for (double v : g.cum_infections)
            sum += v;
        g.mean = sum / n;
        double ss = 0.0;
        for (double v : g.cum_infections)
            ss += (v - g.mean) * (v - g.mean);
        g.stddev = g.cum_infections.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    }
    return out;
}

void write_summary_csv(std::ostream& out, const std::vector<GroupSummary>& summary)
{
    out << summary_csv_header << '\n';
    for (const auto& g : summary) {
        char line[160];
        std::snprintf(line, sizeof line, "%s,%zu,%.3f,%.3f", g.group.c_str(), g.cum_infections.size(), g.mean,
                      g.stddev);
        out << line << '\n';
    }
}

SuiteResult run_experiment_suite(SuiteKind kind, const SimConfig& base, int seeds,
                                 const std::optional<std::filesystem::path>& out, unsigned jobs)
{
    const auto plan = plan_suite(kind, base, seeds);
    for (const auto& spec : plan)
        spec.config.validate();
    if (out)
        std::filesystem::create_directories(*out);

    SuiteResult result;
    result.kind = kind;
    result.runs.resize(plan.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < plan.size(); i = next++) {
            result.runs[i].spec = plan[i];
            result.runs[i].result = run_simulation(plan[i].config);
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(plan.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(worker);
    }

    result.summary = summarize(result.runs);

    if (out) {
        for (const auto& r : result.runs) {
            std::ofstream csv(*out / (r.spec.stem + ".csv"));
            write_metrics_csv(csv, r.result.days);
            if (!r.result.ppto_log.empty()) {
                std::ofstream log(*out / (r.spec.stem + ".log"));
                for (const auto& line : r.result.ppto_log)
                    log << line << '\n';
            }
            if (!csv)
                throw std::runtime_error("failed writing suite output to " + out->string());
        }
        std::ofstream summary(*out / "summary.csv");
        write_summary_csv(summary, result.summary);
        if (!summary)
            throw std::runtime_error("failed writing " + (*out / "summary.csv").string());
    }
    return result;
}

} // namespace ppto::sim
