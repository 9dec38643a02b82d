#include "ppto/contacts/contact_graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>

namespace ppto::contacts {

void ContactSampling::validate() const
{
    if (!(distance_mean > 0.0) || !(distance_max > 0.0) || !(duration_mean > 0.0) || !(duration_max > 0.0))
        throw std::invalid_argument("contact sampling parameters must be positive");
}

ContactGraph::ContactGraph(std::size_t population, double background_weight, std::vector<PairWeight> listed,
                           ContactSampling sampling)
    : population_(population), background_(background_weight), listed_(std::move(listed)),
      listed_degree_(population, 0.0), listed_count_(population, 0), sampling_(sampling)
{
    if (population < 2)
        throw std::invalid_argument("contact graph needs at least two agents");
    if (!(background_ >= 0.0 && background_ <= 1.0))
        throw std::invalid_argument("background weight must lie in [0, 1]");
    sampling_.validate();
    for (auto& p : listed_) {
        if (p.u == p.v || p.u >= population || p.v >= population)
            throw std::invalid_argument("invalid listed pair");
        if (!(p.weight >= 0.0 && p.weight <= 1.0))
            throw std::invalid_argument("pair weight must lie in [0, 1]");
        if (p.u > p.v)
            std::swap(p.u, p.v);
        if (!index_.emplace(key(p.u, p.v), p.weight).second)
            throw std::invalid_argument("duplicate listed pair");
        listed_degree_[p.u] += p.weight;
        listed_degree_[p.v] += p.weight;
        ++listed_count_[p.u];
        ++listed_count_[p.v];
    }
    std::sort(listed_.begin(), listed_.end(),
              [](const PairWeight& a, const PairWeight& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
}

std::uint64_t ContactGraph::key(AgentId u, AgentId v) const
{
    if (u > v)
        std::swap(u, v);
    return static_cast<std::uint64_t>(u) * population_ + v;
}

double ContactGraph::weight(AgentId u, AgentId v) const
{
    if (u == v)
        return 0.0;
    const auto it = index_.find(key(u, v));
    return it == index_.end() ? background_ : it->second;
}

bool ContactGraph::is_listed(AgentId u, AgentId v) const
{
    return u != v && index_.contains(key(u, v));
}

double ContactGraph::expected_degree(AgentId u) const
{
    const auto others = static_cast<double>(population_ - 1 - listed_count_.at(u));
    return listed_degree_[u] + others * background_;
}

ContactGraph build_graph(std::size_t population, double mean_degree, double heavy_pair_fraction, Rng& rng,
                         double heavy_weight_cap, ContactSampling sampling)
{
    if (population < 2)
        throw std::invalid_argument("population must be at least 2");
    if (!(mean_degree > 0.0))
        throw std::invalid_argument("mean degree must be positive");
    if (mean_degree >= static_cast<double>(population))
        throw std::invalid_argument("mean degree must be smaller than the population");
    if (!(heavy_pair_fraction >= 0.0 && heavy_pair_fraction <= 1.0))
        throw std::invalid_argument("heavy pair fraction must lie in [0, 1]");
    if (!(heavy_weight_cap > 0.0 && heavy_weight_cap <= 1.0))
        throw std::invalid_argument("heavy weight cap must lie in (0, 1]");

    const std::size_t others = population - 1;
    const double heavy_degree = mean_degree * heavy_pair_fraction;
    std::size_t partners = 0;
    if (heavy_degree > 0.0) {
        partners = static_cast<std::size_t>(std::ceil(heavy_degree / heavy_weight_cap - 1e-12));
        if (partners % 2 == 1)
            ++partners;
    }
    // A circulant with offsets 1..partners/2 is simple only while partners <= n - 2.
    if (partners + 1 >= population)
        return ContactGraph(population, mean_degree / static_cast<double>(others), {}, sampling);

    std::vector<PairWeight> listed;
    if (partners > 0) {
        std::vector<AgentId> order(population);
        std::iota(order.begin(), order.end(), AgentId{0});
        std::shuffle(order.begin(), order.end(), rng);
        const double w = heavy_degree / static_cast<double>(partners);
        listed.reserve(population * partners / 2);
        for (std::size_t offset = 1; offset <= partners / 2; ++offset)
            for (std::size_t i = 0; i < population; ++i)
                listed.push_back({order[i], order[(i + offset) % population], w});
    }
    const double background = (mean_degree - heavy_degree) / static_cast<double>(others - partners);
    return ContactGraph(population, std::min(background, 1.0), std::move(listed), sampling);
}

double sample_truncated_exponential(double mean, double max, Rng& rng)
{
    // Inverse CDF with u in (0, 1] maps onto (0, max].
    const double u = 1.0 - uniform01(rng);
    const double mass = -std::expm1(-max / mean);
    const double x = -mean * std::log1p(-u * mass);
    return std::clamp(x, std::numeric_limits<double>::min(), max);
}

std::vector<Contact> sample_day(const ContactGraph& graph, Day day, const std::vector<bool>& active, Rng& rng)
{
    const std::size_t n = graph.population();
    if (active.size() != n)
        throw std::invalid_argument("active mask size does not match the population");

    std::vector<std::pair<AgentId, AgentId>> pairs;

    // Background tier: geometric skipping over the lower triangle (v > w).
    const double p = graph.background_weight();
    if (p > 0.0) {
        auto emit = [&](std::size_t v, std::size_t w) {
            const auto a = static_cast<AgentId>(w);
            const auto b = static_cast<AgentId>(v);
            if (graph.is_listed(a, b))
                return; // drawn by its own Bernoulli below
            pairs.emplace_back(a, b);
        };
        if (p >= 1.0) {
            for (std::size_t v = 1; v < n; ++v)
                for (std::size_t w = 0; w < v; ++w)
                    emit(v, w);
        } else {
            const double log_q = std::log1p(-p);
            std::size_t v = 1;
            long long w = -1;
            while (v < n) {
                const double r = uniform01(rng);
                w += 1 + static_cast<long long>(std::floor(std::log1p(-r) / log_q));
                while (w >= static_cast<long long>(v) && v < n) {
                    w -= static_cast<long long>(v);
                    ++v;
                }
                if (v < n)
                    emit(v, static_cast<std::size_t>(w));
            }
        }
    }
    for (const auto& pw : graph.listed_pairs())
        if (bernoulli(rng, pw.weight))
            pairs.emplace_back(pw.u, pw.v);

    std::erase_if(pairs, [&](const auto& e) { return !active[e.first] || !active[e.second]; });
    std::sort(pairs.begin(), pairs.end());

    std::vector<Contact> out;
    out.reserve(pairs.size());
    const auto& s = graph.sampling();
    for (const auto& [u, v] : pairs) {
        const double l = sample_truncated_exponential(s.distance_mean, s.distance_max, rng);
        const double r = sample_truncated_exponential(s.duration_mean, s.duration_max, rng);
        out.push_back({u, v, day, l, r});
    }
    return out;
}

void write_edge_list(std::ostream& out, const ContactGraph& graph)
{
    const auto& s = graph.sampling();
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    out << "# contact-graph n=" << graph.population() << " background=" << graph.background_weight()
        << " distance_mean=" << s.distance_mean << " distance_max=" << s.distance_max
        << " duration_mean=" << s.duration_mean << " duration_max=" << s.duration_max << '\n';
    for (const auto& p : graph.listed_pairs())
        out << p.u << ' ' << p.v << ' ' << p.weight << '\n';
    out.precision(old_precision);
}

ContactGraph read_edge_list(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line.rfind("# contact-graph", 0) != 0)
        throw std::runtime_error("edge list: missing '# contact-graph' header");

    std::size_t n = 0;
    double background = -1.0;
    ContactSampling sampling;
    std::istringstream header(line.substr(15));
    std::string field;
    while (header >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("edge list: malformed header field '" + field + "'");
        const auto name = field.substr(0, eq);
        const auto value = field.substr(eq + 1);
        if (name == "n")
            n = std::stoull(value);
        else if (name == "background")
            background = std::stod(value);
        else if (name == "distance_mean")
            sampling.distance_mean = std::stod(value);
        else if (name == "distance_max")
            sampling.distance_max = std::stod(value);
        else if (name == "duration_mean")
            sampling.duration_mean = std::stod(value);
        else if (name == "duration_max")
            sampling.duration_max = std::stod(value);
        else
            throw std::runtime_error("edge list: unknown header field '" + name + "'");
    }
    if (n == 0 || background < 0.0)
        throw std::runtime_error("edge list: header must set n and background");

    std::vector<PairWeight> listed;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream row(line);
        PairWeight p;
        if (!(row >> p.u >> p.v >> p.weight))
            throw std::runtime_error("edge list: malformed row at line " + std::to_string(line_no));
        listed.push_back(p);
    }
    return ContactGraph(n, background, std::move(listed), sampling);
}

} // namespace ppto::contacts
