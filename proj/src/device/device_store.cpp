#include "ppto/device/device_store.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ppto::device {

std::string TokenId::hex() const
{
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                  static_cast<unsigned long long>(lo));
    return buf;
}

void DeviceStore::append(const DeviceRecord& record)
{
    if (!records_.empty() && record.day < records_.back().day)
        throw std::invalid_argument("device records must be appended in day order");
    records_.push_back(record);
}

const DeviceRecord* DeviceStore::find_own(const TokenId& token) const
{
    // Logs hold a couple of hundred records at most; a scan beats a per-device map.
    const auto it = std::find_if(records_.begin(), records_.end(),
                                 [&](const DeviceRecord& r) { return r.own_token == token; });
    return it == records_.end() ? nullptr : &*it;
}

std::span<const DeviceRecord> DeviceStore::records_between(Day first, Day last) const
{
    if (first > last)
        return {};
    const auto lo = std::lower_bound(records_.begin(), records_.end(), first,
                                     [](const DeviceRecord& r, Day d) { return r.day < d; });
    const auto hi = std::upper_bound(lo, records_.end(), last,
                                     [](Day d, const DeviceRecord& r) { return d < r.day; });
    return {lo, hi};
}

std::vector<TokenId> DeviceStore::drop_before(Day cutoff)
{
    const auto keep = std::lower_bound(records_.begin(), records_.end(), cutoff,
                                       [](const DeviceRecord& r, Day d) { return r.day < d; });
    std::vector<TokenId> dropped;
    if (keep == records_.begin())
        return dropped;
    dropped.reserve(static_cast<std::size_t>(keep - records_.begin()));
    for (auto it = records_.begin(); it != keep; ++it)
        dropped.push_back(it->own_token);
    records_.erase(records_.begin(), keep);
    return dropped;
}

bool DeviceStore::raise_flag(std::uint32_t iteration)
{
    const auto it = std::lower_bound(flags_.begin(), flags_.end(), iteration);
    if (it != flags_.end() && *it == iteration)
        return false;
    flags_.insert(it, iteration);
    ++score_;
    return true;
}

void DeviceStore::reset_protocol_state(std::uint64_t pseudonym)
{
    flags_.clear();
    score_ = 0;
    pseudonym_ = pseudonym;
}

bool TokenRouter::bind(const TokenId& token, DeviceStore* device)
{
    return routes_.emplace(token, device).second;
}

void TokenRouter::unbind(const TokenId& token)
{
    routes_.erase(token);
}

DeviceStore* TokenRouter::find(const TokenId& token) const
{
    const auto it = routes_.find(token);
    return it == routes_.end() ? nullptr : it->second;
}

bool apply_app_usage(double rho_u, double rho_v, Rng& rng)
{
    if (!(rho_u >= 0.0 && rho_u <= 1.0 && rho_v >= 0.0 && rho_v <= 1.0))
        throw std::invalid_argument("app usage probabilities must lie in [0, 1]");
    const bool u_active = bernoulli(rng, rho_u);
    const bool v_active = bernoulli(rng, rho_v);
    return u_active && v_active;
}

void update_dev_data(DeviceStore& store_u, DeviceStore& store_v, Day day, double distance, double duration,
                     TokenRouter& router, Rng& rng)
{
    auto fresh = [&](DeviceStore* owner) {
        TokenId t = random_token(rng);
        while (!router.bind(t, owner))
            t = random_token(rng);
        return t;
    };
    const TokenId h_u = fresh(&store_u);
    const TokenId h_v = fresh(&store_v);
    store_u.append({day, h_u, h_v, distance, duration});
    store_v.append({day, h_v, h_u, distance, duration});
}

void prune_window(DeviceStore& store, Day current_day, int window, TokenRouter& router)
{
    if (window < 1)
        throw std::invalid_argument("window must be at least one day");
    for (const auto& t : store.drop_before(current_day - window))
        router.unbind(t);
}

std::string dump_log(const DeviceStore& store)
{
    std::ostringstream out;
    for (const auto& r : store.records())
        out << r.day << ' ' << r.own_token.hex() << ' ' << r.peer_token.hex() << ' ' << r.distance << ' '
            << r.duration << '\n';
    return out.str();
}

} // namespace ppto::device
