#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "ppto/device/token.hpp"

namespace ppto::device {

struct DeviceRecord {
    Day day = 0;
    TokenId own_token;
    TokenId peer_token;
    double distance = 0.0;
    double duration = 0.0;
};

/// The anonymised contact log kept on one phone, plus the per-day state the
/// trajectory protocol needs (score, iteration flags, report pseudonym).
///
/// The store does not know who owns it. Records are kept in day order.
class DeviceStore {
public:
    void append(const DeviceRecord& record);

    std::span<const DeviceRecord> records() const { return records_; }
    std::size_t size() const { return records_.size(); }

    const DeviceRecord* find_own(const TokenId& token) const;
    bool owns(const TokenId& token) const { return find_own(token) != nullptr; }

    /// Records with first <= day <= last (empty when first > last).
    std::span<const DeviceRecord> records_between(Day first, Day last) const;

    /// Drops records dated before `cutoff`; returns their own tokens.
    std::vector<TokenId> drop_before(Day cutoff);

    // Trajectory protocol state.
    std::uint32_t score() const { return score_; }
    std::uint64_t pseudonym() const { return pseudonym_; }
    std::span<const std::uint32_t> raised_flags() const { return flags_; }

    /// Raises flag f_n and increments the score. False if f_n was already up.
    bool raise_flag(std::uint32_t iteration);

    /// Clears score and flags and installs a fresh report pseudonym.
    void reset_protocol_state(std::uint64_t pseudonym);

private:
    std::vector<DeviceRecord> records_;
    std::vector<std::uint32_t> flags_; // sorted
    std::uint32_t score_ = 0;
    std::uint64_t pseudonym_ = 0;
};

/// Stand-in for the broadcast medium: a request carrying token h reaches the
/// one device that generated h, or nobody.
class TokenRouter {
public:
    /// False if the token is already bound.
    bool bind(const TokenId& token, DeviceStore* device);
    void unbind(const TokenId& token);
    void reserve(std::size_t tokens) { routes_.reserve(tokens); }

    DeviceStore* find(const TokenId& token) const;
    bool contains(const TokenId& token) const { return routes_.contains(token); }
    std::size_t size() const { return routes_.size(); }

private:
    absl::flat_hash_map<TokenId, DeviceStore*, TokenHash> routes_;
};

/// Whether a contact gets stored: both devices must be active, each
/// independently with its own app-usage probability.
bool apply_app_usage(double rho_u, double rho_v, Rng& rng);

/// Exchanges two fresh tokens for one contact and appends the mirrored
/// records (day, own, peer, l, r) to both stores. Tokens that collide with a
/// live route are redrawn.
void update_dev_data(DeviceStore& store_u, DeviceStore& store_v, Day day, double distance, double duration,
                     TokenRouter& router, Rng& rng);

/// Keeps records with day >= current_day - window; unbinds dropped tokens.
void prune_window(DeviceStore& store, Day current_day, int window, TokenRouter& router);

/// Diagnostic dump, one record per line: day own peer distance duration.
std::string dump_log(const DeviceStore& store);

} // namespace ppto::device
