#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "ppto/device/device_store.hpp"

using namespace ppto;
using namespace ppto::device;

TEST_CASE("one contact: mirrored records and two routes")
{
    DeviceStore u;
    DeviceStore v;
    TokenRouter router;
    Rng rng(1);
    update_dev_data(u, v, 3, 1.2, 20.0, router, rng);
    REQUIRE(u.size() == 1);
    REQUIRE(v.size() == 1);
    const auto& ru = u.records()[0];
    const auto& rv = v.records()[0];
    CHECK(ru.day == 3);
    CHECK(ru.distance == 1.2);
    CHECK(ru.duration == 20.0);
    CHECK(rv.day == 3);
    CHECK(rv.distance == 1.2);
    CHECK(rv.duration == 20.0);
    CHECK(ru.own_token == rv.peer_token);
    CHECK(rv.own_token == ru.peer_token);
    CHECK(ru.own_token != rv.own_token);
    CHECK(router.find(ru.own_token) == &u);
    CHECK(router.find(rv.own_token) == &v);
    CHECK(u.owns(ru.own_token));
    CHECK_FALSE(u.owns(rv.own_token));
}

TEST_CASE("the same pair on two days uses four distinct tokens")
{
    DeviceStore u;
    DeviceStore v;
    TokenRouter router;
    Rng rng(2);
    update_dev_data(u, v, 1, 1.0, 10.0, router, rng);
    update_dev_data(u, v, 2, 1.0, 10.0, router, rng);
    std::set<TokenId> tokens;
    for (const auto* s : {&u, &v})
        for (const auto& r : s->records())
            tokens.insert(r.own_token);
    CHECK(tokens.size() == 4);
    CHECK(router.size() == 4);
}

TEST_CASE("ten contacts among four devices give twenty routes")
{
    std::vector<DeviceStore> d(4);
    TokenRouter router;
    Rng rng(3);
    const int pairs[10][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 1}, {2, 3}, {1, 2}, {0, 3}};
    for (int i = 0; i < 10; ++i)
        update_dev_data(d[pairs[i][0]], d[pairs[i][1]], 1 + i / 4, 1.0, 5.0, router, rng);
    CHECK(router.size() == 20);
}

TEST_CASE("a token collision is redrawn")
{
    DeviceStore u;
    DeviceStore v;
    DeviceStore squatter;
    TokenRouter router;
    Rng rng(4);
    Rng peek = rng;
    const TokenId first = random_token(peek);
    REQUIRE(router.bind(first, &squatter));
    CHECK_FALSE(router.bind(first, &u));
    update_dev_data(u, v, 1, 1.0, 1.0, router, rng);
    CHECK(u.records()[0].own_token != first);
    CHECK(router.find(first) == &squatter);
    CHECK(router.size() == 3);
}

TEST_CASE("unknown tokens route nowhere")
{
    TokenRouter router;
    CHECK(router.find(TokenId{1, 2}) == nullptr);
    CHECK_FALSE(router.contains(TokenId{1, 2}));
}

TEST_CASE("app usage gating")
{
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        CHECK(apply_app_usage(1.0, 1.0, rng));
        CHECK_FALSE(apply_app_usage(0.0, 0.7, rng));
        CHECK_FALSE(apply_app_usage(0.4, 0.0, rng));
    }
    const int draws = 100000;
    int recorded = 0;
    for (int i = 0; i < draws; ++i)
        recorded += apply_app_usage(0.75, 0.75, rng) ? 1 : 0;
    const double rate = recorded / static_cast<double>(draws);
    CHECK(rate >= 0.552);
    CHECK(rate <= 0.573);
    CHECK_THROWS_AS(apply_app_usage(1.2, 0.5, rng), std::invalid_argument);
    CHECK_THROWS_AS(apply_app_usage(0.5, -0.1, rng), std::invalid_argument);
}

TEST_CASE("pruning keeps the window and unbinds dropped tokens")
{
    DeviceStore u;
    DeviceStore v;
    TokenRouter router;
    Rng rng(6);
    update_dev_data(u, v, 1, 1.0, 1.0, router, rng);
    update_dev_data(u, v, 10, 1.0, 1.0, router, rng);
    const TokenId old_token = u.records()[0].own_token;
    prune_window(u, 20, 14, router);
    REQUIRE(u.size() == 1);
    CHECK(u.records()[0].day == 10);
    CHECK_FALSE(router.contains(old_token));
    CHECK(router.size() == 3);

    prune_window(u, 20, 14, router);
    CHECK(u.size() == 1);
    CHECK_THROWS_AS(prune_window(u, 20, 0, router), std::invalid_argument);
}

TEST_CASE("pruning 100 records matches a direct filter")
{
    DeviceStore u;
    DeviceStore v;
    TokenRouter router;
    Rng rng(7);
    std::vector<Day> days;
    for (int i = 0; i < 100; ++i)
        days.push_back(uniform_int(rng, 1, 30));
    std::sort(days.begin(), days.end());
    for (Day d : days)
        update_dev_data(u, v, d, 1.0, 1.0, router, rng);
    const auto expected = std::count_if(days.begin(), days.end(), [](Day d) { return d >= 30 - 14; });
    prune_window(u, 30, 14, router);
    CHECK(u.size() == static_cast<std::size_t>(expected));
    for (const auto& r : u.records()) {
        CHECK(r.day >= 16);
        CHECK(router.find(r.own_token) == &u);
    }
}

TEST_CASE("records must arrive in day order and can be sliced by day")
{
    DeviceStore s;
    s.append({2, {0, 1}, {0, 2}, 1.0, 1.0});
    s.append({2, {0, 3}, {0, 4}, 1.0, 1.0});
    s.append({5, {0, 5}, {0, 6}, 1.0, 1.0});
    CHECK_THROWS_AS(s.append({4, {0, 7}, {0, 8}, 1.0, 1.0}), std::invalid_argument);
    CHECK(s.records_between(2, 2).size() == 2);
    CHECK(s.records_between(3, 4).empty());
    CHECK(s.records_between(1, 9).size() == 3);
    CHECK(s.records_between(5, 2).empty());
}

TEST_CASE("mirror consistency over a random population")
{
    std::vector<DeviceStore> d(30);
    TokenRouter router;
    Rng rng(8);
    for (Day day = 1; day <= 10; ++day)
        for (int i = 0; i < 40; ++i) {
            const int a = uniform_int(rng, 0, 29);
            int b = uniform_int(rng, 0, 28);
            if (b >= a)
                ++b;
            update_dev_data(d[a], d[b], day, uniform01(rng) * 5, uniform01(rng) * 100, router, rng);
        }
    std::map<std::pair<TokenId, TokenId>, int> seen;
    for (const auto& s : d)
        for (const auto& r : s.records())
            ++seen[{r.own_token, r.peer_token}];
    for (std::size_t i = 0; i < d.size(); ++i)
        for (const auto& r : d[i].records()) {
            CHECK(seen[{r.peer_token, r.own_token}] == 1);
            const DeviceStore* peer = router.find(r.peer_token);
            REQUIRE(peer != nullptr);
            CHECK(peer != &d[i]);
            const auto* back = peer->find_own(r.peer_token);
            REQUIRE(back != nullptr);
            CHECK(back->peer_token == r.own_token);
            CHECK(back->day == r.day);
            CHECK(back->distance == r.distance);
            CHECK(back->duration == r.duration);
        }
    CHECK(router.size() == 2 * 10 * 40);
}

TEST_CASE("flags raise the score once per iteration")
{
    DeviceStore s;
    s.reset_protocol_state(42);
    CHECK(s.raise_flag(3));
    CHECK_FALSE(s.raise_flag(3));
    CHECK(s.raise_flag(1));
    CHECK(s.score() == 2);
    CHECK(s.raised_flags().size() == 2);
    s.reset_protocol_state(43);
    CHECK(s.score() == 0);
    CHECK(s.pseudonym() == 43);
    CHECK(s.raised_flags().empty());
}

TEST_CASE("diagnostic dump has one line per record")
{
    DeviceStore u;
    DeviceStore v;
    TokenRouter router;
    Rng rng(9);
    update_dev_data(u, v, 1, 1.0, 2.0, router, rng);
    update_dev_data(u, v, 2, 1.0, 2.0, router, rng);
    const auto text = dump_log(u);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    CHECK(text.find(u.records()[0].own_token.hex()) != std::string::npos);
    CHECK(u.records()[0].own_token.hex().size() == 32);
}
