#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "e3dsim/metrics.hpp"

using namespace e3dsim;

namespace {

std::vector<std::optional<std::uint32_t>> deaths(std::initializer_list<int> rounds) {
    std::vector<std::optional<std::uint32_t>> out;
    for (int r : rounds) {
        if (r < 0) {
            out.push_back(std::nullopt);  // survivor
        } else {
            out.push_back(static_cast<std::uint32_t>(r));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("lifetime milestones read off the sorted death rounds") {
    const auto lt = lifetime_stats(deaths({3, 5, 9}), 100, {3, 3, 2, 2, 1, 1, 1, 1, 1, 1});
    CHECK(lt.first_death_round == 3);
    CHECK(lt.rounds_to_10pct_dead == 3);  // ceil(0.1*3) = 1 death needed
    CHECK(lt.rounds_to_50pct_dead == 5);
    CHECK(lt.last_death_round == 9);
    CHECK_FALSE(lt.first_death_censored);
    CHECK_FALSE(lt.last_death_censored);
}

TEST_CASE("no deaths: every milestone censored at the horizon") {
    const auto lt = lifetime_stats(deaths({-1, -1, -1}), 500, {3, 3, 3});
    CHECK(lt.first_death_round == 500);
    CHECK(lt.rounds_to_10pct_dead == 500);
    CHECK(lt.rounds_to_50pct_dead == 500);
    CHECK(lt.last_death_round == 500);
    CHECK(lt.first_death_censored);
    CHECK(lt.rounds_to_10pct_censored);
    CHECK(lt.rounds_to_50pct_censored);
    CHECK(lt.last_death_censored);
    CHECK(lt.usable_capacity == doctest::Approx(1.0));
}

TEST_CASE("perfectly clustered deaths collapse the profile to one round") {
    const auto lt = lifetime_stats(deaths({10, 10, 10, 10}), 100,
                                   std::vector<std::uint32_t>(11, 4));
    CHECK(lt.first_death_round == 10);
    CHECK(lt.rounds_to_10pct_dead == 10);
    CHECK(lt.rounds_to_50pct_dead == 10);
    CHECK(lt.last_death_round == 10);
}

TEST_CASE("milestones never exceed the horizon and are permutation invariant") {
    const std::vector<std::uint32_t> alive = {5, 5, 4, 4, 3, 2, 1};
    std::vector<int> rounds = {1, 2, 4, 5, 6};  // sorted so the loop covers all permutations
    std::vector<std::optional<std::uint32_t>> perm;
    do {
        perm.clear();
        for (int r : rounds) {
            perm.push_back(static_cast<std::uint32_t>(r));
        }
        const auto lt = lifetime_stats(perm, 50, alive);
        CHECK(lt.first_death_round == 1);
        CHECK(lt.rounds_to_10pct_dead == 1);
        CHECK(lt.rounds_to_50pct_dead == 4);  // ceil(0.5*5) = 3rd death
        CHECK(lt.last_death_round == 6);
        CHECK(lt.last_death_round <= 50);
    } while (std::next_permutation(rounds.begin(), rounds.end()));
}

TEST_CASE("usable capacity averages the alive fraction up to the last death") {
    // 3 nodes; deaths in rounds 1 and 2, one survivor. Censored: average over
    // every executed round: (3/3 + 3/3 + 2/3) / 3.
    const auto lt = lifetime_stats(deaths({1, 2, -1}), 100, {3, 3, 2});
    CHECK(lt.last_death_censored);
    CHECK(lt.usable_capacity == doctest::Approx((1.0 + 1.0 + 2.0 / 3.0) / 3.0));

    // all dead by round 2: average over rounds 0..2 even if the trace is longer
    const auto lt2 = lifetime_stats(deaths({1, 2, 2}), 100, {3, 3, 1});
    CHECK_FALSE(lt2.last_death_censored);
    CHECK(lt2.usable_capacity == doctest::Approx((1.0 + 1.0 + 1.0 / 3.0) / 3.0));
}

TEST_CASE("lifetime_stats rejects an empty population") {
    CHECK_THROWS_AS(lifetime_stats({}, 10, {}), std::invalid_argument);
}

TEST_CASE("distribution_stats fixtures") {
    {
        const double v[] = {1.0, 1.0, 1.0};
        const auto d = distribution_stats(v);
        CHECK(d.mean == doctest::Approx(1.0));
        CHECK(d.stddev == 0.0);
        CHECK(d.cv == 0.0);
    }
    {
        const double v[] = {0.0, 2.0};
        const auto d = distribution_stats(v);  // population convention: divide by N
        CHECK(d.mean == doctest::Approx(1.0));
        CHECK(d.stddev == doctest::Approx(1.0));
        CHECK(d.min == 0.0);
        CHECK(d.max == 2.0);
        CHECK(d.cv == doctest::Approx(1.0));
    }
    {
        const double v[] = {5.0};
        const auto d = distribution_stats(v);
        CHECK(d.mean == doctest::Approx(5.0));
        CHECK(d.stddev == 0.0);
        CHECK(d.cv == 0.0);
    }
    CHECK_THROWS_AS(distribution_stats({}), std::invalid_argument);
}

TEST_CASE("constant lists have exactly zero spread") {
    for (double c : {0.0, 0.25, 123.5, -7.0}) {
        const std::vector<double> v(9, c);
        CHECK(distribution_stats(v).stddev == 0.0);
    }
}

TEST_CASE("a direct-protocol run carries zero control traffic") {
    SimConfig cfg;
    cfg.node_count = 10;
    cfg.protocol = ProtocolKind::Direct;
    cfg.max_rounds = 50;
    const auto oh = overhead_stats(run_simulation(cfg).reports);
    CHECK(oh.total_ctrl_msgs == 0);
    CHECK(oh.ctrl_energy_fraction == 0.0);
    CHECK(oh.total_hypothetical_sync_msgs == 0);
    CHECK(oh.total_data_msgs == 500);  // 10 nodes, 50 rounds, no deaths yet
}

TEST_CASE("overhead_stats sums a hand-built two-round e3d trace") {
    // Round 0: 3 alive, 5 data transmissions, no control traffic.
    RoundReport r0;
    r0.alive_before = 3;
    r0.data_msgs = 5;
    r0.energy_tx_j = 3e-3;
    r0.energy_rx_j = 2e-4;
    // Round 1: 3 alive, one decile broadcast (sender + two receivers charged).
    RoundReport r1;
    r1.alive_before = 3;
    r1.data_msgs = 4;
    r1.ctrl_msgs = 1;
    r1.energy_tx_j = 2.5e-3;
    r1.energy_rx_j = 1e-4;
    r1.energy_ctrl_j = 1.36e-5;

    const RoundReport reports[] = {r0, r1};
    const auto oh = overhead_stats(reports);
    CHECK(oh.total_ctrl_msgs == 1);
    CHECK(oh.total_data_msgs == 9);
    CHECK(oh.ctrl_per_node_round == doctest::Approx(1.0 / 6.0));
    CHECK(oh.ctrl_energy_fraction ==
          doctest::Approx(1.36e-5 / (3e-3 + 2e-4 + 2.5e-3 + 1e-4 + 1.36e-5)));
    CHECK(oh.total_hypothetical_sync_msgs == 0);
}

TEST_CASE("overhead for an ideal run counts R*n*(n-1) hypothetical messages") {
    std::vector<RoundReport> reports(7);
    for (auto& r : reports) {
        r.alive_before = 10;
        r.data_msgs = 10;
        r.hypothetical_sync_msgs = 90;
    }
    const auto oh = overhead_stats(reports);
    CHECK(oh.total_hypothetical_sync_msgs == 7 * 90);
    CHECK(oh.total_ctrl_msgs == 0);
    CHECK(oh.ctrl_energy_fraction == 0.0);
}

TEST_CASE("overhead totals are additive over concatenated traces") {
    std::vector<RoundReport> a(3);
    std::vector<RoundReport> b(4);
    std::uint64_t k = 1;
    for (auto* part : {&a, &b}) {
        for (auto& r : *part) {
            r.alive_before = 5;
            r.data_msgs = 2 * k;
            r.ctrl_msgs = k % 3;
            r.energy_tx_j = 1e-3 * static_cast<double>(k);
            r.energy_ctrl_j = 1e-5 * static_cast<double>(k);
            ++k;
        }
    }
    std::vector<RoundReport> both = a;
    both.insert(both.end(), b.begin(), b.end());

    const auto oa = overhead_stats(a);
    const auto ob = overhead_stats(b);
    const auto oboth = overhead_stats(both);
    CHECK(oboth.total_ctrl_msgs == oa.total_ctrl_msgs + ob.total_ctrl_msgs);
    CHECK(oboth.total_data_msgs == oa.total_data_msgs + ob.total_data_msgs);
    CHECK(oboth.total_hypothetical_sync_msgs ==
          oa.total_hypothetical_sync_msgs + ob.total_hypothetical_sync_msgs);
}
