#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fosched/cover.hpp"
#include "fosched/exact.hpp"
#include "fosched/instances.hpp"
#include "oracles.hpp"

using namespace fosched;

TEST(DpTable, BoundaryConditionsAndMonotonicity) {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 200; ++iter) {
        const auto instance = oracle::random_instance(rng, 12);
        const DpTable table(instance.jobs());
        const auto n = instance.size();
        for (std::size_t i = 0; i <= n; ++i) EXPECT_EQ(table.at(i, 0), 0);
        for (std::size_t k = 1; k <= n; ++k) EXPECT_EQ(table.at(0, k), kInfinity);
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t k = 1; k <= i; ++k) {
                EXPECT_GE(table.at(i, k), table.at(i, k - 1));  // more jobs cost more
                EXPECT_LE(table.at(i, k), table.at(i - 1, k));  // more candidates cost less
            }
        }
        // Every finite entry on the last row is realised by its reconstruction.
        for (std::size_t k = 0; k <= n && table.at(n, k) != kInfinity; ++k) {
            const auto subset = table.reconstruct(k);
            ASSERT_EQ(subset.size(), k);
            EXPECT_TRUE(std::is_sorted(subset.begin(), subset.end()));
            EXPECT_TRUE(oracle::fits_one_machine(instance.jobs(), subset));
            Time total = 0;
            for (auto pos : subset) total += instance[pos].p;
            EXPECT_EQ(total, table.at(n, k));
        }
    }
}

TEST(MaxFeasibleSubset, Examples) {
    const Instance pair({{1, 1}, {2, 2}});
    const auto a = max_feasible_subset(pair.jobs());
    EXPECT_EQ(a.count, 1u);
    EXPECT_EQ(a.positions, (std::vector<std::size_t>{0}));

    const auto nf = gen_nf_hard(5);
    const auto b = max_feasible_subset(nf.jobs());
    EXPECT_EQ(b.count, 3u);
    EXPECT_EQ(b.positions, (std::vector<std::size_t>{0, 2, 4}));
    EXPECT_EQ(oracle::brute_max_feasible_subset(nf.jobs()), 3u);

    const Instance single({{6, 6}});
    EXPECT_EQ(max_feasible_subset(single.jobs()).count, 1u);

    EXPECT_EQ(max_feasible_subset({}).count, 0u);
    EXPECT_TRUE(max_feasible_subset({}).positions.empty());
}

TEST(MaxFeasibleSubset, MatchesExhaustiveEnumeration) {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 300; ++iter) {
        const auto instance = oracle::random_instance(rng, 15);
        const auto result = max_feasible_subset(instance.jobs());
        ASSERT_EQ(result.count, oracle::brute_max_feasible_subset(instance.jobs()));
        EXPECT_TRUE(oracle::fits_one_machine(instance.jobs(), result.positions));
    }
}

TEST(SetCoverGreedy, Examples) {
    const auto nf = gen_nf_hard(5);
    const auto s = setcover_greedy(nf);
    EXPECT_EQ(s.machine_count(), 2u);
    EXPECT_EQ(std::vector<std::size_t>(s.assignment().begin(), s.assignment().end()),
              (std::vector<std::size_t>{0, 1, 0, 1, 0}));

    EXPECT_EQ(setcover_greedy(Instance({{2, 9}})).machine_count(), 1u);
    EXPECT_EQ(setcover_greedy(Instance{}).machine_count(), 0u);

    // tight-2 with k=1: the first round keeps {a, b} under the exclude-first
    // tie-break, leaving two c jobs that cannot share a machine. The optimum
    // is 2 ({a, c} and {b, c}).
    const auto tight = gen_tight2(1);
    EXPECT_EQ(optimal_count_bruteforce(tight), 2u);
    EXPECT_EQ(setcover_greedy(tight).machine_count(), 3u);
}

TEST(SetCoverGreedy, PropertiesAgainstOracle) {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 300; ++iter) {
        const auto instance = oracle::random_instance(rng, 12);
        const auto s = setcover_greedy(instance);
        ASSERT_TRUE(is_feasible(instance, s));
        EXPECT_LE(s.machine_count(), instance.size());
        if (instance.empty()) continue;
        const auto opt = optimal(instance).machine_count();
        EXPECT_GE(s.machine_count(), opt);
        const auto bound = std::ceil((std::log(static_cast<double>(instance.size())) + 1.0) * opt);
        EXPECT_LE(static_cast<double>(s.machine_count()), bound);
        if (opt == 1) {
            EXPECT_EQ(s.machine_count(), 1u);
        }
    }
}

TEST(SetCoverGreedy, NfHardAlwaysTwo) {
    for (std::size_t n = 3; n <= 40; ++n) EXPECT_EQ(setcover_greedy(gen_nf_hard(n)).machine_count(), 2u);
}
