#include <gtest/gtest.h>

#include <random>

#include "fosched/exact.hpp"
#include "fosched/greedy.hpp"
#include "fosched/instances.hpp"
#include "oracles.hpp"

using namespace fosched;

namespace {

std::vector<std::size_t> labels(const Schedule& s) { return {s.assignment().begin(), s.assignment().end()}; }

}  // namespace

TEST(FirstFit, NfHardUsesTwoMachines) {
    const auto s = first_fit(gen_nf_hard(5));
    EXPECT_EQ(s.machine_count(), 2u);
    EXPECT_EQ(labels(s), (std::vector<std::size_t>{0, 1, 0, 1, 0}));
}

TEST(FirstFit, TightFamilyK2) {
    EXPECT_EQ(first_fit(gen_tight2(2)).machine_count(), 5u);
}

TEST(FirstFit, SmallCases) {
    EXPECT_EQ(first_fit(Instance({{3, 3}})).machine_count(), 1u);
    const auto s = first_fit(Instance({{1, 1}, {1, 1}, {1, 2}, {1, 2}}));
    EXPECT_EQ(s.machine_count(), 2u);
    EXPECT_EQ(labels(s), (std::vector<std::size_t>{0, 1, 0, 1}));
    EXPECT_EQ(first_fit(Instance{}).machine_count(), 0u);
}

TEST(NextFit, NfHardOpensOneMachinePerJob) {
    EXPECT_EQ(next_fit(gen_nf_hard(5)).machine_count(), 5u);
}

TEST(NextFit, SmallCases) {
    EXPECT_EQ(next_fit(Instance({{4, 9}})).machine_count(), 1u);
    EXPECT_EQ(next_fit(Instance({{1, 3}, {1, 3}, {1, 3}})).machine_count(), 1u);
}

TEST(Trace, RecordsPlacementWithoutChangingSchedule) {
    const auto instance = gen_tight2(2);
    GreedyTrace trace;
    const auto traced = first_fit(instance, trace);
    EXPECT_EQ(traced, first_fit(instance));
    ASSERT_EQ(trace.size(), instance.size());
    // a1 opens machine 0; a2 is rejected by machine 0 and opens machine 1.
    EXPECT_EQ(trace[0].tried, 1u);
    EXPECT_EQ(trace[2].machine, 1u);
    EXPECT_EQ(trace[2].tried, 2u);
    EXPECT_EQ(trace[2].load_after, 2);
    std::size_t open = 0;
    for (const auto& step : trace) {
        EXPECT_LE(step.machine, open);
        open = std::max(open, step.machine + 1);
    }

    GreedyTrace nf_trace;
    EXPECT_EQ(next_fit(instance, nf_trace), next_fit(instance));
    EXPECT_EQ(nf_trace.size(), instance.size());
}

TEST(GreedyProperties, FeasiblePrefixConsistentAndDominated) {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 400; ++iter) {
        const auto instance = oracle::random_instance(rng, 14);
        const auto ff = first_fit(instance);
        const auto nf = next_fit(instance);
        EXPECT_TRUE(is_feasible(instance, ff));
        EXPECT_TRUE(is_feasible(instance, nf));
        EXPECT_LE(ff.machine_count(), nf.machine_count());
        for (std::size_t k = 0; k <= instance.size(); ++k) {
            const auto prefix = instance.prefix(k);
            const auto ffk = first_fit(prefix), nfk = next_fit(prefix);
            for (std::size_t j = 0; j < k; ++j) {
                ASSERT_EQ(ffk.machine_of(j), ff.machine_of(j));
                ASSERT_EQ(nfk.machine_of(j), nf.machine_of(j));
            }
        }
    }
}

TEST(GreedyProperties, FirstFitEqualsNextFitUnderNonIncreasingSlack) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto instance = gen_random({"slack-noninc", 1 + seed % 16, seed, 1, 10, 0, 20});
        ASSERT_EQ(first_fit(instance), next_fit(instance)) << instance.name();
    }
}

TEST(GreedyProperties, UnitJobsSortedLoadsAndOptimal) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto instance = gen_random({"unit", 1 + seed % 10, seed, 1, 1, 0, 6});
        const auto ff = first_fit(instance);
        const auto l = loads(instance, ff);
        EXPECT_TRUE(std::is_sorted(l.rbegin(), l.rend())) << instance.name();
        EXPECT_EQ(ff.machine_count(), optimal_count_bruteforce(instance)) << instance.name();
    }
}

TEST(GreedyProperties, NextFitUnboundedOnNfHard) {
    for (std::size_t n = 3; n <= 20; ++n) {
        EXPECT_EQ(next_fit(gen_nf_hard(n)).machine_count(), n);
        EXPECT_EQ(optimal(gen_nf_hard(n)).machine_count(), 2u);
    }
}
