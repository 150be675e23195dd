#pragma once

// Test-only reference computations. Nothing here may call into the solver
// code it is used to check.

#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <random>
#include <span>
#include <vector>

#include "fosched/core.hpp"

namespace fosched::oracle {

// Largest subsequence that fits on one machine, by enumerating all 2^n
// subsets and simulating each in priority order.
inline std::size_t brute_max_feasible_subset(std::span<const Job> jobs) {
    const auto n = jobs.size();
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        Time t = 0;
        std::size_t count = 0;
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            if (!(mask >> j & 1u)) continue;
            t += jobs[j].p;
            ok = t <= jobs[j].d;
            ++count;
        }
        if (ok) best = std::max(best, count);
    }
    return best;
}

// Is `positions` (ascending) a single-machine-feasible subsequence?
inline bool fits_one_machine(std::span<const Job> jobs, const std::vector<std::size_t>& positions) {
    Time t = 0;
    for (auto pos : positions) {
        t += jobs[pos].p;
        if (t > jobs[pos].d) return false;
    }
    return true;
}

// Random job list for property tests; n in [0, max_n].
inline Instance random_instance(std::mt19937_64& rng, std::size_t max_n, Time max_p = 8,
                                Time max_slack = 15) {
    std::uniform_int_distribution<std::size_t> size(0, max_n);
    std::uniform_int_distribution<Time> p(1, max_p), s(0, max_slack);
    std::vector<Job> jobs(size(rng));
    for (auto& job : jobs) {
        job.p = p(rng);
        job.d = job.p + s(rng);
    }
    return Instance(std::move(jobs));
}

}  // namespace fosched::oracle
