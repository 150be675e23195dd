#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "fosched/core.hpp"

namespace fosched {

inline constexpr Time kInfinity = std::numeric_limits<Time>::max();

/**
 * Table of minimum single-machine completion times.
 *
 * at(i, k) is the smallest completion time of a deadline-feasible schedule
 * on one machine using k jobs chosen from the first i jobs (kept in
 * priority order), or kInfinity when no such choice exists.
 */
class DpTable {
public:
    explicit DpTable(std::span<const Job> jobs) : n_(jobs.size()) {
        values_.assign((n_ + 1) * (n_ + 1), kInfinity);
        for (std::size_t i = 0; i <= n_; ++i) at_mut(i, 0) = 0;
        for (std::size_t i = 1; i <= n_; ++i) {
            const auto& job = jobs[i - 1];
            for (std::size_t k = 1; k <= i; ++k) {
                Time best = at(i - 1, k);
                const Time prev = at(i - 1, k - 1);
                if (prev != kInfinity && prev + job.p <= job.d && prev + job.p < best) {
                    best = prev + job.p;
                }
                at_mut(i, k) = best;
            }
        }
    }

    std::size_t jobs() const noexcept { return n_; }

    Time at(std::size_t i, std::size_t k) const {
        if (k > i) return kInfinity;
        return values_[i * (n_ + 1) + k];
    }

    // Largest k with a finite entry on the last row.
    std::size_t max_count() const {
        std::size_t k = n_;
        while (k > 0 && at(n_, k) == kInfinity) --k;
        return k;
    }

    // One optimal k-subset as ascending positions. Walks backwards and
    // excludes job i whenever that keeps the same value.
    std::vector<std::size_t> reconstruct(std::size_t k) const {
        std::vector<std::size_t> picked;
        std::size_t i = n_;
        while (k > 0) {
            if (at(i - 1, k) == at(i, k)) {
                --i;
                continue;
            }
            picked.push_back(i - 1);
            --i;
            --k;
        }
        return {picked.rbegin(), picked.rend()};
    }

private:
    Time& at_mut(std::size_t i, std::size_t k) { return values_[i * (n_ + 1) + k]; }

    std::size_t n_;
    std::vector<Time> values_;
};

struct FeasibleSubset {
    std::size_t count = 0;
    std::vector<std::size_t> positions;  // indices into the input span, ascending
};

// Largest subsequence of `jobs` that fits on a single machine.
inline FeasibleSubset max_feasible_subset(std::span<const Job> jobs) {
    if (jobs.empty()) return {};
    const DpTable table(jobs);
    const auto k = table.max_count();
    return {k, table.reconstruct(k)};
}

/**
 * Greedy set cover: repeatedly fills a fresh machine with the largest
 * single-machine-feasible subsequence of the still unscheduled jobs.
 * Each round places at least one job, so there are at most n rounds of an
 * O(n^2) table.
 */
inline Schedule setcover_greedy(const Instance& instance) {
    std::vector<std::size_t> assignment(instance.size(), 0);
    std::vector<std::size_t> remaining(instance.size());
    for (std::size_t j = 0; j < remaining.size(); ++j) remaining[j] = j;

    std::size_t machine = 0;
    std::vector<Job> active;
    while (!remaining.empty()) {
        active.clear();
        for (auto j : remaining) active.push_back(instance[j]);
        const auto subset = max_feasible_subset(active);

        std::vector<bool> taken(remaining.size(), false);
        for (auto pos : subset.positions) {
            assignment[remaining[pos]] = machine;
            taken[pos] = true;
        }
        std::vector<std::size_t> next;
        next.reserve(remaining.size() - subset.count);
        for (std::size_t pos = 0; pos < remaining.size(); ++pos) {
            if (!taken[pos]) next.push_back(remaining[pos]);
        }
        remaining = std::move(next);
        ++machine;
    }
    // Machine ids were handed out in round order; relabel to first-use order.
    return Schedule::from_labels(assignment);
}

}  // namespace fosched
