#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "fosched/core.hpp"
#include "fosched/greedy.hpp"

namespace fosched {

inline constexpr std::size_t kDefaultOracleCap = 20;
inline constexpr std::size_t kBruteforceCap = 12;

// FOSCHED_ORACLE_CAP, when set to a positive integer, replaces the default cap.
inline std::size_t oracle_cap_from_env() {
    if (const char* raw = std::getenv("FOSCHED_ORACLE_CAP")) {
        try {
            std::size_t used = 0;
            const auto value = std::stoull(raw, &used);
            if (used == std::string(raw).size() && value > 0) return static_cast<std::size_t>(value);
        } catch (const std::exception&) {
        }
        throw input_error(std::string("FOSCHED_ORACLE_CAP is not a positive integer: ") + raw);
    }
    return kDefaultOracleCap;
}

struct ExactOptions {
    std::size_t size_cap = kDefaultOracleCap;
    std::optional<std::size_t> limit;  // overrides size_cap when set
    std::uint64_t node_budget = 20'000'000;
};

/**
 * Lower bound on the optimum: the larger of the work/deadline volume bound
 * ceil(sum p / max d) and the number of jobs that must start at time 0.
 * Job j must start at 0 when its slack is below every earlier job's
 * processing time, so each such job needs its own machine.
 */
inline std::size_t machine_lower_bound(const Instance& instance) {
    if (instance.empty()) return 0;
    Time max_d = 0;
    for (const auto& job : instance) max_d = std::max(max_d, job.d);
    const auto volume = static_cast<std::size_t>((instance.total_work() + max_d - 1) / max_d);

    std::size_t forced_first = 0;
    Time min_p_before = std::numeric_limits<Time>::max();
    for (const auto& job : instance) {
        if (job.slack() < min_p_before) ++forced_first;
        min_p_before = std::min(min_p_before, job.p);
    }
    return std::max({std::size_t{1}, volume, forced_first});
}

namespace detail {

struct LoadKeyHash {
    std::size_t operator()(const std::vector<Time>& key) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto v : key) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

// Depth-first search for an assignment using at most `machines` machines.
class BoundedSearch {
public:
    BoundedSearch(const Instance& instance, std::size_t machines, std::uint64_t& nodes,
                  std::uint64_t budget)
        : instance_(instance), machines_(machines), nodes_(nodes), budget_(budget),
          max_slack_after_(instance.size() + 1, -1) {
        for (std::size_t j = instance.size(); j-- > 0;) {
            max_slack_after_[j] = std::max(max_slack_after_[j + 1], instance[j].slack());
        }
        assignment_.resize(instance.size());
    }

    // Returns the raw per-job machine labels on success.
    std::optional<std::vector<std::size_t>> run() {
        if (dfs(0)) return assignment_;
        return std::nullopt;
    }

    bool exhausted() const noexcept { return exhausted_; }

private:
    // Loads no later job can join are folded into one sentinel value.
    std::vector<Time> canonical_key(std::size_t j) const {
        std::vector<Time> key(load_);
        for (auto& v : key) {
            if (v > max_slack_after_[j]) v = kInfinityTime();
        }
        std::sort(key.begin(), key.end());
        key.push_back(static_cast<Time>(j));
        return key;
    }

    bool dfs(std::size_t j) {
        if (j == instance_.size()) return true;
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return false;
        }
        auto key = canonical_key(j);
        if (failed_.contains(key)) return false;

        const auto& job = instance_[j];
        std::vector<std::size_t> order(load_.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return load_[a] < load_[b]; });

        Time last_tried = -1;
        for (auto i : order) {
            if (load_[i] == last_tried) continue;  // identical machines
            last_tried = load_[i];
            if (load_[i] + job.p > job.d) continue;
            load_[i] += job.p;
            assignment_[j] = i;
            const bool ok = dfs(j + 1);
            load_[i] -= job.p;
            if (ok) return true;
            if (exhausted_) return false;
        }
        if (load_.size() < machines_) {
            load_.push_back(job.p);
            assignment_[j] = load_.size() - 1;
            const bool ok = dfs(j + 1);
            load_.pop_back();
            if (ok) return true;
            if (exhausted_) return false;
        }
        failed_.insert(std::move(key));
        return false;
    }

    static constexpr Time kInfinityTime() { return std::numeric_limits<Time>::max(); }

    const Instance& instance_;
    std::size_t machines_;
    std::uint64_t& nodes_;
    std::uint64_t budget_;
    std::vector<Time> max_slack_after_;
    std::vector<Time> load_;
    std::vector<std::size_t> assignment_;
    std::unordered_set<std::vector<Time>, LoadKeyHash> failed_;
    bool exhausted_ = false;
};

inline void check_capacity(const Instance& instance, std::size_t cap) {
    if (instance.size() > cap) {
        throw capacity_error("instance has " + std::to_string(instance.size()) +
                             " jobs, exact solver cap is " + std::to_string(cap));
    }
}

}  // namespace detail

/// Searches for a feasible schedule on at most `machines` machines. Throws
/// budget_error if the node budget runs out before the question is settled.
inline std::optional<Schedule> fits_on(const Instance& instance, std::size_t machines,
                                       std::uint64_t node_budget = ExactOptions{}.node_budget) {
    std::uint64_t nodes = 0;
    detail::BoundedSearch search(instance, machines, nodes, node_budget);
    auto labels = search.run();
    if (search.exhausted()) {
        throw budget_error("node budget exhausted at " + std::to_string(machines) + " machines",
                           instance.size());
    }
    if (!labels) return std::nullopt;
    return Schedule::from_labels(*labels);
}

/**
 * Minimum-machine schedule by iterative deepening.
 *
 * Deepening starts at machine_lower_bound() and stops below the first-fit
 * count, which is always achievable. Each depth is a DFS over jobs in
 * priority order; states are memoised on (job, sorted loads) and a job may
 * open at most one new machine per node.
 */
inline Schedule optimal(const Instance& instance, const ExactOptions& options = {}) {
    detail::check_capacity(instance, options.limit.value_or(options.size_cap));
    if (instance.empty()) return {};

    auto upper = first_fit(instance);
    std::uint64_t nodes = 0;
    for (auto m = machine_lower_bound(instance); m < upper.machine_count(); ++m) {
        detail::BoundedSearch search(instance, m, nodes, options.node_budget);
        auto labels = search.run();
        if (search.exhausted()) {
            throw budget_error("exact search exceeded " + std::to_string(options.node_budget) +
                                   " nodes; best known is " +
                                   std::to_string(upper.machine_count()) + " machines",
                               upper.machine_count());
        }
        if (labels) return Schedule::from_labels(*labels);
    }
    return upper;
}

/**
 * Exhaustive cross-check: enumerates machine labelings as restricted-growth
 * strings, discarding a prefix as soon as it misses a deadline, and confirms
 * every complete candidate with is_feasible().
 */
inline std::size_t optimal_count_bruteforce(const Instance& instance) {
    detail::check_capacity(instance, kBruteforceCap);
    const auto n = instance.size();
    if (n == 0) return 0;

    std::size_t best = n;
    std::vector<std::size_t> labels(n, 0);
    std::vector<Time> load(n, 0);

    auto recurse = [&](auto&& self, std::size_t j, std::size_t used) -> void {
        if (used >= best) return;
        if (j == n) {
            if (is_feasible(instance, Schedule::from_labels(labels))) best = used;
            return;
        }
        const auto& job = instance[j];
        for (std::size_t i = 0; i <= used && i < n; ++i) {
            if (load[i] + job.p > job.d) continue;
            labels[j] = i;
            load[i] += job.p;
            self(self, j + 1, std::max(used, i + 1));
            load[i] -= job.p;
        }
    };
    recurse(recurse, 0, 0);
    return best;
}

}  // namespace fosched
