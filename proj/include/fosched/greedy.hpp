#pragma once

#include <cstddef>
#include <vector>

#include "fosched/core.hpp"

namespace fosched {

struct GreedyStep {
    std::size_t tried = 0;    // machines tested before placement, including the chosen one
    std::size_t machine = 0;  // chosen machine
    Time load_after = 0;
};

using GreedyTrace = std::vector<GreedyStep>;

namespace detail {

enum class FitRule { first, next };

template <FitRule rule>
Schedule greedy_place(const Instance& instance, GreedyTrace* trace) {
    std::vector<Time> load;
    std::vector<std::size_t> assignment;
    assignment.reserve(instance.size());
    if (trace) {
        trace->clear();
        trace->reserve(instance.size());
    }

    for (const auto& job : instance) {
        std::size_t chosen = load.size();
        std::size_t tried = 0;
        if constexpr (rule == FitRule::first) {
            for (std::size_t i = 0; i < load.size(); ++i) {
                ++tried;
                if (load[i] + job.p <= job.d) {
                    chosen = i;
                    break;
                }
            }
        } else {
            if (!load.empty()) {
                ++tried;
                if (load.back() + job.p <= job.d) chosen = load.size() - 1;
            }
        }
        if (chosen == load.size()) {
            // A fresh machine always admits the job because d >= p.
            load.push_back(0);
            ++tried;
        }
        load[chosen] += job.p;
        assignment.push_back(chosen);
        if (trace) trace->push_back({tried, chosen, load[chosen]});
    }
    return Schedule::from_canonical(std::move(assignment));
}

}  // namespace detail

/// Places each job, in priority order, on the lowest-index machine whose
/// current load plus p stays within the job's deadline.
inline Schedule first_fit(const Instance& instance) {
    return detail::greedy_place<detail::FitRule::first>(instance, nullptr);
}

inline Schedule first_fit(const Instance& instance, GreedyTrace& trace) {
    return detail::greedy_place<detail::FitRule::first>(instance, &trace);
}

/// Like first_fit, but only the most recently opened machine is a candidate.
inline Schedule next_fit(const Instance& instance) {
    return detail::greedy_place<detail::FitRule::next>(instance, nullptr);
}

inline Schedule next_fit(const Instance& instance, GreedyTrace& trace) {
    return detail::greedy_place<detail::FitRule::next>(instance, &trace);
}

}  // namespace fosched
