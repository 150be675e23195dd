#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fosched/errors.hpp"

namespace fosched {

using Time = std::int64_t;

// A job with processing time p and deadline d. All jobs are released at 0.
struct Job {
    Time p = 1;
    Time d = 1;

    constexpr Time slack() const noexcept { return d - p; }

    friend constexpr bool operator==(const Job&, const Job&) = default;
};

inline Time slack(const Job& job) noexcept { return job.slack(); }

inline void validate(const Job& job) {
    if (job.p < 1) {
        throw input_error("processing time must be >= 1, got " + std::to_string(job.p));
    }
    if (job.d < job.p) {
        throw input_error("deadline " + std::to_string(job.d) + " is below processing time " +
                          std::to_string(job.p));
    }
}

/**
 * An ordered job sequence. Position in the sequence is the fixed priority
 * order: job 0 is processed before job 1 on any machine they share.
 *
 * Construction validates every job and guarantees that the total work fits
 * in a signed 64-bit integer with room for an infinity sentinel above it.
 */
class Instance {
public:
    Instance() = default;

    explicit Instance(std::vector<Job> jobs, std::string name = {})
        : jobs_(std::move(jobs)), name_(std::move(name)) {
        Time total = 0;
        for (const auto& job : jobs_) {
            validate(job);
            if (job.p >= std::numeric_limits<Time>::max() - total) {
                throw input_error("total processing time overflows 64-bit range");
            }
            total += job.p;
        }
        total_work_ = total;
    }

    std::size_t size() const noexcept { return jobs_.size(); }
    bool empty() const noexcept { return jobs_.empty(); }
    const Job& operator[](std::size_t j) const { return jobs_[j]; }
    std::span<const Job> jobs() const noexcept { return jobs_; }
    auto begin() const noexcept { return jobs_.begin(); }
    auto end() const noexcept { return jobs_.end(); }

    const std::string& name() const noexcept { return name_; }
    Time total_work() const noexcept { return total_work_; }

    // First k jobs, same order.
    Instance prefix(std::size_t k) const {
        return Instance(std::vector<Job>(jobs_.begin(), jobs_.begin() + std::min(k, jobs_.size())),
                        name_);
    }

    friend bool operator==(const Instance& a, const Instance& b) {
        return a.jobs_ == b.jobs_ && a.name_ == b.name_;
    }

private:
    std::vector<Job> jobs_;
    std::string name_;
    Time total_work_ = 0;
};

/**
 * Assignment of jobs to machines. Machines are numbered 0..m-1 in first-use
 * order: machine i's lowest-index job precedes machine i+1's lowest-index job.
 */
class Schedule {
public:
    Schedule() = default;

    // Builds a schedule from arbitrary machine labels, relabelling them to
    // first-use order.
    static Schedule from_labels(std::span<const std::size_t> labels) {
        Schedule s;
        s.assignment_.reserve(labels.size());
        std::vector<std::pair<std::size_t, std::size_t>> seen;  // label -> canonical
        for (auto label : labels) {
            auto it = std::find_if(seen.begin(), seen.end(),
                                   [&](const auto& e) { return e.first == label; });
            if (it == seen.end()) {
                seen.emplace_back(label, seen.size());
                s.assignment_.push_back(seen.back().second);
            } else {
                s.assignment_.push_back(it->second);
            }
        }
        s.machine_count_ = seen.size();
        return s;
    }

    // Accepts an assignment that must already be in first-use order.
    static Schedule from_canonical(std::vector<std::size_t> assignment) {
        Schedule s;
        std::size_t next = 0;
        for (auto m : assignment) {
            if (m > next) {
                throw input_error("machine " + std::to_string(m + 1) +
                                  " used before machine " + std::to_string(next + 1));
            }
            if (m == next) ++next;
        }
        s.assignment_ = std::move(assignment);
        s.machine_count_ = next;
        return s;
    }

    std::size_t size() const noexcept { return assignment_.size(); }
    std::size_t machine_count() const noexcept { return machine_count_; }
    std::size_t machine_of(std::size_t job) const { return assignment_.at(job); }
    std::span<const std::size_t> assignment() const noexcept { return assignment_; }

    // Jobs on each machine, in priority order.
    std::vector<std::vector<std::size_t>> machine_jobs() const {
        std::vector<std::vector<std::size_t>> out(machine_count_);
        for (std::size_t j = 0; j < assignment_.size(); ++j) out[assignment_[j]].push_back(j);
        return out;
    }

    friend bool operator==(const Schedule&, const Schedule&) = default;

private:
    std::vector<std::size_t> assignment_;
    std::size_t machine_count_ = 0;
};

namespace detail {

inline void require_cover(const Instance& instance, const Schedule& schedule) {
    if (instance.size() != schedule.size()) {
        throw input_error("schedule assigns " + std::to_string(schedule.size()) +
                          " jobs but instance has " + std::to_string(instance.size()));
    }
}

}  // namespace detail

// completion[j] = total processing time of jobs k <= j sharing j's machine.
using CompletionProfile = std::vector<Time>;

inline CompletionProfile completion_profile(const Instance& instance, const Schedule& schedule) {
    detail::require_cover(instance, schedule);
    std::vector<Time> load(schedule.machine_count(), 0);
    CompletionProfile out(instance.size());
    for (std::size_t j = 0; j < instance.size(); ++j) {
        auto& l = load[schedule.machine_of(j)];
        l += instance[j].p;
        out[j] = l;
    }
    return out;
}

// Throws input_error when the schedule does not cover exactly the instance's
// jobs; returns false only for deadline violations.
inline bool is_feasible(const Instance& instance, const Schedule& schedule) {
    const auto completion = completion_profile(instance, schedule);
    for (std::size_t j = 0; j < instance.size(); ++j) {
        if (completion[j] > instance[j].d) return false;
    }
    return true;
}

inline std::vector<Time> loads(const Instance& instance, const Schedule& schedule) {
    detail::require_cover(instance, schedule);
    std::vector<Time> out(schedule.machine_count(), 0);
    for (std::size_t j = 0; j < instance.size(); ++j) out[schedule.machine_of(j)] += instance[j].p;
    return out;
}

// Rank of job j among the jobs on its machine (0 = first).
inline std::size_t spot(const Schedule& schedule, std::size_t job) {
    const auto machine = schedule.machine_of(job);
    std::size_t rank = 0;
    for (std::size_t k = 0; k < job; ++k) {
        if (schedule.machine_of(k) == machine) ++rank;
    }
    return rank;
}

}  // namespace fosched
