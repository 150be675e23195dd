#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <limits>
#include <utility>
#include <vector>

#include "fosched/core.hpp"

namespace fosched {

// Monotonicity properties of the job sequence. Several may hold at once;
// `arbitrary` is reported only when none of the others does.
enum class OrderClass : unsigned {
    none = 0,
    unit_processing = 1u << 0,
    nonincreasing_slack = 1u << 1,
    nondecreasing_slack = 1u << 2,
    nonincreasing_deadline = 1u << 3,
    nondecreasing_deadline = 1u << 4,
    arbitrary = 1u << 5,
};

constexpr OrderClass operator|(OrderClass a, OrderClass b) {
    return static_cast<OrderClass>(static_cast<unsigned>(a) | static_cast<unsigned>(b));
}
constexpr OrderClass operator&(OrderClass a, OrderClass b) {
    return static_cast<OrderClass>(static_cast<unsigned>(a) & static_cast<unsigned>(b));
}
constexpr OrderClass& operator|=(OrderClass& a, OrderClass b) { return a = a | b; }
constexpr bool has(OrderClass flags, OrderClass c) { return (flags & c) != OrderClass::none; }

inline constexpr std::pair<OrderClass, std::string_view> kOrderClassNames[] = {
    {OrderClass::unit_processing, "unit"},
    {OrderClass::nonincreasing_slack, "slack-noninc"},
    {OrderClass::nondecreasing_slack, "slack-nondec"},
    {OrderClass::nonincreasing_deadline, "deadline-noninc"},
    {OrderClass::nondecreasing_deadline, "deadline-nondec"},
    {OrderClass::arbitrary, "arbitrary"},
};

// "slack-noninc|slack-nondec" style rendering, fixed flag order.
inline std::string to_string(OrderClass flags) {
    std::string out;
    for (const auto& [flag, name] : kOrderClassNames) {
        if (!has(flags, flag)) continue;
        if (!out.empty()) out += '|';
        out += name;
    }
    return out;
}

inline OrderClass order_class_from_string(std::string_view text) {
    OrderClass flags = OrderClass::none;
    while (!text.empty()) {
        const auto bar = text.find('|');
        const auto part = text.substr(0, bar);
        auto it = std::find_if(std::begin(kOrderClassNames), std::end(kOrderClassNames),
                               [&](const auto& e) { return e.second == part; });
        if (it == std::end(kOrderClassNames)) {
            throw input_error("unknown order class '" + std::string(part) + "'");
        }
        flags |= it->first;
        text = bar == std::string_view::npos ? std::string_view{} : text.substr(bar + 1);
    }
    return flags;
}

inline OrderClass classify(const Instance& instance) {
    bool unit = true, slack_ninc = true, slack_ndec = true, dl_ninc = true, dl_ndec = true;
    for (std::size_t j = 0; j < instance.size(); ++j) {
        unit = unit && instance[j].p == 1;
        if (j == 0) continue;
        const auto& prev = instance[j - 1];
        const auto& cur = instance[j];
        slack_ninc = slack_ninc && cur.slack() <= prev.slack();
        slack_ndec = slack_ndec && cur.slack() >= prev.slack();
        dl_ninc = dl_ninc && cur.d <= prev.d;
        dl_ndec = dl_ndec && cur.d >= prev.d;
    }
    OrderClass flags = OrderClass::none;
    if (unit) flags |= OrderClass::unit_processing;
    if (slack_ninc) flags |= OrderClass::nonincreasing_slack;
    if (slack_ndec) flags |= OrderClass::nondecreasing_slack;
    if (dl_ninc) flags |= OrderClass::nonincreasing_deadline;
    if (dl_ndec) flags |= OrderClass::nondecreasing_deadline;
    if (flags == OrderClass::none) flags = OrderClass::arbitrary;
    return flags;
}

/**
 * Fibonacci-growth family on which next-fit opens one machine per job while
 * two machines suffice: (1,1), (2,2), then p_j = p_{j-1} + p_{j-2} and
 * d_j = p_j + p_{j-1} - 1.
 */
inline Instance gen_nf_hard(std::size_t n) {
    if (n < 3) throw input_error("nf-hard needs n >= 3, got " + std::to_string(n));
    std::vector<Job> jobs{{1, 1}, {2, 2}};
    for (std::size_t j = 2; j < n; ++j) {
        const Time a = jobs[j - 1].p, b = jobs[j - 2].p;
        if (a > std::numeric_limits<Time>::max() / 4 - b) {
            throw input_error("nf-hard with n=" + std::to_string(n) + " overflows 64-bit times");
        }
        const Time p = a + b;
        jobs.push_back({p, p + a - 1});
    }
    // Instance rejects the tail once total work leaves the 64-bit range.
    return Instance(std::move(jobs), "nf-hard-" + std::to_string(n));
}

/**
 * Family where first-fit uses 2k+1 machines against an optimum of k+1:
 * a = (k, 2k) and b = (1, k+1) alternate k times, then k+1 copies of
 * c = (k+1, 2k+1). Every job has slack k.
 */
inline Instance gen_tight2(std::size_t k) {
    if (k < 1) throw input_error("tight-2 needs k >= 1");
    const auto kt = static_cast<Time>(k);
    std::vector<Job> jobs;
    jobs.reserve(3 * k + 1);
    for (std::size_t i = 0; i < k; ++i) {
        jobs.push_back({kt, 2 * kt});
        jobs.push_back({1, kt + 1});
    }
    for (std::size_t i = 0; i <= k; ++i) jobs.push_back({kt + 1, 2 * kt + 1});
    return Instance(std::move(jobs), "tight-2-" + std::to_string(k));
}

struct GenSpec {
    std::string family = "arbitrary";
    std::size_t n = 0;  // job count, or k for tight-2
    std::uint64_t seed = 0;
    Time p_min = 1;
    Time p_max = 10;
    Time slack_min = 0;
    Time slack_max = 20;
};

inline constexpr std::string_view kRandomFamilies[] = {
    "unit", "slack-noninc", "slack-nondec", "deadline-noninc", "arbitrary"};

inline bool is_random_family(std::string_view family) {
    return std::find(std::begin(kRandomFamilies), std::end(kRandomFamilies), family) !=
           std::end(kRandomFamilies);
}

// Uniform integer in [lo, hi] from a mt19937_64 stream by rejection sampling.
// std::uniform_int_distribution is implementation-defined, this is not.
inline Time uniform_time(std::mt19937_64& rng, Time lo, Time hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<Time>(rng());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return lo + static_cast<Time>(draw % span);
}

/**
 * Random instance of a declared order class. Draws (p, slack) pairs, sets
 * d = p + slack, then stable-sorts by the family's key so the class holds.
 * The "unit" family fixes p = 1; "arbitrary" keeps draw order.
 */
inline Instance gen_random(const GenSpec& spec) {
    if (!is_random_family(spec.family)) {
        throw input_error("unknown random family '" + spec.family + "'");
    }
    if (spec.p_min < 1 || spec.p_max < spec.p_min || spec.slack_min < 0 ||
        spec.slack_max < spec.slack_min) {
        throw input_error("invalid value ranges for family '" + spec.family + "'");
    }

    std::mt19937_64 rng(spec.seed);
    const bool unit = spec.family == "unit";
    std::vector<Job> jobs;
    jobs.reserve(spec.n);
    for (std::size_t j = 0; j < spec.n; ++j) {
        const Time p = unit ? 1 : uniform_time(rng, spec.p_min, spec.p_max);
        const Time s = uniform_time(rng, spec.slack_min, spec.slack_max);
        jobs.push_back({p, p + s});
    }

    if (spec.family == "slack-noninc") {
        std::stable_sort(jobs.begin(), jobs.end(),
                         [](const Job& a, const Job& b) { return a.slack() > b.slack(); });
    } else if (spec.family == "slack-nondec") {
        std::stable_sort(jobs.begin(), jobs.end(),
                         [](const Job& a, const Job& b) { return a.slack() < b.slack(); });
    } else if (spec.family == "deadline-noninc") {
        std::stable_sort(jobs.begin(), jobs.end(),
                         [](const Job& a, const Job& b) { return a.d > b.d; });
    }
    return Instance(std::move(jobs),
                    spec.family + "-n" + std::to_string(spec.n) + "-s" + std::to_string(spec.seed));
}

// Dispatches on family name: "nf-hard" and "tight-2" use spec.n as their
// parameter, everything else goes to gen_random().
inline Instance generate(const GenSpec& spec) {
    if (spec.family == "nf-hard") return gen_nf_hard(spec.n);
    if (spec.family == "tight-2") return gen_tight2(spec.n);
    return gen_random(spec);
}

}  // namespace fosched
