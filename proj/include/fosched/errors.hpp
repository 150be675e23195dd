#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fosched {

// Malformed input: bad job data, a schedule that does not match its instance,
// unknown family names, unparsable files.
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Instance is larger than the exact solver is configured to handle.
class capacity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exact search gave up before proving optimality. upper_bound() is the best
// feasible machine count known when it stopped.
class budget_error : public std::runtime_error {
public:
    budget_error(const std::string& what, std::size_t upper_bound)
        : std::runtime_error(what), upper_bound_(upper_bound) {}

    std::size_t upper_bound() const noexcept { return upper_bound_; }

private:
    std::size_t upper_bound_;
};

}  // namespace fosched
