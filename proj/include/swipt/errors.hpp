// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace swipt
{

// Raised when a configuration key is missing, malformed or out of range.
class ConfigError : public std::invalid_argument
{
public:
    ConfigError(std::string key, const std::string &what)
        : std::invalid_argument("config key '" + key + "': " + what), key_(std::move(key))
    {
    }

    const std::string &key() const noexcept { return key_; }

private:
    std::string key_;
};

// A closed-form branch was evaluated outside the region where it holds.
class BranchError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

// A Monte Carlo quantity cannot be formed from the estimates at hand
// (for instance a log-log slope through a zero estimate).
class DegenerateEstimate : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace swipt
