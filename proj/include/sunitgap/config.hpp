#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sunitgap/arith.hpp"

namespace sunitgap::config {

using arith::Int;

// Effective run configuration.  Sources are layered: defaults, then the
// config file, then SUNITGAP_WORKERS, then command-line flags.  The
// effective values are echoed into every output header.
struct RunConfig {
    std::vector<std::uint64_t> s_primes;
    std::vector<std::uint64_t> t_primes;
    Int x_max = 0;
    std::vector<std::uint32_t> exp_max; // single entry broadcasts over T
    bool require_coprime = true;
    unsigned workers = 0; // 0 = hardware concurrency
    std::uint64_t factor_budget = 20000000;
    Int window_budget = 100000000;
    std::string out;

    // (key, value) pairs in canonical order, for output headers
    std::vector<std::pair<std::string, std::string>> echo() const;

    unsigned effective_workers() const;
};

// Parse `key = value` lines; '#' starts a comment; unknown keys and
// malformed values raise parse_error with the offending line number.
RunConfig parse_config_file(const std::string& path, RunConfig base = {});

// Apply the SUNITGAP_WORKERS override if present.
void apply_env(RunConfig& cfg);

std::vector<std::uint64_t> parse_prime_list(const std::string& csv);
std::vector<std::uint32_t> parse_exp_list(const std::string& csv);

} // namespace sunitgap::config
