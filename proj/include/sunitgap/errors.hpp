#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace sunitgap {

// Invalid input for the requested operation (zero where nonzero is required,
// mismatched fields, malformed prime sets, ...).  CLI exit code 2.
class domain_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation was refused up front because its size exceeds the configured
// budget.  Carries the computed size (decimal string, may exceed 64 bits).
// CLI exit code 3.
class budget_error : public std::runtime_error {
public:
    budget_error(const std::string& what, std::string computed_size)
        : std::runtime_error(what), size_(std::move(computed_size)) {}
    const std::string& computed_size() const { return size_; }

private:
    std::string size_;
};

// A factorization survived the configured effort with a composite (or
// uncertifiable) cofactor.  Raised instead of ever returning a possibly
// wrong answer.  CLI exit code 4.
class incomplete_factorization : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed dataset or config input.  Carries the 1-based offending line.
// CLI exit code 5.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

} // namespace sunitgap
