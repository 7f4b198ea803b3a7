#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sunitgap/arith.hpp"

namespace sunitgap::search {

using arith::Int;

struct SearchWindow {
    Int x_max;                          // x ranges over 1..x_max
    std::vector<std::uint32_t> exp_max; // per T-prime exponent cap
    bool require_coprime = true;        // keep only x coprime to prod T
    bool require_nonzero = true;        // skip-and-count tuples with delta = 0
    Int budget = 100000000;             // refusal bound on x_max * prod(exp_max + 1)

    Int size(std::size_t t_primes) const; // x_max * prod(exp_max + 1)
};

struct SolutionRecord {
    Int x;
    std::vector<std::uint32_t> a;
    Int n_value;                 // prod q_i^{a_i}
    Int delta;                   // x^2 - n_value, nonzero
    Int spart_value;             // [delta]_S
    Int cofactor;                // |delta| / spart_value
    Int gpf;                     // greatest prime factor of delta
    std::optional<double> ratio; // log spart / log|delta|; defined when |delta| >= 2

    std::optional<double> one_minus_ratio() const {
        if (!ratio) return std::nullopt;
        return 1.0 - *ratio;
    }
    bool operator==(const SolutionRecord&) const = default;
};

struct DatasetSummary {
    std::size_t records = 0;
    std::size_t skipped_zero_delta = 0;
    std::size_t skipped_noncoprime = 0;
    std::optional<double> max_ratio;
    std::optional<double> min_one_minus_ratio;
    std::optional<Int> min_gpf;
};

struct Dataset {
    std::string id; // output identity, echoed into reports
    arith::PrimeSet S, T;
    SearchWindow window;
    std::vector<SolutionRecord> records; // sorted by (x, a lexicographic)
    std::size_t skipped_zero_delta = 0;
    std::size_t skipped_noncoprime = 0;

    DatasetSummary summary() const;
};

// One record per (x, a) in the window with delta != 0 (and x coprime to T
// when flagged).  Shard-parallel over x ranges; the merged result is
// deterministic.  Refuses windows larger than the budget.
Dataset enumerate(const arith::PrimeSet& S, const arith::PrimeSet& T, const SearchWindow& w,
                  unsigned workers = 1, const arith::FactorBudget& fb = {});

struct FixedRhsSolution {
    Int x;
    std::vector<std::uint32_t> a;
    bool operator==(const FixedRhsSolution&) const = default;
};

// All solutions of x^2 - prod q^a = m with 0 < x <= x_max and exponents
// <= exp_max.  Complete within the window by construction: iterates the
// exponent lattice (pruned at N <= x_max^2 - m) and tests N + m for perfect
// squareness with integer square roots.
std::vector<FixedRhsSolution> solve_fixed_rhs(const arith::PrimeSet& T, const Int& m,
                                              const Int& x_max, std::uint32_t exp_max);

struct SUnitSolution {
    Int x;
    std::vector<std::uint32_t> a; // exponents over T
    std::vector<std::uint32_t> u; // exponents over S
    int sign;                     // sign of delta
    bool operator==(const SUnitSolution&) const = default;
};

// All window solutions of x^2 - prod q^a = +-prod p^u, i.e. tuples whose
// delta has S-cofactor exactly 1.
std::vector<SUnitSolution> solve_sunit_rhs(const arith::PrimeSet& S, const arith::PrimeSet& T,
                                           const SearchWindow& w, unsigned workers = 1);

// Maximum ratio over records with |delta| >= min_abs_delta (>= 2), plus the
// witnessing record (first under the dataset order among ties).
std::pair<double, SolutionRecord> empirical_exponent(const Dataset& ds, const Int& min_abs_delta);

} // namespace sunitgap::search
