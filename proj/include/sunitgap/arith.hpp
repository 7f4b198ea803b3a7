#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "sunitgap/errors.hpp"

namespace sunitgap::arith {

using Int = mpz_class;

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Ordered set of distinct primes.  Construction validates every element
// (deterministic primality) and rejects duplicates.
class PrimeSet {
public:
    PrimeSet() = default;
    explicit PrimeSet(std::vector<std::uint64_t> primes);

    bool empty() const { return primes_.empty(); }
    std::size_t size() const { return primes_.size(); }
    std::uint64_t operator[](std::size_t i) const { return primes_[i]; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    auto begin() const { return primes_.begin(); }
    auto end() const { return primes_.end(); }

    bool contains(std::uint64_t p) const;
    bool disjoint_with(const PrimeSet& other) const;
    std::uint64_t max_prime() const; // domain_error on empty set
    Int product() const;             // empty product = 1

    bool operator==(const PrimeSet&) const = default;

private:
    std::vector<std::uint64_t> primes_;
};

// Exponent vector over a PrimeSet; value() = prod p_i^{e_i} >= 1.
class ExponentVector {
public:
    ExponentVector() = default;
    ExponentVector(PrimeSet base, std::vector<std::uint32_t> exps);

    const PrimeSet& base() const { return base_; }
    const std::vector<std::uint32_t>& exps() const { return exps_; }
    std::size_t size() const { return exps_.size(); }
    Int value() const;
    std::uint32_t max_exponent() const; // 0 on empty

    bool operator==(const ExponentVector&) const = default;

private:
    PrimeSet base_;
    std::vector<std::uint32_t> exps_;
};

// Canonical split n = sign * value(spart) * cofactor with the cofactor
// positive and coprime to every base prime.
struct Factorization {
    Int n;
    int sign = 1;
    ExponentVector spart;
    Int cofactor;

    Int spart_value() const { return spart.value(); }
};

// Effort caps for complete factorizations (gpf, factorize).  Exceeding them
// raises incomplete_factorization, never a wrong answer.
struct FactorBudget {
    std::uint64_t trial_bound = 100000;       // trial division by primes <= this
    std::uint64_t rho_iterations = 20000000;  // total Pollard-Brent steps
};

// The S-part split of n.  Divides out S-primes only, so it works for
// arbitrarily large n without factoring the cofactor.
Factorization s_part(const Int& n, const PrimeSet& S);

// Largest e with p^e | n.  n must be nonzero, p prime.
unsigned long valuation(const Int& n, std::uint64_t p);

// Greatest prime factor of |n|; returns 1 for n = +-1.
Int gpf(const Int& n, const FactorBudget& budget = {});

// Complete factorization of |n|, primes ascending.
std::vector<std::pair<Int, unsigned>> factorize(const Int& n, const FactorBudget& budget = {});

// gcd(x, prod T) == 1; false for x = 0 with nonempty T.
bool is_coprime_to_set(const Int& x, const PrimeSet& T);

} // namespace sunitgap::arith
