#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sunitgap/arith.hpp"

namespace sunitgap::hensel {

using arith::Int;

// All r in [0, p) with r^2 = n (mod p); empty when n is a nonresidue.
// p must be an odd prime (Tonelli-Shanks).
std::vector<std::uint64_t> sqrt_mod_p(const Int& n, std::uint64_t p);

// The unique y = r (mod p), 0 <= y < p^k, with y^2 = n (mod p^k).
// Requires r^2 = n (mod p) and 2r != 0 (mod p).
Int hensel_lift(const Int& n, std::uint64_t p, const Int& r, unsigned k);

// One tuple (x, a) with x a lifted square root of N = value(a) mod p^k,
// so p^k divides delta = x^2 - N.  Witnesses that the S-part of the
// difference can reach about the square root of its absolute value.
struct ExtremalWitness {
    arith::ExponentVector a;
    std::uint64_t p = 0;
    unsigned k = 0;
    Int x;
    Int delta;       // x^2 - value(a), nonzero, divisible by p^k
    Int spart_value; // p^{v_p(delta)}
    double ratio;    // log(spart_value) / log|delta|
};

// Extremal tuple for one (a, p, k).  Requires p odd, p not dividing
// value(a), value(a) a quadratic residue mod p.  Of the two lift
// representatives in (0, p^k) the one with x^2 != N, coprime to the base
// primes, and maximal v_p(delta) is chosen (ties toward smaller x).
ExtremalWitness construct_extremal(const arith::ExponentVector& a, std::uint64_t p, unsigned k);

struct WitnessFamily {
    std::vector<ExtremalWitness> witnesses; // ordered by k
    std::vector<std::pair<unsigned, std::string>> skipped; // (k, reason)
};

// One witness per k in [k_from, k_to]; per-k failures are recorded in
// `skipped` rather than aborting the family.
WitnessFamily witness_family(const arith::ExponentVector& a, std::uint64_t p,
                             unsigned k_from, unsigned k_to, unsigned workers = 1);

} // namespace sunitgap::hensel
