#pragma once

#include "sunitgap/arith.hpp"

namespace sunitgap::decomp {

using arith::Int;

// N = squarefree_part * square_root^2, with squarefree_part the product of
// the base primes carrying an odd exponent.
struct ParityDecomposition {
    arith::ExponentVector a;
    Int squarefree_part; // 1 iff all exponents even
    Int square_root;
};

ParityDecomposition parity_decompose(const arith::ExponentVector& a);

// prod p_i^{floor(e_i / 2)}
Int floor_half_radical(const arith::ExponentVector& a);

// S-part factorizations of x - y and x + y, plus their gcd.
// g is 1 or 2 whenever gcd(x, 2y) = 1; the product of the two sides
// reconstructs x^2 - y^2.
struct CoprimeSplit {
    Int x;
    Int y;
    arith::Factorization minus; // x - y
    arith::Factorization plus;  // x + y
    Int g;
};

CoprimeSplit coprime_split(const Int& x, const Int& y, const arith::PrimeSet& S);

} // namespace sunitgap::decomp
