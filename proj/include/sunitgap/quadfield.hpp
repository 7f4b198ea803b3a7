#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sunitgap/arith.hpp"

namespace sunitgap::quadfield {

using arith::Int;

// Element (u + v*sqrt(d))/den of the maximal order of Q(sqrt(d)), d
// squarefree >= 2.  den = 2 is only legal when d = 1 (mod 4) and u, v have
// the same parity; canonical form keeps den = 1 whenever possible.
//
// Construction checks d >= 2 and that d is not a perfect square; full
// squarefreeness is only verified by the entry points whose semantics
// depend on it (fundamental_unit, splitting_type, valuations_above).
class QuadInt {
public:
    QuadInt(Int d, Int u, Int v, int den = 1);

    const Int& d() const { return d_; }
    const Int& u() const { return u_; }
    const Int& v() const { return v_; }
    int den() const { return den_; }

    bool is_zero() const { return u_ == 0 && v_ == 0; }
    bool is_rational() const { return v_ == 0; }

    QuadInt conj() const;  // u - v*sqrt(d), involution
    Int norm() const;      // (u^2 - d v^2)/den^2, exact integer

    QuadInt operator+(const QuadInt&) const;
    QuadInt operator-(const QuadInt&) const;
    QuadInt operator*(const QuadInt&) const;
    QuadInt operator-() const;
    bool operator==(const QuadInt&) const = default;

    // Sign of the real embedding (sqrt(d) > 0).  Exact.
    int sign_real() const;

    // Exact comparison of real embeddings; same d required.
    bool less_than(const QuadInt& other) const;

    std::string str() const; // "(u+v*sqrt(d))/den" style, for reports

private:
    Int d_, u_, v_;
    int den_;
    void canonicalize();
};

QuadInt quad_pow(const QuadInt& base, unsigned long e);

// Logarithmic Weil height.  For rational values log+|u|, otherwise
// (log+|a| + log+|sigma(a)|)/2, evaluated with enough working precision
// that the relative error stays below 1e-12.
double weil_height(const QuadInt& alpha);

// log of the absolute value of the real embedding; alpha must be nonzero.
double log_abs(const QuadInt& alpha);

struct UnitInfo {
    Int d;
    QuadInt eta;    // fundamental unit > 1 of the maximal order
    int norm;       // +-1
    double log_eta; // > 0
};

// Fundamental unit via the continued fraction of sqrt(d) (d = 2,3 mod 4)
// or (1+sqrt(d))/2 (d = 1 mod 4).  Results are memoized per d.
const UnitInfo& fundamental_unit(const Int& d);

// eta^m for any integer m (uses |N(eta)| = 1 for negative m).
QuadInt unit_pow(const UnitInfo& unit, long long m);

// Smallest-height unit multiple: delta = eta^{-m} * alpha with
// N/eta < delta^2 <= N*eta where N = |N(alpha)|.  All window decisions are
// exact; consequently h(delta) <= log(N)/2 + log(eta)/2.
std::pair<long long, QuadInt> reduce_height(const QuadInt& alpha);

enum class SplitKind { split, inert, ramified };

struct PrimeSplitting {
    Int d;
    std::uint64_t p;
    SplitKind kind;
    std::vector<std::uint64_t> roots; // square roots of d mod p (split/ramified)
};

PrimeSplitting splitting_type(const Int& d, std::uint64_t p);

// Valuation of alpha at one prime ideal above p.
struct IdealValuation {
    std::string tag;     // "inert", "ramified", or "root-<r>"
    unsigned long v;     // exponent of the ideal in (alpha)
    unsigned e;          // ramification index
    unsigned f;          // residue degree
    double normalized() const { return static_cast<double>(v) / e; }
};

// Valuations of alpha at every prime ideal above p.
// sum of v*f over the ideals equals v_p(N(alpha)).
std::vector<IdealValuation> valuations_above(const QuadInt& alpha, std::uint64_t p);

} // namespace sunitgap::quadfield
