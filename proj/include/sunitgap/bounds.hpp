#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sunitgap/arith.hpp"
#include "sunitgap/search.hpp"

namespace sunitgap::bounds {

using arith::Int;

// Prime-set statistics plus the free constants fed to the shape evaluators.
// Constants are never defaulted: an evaluator that needs one raises a domain
// error until it is supplied (or produced by the fitter).
struct BoundParams {
    arith::PrimeSet S;
    std::optional<double> c; // exponent-shape constant

    std::size_t s() const { return S.size(); }
    std::uint64_t max_prime() const { return S.max_prime(); }
    double log_product() const; // prod log p_i
};

// max(1, log x); x > 0
double log_star(double x);

// Exponent kappa for the square-difference S-part bound:
//   1 / (c^s * log*log* P * (prod log p_i)^2),
// with the inner iterated logarithm guarded by log_star and the result
// clamped into (0, 1/2].
double kappa_squares(const BoundParams& bp);

// d-th power analogue: 1 / (c^s * (P * prod log p_i)^{d!}), d >= 3.
double kappa_powers(const BoundParams& bp, unsigned d);

// Exponent tau for the two-unit-sum bound: like kappa_squares but with the
// log product to the first power; not clamped.
double tau_unit_sum(const BoundParams& bp);

// exp(c * (log M)^{1/7}), M >= 3: the classical lower bound on the distance
// between a square and a smooth number.
double seventh_root_log_bound(double M, double c);

// log*log X * log*log*log X / log*log*log*log X, X >= 3 (greatest prime
// factor shape).  The overload taking log X directly serves inputs too
// large for double.
double iterated_log_shape(double X);
double iterated_log_shape_from_log(double logX);

// Lower bound on log|a_1^{b_1} ... a_n^{b_n} - 1| (negative):
//   -c1^n * prod h_i * log*(B * max(h_1..h_{n-1}) / h_n).
// heights are h_* values (>= 1), h_n last; B >= 3; n >= 2.
double linear_form_log_lower_bound(std::span<const double> heights, double B, double c1);

// Upper bound on v_p of the same linear form:
//   c2^n * p^D * prod h_i * log*(B * max(h_1..h_{n-1}) / h_n).
double linear_form_padic_upper_bound(std::uint64_t p, unsigned D,
                                     std::span<const double> heights, double B, double c2);

struct EmpiricalFit {
    std::string dataset_id;
    double fitted_c = 0;
    double fitted_kappa = 0;
    search::SolutionRecord binding; // record with maximal ratio
};

// Smallest c such that every record with |delta| >= 3 satisfies
// [delta]_S <= |delta|^{1 - kappa_squares(c)}; closed-form inversion at the
// binding (maximal-ratio) record.  When nothing binds (all ratios <= 1/2)
// the c at which the raw formula reaches the 1/2 clamp is reported.
EmpiricalFit fit_effective_constant(const search::Dataset& ds, const BoundParams& bp);

struct GpfCheckRow {
    Int x;
    std::vector<std::uint32_t> a;
    Int gpf;
    double shape_value; // c_T * iterated_log_shape(X), X = max(x^2, N, 3)
    double quotient;    // gpf / shape_value
};

struct GpfCheckReport {
    std::vector<GpfCheckRow> rows;
    std::optional<double> min_quotient;
};

GpfCheckReport gpf_empirical_check(const search::Dataset& ds, double c_T);

} // namespace sunitgap::bounds
