#pragma once

#include <cmath>

#include "sunitgap/arith.hpp"
#include "sunitgap/errors.hpp"

namespace sunitgap::real {

// log|n| for nonzero n of any magnitude (mantissa + exponent split, so no
// overflow).  Relative error is a few ulp (~1e-15), plenty for the report
// ratios this feeds; certified-precision logs live in quadfield.
inline double log_abs_mpz(const arith::Int& n) {
    if (n == 0) throw domain_error("log of zero");
    signed long exp2 = 0;
    double m = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(std::fabs(m)) + static_cast<double>(exp2) * M_LN2;
}

} // namespace sunitgap::real
