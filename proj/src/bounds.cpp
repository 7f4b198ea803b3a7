#include "sunitgap/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "sunitgap/real.hpp"

namespace sunitgap::bounds {

namespace {

double require_c(const std::optional<double>& c, const char* who) {
    if (!c) throw domain_error(std::string(who) + ": constant c not supplied");
    if (*c <= 0) throw domain_error(std::string(who) + ": c must be positive");
    return *c;
}

void require_nonempty(const BoundParams& bp, const char* who) {
    if (bp.S.empty()) throw domain_error(std::string(who) + ": S must be non-empty");
}

// guarded iterated log of P: log_*(log_* P)
double guarded_loglog(double P) { return log_star(log_star(P)); }

double check_heights(std::span<const double> heights, double B, const char* who) {
    if (heights.size() < 2) throw domain_error(std::string(who) + ": need at least two heights");
    if (B < 3) throw domain_error(std::string(who) + ": B must be >= 3");
    for (double h : heights)
        if (!(h >= 1)) throw domain_error(std::string(who) + ": heights must be >= 1");
    double hmax = *std::max_element(heights.begin(), heights.end() - 1);
    double prod = 1;
    for (double h : heights) prod *= h;
    return prod * log_star(B * hmax / heights.back());
}

} // namespace

double BoundParams::log_product() const {
    double r = 1;
    for (std::uint64_t p : S) r *= std::log(static_cast<double>(p));
    return r;
}

double log_star(double x) {
    if (!(x > 0)) throw domain_error("log_star: x must be positive");
    return std::max(1.0, std::log(x));
}

double kappa_squares(const BoundParams& bp) {
    require_nonempty(bp, "kappa_squares");
    double c = require_c(bp.c, "kappa_squares");
    double lp = bp.log_product();
    double raw = 1.0 / (std::pow(c, static_cast<double>(bp.s())) *
                        guarded_loglog(static_cast<double>(bp.max_prime())) * lp * lp);
    return std::min(0.5, raw);
}

double kappa_powers(const BoundParams& bp, unsigned d) {
    require_nonempty(bp, "kappa_powers");
    double c = require_c(bp.c, "kappa_powers");
    if (d < 3) throw domain_error("kappa_powers: d must be >= 3");
    double dfact = 1;
    for (unsigned i = 2; i <= d; ++i) dfact *= i;
    double base = static_cast<double>(bp.max_prime()) * bp.log_product();
    return 1.0 / (std::pow(c, static_cast<double>(bp.s())) * std::pow(base, dfact));
}

double tau_unit_sum(const BoundParams& bp) {
    require_nonempty(bp, "tau_unit_sum");
    double c = require_c(bp.c, "tau_unit_sum");
    return 1.0 / (std::pow(c, static_cast<double>(bp.s())) *
                  guarded_loglog(static_cast<double>(bp.max_prime())) * bp.log_product());
}

double seventh_root_log_bound(double M, double c) {
    if (!(M >= 3)) throw domain_error("seventh_root_log_bound: M must be >= 3");
    if (!(c > 0)) throw domain_error("seventh_root_log_bound: c must be positive");
    return std::exp(c * std::pow(std::log(M), 1.0 / 7.0));
}

double iterated_log_shape_from_log(double logX) {
    if (!(logX > 0)) throw domain_error("iterated_log_shape: log X must be positive");
    double a = log_star(logX);
    double b = log_star(a);
    double c = log_star(b);
    return a * b / c;
}

double iterated_log_shape(double X) {
    if (!(X >= 3)) throw domain_error("iterated_log_shape: X must be >= 3");
    return iterated_log_shape_from_log(std::log(X));
}

double linear_form_log_lower_bound(std::span<const double> heights, double B, double c1) {
    if (!(c1 > 0)) throw domain_error("linear_form_log_lower_bound: c1 must be positive");
    double body = check_heights(heights, B, "linear_form_log_lower_bound");
    return -std::pow(c1, static_cast<double>(heights.size())) * body;
}

double linear_form_padic_upper_bound(std::uint64_t p, unsigned D,
                                     std::span<const double> heights, double B, double c2) {
    if (!arith::is_prime_u64(p)) throw domain_error("linear_form_padic_upper_bound: p must be prime");
    if (D < 1) throw domain_error("linear_form_padic_upper_bound: D must be >= 1");
    if (!(c2 > 0)) throw domain_error("linear_form_padic_upper_bound: c2 must be positive");
    double body = check_heights(heights, B, "linear_form_padic_upper_bound");
    return std::pow(c2, static_cast<double>(heights.size())) *
           std::pow(static_cast<double>(p), static_cast<double>(D)) * body;
}

EmpiricalFit fit_effective_constant(const search::Dataset& ds, const BoundParams& bp) {
    require_nonempty(bp, "fit_effective_constant");
    if (!(bp.S == ds.S))
        throw domain_error("fit_effective_constant: params S differs from dataset S");

    const search::SolutionRecord* binding = nullptr;
    Int dabs;
    for (const auto& r : ds.records) {
        mpz_abs(dabs.get_mpz_t(), r.delta.get_mpz_t());
        if (dabs < 3 || !r.ratio) continue;
        if (!binding || *r.ratio > *binding->ratio) binding = &r;
    }
    if (!binding) throw domain_error("fit_effective_constant: no records with |delta| >= 3");

    double max_ratio = *binding->ratio;
    double target = 1.0 - max_ratio; // need kappa(c) <= target
    if (target <= 0)
        throw domain_error("fit_effective_constant: a record has delta equal to an S-unit; "
                           "no finite constant satisfies the bound");

    double lp = bp.log_product();
    double denom = guarded_loglog(static_cast<double>(bp.max_prime())) * lp * lp;
    double kappa = std::min(0.5, target);
    // invert raw kappa formula at the binding value
    double c = std::pow(1.0 / (kappa * denom), 1.0 / static_cast<double>(bp.s()));

    EmpiricalFit fit;
    fit.dataset_id = ds.id;
    fit.fitted_c = c;
    fit.fitted_kappa = kappa;
    fit.binding = *binding;
    return fit;
}

GpfCheckReport gpf_empirical_check(const search::Dataset& ds, double c_T) {
    if (!(c_T > 0)) throw domain_error("gpf_empirical_check: c_T must be positive");
    GpfCheckReport report;
    for (const auto& r : ds.records) {
        // X = max(x^2, N, 3); compare through logs so huge values are safe
        double logX = std::max({2.0 * real::log_abs_mpz(r.x), real::log_abs_mpz(r.n_value),
                                std::log(3.0)});
        GpfCheckRow row;
        row.x = r.x;
        row.a = r.a;
        row.gpf = r.gpf;
        row.shape_value = c_T * iterated_log_shape_from_log(logX);
        row.quotient = std::exp(real::log_abs_mpz(r.gpf)) / row.shape_value;
        if (!report.min_quotient || row.quotient < *report.min_quotient)
            report.min_quotient = row.quotient;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace sunitgap::bounds
