#include "doctest.h"

#include <cmath>
#include <random>

#include "sunitgap/quadfield.hpp"
#include "sunitgap/real.hpp"

#include "oracles.hpp"

using namespace sunitgap;
using arith::Int;
using quadfield::QuadInt;

namespace {

QuadInt random_element(std::mt19937_64& rng, const Int& d) {
    long u = static_cast<long>(rng() % 2000001) - 1000000;
    long v = static_cast<long>(rng() % 2000001) - 1000000;
    if (u == 0 && v == 0) u = 1;
    if (mpz_fdiv_ui(d.get_mpz_t(), 4) == 1 && (rng() & 1)) {
        // same-parity pair for a half-integer element
        if (((u ^ v) & 1) != 0) ++v;
        if (u == 0 && v == 0) u = v = 1;
        return QuadInt(d, u, v, 2);
    }
    return QuadInt(d, u, v);
}

} // namespace

TEST_CASE("construction and canonical form") {
    QuadInt a(5, 2, 4, 2); // both even: canonicalizes to den 1
    CHECK(a.den() == 1);
    CHECK(a.u() == 1);
    CHECK(a.v() == 2);

    CHECK_THROWS_AS(QuadInt(2, 1, 1, 2), domain_error);  // d = 2 (mod 4)
    CHECK_THROWS_AS(QuadInt(5, 1, 2, 2), domain_error);  // mixed parity
    CHECK_THROWS_AS(QuadInt(4, 1, 1), domain_error);     // square d
    CHECK_THROWS_AS(QuadInt(1, 1, 1), domain_error);     // d < 2
    CHECK_NOTHROW(QuadInt(5, 1, 1, 2));
}

TEST_CASE("ring operations and norm") {
    QuadInt alpha(2, 5, -3); // 5 - 3*sqrt(2)
    CHECK(alpha.norm() == 7);
    CHECK(alpha.conj().conj() == alpha);

    QuadInt eta(2, 1, 1);
    CHECK(eta.norm() == -1);

    QuadInt phi(5, 1, 1, 2);
    CHECK(phi.norm() == -1);
    CHECK((phi * phi).norm() == 1);
    CHECK(phi * phi == phi + QuadInt(5, 1, 0)); // golden ratio: phi^2 = phi + 1

    CHECK_THROWS_AS(QuadInt(2, 1, 0) * QuadInt(3, 1, 0), domain_error);
}

TEST_CASE("norm is multiplicative") {
    std::mt19937_64 rng(17);
    for (Int d : {Int(2), Int(5), Int(13)}) {
        for (int i = 0; i < 200; ++i) {
            QuadInt a = random_element(rng, d);
            QuadInt b = random_element(rng, d);
            CHECK((a * b).norm() == a.norm() * b.norm());
        }
    }
}

TEST_CASE("sign and comparison are exact") {
    QuadInt a(2, 12, -8);  // 12 - 8*sqrt(2) > 0 iff 144 > 128
    CHECK(a.sign_real() == 1);
    QuadInt b(2, 11, -8);  // 121 < 128
    CHECK(b.sign_real() == -1);
    CHECK(b.less_than(a));
    CHECK(QuadInt(2, 0, 0).sign_real() == 0);
}

TEST_CASE("weil height") {
    CHECK(quadfield::weil_height(QuadInt(2, 3, 2)) ==
          doctest::Approx(0.881373587019543).epsilon(1e-12));
    CHECK(quadfield::weil_height(QuadInt(2, 1, 0)) == 0.0);
    CHECK(quadfield::weil_height(QuadInt(2, -1, 0)) == 0.0);
    CHECK(quadfield::weil_height(QuadInt(2, 7, 0)) == doctest::Approx(std::log(7.0)).epsilon(1e-12));
    CHECK_THROWS_AS(quadfield::weil_height(QuadInt(2, 0, 0)), domain_error);

    // height of a quadratic integer with a tiny conjugate: only one log+ term
    CHECK(quadfield::weil_height(QuadInt(5, 1, 1, 2)) ==
          doctest::Approx(0.5 * std::log((1 + std::sqrt(5.0)) / 2)).epsilon(1e-12));
}

TEST_CASE("fundamental unit spot values") {
    const auto& u2 = quadfield::fundamental_unit(2);
    CHECK(u2.eta == QuadInt(2, 1, 1));
    CHECK(u2.norm == -1);

    const auto& u5 = quadfield::fundamental_unit(5);
    CHECK(u5.eta == QuadInt(5, 1, 1, 2));
    CHECK(u5.norm == -1);

    const auto& u3 = quadfield::fundamental_unit(3);
    CHECK(u3.eta == QuadInt(3, 2, 1));
    CHECK(u3.norm == 1);

    CHECK_THROWS_AS(quadfield::fundamental_unit(12), domain_error); // not squarefree
    CHECK_THROWS_AS(quadfield::fundamental_unit(1), domain_error);
}

TEST_CASE("fundamental unit matches the minimal Pell oracle") {
    for (std::uint64_t d = 2; d <= 40; ++d) {
        bool squarefree = true;
        for (std::uint64_t q = 2; q * q <= d; ++q)
            if (d % (q * q) == 0) squarefree = false;
        if (!squarefree) continue;
        auto oracle = oracles::pell_min_oracle(d);
        const auto& unit = quadfield::fundamental_unit(Int(static_cast<unsigned long>(d)));
        // oracle returns coordinates of (u + v sqrt(d))/2
        Int u2 = unit.eta.den() == 2 ? unit.eta.u() : 2 * unit.eta.u();
        Int v2 = unit.eta.den() == 2 ? unit.eta.v() : 2 * unit.eta.v();
        CHECK(u2 == oracle.u);
        CHECK(v2 == oracle.v);
        CHECK(unit.norm == oracle.norm);
    }
}

TEST_CASE("unit conjugate is the inverse up to sign") {
    for (Int d : {Int(2), Int(3), Int(5), Int(7), Int(10), Int(13)}) {
        const auto& unit = quadfield::fundamental_unit(d);
        QuadInt prod = unit.eta * unit.eta.conj();
        CHECK((prod == QuadInt(d, 1, 0) || prod == QuadInt(d, -1, 0)));
    }
}

TEST_CASE("reduce_height examples") {
    auto [m, delta] = quadfield::reduce_height(QuadInt(2, 123, 87)); // 3 * (1+sqrt2)^5
    CHECK(m == 5);
    CHECK(delta == QuadInt(2, 3, 0));

    auto [m0, d0] = quadfield::reduce_height(QuadInt(2, 3, 0));
    CHECK(m0 == 0);
    CHECK(d0 == QuadInt(2, 3, 0));

    const auto& unit = quadfield::fundamental_unit(2);
    auto [mu, du] = quadfield::reduce_height(unit.eta);
    CHECK(quadfield::weil_height(du) <= 0.5 * unit.log_eta + 1e-9);

    CHECK_THROWS_AS(quadfield::reduce_height(QuadInt(2, 0, 0)), domain_error);
}

TEST_CASE("reduce_height satisfies the height bound and reconstructs exactly") {
    std::mt19937_64 rng(23);
    for (Int d : {Int(2), Int(3), Int(5), Int(7), Int(10), Int(13)}) {
        const auto& unit = quadfield::fundamental_unit(d);
        for (int i = 0; i < 150; ++i) {
            QuadInt alpha = random_element(rng, d);
            auto [m, delta] = quadfield::reduce_height(alpha);
            Int n = alpha.norm();
            double logN = real::log_abs_mpz(n);
            CHECK(quadfield::weil_height(delta) <= 0.5 * logN + 0.5 * unit.log_eta + 1e-9);
            CHECK(quadfield::unit_pow(unit, m) * delta == alpha);
        }
    }
}

TEST_CASE("height moves by at most |m| log eta under unit twists") {
    std::mt19937_64 rng(29);
    const auto& unit = quadfield::fundamental_unit(7);
    for (int i = 0; i < 100; ++i) {
        QuadInt alpha = random_element(rng, Int(7));
        long long m = static_cast<long long>(rng() % 7) - 3;
        double h1 = quadfield::weil_height(alpha);
        double h2 = quadfield::weil_height(quadfield::unit_pow(unit, m) * alpha);
        CHECK(std::fabs(h2 - h1) <= std::fabs(static_cast<double>(m)) * unit.log_eta + 1e-9);
    }
}

TEST_CASE("splitting types") {
    auto ps = quadfield::splitting_type(2, 7);
    CHECK(ps.kind == quadfield::SplitKind::split);
    CHECK(ps.roots == std::vector<std::uint64_t>{3, 4});

    CHECK(quadfield::splitting_type(2, 2).kind == quadfield::SplitKind::ramified);
    CHECK(quadfield::splitting_type(2, 5).kind == quadfield::SplitKind::inert);

    CHECK(quadfield::splitting_type(17, 2).kind == quadfield::SplitKind::split);  // 17 = 1 (mod 8)
    CHECK(quadfield::splitting_type(5, 2).kind == quadfield::SplitKind::inert);   // 5 (mod 8)
    CHECK(quadfield::splitting_type(3, 2).kind == quadfield::SplitKind::ramified);
    CHECK(quadfield::splitting_type(7, 7).kind == quadfield::SplitKind::ramified);
}

TEST_CASE("ideal valuations: worked cases") {
    // split: N(3 + sqrt2) = 7, valuation sits at the root-4 ideal
    auto vals = quadfield::valuations_above(QuadInt(2, 3, 1), 7);
    REQUIRE(vals.size() == 2);
    CHECK(vals[0].tag == "root-3");
    CHECK(vals[0].v == 0);
    CHECK(vals[1].tag == "root-4");
    CHECK(vals[1].v == 1);

    // inert: 5 in Q(sqrt2)
    vals = quadfield::valuations_above(QuadInt(2, 5, 0), 5);
    REQUIRE(vals.size() == 1);
    CHECK(vals[0].tag == "inert");
    CHECK(vals[0].v == 1);
    CHECK(vals[0].f == 2);

    // ramified: sqrt2 at 2
    vals = quadfield::valuations_above(QuadInt(2, 0, 1), 2);
    REQUIRE(vals.size() == 1);
    CHECK(vals[0].tag == "ramified");
    CHECK(vals[0].v == 1);
    CHECK(vals[0].e == 2);
    CHECK(vals[0].normalized() == 0.5);

    CHECK_THROWS_AS(quadfield::valuations_above(QuadInt(2, 0, 0), 7), domain_error);
}

TEST_CASE("valuations sum to v_p of the norm") {
    std::mt19937_64 rng(31);
    std::vector<std::uint64_t> ps = {2, 3, 5, 7, 11, 13};
    for (Int d : {Int(2), Int(3), Int(5), Int(7), Int(10), Int(13), Int(17)}) {
        for (int i = 0; i < 60; ++i) {
            QuadInt alpha = random_element(rng, d);
            for (std::uint64_t p : ps) {
                auto vals = quadfield::valuations_above(alpha, p);
                unsigned long total = 0;
                for (const auto& iv : vals) total += iv.v * iv.f;
                CHECK(total == arith::valuation(alpha.norm(), p));
            }
        }
    }
}
