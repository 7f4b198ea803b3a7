#include "doctest.h"

#include <cmath>

#include "sunitgap/hensel.hpp"
#include "sunitgap/real.hpp"

using namespace sunitgap;
using arith::ExponentVector;
using arith::Int;
using arith::PrimeSet;

TEST_CASE("modular square roots") {
    CHECK(hensel::sqrt_mod_p(2, 7) == std::vector<std::uint64_t>{3, 4});
    CHECK(hensel::sqrt_mod_p(0, 7) == std::vector<std::uint64_t>{0});
    CHECK(hensel::sqrt_mod_p(3, 7).empty());
    CHECK_THROWS_AS(hensel::sqrt_mod_p(2, 2), domain_error);
    CHECK_THROWS_AS(hensel::sqrt_mod_p(2, 9), domain_error);

    // p = 1 (mod 4) exercises the full Tonelli-Shanks walk
    for (std::uint64_t p : {13, 17, 41, 97, 577}) {
        int residues = 0;
        for (std::uint64_t n = 1; n < p; ++n) {
            auto roots = hensel::sqrt_mod_p(Int(static_cast<unsigned long>(n)), p);
            CHECK(roots.size() <= 2);
            for (auto r : roots) CHECK((r * r) % p == n);
            if (!roots.empty()) ++residues;
        }
        CHECK(residues == static_cast<int>((p - 1) / 2));
    }
}

TEST_CASE("hensel lifting") {
    CHECK(hensel::hensel_lift(2, 7, 3, 2) == 10);
    CHECK(hensel::hensel_lift(2, 7, 3, 1) == 3);
    CHECK(hensel::hensel_lift(81, 7, 2, 2) == 9);

    CHECK_THROWS_AS(hensel::hensel_lift(2, 7, 4 + 1, 2), domain_error);  // 5 is not a root
    CHECK_THROWS_AS(hensel::hensel_lift(49, 7, 0, 2), domain_error);     // derivative vanishes

    // compatibility: the mod p^j reduction of a lift to p^k is the lift to p^j
    Int pk;
    for (unsigned k = 1; k <= 24; ++k) {
        Int yk = hensel::hensel_lift(2, 7, 3, 24);
        Int yj = hensel::hensel_lift(2, 7, 3, k);
        mpz_ui_pow_ui(pk.get_mpz_t(), 7, k);
        CHECK(yk % pk == yj);
        CHECK((yj * yj - 2) % pk == 0);
    }
}

TEST_CASE("extremal witness construction: frozen small cases") {
    ExponentVector nine(PrimeSet({3}), {2}); // N = 9

    auto w = hensel::construct_extremal(nine, 7, 1);
    CHECK(w.x == 4);
    CHECK(w.delta == 7);
    CHECK(w.ratio == doctest::Approx(1.0));

    w = hensel::construct_extremal(nine, 7, 2);
    CHECK(w.x == 46);
    CHECK(w.delta == 2107); // 7^2 * 43
    CHECK(w.spart_value == 49);
    CHECK(w.ratio == doctest::Approx(std::log(49.0) / std::log(2107.0)).epsilon(1e-9));

    ExponentVector eightyone(PrimeSet({3}), {4}); // N = 81
    w = hensel::construct_extremal(eightyone, 7, 2);
    CHECK(w.x == 40);
    CHECK(w.delta == 1519); // 7^2 * 31

    w = hensel::construct_extremal(nine, 5, 1);
    CHECK(w.x == 2);
    CHECK(w.delta == -5);
    CHECK(w.ratio == doctest::Approx(1.0));
}

TEST_CASE("extremal witness error paths") {
    ExponentVector nine(PrimeSet({3}), {2});
    ExponentVector three(PrimeSet({3}), {1});

    CHECK_THROWS_AS(hensel::construct_extremal(three, 7, 1), domain_error);  // 3 is a nonresidue mod 7
    CHECK_THROWS_AS(hensel::construct_extremal(nine, 2, 1), domain_error);   // p = 2 unsupported
    CHECK_THROWS_AS(hensel::construct_extremal(nine, 3, 1), domain_error);   // p in T
    CHECK_THROWS_AS(hensel::construct_extremal(nine, 9, 1), domain_error);   // composite p
}

TEST_CASE("witness invariants across a family") {
    ExponentVector nine(PrimeSet({3}), {2});
    auto fam = hensel::witness_family(nine, 7, 1, 12);
    CHECK(fam.skipped.empty());
    REQUIRE(fam.witnesses.size() == 12);
    Int pk;
    for (const auto& w : fam.witnesses) {
        CHECK(w.delta != 0);
        mpz_ui_pow_ui(pk.get_mpz_t(), 7, w.k);
        CHECK(mpz_divisible_p(w.delta.get_mpz_t(), pk.get_mpz_t()));
        CHECK(w.x > 0);
        CHECK(w.x < pk);
        CHECK(mpz_fdiv_ui(w.x.get_mpz_t(), 3) != 0); // coprime to the base
        CHECK(w.ratio > 0.0);
        CHECK(w.ratio <= 1.0);
    }
    // k = 1..3 ratio trend from the worked examples
    CHECK(fam.witnesses[0].ratio == doctest::Approx(1.0));
    CHECK(fam.witnesses[1].ratio == doctest::Approx(0.508533897425744).epsilon(1e-9));

    // deterministic under parallel construction
    auto fam2 = hensel::witness_family(nine, 7, 1, 12, 4);
    REQUIRE(fam2.witnesses.size() == 12);
    for (std::size_t i = 0; i < 12; ++i) {
        CHECK(fam2.witnesses[i].x == fam.witnesses[i].x);
        CHECK(fam2.witnesses[i].k == fam.witnesses[i].k);
    }
}

TEST_CASE("witness family: empty range and per-k skips") {
    ExponentVector nine(PrimeSet({3}), {2});
    auto fam = hensel::witness_family(nine, 7, 5, 4);
    CHECK(fam.witnesses.empty());
    CHECK(fam.skipped.empty());

    // nonresidue N: every k is skipped with a reason
    ExponentVector three(PrimeSet({3}), {1});
    fam = hensel::witness_family(three, 7, 1, 3);
    CHECK(fam.witnesses.empty());
    REQUIRE(fam.skipped.size() == 3);
    CHECK(fam.skipped[0].first == 1);
    CHECK(fam.skipped[0].second.find("nonresidue") != std::string::npos);
}
