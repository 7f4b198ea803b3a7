#include "doctest.h"

#include <numeric>
#include <random>

#include "sunitgap/decomp.hpp"

using namespace sunitgap;
using arith::ExponentVector;
using arith::Int;
using arith::PrimeSet;

TEST_CASE("parity decomposition examples") {
    auto d = decomp::parity_decompose(ExponentVector(PrimeSet({2, 3}), {3, 2}));
    CHECK(d.squarefree_part == 2);
    CHECK(d.square_root == 6);

    d = decomp::parity_decompose(ExponentVector(PrimeSet({2, 3}), {4, 2}));
    CHECK(d.squarefree_part == 1);
    CHECK(d.square_root == 12);

    d = decomp::parity_decompose(ExponentVector(PrimeSet({3, 5}), {1, 1}));
    CHECK(d.squarefree_part == 15);
    CHECK(d.square_root == 1);
}

TEST_CASE("parity decomposition reconstructs the value") {
    std::mt19937_64 rng(11);
    PrimeSet T({2, 3, 5, 11});
    for (int i = 0; i < 300; ++i) {
        std::vector<std::uint32_t> exps(4);
        for (auto& e : exps) e = rng() % 41;
        ExponentVector a(T, exps);
        auto d = decomp::parity_decompose(a);
        CHECK(d.squarefree_part * d.square_root * d.square_root == a.value());
        // squarefree part divides the prime product
        CHECK(mpz_divisible_p(T.product().get_mpz_t(), d.squarefree_part.get_mpz_t()));
    }
}

TEST_CASE("floor half radical") {
    CHECK(decomp::floor_half_radical(ExponentVector(PrimeSet({2, 3}), {3, 2})) == 6);
    CHECK(decomp::floor_half_radical(ExponentVector(PrimeSet({2, 3}), {0, 0})) == 1);
    CHECK(decomp::floor_half_radical(ExponentVector(PrimeSet({7}), {5})) == 49);
}

TEST_CASE("coprime split examples") {
    auto cs = decomp::coprime_split(7, 5, PrimeSet({2, 3}));
    CHECK(cs.minus.spart_value() == 2);
    CHECK(cs.minus.cofactor == 1);
    CHECK(cs.plus.spart_value() == 12);
    CHECK(cs.plus.cofactor == 1);
    CHECK(cs.g == 2);

    cs = decomp::coprime_split(4, 1, PrimeSet({3, 5}));
    CHECK(cs.minus.spart_value() == 3);
    CHECK(cs.plus.spart_value() == 5);
    CHECK(cs.g == 1);

    cs = decomp::coprime_split(2, 1, PrimeSet());
    CHECK(cs.minus.spart_value() == 1);
    CHECK(cs.minus.cofactor == 1);
    CHECK(cs.plus.cofactor == 3);
    CHECK(cs.g == 1);

    CHECK_THROWS_AS(decomp::coprime_split(5, 5, PrimeSet({2})), domain_error);
}

TEST_CASE("coprime split reconstructs x^2 - y^2 and bounds the gcd") {
    std::mt19937_64 rng(13);
    PrimeSet S({2, 5, 13});
    for (int i = 0; i < 500; ++i) {
        Int x = Int(static_cast<unsigned long>(rng() % 10000 + 1));
        Int y = Int(static_cast<unsigned long>(rng() % 10000 + 1));
        if (x == y) continue;
        auto cs = decomp::coprime_split(x, y, S);
        Int lhs = Int(cs.minus.sign) * cs.minus.spart_value() * cs.minus.cofactor *
                  Int(cs.plus.sign) * cs.plus.spart_value() * cs.plus.cofactor;
        CHECK(lhs == x * x - y * y);

        Int g2;
        Int two_y = 2 * y;
        mpz_gcd(g2.get_mpz_t(), x.get_mpz_t(), two_y.get_mpz_t());
        if (g2 == 1) CHECK((cs.g == 1 || cs.g == 2));
    }
}
