#include "sunitgap/decomp.hpp"

namespace sunitgap::decomp {

ParityDecomposition parity_decompose(const arith::ExponentVector& a) {
    ParityDecomposition d;
    d.a = a;
    d.squarefree_part = 1;
    d.square_root = 1;
    Int pw;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint32_t e = a.exps()[i];
        if (e & 1) d.squarefree_part *= Int(static_cast<unsigned long>(a.base()[i]));
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(a.base()[i]), e / 2);
        d.square_root *= pw;
    }
    return d;
}

Int floor_half_radical(const arith::ExponentVector& a) {
    Int r = 1, pw;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(a.base()[i]), a.exps()[i] / 2);
        r *= pw;
    }
    return r;
}

CoprimeSplit coprime_split(const Int& x, const Int& y, const arith::PrimeSet& S) {
    if (x == y) throw domain_error("coprime_split: x - y vanishes");
    CoprimeSplit cs;
    cs.x = x;
    cs.y = y;
    cs.minus = arith::s_part(x - y, S);
    cs.plus = arith::s_part(x + y, S);
    mpz_gcd(cs.g.get_mpz_t(), cs.minus.n.get_mpz_t(), cs.plus.n.get_mpz_t());
    return cs;
}

} // namespace sunitgap::decomp
