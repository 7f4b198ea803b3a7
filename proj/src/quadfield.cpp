#include "sunitgap/quadfield.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <mutex>

#include <mpfr.h>

#include "sunitgap/hensel.hpp"
#include "sunitgap/real.hpp"

namespace sunitgap::quadfield {

namespace {

void require_same_field(const QuadInt& a, const QuadInt& b, const char* who) {
    if (a.d() != b.d()) throw domain_error(std::string(who) + ": mixed fields");
}

void require_squarefree(const Int& d, const char* who) {
    if (d < 2) throw domain_error(std::string(who) + ": d must be >= 2");
    for (const auto& [p, e] : arith::factorize(d))
        if (e > 1) throw domain_error(std::string(who) + ": d = " + d.get_str() + " is not squarefree");
}

mpfr_prec_t working_prec(const QuadInt& a) {
    std::size_t bits = mpz_sizeinbase(a.u().get_mpz_t(), 2) + mpz_sizeinbase(a.v().get_mpz_t(), 2) +
                       mpz_sizeinbase(a.d().get_mpz_t(), 2);
    return static_cast<mpfr_prec_t>(160 + 2 * bits);
}

class Real {
public:
    explicit Real(mpfr_prec_t prec) { mpfr_init2(x_, prec); }
    ~Real() { mpfr_clear(x_); }
    Real(const Real&) = delete;
    Real& operator=(const Real&) = delete;
    mpfr_ptr get() { return x_; }

private:
    mpfr_t x_;
};

// out = log(|a| + |b| sqrt(d)), positive linear combination (no cancellation)
void log_pos_combination(mpfr_ptr out, const Int& a, const Int& b, const Int& d) {
    mpfr_prec_t prec = mpfr_get_prec(out);
    Real s(prec), t(prec);
    mpfr_set_z(s.get(), d.get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(s.get(), s.get(), MPFR_RNDN);
    Int babs;
    mpz_abs(babs.get_mpz_t(), b.get_mpz_t());
    mpfr_mul_z(s.get(), s.get(), babs.get_mpz_t(), MPFR_RNDN);
    Int aabs;
    mpz_abs(aabs.get_mpz_t(), a.get_mpz_t());
    mpfr_set_z(t.get(), aabs.get_mpz_t(), MPFR_RNDN);
    mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDN);
    mpfr_log(out, s.get(), MPFR_RNDN);
}

// out = log|alpha| under the real embedding; alpha nonzero.
// Opposite-sign coordinates are rewritten through the norm so every
// intermediate sum is of positive terms.
void log_abs_mpfr(mpfr_ptr out, const QuadInt& a) {
    mpfr_prec_t prec = mpfr_get_prec(out);
    Real t(prec);
    if (a.v() == 0) {
        Int uabs;
        mpz_abs(uabs.get_mpz_t(), a.u().get_mpz_t());
        mpfr_set_z(out, uabs.get_mpz_t(), MPFR_RNDN);
        mpfr_log(out, out, MPFR_RNDN);
    } else if (a.u() == 0 || sgn(a.u()) == sgn(a.v())) {
        log_pos_combination(out, a.u(), a.v(), a.d());
    } else {
        // |u + v sqrt(d)| = |u^2 - d v^2| / (|u| + |v| sqrt(d))
        Int w = a.u() * a.u() - a.d() * a.v() * a.v();
        mpz_abs(w.get_mpz_t(), w.get_mpz_t());
        mpfr_set_z(out, w.get_mpz_t(), MPFR_RNDN);
        mpfr_log(out, out, MPFR_RNDN);
        log_pos_combination(t.get(), a.u(), a.v(), a.d());
        mpfr_sub(out, out, t.get(), MPFR_RNDN);
    }
    if (a.den() == 2) {
        mpfr_const_log2(t.get(), MPFR_RNDN);
        mpfr_sub(out, out, t.get(), MPFR_RNDN);
    }
}

} // namespace

QuadInt::QuadInt(Int d, Int u, Int v, int den) : d_(std::move(d)), u_(std::move(u)), v_(std::move(v)), den_(den) {
    if (d_ < 2) throw domain_error("QuadInt: d must be >= 2");
    if (mpz_perfect_square_p(d_.get_mpz_t())) throw domain_error("QuadInt: d must not be a square");
    if (den_ != 1 && den_ != 2) throw domain_error("QuadInt: den must be 1 or 2");
    canonicalize();
    if (den_ == 2) {
        if (mpz_fdiv_ui(d_.get_mpz_t(), 4) != 1)
            throw domain_error("QuadInt: den 2 requires d = 1 (mod 4)");
        if (mpz_odd_p(u_.get_mpz_t()) != mpz_odd_p(v_.get_mpz_t()))
            throw domain_error("QuadInt: den 2 requires u = v (mod 2)");
    }
}

void QuadInt::canonicalize() {
    if (den_ == 2 && mpz_even_p(u_.get_mpz_t()) && mpz_even_p(v_.get_mpz_t())) {
        u_ /= 2;
        v_ /= 2;
        den_ = 1;
    }
}

QuadInt QuadInt::conj() const { return QuadInt(d_, u_, -v_, den_); }

Int QuadInt::norm() const {
    Int n = u_ * u_ - d_ * v_ * v_;
    if (den_ == 2) {
        assert(mpz_divisible_ui_p(n.get_mpz_t(), 4));
        n /= 4;
    }
    return n;
}

QuadInt QuadInt::operator+(const QuadInt& o) const {
    require_same_field(*this, o, "quad_add");
    if (den_ == o.den_) return QuadInt(d_, u_ + o.u_, v_ + o.v_, den_);
    const QuadInt& half = den_ == 2 ? *this : o;
    const QuadInt& whole = den_ == 2 ? o : *this;
    return QuadInt(d_, 2 * whole.u_ + half.u_, 2 * whole.v_ + half.v_, 2);
}

QuadInt QuadInt::operator-() const { return QuadInt(d_, -u_, -v_, den_); }

QuadInt QuadInt::operator-(const QuadInt& o) const { return *this + (-o); }

QuadInt QuadInt::operator*(const QuadInt& o) const {
    require_same_field(*this, o, "quad_mul");
    Int u = u_ * o.u_ + d_ * v_ * o.v_;
    Int v = u_ * o.v_ + v_ * o.u_;
    int den = den_ * o.den_;
    if (den == 4) {
        // products of maximal-order elements have even raw coordinates here
        assert(mpz_even_p(u.get_mpz_t()) && mpz_even_p(v.get_mpz_t()));
        u /= 2;
        v /= 2;
        den = 2;
    }
    return QuadInt(d_, std::move(u), std::move(v), den);
}

int QuadInt::sign_real() const {
    int su = sgn(u_), sv = sgn(v_);
    if (sv == 0) return su;
    if (su == 0) return sv;
    if (su == sv) return su;
    Int t = u_ * u_ - d_ * v_ * v_;
    int st = sgn(t); // nonzero: d is not a square
    return su > 0 ? st : -st;
}

bool QuadInt::less_than(const QuadInt& other) const {
    require_same_field(*this, other, "quad compare");
    return (other - *this).sign_real() > 0;
}

std::string QuadInt::str() const {
    std::string body;
    if (v_ == 0) {
        body = u_.get_str();
    } else {
        std::string root = "\xE2\x88\x9A" + d_.get_str(); // UTF-8 square root sign
        Int vabs;
        mpz_abs(vabs.get_mpz_t(), v_.get_mpz_t());
        std::string vpart = (vabs == 1 ? "" : vabs.get_str()) + root;
        if (u_ == 0)
            body = (sgn(v_) < 0 ? "-" : "") + vpart;
        else
            body = u_.get_str() + (sgn(v_) < 0 ? "-" : "+") + vpart;
    }
    if (den_ == 2) return "(" + body + ")/2";
    return body;
}

QuadInt quad_pow(const QuadInt& base, unsigned long e) {
    QuadInt r(base.d(), 1, 0);
    QuadInt b = base;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

double log_abs(const QuadInt& alpha) {
    if (alpha.is_zero()) throw domain_error("log_abs: zero element");
    Real r(working_prec(alpha));
    log_abs_mpfr(r.get(), alpha);
    return mpfr_get_d(r.get(), MPFR_RNDN);
}

double weil_height(const QuadInt& alpha) {
    if (alpha.is_zero()) throw domain_error("weil_height: zero element");
    if (alpha.is_rational()) {
        assert(alpha.den() == 1);
        Int uabs;
        mpz_abs(uabs.get_mpz_t(), alpha.u().get_mpz_t());
        if (uabs == 1) return 0.0;
        return real::log_abs_mpz(uabs);
    }
    mpfr_prec_t prec = working_prec(alpha);
    Real la(prec), ls(prec);
    log_abs_mpfr(la.get(), alpha);
    log_abs_mpfr(ls.get(), alpha.conj());
    if (mpfr_sgn(la.get()) < 0) mpfr_set_zero(la.get(), 1);
    if (mpfr_sgn(ls.get()) < 0) mpfr_set_zero(ls.get(), 1);
    mpfr_add(la.get(), la.get(), ls.get(), MPFR_RNDN);
    mpfr_div_ui(la.get(), la.get(), 2, MPFR_RNDN);
    return mpfr_get_d(la.get(), MPFR_RNDN);
}

const UnitInfo& fundamental_unit(const Int& d) {
    static std::map<Int, UnitInfo> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;

    require_squarefree(d, "fundamental_unit");

    // Continued fraction of omega: sqrt(d), or (1+sqrt(d))/2 when d = 1 (mod
    // 4).  The complete quotients w_n = (P_n + sqrt(d))/Q_n cycle from n = 1;
    // their product over one period is the fundamental unit.
    Int s;
    mpz_sqrt(s.get_mpz_t(), d.get_mpz_t());
    bool one_mod4 = mpz_fdiv_ui(d.get_mpz_t(), 4) == 1;
    Int P = one_mod4 ? Int(1) : Int(0);
    Int Q = one_mod4 ? Int(2) : Int(1);

    Int a = (P + s) / Q;
    Int P1 = a * Q - P;
    Int Q1 = (d - P1 * P1) / Q;
    assert((d - P1 * P1) % Q == 0 && Q1 > 0);

    // accumulate prod (P_n + sqrt(d))/Q_n as (au + av sqrt(d))/aw
    Int au = P1, av = 1, aw = Q1, g;

    Int Pn = P1, Qn = Q1;
    const unsigned long max_period = 10000000;
    unsigned long n = 0;
    for (;; ++n) {
        if (n > max_period) throw domain_error("fundamental_unit: period not found");
        a = (Pn + s) / Qn;
        Int Pm = a * Qn - Pn;
        Int Qm = (d - Pm * Pm) / Qn;
        assert(Qm > 0);
        if (Pm == P1 && Qm == Q1) break; // period closed
        Pn = Pm;
        Qn = Qm;
        Int nu = au * Pn + av * d;
        Int nv = au + av * Pn;
        Int nw = aw * Qn;
        mpz_gcd(g.get_mpz_t(), nu.get_mpz_t(), nv.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), nw.get_mpz_t());
        au = nu / g;
        av = nv / g;
        aw = nw / g;
    }

    if (aw != 1 && aw != 2)
        throw domain_error("fundamental_unit: accumulated denominator " + aw.get_str());
    QuadInt eta(d, au, av, static_cast<int>(mpz_get_ui(aw.get_mpz_t())));
    Int nrm = eta.norm();
    if (nrm != 1 && nrm != -1)
        throw domain_error("fundamental_unit: accumulated element is not a unit");
    assert(QuadInt(d, 1, 0).less_than(eta));
    double log_eta = log_abs(eta);
    auto [pos, inserted] = cache.emplace(d, UnitInfo{d, std::move(eta), nrm == 1 ? 1 : -1, log_eta});
    assert(inserted);
    return pos->second;
}

QuadInt unit_pow(const UnitInfo& unit, long long m) {
    if (m >= 0) return quad_pow(unit.eta, static_cast<unsigned long>(m));
    QuadInt inv = unit.norm == 1 ? unit.eta.conj() : -unit.eta.conj();
    return quad_pow(inv, static_cast<unsigned long>(-m));
}

std::pair<long long, QuadInt> reduce_height(const QuadInt& alpha) {
    if (alpha.is_zero()) throw domain_error("reduce_height: zero element");
    const UnitInfo& unit = fundamental_unit(alpha.d());

    Int N = alpha.norm();
    mpz_abs(N.get_mpz_t(), N.get_mpz_t());
    double logN = real::log_abs_mpz(N);
    long long m = std::llround((log_abs(alpha) - 0.5 * logN) / unit.log_eta);

    QuadInt delta = unit_pow(unit, -m) * alpha;
    QuadInt inv_eta = unit.norm == 1 ? unit.eta.conj() : -unit.eta.conj();
    QuadInt n_int(alpha.d(), N, 0);
    QuadInt upper = n_int * unit.eta;  // window: N/eta < delta^2 <= N*eta
    QuadInt lower = n_int * inv_eta;

    int guard = 0;
    while ((delta * delta - upper).sign_real() > 0) {
        delta = delta * inv_eta;
        ++m;
        if (++guard > 64) throw domain_error("reduce_height: window search diverged");
    }
    while ((delta * delta - lower).sign_real() <= 0) {
        delta = delta * unit.eta;
        --m;
        if (++guard > 64) throw domain_error("reduce_height: window search diverged");
    }
    assert((delta * delta - upper).sign_real() <= 0);
    return {m, delta};
}

PrimeSplitting splitting_type(const Int& d, std::uint64_t p) {
    if (!arith::is_prime_u64(p)) throw domain_error("splitting_type: p must be prime");
    require_squarefree(d, "splitting_type");
    PrimeSplitting ps;
    ps.d = d;
    ps.p = p;
    if (p == 2) {
        unsigned r8 = mpz_fdiv_ui(d.get_mpz_t(), 8);
        if (r8 % 2 == 0) {
            ps.kind = SplitKind::ramified; // 2 | d, disc = 4d
            ps.roots = {0};
        } else if (r8 % 4 == 3) {
            ps.kind = SplitKind::ramified; // disc = 4d
            ps.roots = {1};
        } else if (r8 == 1) {
            ps.kind = SplitKind::split;
            ps.roots = {1};
        } else { // d = 5 (mod 8)
            ps.kind = SplitKind::inert;
        }
        return ps;
    }
    if (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
        ps.kind = SplitKind::ramified;
        ps.roots = {0};
        return ps;
    }
    auto roots = hensel::sqrt_mod_p(d, p);
    if (roots.empty()) {
        ps.kind = SplitKind::inert;
    } else {
        ps.kind = SplitKind::split;
        ps.roots = roots;
    }
    return ps;
}

namespace {

// sqrt(d) in Z_2 for d = 1 (mod 8), correct modulo 2^k.  Lifts bit by bit
// through modulus 2^{k+1} so the residue is pinned to a coherent 2-adic root
// (mod 2^k alone the root class is ambiguous).
Int two_adic_sqrt(const Int& d, unsigned k) {
    assert(mpz_fdiv_ui(d.get_mpz_t(), 8) == 1);
    unsigned target = std::max(k + 1, 3u);
    Int r = 1, mod = 8, half = 4;
    for (unsigned m = 3; m < target; ++m) {
        mod *= 2; // 2^{m+1}
        if ((r * r - d) % mod != 0) r += half;
        half *= 2; // 2^m
        assert((r * r - d) % mod == 0);
    }
    Int pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), 2, k);
    return r % pk;
}

} // namespace

std::vector<IdealValuation> valuations_above(const QuadInt& alpha, std::uint64_t p) {
    if (alpha.is_zero()) throw domain_error("valuations_above: zero element");
    PrimeSplitting st = splitting_type(alpha.d(), p);
    Int N = alpha.norm();
    unsigned long vN = arith::valuation(N, p);

    std::vector<IdealValuation> out;
    switch (st.kind) {
    case SplitKind::inert:
        assert(vN % 2 == 0);
        out.push_back({"inert", vN / 2, 1, 2});
        break;
    case SplitKind::ramified:
        out.push_back({"ramified", vN, 2, 1});
        break;
    case SplitKind::split: {
        unsigned dend = (p == 2 && alpha.den() == 2) ? 1 : 0;
        Int pk, lift0, lift1;
        std::uint64_t tag0, tag1;
        unsigned k;
        if (p == 2) {
            k = std::max<unsigned>(static_cast<unsigned>(vN) + 2, 3);
            mpz_ui_pow_ui(pk.get_mpz_t(), 2, k);
            lift0 = two_adic_sqrt(alpha.d(), k);
            lift1 = pk - lift0;
            tag0 = mpz_fdiv_ui(lift0.get_mpz_t(), 8);
            tag1 = mpz_fdiv_ui(lift1.get_mpz_t(), 8);
        } else {
            k = static_cast<unsigned>(vN) + 1;
            mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), k);
            lift0 = hensel::hensel_lift(alpha.d(), p, Int(static_cast<unsigned long>(st.roots[0])), k);
            lift1 = pk - lift0;
            tag0 = st.roots[0];
            tag1 = p - st.roots[0];
        }
        auto val_at = [&](const Int& lift) -> unsigned long {
            Int c = (alpha.u() + alpha.v() * lift) % pk;
            if (c < 0) c += pk;
            assert(c != 0);
            return arith::valuation(c, p) - dend;
        };
        IdealValuation i0{"root-" + std::to_string(tag0), val_at(lift0), 1, 1};
        IdealValuation i1{"root-" + std::to_string(tag1), val_at(lift1), 1, 1};
        assert(i0.v + i1.v == vN);
        if (tag1 < tag0) std::swap(i0, i1);
        out.push_back(std::move(i0));
        out.push_back(std::move(i1));
        break;
    }
    }
    return out;
}

} // namespace sunitgap::quadfield
