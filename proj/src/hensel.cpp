#include "sunitgap/hensel.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <optional>
#include <thread>

#include "sunitgap/real.hpp"

namespace sunitgap::hensel {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

void require_odd_prime(std::uint64_t p, const char* who) {
    if (p % 2 == 0) throw domain_error(std::string(who) + ": p must be odd");
    if (!arith::is_prime_u64(p)) throw domain_error(std::string(who) + ": p must be prime");
}

} // namespace

std::vector<std::uint64_t> sqrt_mod_p(const Int& n, std::uint64_t p) {
    require_odd_prime(p, "sqrt_mod_p");
    Int red = n % Int(static_cast<unsigned long>(p));
    if (red < 0) red += Int(static_cast<unsigned long>(p));
    std::uint64_t a = mpz_get_ui(red.get_mpz_t());
    if (a == 0) return {0};
    if (powmod(a, (p - 1) / 2, p) != 1) return {}; // nonresidue

    std::uint64_t r;
    if (p % 4 == 3) {
        r = powmod(a, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks
        std::uint64_t q = p - 1;
        unsigned s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        std::uint64_t z = 2;
        while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
        std::uint64_t m = s;
        std::uint64_t c = powmod(z, q, p);
        std::uint64_t t = powmod(a, q, p);
        r = powmod(a, (q + 1) / 2, p);
        while (t != 1) {
            std::uint64_t i = 0, tt = t;
            while (tt != 1) {
                tt = mulmod(tt, tt, p);
                ++i;
            }
            std::uint64_t b = c;
            for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
            m = i;
            c = mulmod(b, b, p);
            t = mulmod(t, c, p);
            r = mulmod(r, b, p);
        }
    }
    std::uint64_t other = p - r;
    assert(mulmod(r, r, p) == a);
    return {std::min(r, other), std::max(r, other)};
}

Int hensel_lift(const Int& n, std::uint64_t p, const Int& r, unsigned k) {
    require_odd_prime(p, "hensel_lift");
    if (k == 0) throw domain_error("hensel_lift: k must be >= 1");
    Int pz(static_cast<unsigned long>(p));
    Int y = r % pz;
    if (y < 0) y += pz;
    if ((y * y - n) % pz != 0) throw domain_error("hensel_lift: r is not a root of X^2 - n mod p");
    if (y == 0) throw domain_error("hensel_lift: derivative 2r vanishes mod p");

    unsigned prec = 1;
    Int mod = pz, inv, t;
    while (prec < k) {
        unsigned next = std::min(2 * prec, k);
        mpz_pow_ui(mod.get_mpz_t(), pz.get_mpz_t(), next);
        t = 2 * y;
        if (mpz_invert(inv.get_mpz_t(), t.get_mpz_t(), mod.get_mpz_t()) == 0)
            throw domain_error("hensel_lift: derivative not invertible"); // unreachable for odd p
        y = (y - (y * y - n) * inv) % mod;
        if (y < 0) y += mod;
        prec = next;
    }
    assert((y * y - n) % mod == 0);
    return y;
}

ExtremalWitness construct_extremal(const arith::ExponentVector& a, std::uint64_t p, unsigned k) {
    require_odd_prime(p, "construct_extremal");
    if (k == 0) throw domain_error("construct_extremal: k must be >= 1");
    if (a.base().contains(p)) throw domain_error("construct_extremal: p must not lie in the base set");
    Int N = a.value();
    if (mpz_divisible_ui_p(N.get_mpz_t(), p))
        throw domain_error("construct_extremal: p divides value(a)");
    auto roots = sqrt_mod_p(N, p);
    if (roots.empty())
        throw domain_error("no witness at this prime: value(a) is a quadratic nonresidue mod " +
                           std::to_string(p));

    Int tprod = a.base().product();
    for (unsigned kk = k; kk <= k + 8; ++kk) {
        Int y = hensel_lift(N, p, Int(static_cast<unsigned long>(roots[0])), kk);
        Int pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), kk);
        Int candidates[2] = {y, pk - y};

        std::optional<ExtremalWitness> best;
        for (const Int& x : candidates) {
            assert(x > 0 && x < pk);
            Int delta = x * x - N;
            if (delta == 0) continue;
            Int g;
            mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), tprod.get_mpz_t());
            if (g != 1) continue;
            unsigned long val = arith::valuation(delta, p);
            assert(val >= kk);
            if (best && (val < arith::valuation(best->delta, p) ||
                         (val == arith::valuation(best->delta, p) && x > best->x)))
                continue;
            ExtremalWitness w;
            w.a = a;
            w.p = p;
            w.k = kk;
            w.x = x;
            w.delta = delta;
            mpz_ui_pow_ui(w.spart_value.get_mpz_t(), static_cast<unsigned long>(p), val);
            w.ratio = real::log_abs_mpz(w.spart_value) / real::log_abs_mpz(w.delta);
            best = std::move(w);
        }
        if (best) return *best;
        // both representatives degenerate at this precision; raise k
    }
    throw domain_error("construct_extremal: no admissible lift near k = " + std::to_string(k));
}

WitnessFamily witness_family(const arith::ExponentVector& a, std::uint64_t p,
                             unsigned k_from, unsigned k_to, unsigned workers) {
    WitnessFamily fam;
    if (k_to < k_from) return fam; // empty range
    const unsigned count = k_to - k_from + 1;

    struct Slot {
        std::optional<ExtremalWitness> witness;
        std::optional<std::string> reason;
    };
    std::vector<Slot> slots(count);

    auto run = [&](unsigned idx) {
        unsigned k = k_from + idx;
        try {
            slots[idx].witness = construct_extremal(a, p, k);
        } catch (const domain_error& e) {
            slots[idx].reason = e.what();
        }
    };

    if (workers <= 1 || count < 4) {
        for (unsigned i = 0; i < count; ++i) run(i);
    } else {
        std::atomic<unsigned> next{0};
        std::vector<std::thread> pool;
        unsigned nthreads = std::min(workers, count);
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) {
            pool.emplace_back([&] {
                for (unsigned i = next.fetch_add(1); i < count; i = next.fetch_add(1)) run(i);
            });
        }
        for (auto& th : pool) th.join();
    }

    for (unsigned i = 0; i < count; ++i) {
        if (slots[i].witness)
            fam.witnesses.push_back(std::move(*slots[i].witness));
        else
            fam.skipped.emplace_back(k_from + i, std::move(*slots[i].reason));
    }
    return fam;
}

} // namespace sunitgap::hensel
