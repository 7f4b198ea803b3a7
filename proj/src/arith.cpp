#include "sunitgap/arith.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace sunitgap::arith {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// First 13 primes as Miller-Rabin bases: deterministic for n < 3.317e24,
// which covers all of uint64 and a margin beyond for mpz callers.
constexpr std::uint64_t kMrBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
const char* const kMrCertifiedBound = "3317044064679887385961981";

enum class Certainty { prime, composite, unknown };

// Deterministic Miller-Rabin below kMrCertifiedBound; unknown above it.
Certainty certified_prime(const Int& n) {
    if (n < 2) return Certainty::composite;
    for (std::uint64_t b : kMrBases) {
        if (n == b) return Certainty::prime;
        if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return Certainty::composite;
    }
    static const Int bound(kMrCertifiedBound);
    if (n >= bound) return Certainty::unknown;

    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Int nm1 = n - 1;
    Int x;
    for (std::uint64_t b : kMrBases) {
        Int base(static_cast<unsigned long>(b));
        mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == nm1) continue;
        bool witness = true;
        for (unsigned long i = 1; i < s; ++i) {
            mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
            if (x == nm1) {
                witness = false;
                break;
            }
        }
        if (witness) return Certainty::composite;
    }
    return Certainty::prime;
}

// Pollard-Brent.  Returns a nontrivial (possibly composite) factor of odd
// composite n, decrementing *steps; throws when the budget runs out.
Int rho_brent(const Int& n, std::uint64_t& steps) {
    const unsigned long batch = 128;
    Int x, y, ys, q, g, diff;
    for (unsigned long c = 1;; ++c) {
        y = 2;
        q = 1;
        g = 1;
        unsigned long r = 1;
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) {
                y = (y * y + c) % n;
            }
            if (steps < r) throw incomplete_factorization("factorization budget exhausted (rho)");
            steps -= r;
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                unsigned long lim = std::min(batch, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    diff = x - y;
                    mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
                    q = (q * diff) % n;
                }
                if (steps < lim) throw incomplete_factorization("factorization budget exhausted (rho)");
                steps -= lim;
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            // Batch gcd overshot; replay one step at a time.
            do {
                ys = (ys * ys + c) % n;
                diff = x - ys;
                mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
                if (steps == 0) throw incomplete_factorization("factorization budget exhausted (rho)");
                --steps;
            } while (g == 1);
        }
        if (g != n) return g;
        // whole cycle collapsed: retry with the next polynomial x^2 + c
    }
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t b : kMrBases) {
        if (n == b) return true;
        if (n % b == 0) return false;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t b : kMrBases) {
        std::uint64_t x = powmod_u64(b, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

PrimeSet::PrimeSet(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {
    std::sort(primes_.begin(), primes_.end());
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (i > 0 && primes_[i] == primes_[i - 1])
            throw domain_error("PrimeSet: duplicate prime " + std::to_string(primes_[i]));
        if (!is_prime_u64(primes_[i]))
            throw domain_error("PrimeSet: " + std::to_string(primes_[i]) + " is not prime");
    }
}

bool PrimeSet::contains(std::uint64_t p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

bool PrimeSet::disjoint_with(const PrimeSet& other) const {
    for (std::uint64_t p : primes_)
        if (other.contains(p)) return false;
    return true;
}

std::uint64_t PrimeSet::max_prime() const {
    if (primes_.empty()) throw domain_error("PrimeSet: max_prime of empty set");
    return primes_.back();
}

Int PrimeSet::product() const {
    Int r = 1;
    for (std::uint64_t p : primes_) r *= Int(static_cast<unsigned long>(p));
    return r;
}

ExponentVector::ExponentVector(PrimeSet base, std::vector<std::uint32_t> exps)
    : base_(std::move(base)), exps_(std::move(exps)) {
    if (base_.size() != exps_.size())
        throw domain_error("ExponentVector: base/exponent length mismatch");
}

Int ExponentVector::value() const {
    Int r = 1;
    Int pw;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(base_[i]), exps_[i]);
        r *= pw;
    }
    return r;
}

std::uint32_t ExponentVector::max_exponent() const {
    std::uint32_t m = 0;
    for (std::uint32_t e : exps_) m = std::max(m, e);
    return m;
}

Factorization s_part(const Int& n, const PrimeSet& S) {
    if (n == 0) throw domain_error("s_part: zero input");
    Factorization f;
    f.n = n;
    f.sign = sgn(n) < 0 ? -1 : 1;
    Int m;
    mpz_abs(m.get_mpz_t(), n.get_mpz_t());
    std::vector<std::uint32_t> exps(S.size(), 0);
    Int p;
    for (std::size_t i = 0; i < S.size(); ++i) {
        p = static_cast<unsigned long>(S[i]);
        exps[i] = static_cast<std::uint32_t>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
    }
    f.spart = ExponentVector(S, std::move(exps));
    f.cofactor = m;
    return f;
}

unsigned long valuation(const Int& n, std::uint64_t p) {
    if (n == 0) throw domain_error("valuation: zero input");
    if (!is_prime_u64(p)) throw domain_error("valuation: modulus " + std::to_string(p) + " is not prime");
    Int m, pp(static_cast<unsigned long>(p));
    return mpz_remove(m.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
}

std::vector<std::pair<Int, unsigned>> factorize(const Int& n, const FactorBudget& budget) {
    if (n == 0) throw domain_error("factorize: zero input");
    Int m;
    mpz_abs(m.get_mpz_t(), n.get_mpz_t());
    std::map<Int, unsigned> fac;

    auto divide_out = [&m, &fac](const Int& p) {
        Int reduced;
        unsigned e = static_cast<unsigned>(mpz_remove(reduced.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
        if (e) {
            fac[p] += e;
            m = reduced;
        }
    };

    std::uint64_t d = 2;
    divide_out(Int(2));
    divide_out(Int(3));
    for (d = 5; d <= budget.trial_bound && m > 1; d += 6) {
        Int dd(static_cast<unsigned long>(d));
        if (dd * dd > m) break;
        divide_out(dd);
        dd = static_cast<unsigned long>(d + 2);
        divide_out(dd);
    }

    if (m > 1) {
        Int db(static_cast<unsigned long>(budget.trial_bound));
        std::vector<Int> pending;
        pending.push_back(m);
        std::uint64_t steps = budget.rho_iterations;
        while (!pending.empty()) {
            Int c = pending.back();
            pending.pop_back();
            // survived trial division, so its least factor exceeds min(d, trial_bound)
            Int least(static_cast<unsigned long>(std::min<std::uint64_t>(d, budget.trial_bound)));
            if (c <= least * least) {
                fac[c] += 1;
                continue;
            }
            switch (certified_prime(c)) {
            case Certainty::prime:
                fac[c] += 1;
                break;
            case Certainty::unknown:
                throw incomplete_factorization(
                    "cofactor " + c.get_str() + " exceeds the deterministic primality range");
            case Certainty::composite: {
                Int f = rho_brent(c, steps);
                assert(f > 1 && f < c);
                pending.push_back(f);
                pending.push_back(c / f);
                break;
            }
            }
        }
    }

    std::vector<std::pair<Int, unsigned>> out(fac.begin(), fac.end());
    return out;
}

Int gpf(const Int& n, const FactorBudget& budget) {
    if (n == 0) throw domain_error("gpf: zero input");
    if (n == 1 || n == -1) return 1; // P[+-1] = 1
    auto fac = factorize(n, budget);
    return fac.back().first;
}

bool is_coprime_to_set(const Int& x, const PrimeSet& T) {
    Int g;
    Int prod = T.product();
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), prod.get_mpz_t());
    return g == 1;
}

} // namespace sunitgap::arith
