#include "sunitgap/search.hpp"

#include <algorithm>
#include <cassert>
#include <exception>
#include <functional>
#include <thread>

#include "sunitgap/real.hpp"

namespace sunitgap::search {

namespace {

// Visit every exponent tuple with e_i <= cap_i and running value <= bound
// (bound < 0 disables pruning), in lexicographic order.  The visitor gets
// the tuple and its exact value.
template <typename F>
void walk_exponents(const arith::PrimeSet& T, const std::vector<std::uint32_t>& caps,
                    const Int& bound, F&& visit) {
    std::vector<std::uint32_t> exps(T.size(), 0);
    std::vector<Int> partial(T.size() + 1, Int(1));

    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == T.size()) {
            visit(exps, partial[T.size()]);
            return;
        }
        Int v = partial[i];
        for (std::uint32_t e = 0; e <= caps[i]; ++e) {
            if (bound >= 0 && v > bound) break;
            exps[i] = e;
            partial[i + 1] = v;
            self(self, i + 1);
            v *= Int(static_cast<unsigned long>(T[i]));
        }
        exps[i] = 0;
    };
    rec(rec, 0);
}

bool record_order(const SolutionRecord& lhs, const SolutionRecord& rhs) {
    if (lhs.x != rhs.x) return lhs.x < rhs.x;
    return lhs.a < rhs.a;
}

void check_window(const arith::PrimeSet& S, const arith::PrimeSet& T, const SearchWindow& w) {
    if (T.empty()) throw domain_error("search: T must be non-empty");
    if (!S.disjoint_with(T)) throw domain_error("search: S and T must be disjoint");
    if (w.x_max < 1) throw domain_error("search: x_max must be positive");
    if (w.exp_max.size() != T.size())
        throw domain_error("search: exp_max must have one entry per T prime");
    Int size = w.size(T.size());
    if (size > w.budget)
        throw budget_error("search: window size " + size.get_str() + " exceeds budget " +
                               w.budget.get_str(),
                           size.get_str());
}

// Shard 1..x_max into `workers` contiguous chunks and run `body(lo, hi)`
// on each; exceptions propagate after join.
void shard_x_range(const Int& x_max, unsigned workers, const std::function<void(Int, Int, unsigned)>& body) {
    if (workers <= 1 || x_max < 64) {
        body(1, x_max, 0);
        return;
    }
    unsigned n = workers;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(n);
    Int chunk = (x_max + n - 1) / n;
    for (unsigned t = 0; t < n; ++t) {
        Int lo = Int(t) * chunk + 1;
        Int hi = Int(t + 1) * chunk;
        if (hi > x_max) hi = x_max;
        if (lo > hi) break;
        pool.emplace_back([&, lo, hi, t] {
            try {
                body(lo, hi, t);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace

Int SearchWindow::size(std::size_t t_primes) const {
    Int s = x_max;
    for (std::size_t i = 0; i < t_primes && i < exp_max.size(); ++i)
        s *= Int(static_cast<unsigned long>(exp_max[i]) + 1);
    return s;
}

DatasetSummary Dataset::summary() const {
    DatasetSummary s;
    s.records = records.size();
    s.skipped_zero_delta = skipped_zero_delta;
    s.skipped_noncoprime = skipped_noncoprime;
    for (const auto& r : records) {
        if (r.ratio) {
            if (!s.max_ratio || *r.ratio > *s.max_ratio) s.max_ratio = r.ratio;
            double omr = 1.0 - *r.ratio;
            if (!s.min_one_minus_ratio || omr < *s.min_one_minus_ratio) s.min_one_minus_ratio = omr;
        }
        if (!s.min_gpf || r.gpf < *s.min_gpf) s.min_gpf = r.gpf;
    }
    return s;
}

Dataset enumerate(const arith::PrimeSet& S, const arith::PrimeSet& T, const SearchWindow& w,
                  unsigned workers, const arith::FactorBudget& fb) {
    check_window(S, T, w);

    Dataset ds;
    ds.S = S;
    ds.T = T;
    ds.window = w;

    const Int tprod = T.product();
    struct Shard {
        std::vector<SolutionRecord> records;
        std::size_t zero = 0, noncoprime = 0;
    };
    std::vector<Shard> shards(std::max(1u, workers));

    shard_x_range(w.x_max, workers, [&](Int lo, Int hi, unsigned idx) {
        Shard& sh = shards[idx];
        Int g, xsq;
        for (Int x = lo; x <= hi; ++x) {
            if (w.require_coprime) {
                mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), tprod.get_mpz_t());
                if (g != 1) {
                    sh.noncoprime += 1;
                    continue;
                }
            }
            xsq = x * x;
            walk_exponents(T, w.exp_max, Int(-1), [&](const std::vector<std::uint32_t>& a, const Int& n) {
                Int delta = xsq - n;
                if (delta == 0) {
                    if (!w.require_nonzero)
                        throw domain_error("enumerate: zero delta at x = " + x.get_str() +
                                           " with require_nonzero disabled");
                    sh.zero += 1;
                    return;
                }
                SolutionRecord rec;
                rec.x = x;
                rec.a = a;
                rec.n_value = n;
                rec.delta = delta;
                arith::Factorization f = arith::s_part(delta, S);
                rec.spart_value = f.spart_value();
                rec.cofactor = f.cofactor;
                rec.gpf = arith::gpf(delta, fb);
                Int dabs;
                mpz_abs(dabs.get_mpz_t(), delta.get_mpz_t());
                if (dabs >= 2)
                    rec.ratio = real::log_abs_mpz(rec.spart_value) / real::log_abs_mpz(delta);
                sh.records.push_back(std::move(rec));
            });
        }
    });

    for (auto& sh : shards) {
        ds.records.insert(ds.records.end(), std::make_move_iterator(sh.records.begin()),
                          std::make_move_iterator(sh.records.end()));
        ds.skipped_zero_delta += sh.zero;
        ds.skipped_noncoprime += sh.noncoprime;
    }
    std::sort(ds.records.begin(), ds.records.end(), record_order);
    return ds;
}

std::vector<FixedRhsSolution> solve_fixed_rhs(const arith::PrimeSet& T, const Int& m,
                                              const Int& x_max, std::uint32_t exp_max) {
    if (m == 0) throw domain_error("solve_fixed_rhs: m must be nonzero");
    if (T.empty()) throw domain_error("solve_fixed_rhs: T must be non-empty");
    if (x_max < 1) throw domain_error("solve_fixed_rhs: x_max must be positive");

    Int bound = x_max * x_max - m; // N = x^2 - m <= x_max^2 - m
    std::vector<FixedRhsSolution> out;
    if (bound < 1) return out;

    std::vector<std::uint32_t> caps(T.size(), exp_max);
    Int t, x;
    walk_exponents(T, caps, bound, [&](const std::vector<std::uint32_t>& a, const Int& n) {
        t = n + m;
        if (t < 1) return;
        if (!mpz_perfect_square_p(t.get_mpz_t())) return;
        mpz_sqrt(x.get_mpz_t(), t.get_mpz_t());
        if (x <= x_max) out.push_back({x, a});
    });

    std::sort(out.begin(), out.end(), [](const FixedRhsSolution& l, const FixedRhsSolution& r) {
        if (l.x != r.x) return l.x < r.x;
        return l.a < r.a;
    });
    return out;
}

std::vector<SUnitSolution> solve_sunit_rhs(const arith::PrimeSet& S, const arith::PrimeSet& T,
                                           const SearchWindow& w, unsigned workers) {
    check_window(S, T, w);

    const Int tprod = T.product();
    std::vector<std::vector<SUnitSolution>> shards(std::max(1u, workers));

    shard_x_range(w.x_max, workers, [&](Int lo, Int hi, unsigned idx) {
        auto& out = shards[idx];
        Int g, xsq;
        for (Int x = lo; x <= hi; ++x) {
            if (w.require_coprime) {
                mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), tprod.get_mpz_t());
                if (g != 1) continue;
            }
            xsq = x * x;
            walk_exponents(T, w.exp_max, Int(-1), [&](const std::vector<std::uint32_t>& a, const Int& n) {
                Int delta = xsq - n;
                if (delta == 0) return;
                arith::Factorization f = arith::s_part(delta, S);
                if (f.cofactor != 1) return;
                out.push_back({x, a, f.spart.exps(), f.sign});
            });
        }
    });

    std::vector<SUnitSolution> out;
    for (auto& sh : shards)
        out.insert(out.end(), std::make_move_iterator(sh.begin()), std::make_move_iterator(sh.end()));
    std::sort(out.begin(), out.end(), [](const SUnitSolution& l, const SUnitSolution& r) {
        if (l.x != r.x) return l.x < r.x;
        return l.a < r.a;
    });
    return out;
}

std::pair<double, SolutionRecord> empirical_exponent(const Dataset& ds, const Int& min_abs_delta) {
    if (min_abs_delta < 2) throw domain_error("empirical_exponent: min_abs_delta must be >= 2");
    const SolutionRecord* best = nullptr;
    Int dabs;
    for (const auto& r : ds.records) {
        mpz_abs(dabs.get_mpz_t(), r.delta.get_mpz_t());
        if (dabs < min_abs_delta || !r.ratio) continue;
        if (!best || *r.ratio > *best->ratio) best = &r;
    }
    if (!best) throw domain_error("empirical_exponent: no records with |delta| >= " + min_abs_delta.get_str());
    return {*best->ratio, *best};
}

} // namespace sunitgap::search
