#include "alphaforge/census.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "alphaforge/sieve.hpp"

namespace alphaforge::census {

u64 psi_exact(u64 x, u64 B, const ParallelConfig& cfg, u64 limit) {
    if (x > limit) throw std::out_of_range("psi_exact: x beyond sieve limit");
    if (x == 0) return 0;
    if (B >= x) return x;  // every n <= x is x-smooth
    if (B < 2) return 1;   // only n = 1
    if (B > 4'000'000'000ull) throw std::out_of_range("psi_exact: B beyond sieve limit");
    auto primes = primes_up_to(static_cast<u32>(B));
    u64 total = 0;
    parallel_ordered_segments<u64>(
        1, x + 1, cfg,
        [&](u64 lo, u64 hi) -> u64 {
            std::vector<u64> res(hi - lo);
            std::iota(res.begin(), res.end(), lo);
            for (u32 p : primes) {
                u64 pe = p;
                for (;;) {
                    u64 start = ((lo + pe - 1) / pe) * pe;
                    for (u64 m = start; m < hi; m += pe) res[m - lo] /= p;
                    if (pe > (hi - 1) / p) break;
                    pe *= p;
                }
            }
            u64 cnt = 0;
            for (u64 v : res) cnt += (v == 1);
            return cnt;
        },
        [&](const u64& c) { total += c; });
    return total;
}

namespace {

struct SievePrime {
    u64 p;
    u64 slope1, slope2;  // root(s) of F(a,b)=0 mod p as a = slope*b
    int nslopes;         // 0: skip (inert), -1: special (p | 2A), 1 or 2 otherwise
};

struct FormCoeffs {
    i64 A, B, C;  // F(a,b) = A a^2 + B ab + C b^2
    i64 D;        // B^2 - 4AC < 0
};

FormCoeffs check_form(const BinaryForm& F, u64 norm_bound) {
    if (F.degree() != 2)
        throw std::domain_error("census_form: quadratic form required");
    const auto& c = F.coeffs();
    if (!c[0].fits_slong_p() || !c[1].fits_slong_p() || !c[2].fits_slong_p())
        throw std::out_of_range("census_form: coefficients beyond 64-bit budget");
    FormCoeffs fc;
    fc.A = c[2].get_si();  // coefficient of a^2 (X1^2)
    fc.B = c[1].get_si();
    fc.C = c[0].get_si();
    i128 disc = (i128)fc.B * fc.B - 4 * (i128)fc.A * fc.C;
    if (fc.A <= 0 || disc >= 0)
        throw std::domain_error("census_form: form must be positive definite");
    if (disc < -(i128(1) << 62))
        throw std::out_of_range("census_form: discriminant beyond 64-bit budget");
    fc.D = static_cast<i64>(disc);
    if (norm_bound > u64(i64(1) << 62))
        throw std::out_of_range("census_form: norm bound beyond evaluation budget");
    // worst-case |(A a + B b) a| + |C b^2| inside the region must stay in i64
    double x = static_cast<double>(norm_bound);
    double ad = static_cast<double>(fc.A), cd = static_cast<double>(fc.C);
    double bd = std::abs(static_cast<double>(fc.B)), dd = static_cast<double>(-fc.D);
    double amax = 2.0 * std::sqrt(cd * x / dd) + 8.0;
    double bmax = 2.0 * std::sqrt(ad * x / dd) + 8.0;
    double worst = (ad * amax + bd * bmax) * amax + cd * bmax * bmax;
    if (worst > 4.0e18)
        throw std::out_of_range("census_form: evaluation budget exceeded");
    return fc;
}

u64 mod_u(i64 v, u64 p) {
    i64 r = v % static_cast<i64>(p);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(p) : r);
}

}  // namespace

CensusResult census_form(const BinaryForm& F, u64 norm_bound, u64 smooth_bound,
                         const ParallelConfig& cfg, const CensusOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    FormCoeffs fc = check_form(F, norm_bound);
    const i64 x = static_cast<i64>(norm_bound);
    const i64 A = fc.A, Bc = fc.B, C = fc.C, D = fc.D;

    // b range: |D| b^2 <= 4 A x
    i64 bmax = static_cast<i64>(std::sqrt(4.0 * static_cast<double>(A) *
                                          static_cast<double>(x) /
                                          static_cast<double>(-D))) + 2;

    // per-prime preprocessing: roots of F(a,b) = 0 mod p are a = slope * b.
    // No sieving needed when B >= x (everything in range is smooth).
    std::vector<SievePrime> sp;
    if (smooth_bound >= 2 && smooth_bound < norm_bound) {
        if (smooth_bound > 100'000'000ull)
            throw std::out_of_range("census_form: smooth bound beyond sieve budget");
        auto primes = primes_up_to(static_cast<u32>(smooth_bound));
        sp.reserve(primes.size());
        for (u32 pp : primes) {
            u64 p = pp;
            SievePrime s{p, 0, 0, 0};
            if (p == 2 || mod_u(A, p) == 0) {
                s.nslopes = -1;  // handled per row
            } else {
                u64 d = mod_u(D, p);
                u64 inv2a = invmod(mod_u(2 * (A % static_cast<i64>(p)), p), p);
                u64 negb = mod_u(-Bc, p);
                if (d == 0) {
                    s.nslopes = 1;
                    s.slope1 = mulmod(negb, inv2a, p);
                } else if (jacobi_u64(d, p) == 1) {
                    u64 r = sqrtmod(d, p);
                    s.nslopes = 2;
                    s.slope1 = mulmod(addmod(negb, r, p), inv2a, p);
                    s.slope2 = mulmod(submod(negb, r, p), inv2a, p);
                } else {
                    s.nslopes = 0;  // inert: p never divides F on coprime pairs
                }
            }
            sp.push_back(s);
        }
    }

    struct RowCounts {
        u64 total = 0, smooth = 0;
    };

    ParallelConfig row_cfg = cfg;
    if (opt.smooth_hook) row_cfg.workers = 1;

    auto do_row = [&](i64 b, std::vector<u64>& vals) -> RowCounts {
        RowCounts rc;
        // a interval: A a^2 + (B b) a + (C b^2 - x) <= 0
        i128 disc_row = (i128)D * b * b + 4 * (i128)A * x;
        if (disc_row < 0) return rc;
        double sq = std::sqrt(static_cast<double>(disc_row));
        i64 lo = static_cast<i64>(std::floor((-static_cast<double>(Bc) * b - sq) /
                                             (2.0 * A))) - 2;
        i64 hi = static_cast<i64>(std::ceil((-static_cast<double>(Bc) * b + sq) /
                                            (2.0 * A))) + 2;
        auto val = [&](i64 a) -> i64 { return (A * a + Bc * b) * a + C * b * b; };
        while (lo <= hi && val(lo) > x) ++lo;
        while (lo <= hi && val(hi) > x) --hi;
        if (lo > hi) return rc;
        // exact endpoints: extend in case the float guess was too tight
        while (val(lo - 1) <= x) --lo;
        while (val(hi + 1) <= x) ++hi;

        const size_t len = static_cast<size_t>(hi - lo + 1);
        vals.resize(len);
        for (size_t i = 0; i < len; ++i) {
            i64 a = lo + static_cast<i64>(i);
            vals[i] = static_cast<u64>(val(a));
        }

        auto divide_out = [&](size_t idx, u64 p) {
            u64 v = vals[idx];
            if (v == 0) return;
            while (v % p == 0) v /= p;
            vals[idx] = v;
        };
        auto sieve_root = [&](u64 p, u64 root_a) {
            u64 lo_mod = mod_u(lo, p);
            u64 off = root_a >= lo_mod ? root_a - lo_mod : root_a + p - lo_mod;
            for (size_t i = off; i < len; i += p) divide_out(i, p);
        };

        for (const auto& s : sp) {
            const u64 p = s.p;
            if (s.nslopes == 0) continue;
            if (s.nslopes == -1) {
                // p = 2 or p | A: find roots of the row polynomial directly
                u64 a2 = mod_u(A, p), b2 = mod_u(Bc, p), c2 = mod_u(C, p);
                u64 bm = mod_u(b, p);
                u64 bb = mulmod(b2, bm, p);                  // coefficient of a
                u64 cc = mulmod(c2, mulmod(bm, bm, p), p);   // constant
                if (a2 == 0) {
                    if (bb == 0) {
                        if (cc == 0)  // p divides the whole row
                            for (size_t i = 0; i < len; ++i) divide_out(i, p);
                        continue;
                    }
                    u64 negc = cc ? p - cc : 0;
                    sieve_root(p, mulmod(negc, invmod(bb, p), p));
                    continue;
                }
                // quadratic mod small p: scan residues
                for (u64 r = 0; r < p; ++r) {
                    u64 v = addmod(mulmod(addmod(mulmod(a2, r, p), bb, p), r, p), cc, p);
                    if (v == 0) sieve_root(p, r);
                }
                continue;
            }
            u64 bm = mod_u(b, p);
            sieve_root(p, mulmod(s.slope1, bm, p));
            if (s.nslopes == 2) sieve_root(p, mulmod(s.slope2, bm, p));
        }

        u64 ab = static_cast<u64>(b < 0 ? -b : b);
        for (size_t i = 0; i < len; ++i) {
            i64 a = lo + static_cast<i64>(i);
            u64 aa = static_cast<u64>(a < 0 ? -a : a);
            if (std::gcd(aa, ab) != 1) continue;
            ++rc.total;
            bool smooth = smooth_bound >= norm_bound || vals[i] == 1;
            if (smooth) {
                ++rc.smooth;
                if (opt.smooth_hook) opt.smooth_hook(a, b, static_cast<u64>(val(a)));
            }
        }
        return rc;
    };

    u64 total = 0, smooth = 0;
    parallel_ordered_segments<RowCounts>(
        0, static_cast<u64>(2 * bmax + 1),
        ParallelConfig{row_cfg.workers, 64},
        [&](u64 s, u64 e) {
            RowCounts rc;
            std::vector<u64> scratch;
            for (u64 i = s; i < e; ++i) {
                i64 b = static_cast<i64>(i) - bmax;
                RowCounts r = do_row(b, scratch);
                rc.total += r.total;
                rc.smooth += r.smooth;
            }
            return rc;
        },
        [&](const RowCounts& rc) {
            total += rc.total;
            smooth += rc.smooth;
        });

    CensusResult out;
    out.norm_bound = norm_bound;
    out.smooth_bound = smooth_bound;
    out.pairs_total = total;
    out.pairs_smooth = smooth;
    out.ratio = total ? static_cast<double>(smooth) / static_cast<double>(total) : 0.0;
    out.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

Theorem42Report theorem42_experiment(const Polynomial& f, u64 norm_bound,
                                     u64 smooth_bound,
                                     const alpha::AlphaEstimate& alpha_estimate,
                                     const dickman::RhoTable& table,
                                     const ParallelConfig& cfg, u64 psi_limit) {
    if (f.degree() != 2)
        throw std::domain_error("theorem42_experiment: quadratic polynomial required");
    if (!polyform::is_fundamental(f.discriminant()))
        throw std::domain_error("theorem42_experiment: fundamental discriminant required");
    if (!f.is_primitive())
        throw std::domain_error("theorem42_experiment: primitive polynomial required");

    Theorem42Report rep;
    rep.alpha = alpha_estimate;
    polyform::BinaryForm F(f);
    rep.census = census_form(F, norm_bound, smooth_bound, cfg);
    rep.empirical_ratio = rep.census.ratio;

    const double a = alpha_estimate.partial_sum;
    const double xd = static_cast<double>(norm_bound);
    const double Bd = static_cast<double>(smooth_bound);
    rep.predicted_saias = dickman::predicted_smooth_ratio(table, a, xd, Bd);
    rep.gap_abs_saias = rep.empirical_ratio - rep.predicted_saias;
    rep.gap_rel_saias = rep.gap_abs_saias / rep.predicted_saias;

    double xs = xd * std::exp(a);
    if (xs <= static_cast<double>(psi_limit)) {
        u64 xsi = static_cast<u64>(std::llround(xs));
        double psi = static_cast<double>(psi_exact(xsi, smooth_bound, cfg, psi_limit));
        rep.predicted_exact_sieve = psi / xs;
        rep.gap_abs_exact = rep.empirical_ratio - *rep.predicted_exact_sieve;
        rep.gap_rel_exact = rep.gap_abs_exact / *rep.predicted_exact_sieve;
    }
    return rep;
}

}  // namespace alphaforge::census
