#pragma once

#include <cstdint>
#include <vector>

#include "alphaforge/numeric.hpp"

namespace alphaforge {

// Simple primes up to n (inclusive).
std::vector<u32> primes_up_to(u32 n);

// Segmented sieve over [lo, hi): calls fn(p) for every prime in ascending
// order. `base` must contain all primes up to sqrt(hi-1).
template <class Fn>
void sieve_segment(u64 lo, u64 hi, const std::vector<u32>& base, Fn fn) {
    if (hi <= lo) return;
    if (lo < 2) lo = 2;
    std::vector<char> is_comp(hi - lo, 0);
    for (u32 q : base) {
        u64 q2 = u64(q) * q;
        if (q2 >= hi) break;
        u64 start = q2 > lo ? q2 : ((lo + q - 1) / q) * q;
        for (u64 m = start; m < hi; m += q) is_comp[m - lo] = 1;
    }
    for (u64 n = lo; n < hi; ++n)
        if (!is_comp[n - lo]) fn(n);
}

// Sequential enumeration of all primes <= limit.
template <class Fn>
void for_primes(u64 limit, Fn fn) {
    if (limit < 2) return;
    u64 root = 1;
    while ((root + 1) * (root + 1) <= limit) ++root;
    auto base = primes_up_to(static_cast<u32>(root));
    const u64 seg = u64(1) << 20;
    for (u64 lo = 2; lo <= limit; lo += seg) {
        u64 hi = std::min(limit + 1, lo + seg);
        sieve_segment(lo, hi, base, fn);
    }
}

// Parallel prime-indexed sum: deterministic ordered fold over fixed-size
// segments; term(p) must be a pure function.
template <class Term>
double parallel_prime_sum(u64 limit, const ParallelConfig& cfg, Term term) {
    if (limit < 2) return 0.0;
    u64 root = 1;
    while ((root + 1) * (root + 1) <= limit) ++root;
    auto base = primes_up_to(static_cast<u32>(root));
    KahanSum total;
    parallel_ordered_segments<KahanSum>(
        2, limit + 1, cfg,
        [&](u64 s, u64 e) {
            KahanSum acc;
            sieve_segment(s, e, base, [&](u64 p) { acc.add(term(p)); });
            return acc;
        },
        [&](const KahanSum& seg) {
            total.add(seg.sum);
            total.add(seg.comp);
        });
    return total.value();
}

}  // namespace alphaforge
