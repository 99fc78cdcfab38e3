#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

namespace alphaforge {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Neumaier-compensated accumulator. Summation order is part of every
// deterministic-output contract in this project, so all reductions that
// feed reports go through this type in a fixed order.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct ParallelConfig {
    int workers = 0;              // 0 = hardware concurrency
    u64 segment_size = u64(1) << 20;

    int resolved_workers() const {
        if (workers > 0) return workers;
        unsigned hc = std::thread::hardware_concurrency();
        return hc ? static_cast<int>(hc) : 1;
    }
};

// Splits [lo, hi) into fixed-size segments, evaluates `work` on each segment
// in parallel, and folds the results in segment order. The fold order is
// independent of the worker count, which is what makes every parallel sum
// here bit-reproducible.
template <class Result, class Work, class Fold>
void parallel_ordered_segments(u64 lo, u64 hi, const ParallelConfig& cfg,
                               Work work, Fold fold) {
    if (hi <= lo) return;
    const u64 seg = cfg.segment_size ? cfg.segment_size : (u64(1) << 20);
    const u64 nseg = (hi - lo + seg - 1) / seg;
    std::vector<Result> results(nseg);
    std::atomic<u64> next{0};
    int nw = cfg.resolved_workers();
    if (nw > 1 && nseg > 1) {
        auto runner = [&]() {
            for (;;) {
                u64 idx = next.fetch_add(1);
                if (idx >= nseg) break;
                u64 s = lo + idx * seg;
                u64 e = std::min(hi, s + seg);
                results[idx] = work(s, e);
            }
        };
        std::vector<std::thread> pool;
        int spawn = static_cast<int>(std::min<u64>(nw, nseg));
        pool.reserve(spawn);
        for (int i = 0; i < spawn; ++i) pool.emplace_back(runner);
        for (auto& t : pool) t.join();
    } else {
        for (u64 idx = 0; idx < nseg; ++idx) {
            u64 s = lo + idx * seg;
            u64 e = std::min(hi, s + seg);
            results[idx] = work(s, e);
        }
    }
    for (u64 idx = 0; idx < nseg; ++idx) fold(results[idx]);
}

// ---- machine-word modular arithmetic (moduli < 2^63) ----

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

inline u64 gcd_u64(u64 a, u64 b) {
    while (b) { u64 t = a % b; a = b; b = t; }
    return a;
}

// Inverse mod m for gcd(a, m) = 1.
inline u64 invmod(u64 a, u64 m) {
    i64 t = 0, nt = 1;
    i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
    while (nr != 0) {
        i64 q = r / nr;
        i64 tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::domain_error("invmod: not invertible");
    if (t < 0) t += static_cast<i64>(m);
    return static_cast<u64>(t);
}

// Jacobi symbol (a/n) for odd n > 0.
inline int jacobi_u64(u64 a, u64 n) {
    a %= n;
    int result = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            u64 r = n & 7;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

// Tonelli-Shanks square root mod an odd prime p; requires (a/p) = 1.
inline u64 sqrtmod(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if ((p & 3) == 3) return powmod(a, (p + 1) / 4, p);
    u64 q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    u64 z = 2;
    while (jacobi_u64(z, p) != -1) ++z;
    u64 m = s;
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 t2 = t;
        unsigned i = 0;
        while (t2 != 1) { t2 = mulmod(t2, t2, p); ++i; }
        u64 b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

// p^k, throwing when the result would leave the supported range (< 2^62).
inline u64 checked_pow(u64 p, unsigned k) {
    const u64 limit = u64(1) << 62;
    u64 r = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (r > limit / p) throw std::out_of_range("p^k exceeds supported range");
        r *= p;
    }
    return r;
}

}  // namespace alphaforge
