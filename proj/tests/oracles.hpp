// Test-only oracles, independent of the library's implementation paths.
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "alphaforge/numeric.hpp"

namespace oracles {

using alphaforge::i64;
using alphaforge::u64;

// ---- exhaustive root-count scan mod p^k (single full pass, no lifting) ----
inline u64 scan_affine_roots(const std::vector<mpz_class>& coeffs, u64 p, unsigned k) {
    u64 pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= p;
    std::vector<u64> c(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] = mpz_fdiv_ui(coeffs[i].get_mpz_t(), pk);
    u64 count = 0;
    for (u64 a = 0; a < pk; ++a) {
        u64 acc = 0;
        for (size_t i = c.size(); i-- > 0;)
            acc = (u64)(((unsigned __int128)acc * a + c[i]) % pk);
        if (acc == 0) ++count;
    }
    return count;
}

// projective part: b = 0 mod p with F(1,b) = 0 mod p^k (reversed coefficients)
inline u64 scan_projective_roots(const std::vector<mpz_class>& coeffs, u64 p, unsigned k) {
    u64 pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= p;
    std::vector<u64> c(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i)
        c[coeffs.size() - 1 - i] = mpz_fdiv_ui(coeffs[i].get_mpz_t(), pk);
    u64 count = 0;
    for (u64 b = 0; b < pk; b += p) {
        u64 acc = 0;
        for (size_t i = c.size(); i-- > 0;)
            acc = (u64)(((unsigned __int128)acc * b + c[i]) % pk);
        if (acc == 0) ++count;
    }
    return count;
}

inline u64 scan_n_pk(const std::vector<mpz_class>& coeffs, u64 p, unsigned k) {
    return scan_affine_roots(coeffs, p, k) + scan_projective_roots(coeffs, p, k);
}

// ---- resultant via Sylvester matrix + Bareiss fraction-free elimination ----
inline mpz_class sylvester_resultant(const std::vector<mpz_class>& a,
                                     const std::vector<mpz_class>& b) {
    int da = (int)a.size() - 1, db = (int)b.size() - 1;
    int n = da + db;
    if (n == 0) return 1;
    std::vector<std::vector<mpz_class>> M((size_t)n, std::vector<mpz_class>((size_t)n, 0));
    for (int r = 0; r < db; ++r)
        for (int j = 0; j <= da; ++j) M[(size_t)r][(size_t)(r + j)] = a[(size_t)(da - j)];
    for (int r = 0; r < da; ++r)
        for (int j = 0; j <= db; ++j) M[(size_t)(db + r)][(size_t)(r + j)] = b[(size_t)(db - j)];
    mpz_class prev = 1;
    int sign = 1;
    for (int piv = 0; piv < n - 1; ++piv) {
        if (M[(size_t)piv][(size_t)piv] == 0) {
            int swap_row = -1;
            for (int r = piv + 1; r < n; ++r)
                if (M[(size_t)r][(size_t)piv] != 0) { swap_row = r; break; }
            if (swap_row < 0) return 0;
            std::swap(M[(size_t)piv], M[(size_t)swap_row]);
            sign = -sign;
        }
        for (int r = piv + 1; r < n; ++r) {
            for (int cidx = piv + 1; cidx < n; ++cidx) {
                mpz_class v = M[(size_t)piv][(size_t)piv] * M[(size_t)r][(size_t)cidx] -
                              M[(size_t)r][(size_t)piv] * M[(size_t)piv][(size_t)cidx];
                mpz_divexact(M[(size_t)r][(size_t)cidx].get_mpz_t(), v.get_mpz_t(),
                             prev.get_mpz_t());
            }
            M[(size_t)r][(size_t)piv] = 0;
        }
        prev = M[(size_t)piv][(size_t)piv];
    }
    return sign * M[(size_t)(n - 1)][(size_t)(n - 1)];
}

// gcd degree of two integer polynomials via rational Euclid (mpq)
inline int gcd_degree_q(std::vector<mpz_class> az, std::vector<mpz_class> bz) {
    auto to_q = [](const std::vector<mpz_class>& v) {
        std::vector<mpq_class> q(v.size());
        for (size_t i = 0; i < v.size(); ++i) q[i] = v[i];
        return q;
    };
    auto trim = [](std::vector<mpq_class>& v) {
        while (v.size() > 1 && v.back() == 0) v.pop_back();
        if (v.size() == 1 && v[0] == 0) v.clear();
    };
    std::vector<mpq_class> a = to_q(az), b = to_q(bz);
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        while (a.size() >= b.size() && !a.empty()) {
            mpq_class q = a.back() / b.back();
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
            a.pop_back();
            while (a.size() > 1 && a.back() == 0) a.pop_back();
            if (a.size() == 1 && a[0] == 0) { a.clear(); break; }
        }
        std::swap(a, b);
    }
    return a.empty() ? -1 : (int)a.size() - 1;
}

// ---- adaptive Simpson quadrature ----
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double eps) {
    std::function<double(double, double, double, double, double, double)> rec =
        [&](double lo, double hi, double flo, double fm, double fhi, double tol) -> double {
        double mid = 0.5 * (lo + hi);
        double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        double flm = f(lm), frm = f(rm);
        double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
        double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fm);
        double right = (hi - mid) / 6.0 * (fm + 4.0 * frm + fhi);
        if (std::abs(left + right - whole) < 15.0 * tol)
            return left + right + (left + right - whole) / 15.0;
        return rec(lo, mid, flo, flm, fm, tol / 2.0) +
               rec(mid, hi, fm, frm, fhi, tol / 2.0);
    };
    double m = 0.5 * (a + b);
    return rec(a, b, f(a), f(m), f(b), eps);
}

// rho(3) by direct quadrature of the DDE using exact rho on [1,2]:
// rho(3) = (1 - ln 2) - int_2^3 (1 - ln(t-1))/t dt
inline double rho3_quadrature() {
    auto integrand = [](double t) { return (1.0 - std::log(t - 1.0)) / t; };
    return (1.0 - std::log(2.0)) - adaptive_simpson(integrand, 2.0, 3.0, 1e-13);
}

// -zeta'(2)/zeta(2) by Euler-Maclaurin, independent of the Glaisher route
inline double zeta_log_derivative_2() {
    const long N = 2'000'000;
    long double s = 0.0L;
    for (long n = N; n >= 2; --n) {
        long double nn = n;
        s += std::log(nn) / (nn * nn);
    }
    long double Nd = N;
    s += (std::log(Nd) + 1.0L) / Nd;                    // integral tail
    s -= std::log(Nd) / (2.0L * Nd * Nd);               // -f(N)/2
    s -= (1.0L - 2.0L * std::log(Nd)) / (12.0L * Nd * Nd * Nd);  // -f'(N)/12
    long double zeta2 = 1.6449340668482264364724151666L;  // pi^2/6
    return static_cast<double>(s / zeta2);
}

// ---- brute-force census oracle: per-pair trial division ----
struct BruteCensus {
    u64 total = 0, smooth = 0;
};

inline BruteCensus brute_census(i64 A, i64 B, i64 C, u64 x, u64 bound) {
    BruteCensus res;
    i64 D = B * B - 4 * A * C;
    i64 amax = (i64)std::sqrt(4.0 * (double)C * (double)x / (double)(-D)) + 2;
    i64 bmax = (i64)std::sqrt(4.0 * (double)A * (double)x / (double)(-D)) + 2;
    for (i64 b = -bmax; b <= bmax; ++b)
        for (i64 a = -amax; a <= amax; ++a) {
            u64 aa = (u64)(a < 0 ? -a : a), ab = (u64)(b < 0 ? -b : b);
            if (std::gcd(aa, ab) != 1) continue;
            i64 v = (A * a + B * b) * a + C * b * b;
            if (v <= 0 || v > (i64)x) continue;
            ++res.total;
            u64 r = (u64)v;
            for (u64 p = 2; p <= bound && r > 1; ++p) {
                while (r % p == 0) r /= p;
            }
            if (r == 1) ++res.smooth;
        }
    return res;
}

// Gaussian-integer primitive ideal count for D = -4 by direct enumeration:
// ideals of Z[i] of norm n correspond to divisor lattices; enumerate ideals
// (a) generated by a+bi up to units, primitive iff not divisible by any
// rational prime. Small x only.
inline u64 gaussian_primitive_ideals(u64 x) {
    // every nonzero ideal of Z[i] has a unique generator with a > 0, b >= 0
    // (first-quadrant convention, modulo units)
    u64 count = 0;
    for (i64 a = 1; (u64)(a * a) <= x; ++a)
        for (i64 b = 0; (u64)(a * a + b * b) <= x; ++b) {
            // primitive: no rational prime p with p | gcd-as-ideal, i.e. the
            // generator is not divisible by any rational integer > 1 times a
            // unit... (p) | (a+bi) iff p | a and p | b
            u64 g = std::gcd((u64)a, (u64)b);
            bool primitive = true;
            for (u64 p = 2; p <= g; ++p)
                if (g % p == 0) { primitive = false; break; }
            if (primitive) ++count;
        }
    return count;
}

}  // namespace oracles
