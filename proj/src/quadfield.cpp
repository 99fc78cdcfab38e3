#include "alphaforge/quadfield.hpp"

#include <cmath>
#include <stdexcept>

#include "alphaforge/rootcount.hpp"
#include "alphaforge/sieve.hpp"

namespace alphaforge::quadfield {

namespace {
constexpr u64 kClassNumberLimit = 1'000'000'000'000ull;  // |D| enumeration limit
constexpr u64 kPrimitiveCountLimit = 100'000'000ull;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

int kronecker(const mpz_class& D, const mpz_class& n) {
    return mpz_kronecker(D.get_mpz_t(), n.get_mpz_t());
}

int kronecker(const mpz_class& D, u64 n) {
    return mpz_kronecker_ui(D.get_mpz_t(), static_cast<unsigned long>(n));
}

long class_number(const mpz_class& D) {
    if (D >= 0) throw std::domain_error("class_number: D must be negative");
    if (!polyform::is_fundamental(D))
        throw std::domain_error("class_number: D must be a fundamental discriminant");
    mpz_class absD = -D;
    if (mpz_cmp_ui(absD.get_mpz_t(), kClassNumberLimit) > 0)
        throw std::out_of_range("class_number: |D| beyond enumeration limit");
    u64 ad = mpz_get_ui(absD.get_mpz_t());
    // reduced forms (a,b,c): b^2-4ac = D, |b| <= a <= c, b >= 0 if |b|=a or a=c
    long h = 0;
    u64 b = (ad & 1) ? 1 : 0;
    for (; 3 * b * b <= ad; b += 2) {
        u64 n4 = b * b + ad;  // = 4ac
        u64 n = n4 / 4;
        u64 a0 = b ? b : 1;
        for (u64 a = a0; a * a <= n; ++a) {
            if (n % a) continue;
            u64 c = n / a;
            if (b == 0 || a == b || a == c)
                h += 1;
            else
                h += 2;  // both (a, b, c) and (a, -b, c)
        }
    }
    return h;
}

QuadField QuadField::make(const mpz_class& D) {
    if (D >= 0) throw std::domain_error("QuadField: D must be negative");
    if (!polyform::is_fundamental(D))
        throw std::domain_error("QuadField: D must be a fundamental discriminant");
    QuadField K;
    K.D = D;
    K.h = class_number(D);
    K.w = (D == -4) ? 4 : (D == -3 ? 6 : 2);
    mpz_class absD = -D;
    signed long e2;
    double mant = mpz_get_d_2exp(&e2, absD.get_mpz_t());
    double sqrtD = std::sqrt(mant) * std::exp2(static_cast<double>(e2) / 2.0);
    K.lambda_K = 2.0 * kPi * static_cast<double>(K.h) / (K.w * sqrtD);
    return K;
}

double QuadField::gamma0() const { return lambda_K / (kPi * kPi / 6.0); }

u64 n_p_K(const QuadField& K, u64 p) {
    return static_cast<u64>(1 + kronecker(K.D, p));
}

mpq_class cont_p_K(const QuadField& K, u64 p) {
    mpz_class pz(static_cast<unsigned long>(p));
    mpq_class q;
    if (mpz_divisible_ui_p(K.D.get_mpz_t(), p)) {
        q = mpq_class(mpz_class(1), pz + 1);
    } else {
        u64 np = n_p_K(K, p);
        q = mpq_class(pz * static_cast<long>(np), (pz + 1) * (pz - 1));
    }
    q.canonicalize();
    return q;
}

u64 n_p_quadratic_poly(const polyform::Polynomial& f, u64 p) {
    if (f.degree() != 2) throw std::domain_error("n_p_quadratic_poly: degree 2 required");
    if (!polyform::is_fundamental(f.discriminant()))
        throw std::domain_error("n_p_quadratic_poly: Disc(f) must be fundamental");
    return rootcount::n_pk(f, p, 1);
}

u64 primitive_ideal_count(const QuadField& K, u64 x) {
    if (x < 1) throw std::domain_error("primitive_ideal_count: x >= 1 required");
    if (x > kPrimitiveCountLimit)
        throw std::out_of_range("primitive_ideal_count: x beyond memory budget");
    // multiplicative a*(n): split p: 2 for k>=1; inert: only k=0; ramified: k<=1
    std::vector<std::uint16_t> a(x + 1, 1);
    a[0] = 0;
    for_primes(x, [&](u64 p) {
        int chi = kronecker(K.D, p);
        // local(e): split -> 2, inert -> 0, ramified -> (e==1)
        u64 pe = p;
        unsigned e = 1;
        while (pe <= x) {
            std::uint16_t local;
            if (chi == 1)
                local = 2;
            else if (chi == -1)
                local = 0;
            else
                local = (e == 1) ? 1 : 0;
            // multiply entries with val_p(n) == e
            for (u64 m = pe; m <= x; m += pe) {
                if ((m / pe) % p == 0) continue;
                u32 prod = a[m] * local;
                a[m] = static_cast<std::uint16_t>(prod);
            }
            if (pe > x / p) break;
            pe *= p;
            ++e;
        }
    });
    u64 total = 0;
    for (u64 n = 1; n <= x; ++n) total += a[n];
    return total;
}

double remainder_R(const QuadField& K, u64 t, const ParallelConfig& cfg) {
    if (t < 2) return 0.0;
    const mpz_class D = K.D;
    return parallel_prime_sum(t, cfg, [&](u64 p) {
        int chi = kronecker(D, p);
        if (chi == 0) return 0.0;  // ramified: n_p = 1 contributes 0
        return -static_cast<double>(chi) * std::log(static_cast<double>(p));
    });
}

double psi_K(const QuadField& K, u64 t) {
    if (t < 2) return 0.0;
    KahanSum acc;
    for_primes(t, [&](u64 p) {
        int chi = kronecker(K.D, p);
        double lp = std::log(static_cast<double>(p));
        if (chi == 1) {
            // two ideals of norm p; powers p^e <= t each contribute log p
            unsigned e = 0;
            u64 pe = 1;
            while (pe <= t / p) { pe *= p; ++e; }
            acc.add(2.0 * lp * e);
        } else if (chi == -1) {
            // one ideal of norm p^2 contributing 2 log p per power
            unsigned e2 = 0;
            u64 pe = 1;
            u64 p2 = p;
            if (p <= t / p) {
                p2 = p * p;
                while (pe <= t / p2) { pe *= p2; ++e2; }
            }
            acc.add(2.0 * lp * e2);
        } else {
            // ramified: one ideal of norm p
            unsigned e = 0;
            u64 pe = 1;
            while (pe <= t / p) { pe *= p; ++e; }
            acc.add(lp * e);
        }
    });
    return acc.value();
}

}  // namespace alphaforge::quadfield
