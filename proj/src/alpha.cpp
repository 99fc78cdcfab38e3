#include "alphaforge/alpha.hpp"

#include <cmath>
#include <stdexcept>

#include "alphaforge/sieve.hpp"

namespace alphaforge::alpha {

namespace {

constexpr double kChebyshevE = 1.01624;  // theta(X) <= e X (Rosser-Schoenfeld)

double log_mpz(const mpz_class& n) {
    // exact enough: mantissa * 2^exp
    signed long exp2;
    double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(std::abs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

// closed form for p not dividing Disc(f)*lc(f)
double regular_value(u64 p, u64 n_p) {
    double pd = static_cast<double>(p);
    return std::log(pd) *
           (1.0 / (pd - 1.0) -
            (static_cast<double>(n_p) / (pd - 1.0)) * (pd / (pd + 1.0)));
}

struct SeriesEval {
    double value = 0.0;
    bool approximate = false;
    double remainder = 0.0;
    rootcount::RootCountProfile profile;
};

// Truncated Prop-2.3 series with geometric-tail closure. k_max starts at
// 2 val_p(Disc)+2 (smallest k with p^k > p^(2 val + 1)) and grows until three
// consecutive counts agree, within the p^k range limit.
SeriesEval lifted_series(const Polynomial& f, u64 p) {
    const mpz_class& D = f.discriminant();
    unsigned v = rootcount::val_p(D, p);
    unsigned k_max = 2 * v + 2;
    const unsigned k_limit = 62;
    auto fits = [&](unsigned k) {
        return static_cast<double>(k) * std::log2(static_cast<double>(p)) <= 62.0;
    };
    // for very large ramified p only a few exponents are representable; the
    // series is then flagged approximate with the Lemma 2.1 remainder bound
    while (k_max > 1 && !fits(k_max)) --k_max;

    rootcount::RootCountProfile prof =
        rootcount::profile(f, p, k_max, rootcount::LiftPolicy::force_lift);
    auto stabilized = [&]() {
        size_t n = prof.counts.size();
        return n >= 3 && prof.counts[n - 1] == prof.counts[n - 2] &&
               prof.counts[n - 2] == prof.counts[n - 3];
    };
    while (!stabilized() && prof.counts.size() < k_limit &&
           fits(static_cast<unsigned>(prof.counts.size()) + 1)) {
        unsigned k = static_cast<unsigned>(prof.counts.size()) + 1;
        prof.counts.push_back(rootcount::n_pk(f, p, k, rootcount::LiftPolicy::force_lift));
    }

    double pd = static_cast<double>(p);
    KahanSum S;
    double pk = 1.0;
    for (u64 c : prof.counts) {
        pk *= pd;
        S.add(static_cast<double>(c) / pk);
    }
    SeriesEval out;
    if (stabilized()) {
        // close the geometric tail with the stabilized count
        double c = static_cast<double>(prof.counts.back());
        S.add(c / (pk * (pd - 1.0)));
    } else {
        out.approximate = true;
        // Lemma 2.1: n_{p^k} <= 2 deg(f) p^(min(2v,k)); k > K here has k > 2v
        double bound = 2.0 * f.degree() * std::pow(pd, 2.0 * v);
        out.remainder = std::log(pd) * (pd / (pd + 1.0)) * bound / (pk * (pd - 1.0));
    }
    out.value = std::log(pd) * (1.0 / (pd - 1.0) - (pd / (pd + 1.0)) * S.value());
    out.profile = std::move(prof);
    return out;
}

}  // namespace

FieldConstants field_constants(int n_K, const mpz_class& disc_magnitude) {
    FieldConstants fc;
    fc.n_K = n_K;
    fc.disc_magnitude = disc_magnitude;
    double ld = log_mpz(disc_magnitude);
    fc.a_K = 4781.0 / 96.0 * ld + 58681.0 / 113.0 * n_K;
    fc.b_K = 23.0 / 3.0 * ld + 68.0 / 3.0 * n_K;
    fc.c_K = 863.0 / 31.0 * n_K;
    return fc;
}

LocalAlpha alpha_p(const Polynomial& f, u64 p) {
    const mpz_class& D = f.discriminant();
    if (D == 0) throw std::domain_error("alpha_p: Disc(f) = 0");
    LocalAlpha out;
    out.p = p;
    bool regular = !mpz_divisible_ui_p(D.get_mpz_t(), p) &&
                   !mpz_divisible_ui_p(f.leading().get_mpz_t(), p);
    if (regular) {
        if (f.degree() == 2 && p > 2) {
            // Kronecker fast path: n_p = 1 + (D/p)
            u64 d_mod = mpz_fdiv_ui(D.get_mpz_t(), p);
            int chi = jacobi_u64(d_mod, p);
            out.value = regular_value(p, static_cast<u64>(1 + chi));
            out.method = Method::quadratic_field;
            return out;
        }
        u64 n = rootcount::count_roots_mod_p(f, p);
        out.value = regular_value(p, n);
        out.method = Method::regular_closed_form;
        return out;
    }
    SeriesEval ev = lifted_series(f, p);
    out.value = ev.value;
    out.method = Method::lifted_series;
    out.approximate = ev.approximate;
    out.remainder_bound = ev.remainder;
    out.profile = std::move(ev.profile);
    return out;
}

namespace {
mpq_class make_rational(const mpz_class& num, const mpz_class& den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}
}  // namespace

mpq_class exact_cont_p(const Polynomial& f, u64 p) {
    const mpz_class& D = f.discriminant();
    if (D == 0) throw std::domain_error("exact_cont_p: Disc(f) = 0");
    mpq_class S(0);
    mpz_class pz(static_cast<unsigned long>(p));
    bool regular = !mpz_divisible_ui_p(D.get_mpz_t(), p) &&
                   !mpz_divisible_ui_p(f.leading().get_mpz_t(), p);
    if (regular) {
        u64 n = rootcount::count_roots_mod_p(f, p);
        // sum n/p^k = n/(p-1)
        S = make_rational(mpz_class(static_cast<unsigned long>(n)), pz - 1);
    } else {
        unsigned v = rootcount::val_p(D, p);
        unsigned k_max = 2 * v + 2;
        while (k_max > 1 &&
               static_cast<double>(k_max) * std::log2(static_cast<double>(p)) > 62.0)
            --k_max;
        auto prof = rootcount::profile(f, p, k_max, rootcount::LiftPolicy::force_lift);
        auto stab = [&]() {
            size_t n = prof.counts.size();
            return n >= 3 && prof.counts[n - 1] == prof.counts[n - 2] &&
                   prof.counts[n - 2] == prof.counts[n - 3];
        };
        while (!stab() &&
               (static_cast<double>(prof.counts.size() + 1)) *
                       std::log2(static_cast<double>(p)) <=
                   62.0) {
            unsigned k = static_cast<unsigned>(prof.counts.size()) + 1;
            prof.counts.push_back(rootcount::n_pk(f, p, k, rootcount::LiftPolicy::force_lift));
        }
        if (!stab())
            throw std::out_of_range("exact_cont_p: series did not stabilize in range");
        mpz_class pk(1);
        for (u64 c : prof.counts) {
            pk *= pz;
            S += make_rational(mpz_class(static_cast<unsigned long>(c)), pk);
        }
        // geometric tail: c_stab / (p^K (p-1))
        S += make_rational(mpz_class(static_cast<unsigned long>(prof.counts.back())),
                           pk * (pz - 1));
    }
    return make_rational(pz, pz + 1) * S;
}

namespace {

// per-prime term dispatch used by alpha_partial
struct PartialContext {
    const Polynomial& f;
    mpz_class D;
    mpz_class lc;
    int degree;

    explicit PartialContext(const Polynomial& poly)
        : f(poly), D(poly.discriminant()), lc(poly.leading()), degree(poly.degree()) {
        if (D == 0) throw std::domain_error("alpha_partial: Disc(f) = 0");
    }

    double term(u64 p) const {
        double pd = static_cast<double>(p);
        if (degree == 1) {
            if (!mpz_divisible_ui_p(lc.get_mpz_t(), p))
                return std::log(pd) / (pd * pd - 1.0);
            return alpha_p(f, p).value;
        }
        if (degree == 2 && p > 2) {
            if (mpz_divisible_ui_p(lc.get_mpz_t(), p)) return alpha_p(f, p).value;
            u64 d_mod = mpz_fdiv_ui(D.get_mpz_t(), p);
            if (d_mod == 0) return alpha_p(f, p).value;
            int chi = jacobi_u64(d_mod, p);
            return regular_value(p, static_cast<u64>(1 + chi));
        }
        return alpha_p(f, p).value;
    }
};

}  // namespace

double alpha_partial(const Polynomial& f, u64 X, const ParallelConfig& cfg) {
    if (X < 2) return 0.0;
    PartialContext ctx(f);
    return parallel_prime_sum(X, cfg, [&](u64 p) { return ctx.term(p); });
}

double tail_bound_RH(u64 X, int n_K, const mpz_class& disc_magnitude, u64 p0) {
    if (n_K < 1) throw std::domain_error("tail_bound_RH: n_K >= 1 required");
    u64 min_X = std::max<u64>(p0, static_cast<u64>(n_K));
    if (X < min_X)
        throw std::domain_error("tail_bound_RH: X >= max(p0, n_K) = " +
                                std::to_string(min_X) + " required");
    FieldConstants fc = field_constants(n_K, disc_magnitude);
    double Xd = static_cast<double>(X);
    double L = std::log(Xd);
    double dK = static_cast<double>(n_K);
    double inner = 3.0 * kChebyshevE * std::sqrt(Xd) / (Xd - 1.0);
    inner += std::pow(Xd, -1.0 / 6.0) * (kChebyshevE * dK / std::log(4.0)) *
             (4.5 + 5.0 * L);
    inner += 3.0 * fc.a_K + 3.0 * kChebyshevE * dK + 4.0 * fc.b_K + 16.0 * fc.c_K +
             (3.0 * fc.b_K + 8.0 * fc.c_K) * L + 3.0 * fc.c_K * L * L;
    return inner / std::sqrt(Xd);
}

AlphaEstimate alpha_certified(const Polynomial& f, u64 X, const ParallelConfig& cfg,
                              std::optional<ExplicitField> field) {
    int n_K;
    mpz_class disc_mag;
    u64 p0;
    if (field) {
        n_K = field->n_K;
        disc_mag = field->disc_magnitude;
        p0 = field->p0;
    } else if (f.degree() == 1) {
        // alpha(g) = alpha(X) for primitive linear g: K = Q, n_{p^k} = 1 always
        if (!f.is_primitive())
            throw std::domain_error(
                "alpha_certified: linear polynomial must have coprime coefficients "
                "(or pass explicit field parameters)");
        n_K = 1;
        disc_mag = 1;
        p0 = 2;
    } else if (f.degree() == 2) {
        const mpz_class& D = f.discriminant();
        if (D == 0 || !polyform::is_fundamental(D))
            throw std::domain_error(
                "alpha_certified: quadratic must have fundamental discriminant "
                "(or pass explicit field parameters)");
        n_K = 2;
        disc_mag = abs(D);
        // cont_p(K) = cont_p(f) for every p when Disc is fundamental, so no
        // Dedekind p0 gate remains; 2 covers the folded index prime.
        p0 = 2;
    } else {
        throw std::domain_error(
            "alpha_certified: explicit (n_K, disc_magnitude, p0) required for degree >= 3");
    }
    u64 min_X = std::max<u64>(p0, static_cast<u64>(n_K));
    if (X < min_X)
        throw std::domain_error("alpha_certified: X >= " + std::to_string(min_X) +
                                " required for this field");
    AlphaEstimate est;
    est.partial_sum = alpha_partial(f, X, cfg);
    est.cutoff_X = X;
    est.field = field_constants(n_K, disc_mag);
    est.p0 = p0;
    est.assumes_RH = true;
    double raw = tail_bound_RH(X, n_K, disc_mag, p0);
    // documented widening: absorb binary64 rounding of the partial sum
    est.tail_bound = raw + 1e-9 * std::abs(est.partial_sum);
    return est;
}

double alpha_linear_exact() {
    // 12 log A - gamma - log(2 pi) = -zeta'(2)/zeta(2)
    return 0.56996099309453280639;
}

}  // namespace alphaforge::alpha
