#include "alphaforge/polyform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "alphaforge/sieve.hpp"

namespace alphaforge::polyform {

namespace {

int deg(const std::vector<mpz_class>& a) { return static_cast<int>(a.size()) - 1; }

bool is_zero(const std::vector<mpz_class>& a) { return a.size() == 1 && a[0] == 0; }

void trim(std::vector<mpz_class>& a) {
    while (a.size() > 1 && a.back() == 0) a.pop_back();
}

std::vector<mpz_class> derivative_of(const std::vector<mpz_class>& a) {
    std::vector<mpz_class> d;
    d.reserve(a.size() > 1 ? a.size() - 1 : 1);
    for (size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<long>(i));
    if (d.empty()) d.emplace_back(0);
    trim(d);
    return d;
}

mpz_class poly_content(const std::vector<mpz_class>& a) {
    mpz_class g = 0;
    for (const auto& c : a) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, deg a >= deg b.
std::vector<mpz_class> prem(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
    const int db = deg(b);
    const mpz_class& lb = b.back();
    int e = deg(a) - db + 1;
    while (!is_zero(a) && deg(a) >= db) {
        int d = deg(a);
        mpz_class q = a.back();
        for (int i = 0; i < d; ++i) a[static_cast<size_t>(i)] *= lb;
        for (int i = 0; i < db; ++i)
            a[static_cast<size_t>(d - db + i)] -= q * b[static_cast<size_t>(i)];
        a.pop_back();  // leading term cancels exactly
        trim(a);
        --e;
    }
    if (e > 0 && !is_zero(a)) {
        mpz_class scale;
        mpz_pow_ui(scale.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
        for (auto& c : a) c *= scale;
    }
    return a;
}

void exact_div(std::vector<mpz_class>& a, const mpz_class& d) {
    for (auto& c : a) {
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
        c = q;
    }
}

mpz_class pow_mpz(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

}  // namespace

// Subresultant PRS resultant (Cohen, Alg. 3.3.7). All divisions are exact.
mpz_class resultant(std::vector<mpz_class> a, std::vector<mpz_class> b) {
    trim(a);
    trim(b);
    if (is_zero(a) || is_zero(b)) return 0;
    if (deg(a) == 0 && deg(b) == 0) return 1;
    int sign = 1;
    if (deg(a) < deg(b)) {
        if ((deg(a) & 1) && (deg(b) & 1)) sign = -sign;
        std::swap(a, b);
    }
    mpz_class ca = poly_content(a), cb = poly_content(b);
    exact_div(a, ca);
    exact_div(b, cb);
    mpz_class t = pow_mpz(ca, static_cast<unsigned long>(deg(b))) *
                  pow_mpz(cb, static_cast<unsigned long>(deg(a)));
    mpz_class g = 1, h = 1;
    while (deg(b) > 0) {
        int delta = deg(a) - deg(b);
        if ((deg(a) & 1) && (deg(b) & 1)) sign = -sign;
        std::vector<mpz_class> r = prem(a, b);
        a = std::move(b);
        if (is_zero(r)) return 0;
        mpz_class divisor = g * pow_mpz(h, static_cast<unsigned long>(delta));
        b = std::move(r);
        exact_div(b, divisor);
        g = a.back();
        if (delta > 0) {
            mpz_class num = pow_mpz(g, static_cast<unsigned long>(delta));
            mpz_class den = pow_mpz(h, static_cast<unsigned long>(delta - 1));
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
    }
    mpz_class num = pow_mpz(b[0], static_cast<unsigned long>(deg(a)));
    mpz_class den = deg(a) > 0 ? pow_mpz(h, static_cast<unsigned long>(deg(a) - 1))
                               : mpz_class(1);
    mpz_class res;
    mpz_divexact(res.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return sign * t * res;
}

mpz_class discriminant(const std::vector<mpz_class>& coeffs) {
    std::vector<mpz_class> f = coeffs;
    trim(f);
    int d = deg(f);
    if (d < 1) throw std::domain_error("discriminant: degree must be >= 1");
    if (d == 1) return 1;
    mpz_class res = resultant(f, derivative_of(f));
    mpz_class disc;
    mpz_divexact(disc.get_mpz_t(), res.get_mpz_t(), f.back().get_mpz_t());
    if (((static_cast<long>(d) * (d - 1)) / 2) & 1) disc = -disc;
    return disc;
}

Polynomial::Polynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
    trim(coeffs_);
    if (coeffs_.size() < 2)
        throw std::domain_error("Polynomial: degree must be >= 1");
    disc_ = polyform::discriminant(coeffs_);
}

Polynomial Polynomial::parse(const std::string& text) {
    std::vector<mpz_class> cs;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ',')) {
        size_t b = cur.find_first_not_of(" \t");
        size_t e = cur.find_last_not_of(" \t");
        if (b == std::string::npos)
            throw std::domain_error("Polynomial::parse: empty coefficient in \"" + text + "\"");
        cs.emplace_back(cur.substr(b, e - b + 1));
    }
    if (cs.empty()) throw std::domain_error("Polynomial::parse: no coefficients");
    return Polynomial(std::move(cs));
}

mpz_class Polynomial::operator()(const mpz_class& x) const {
    mpz_class acc = coeffs_.back();
    for (size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

std::vector<mpz_class> Polynomial::derivative_coeffs() const { return derivative_of(coeffs_); }

mpz_class Polynomial::content() const { return poly_content(coeffs_); }

bool Polynomial::no_rational_root_cheap() const {
    int d = degree();
    if (d == 1) return false;
    if (d == 2) {
        if (disc_ < 0) return true;
        return mpz_perfect_square_p(disc_.get_mpz_t()) == 0;
    }
    if (d == 3) {
        mpz_class c0 = constant(), lc = leading();
        if (c0 == 0) return false;
        auto divisors = [](const mpz_class& n, std::vector<u64>& out) {
            mpz_class m = abs(n);
            if (mpz_cmp_ui(m.get_mpz_t(), 1'000'000'000'000ull) > 0) return false;
            u64 v = mpz_get_ui(m.get_mpz_t());
            for (u64 i = 1; i * i <= v; ++i)
                if (v % i == 0) {
                    out.push_back(i);
                    if (i != v / i) out.push_back(v / i);
                }
            return true;
        };
        std::vector<u64> ps, qs;
        if (!divisors(c0, ps) || !divisors(lc, qs)) return true;  // budget: asserted
        if (ps.size() * qs.size() > 1'000'000) return true;
        for (u64 pd : ps)
            for (u64 qd : qs) {
                if (gcd_u64(pd, qd) != 1) continue;
                for (int sgn = 0; sgn < 2; ++sgn) {
                    mpz_class num = sgn ? -mpz_class(pd) : mpz_class(pd);
                    mpz_class qz(qd);
                    mpz_class acc = 0, pp = 1;
                    std::vector<mpz_class> qq(static_cast<size_t>(d) + 1);
                    qq[static_cast<size_t>(d)] = 1;
                    for (int i = d - 1; i >= 0; --i)
                        qq[static_cast<size_t>(i)] = qq[static_cast<size_t>(i + 1)] * qz;
                    for (int i = 0; i <= d; ++i) {
                        acc += coeffs_[static_cast<size_t>(i)] * pp * qq[static_cast<size_t>(i)];
                        pp *= num;
                    }
                    if (acc == 0) return false;
                }
            }
        return true;
    }
    return true;  // degree >= 4: asserted by the user
}

std::string Polynomial::to_string() const {
    std::string s;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) s += ',';
        s += coeffs_[i].get_str();
    }
    return s;
}

BinaryForm::BinaryForm(const Polynomial& f) : coeffs_(f.coeffs()) {
    double sum = 0.0;
    for (const auto& c : coeffs_) sum += std::abs(c.get_d());
    log2_coeff_bound_ = std::log2(sum > 0 ? sum : 1.0);
}

mpz_class BinaryForm::operator()(const mpz_class& a, const mpz_class& b) const {
    const size_t d = coeffs_.size() - 1;
    std::vector<mpz_class> bp(d + 1);  // bp[j] = b^j
    bp[0] = 1;
    for (size_t j = 1; j <= d; ++j) bp[j] = bp[j - 1] * b;
    mpz_class acc = coeffs_[d];
    for (size_t i = d; i-- > 0;) acc = acc * a + coeffs_[i] * bp[d - i];
    return acc;
}

mpz_class BinaryForm::operator()(i64 a, i64 b) const {
    const size_t d = coeffs_.size() - 1;
    double mag = std::max(std::abs(static_cast<double>(a)), std::abs(static_cast<double>(b)));
    if (mag < 2) mag = 2;
    // safe when sum|c_i| * mag^d stays below 2^126
    if (log2_coeff_bound_ + static_cast<double>(d) * std::log2(mag) < 125.0) {
        bool fits = true;
        for (const auto& c : coeffs_)
            if (!c.fits_slong_p()) { fits = false; break; }
        if (fits) {
            std::vector<i128> bpow(d + 1);
            bpow[0] = 1;
            for (size_t j = 1; j <= d; ++j) bpow[j] = bpow[j - 1] * b;
            i128 acc = static_cast<i128>(coeffs_[d].get_si());
            for (size_t i = d; i-- > 0;)
                acc = acc * a + static_cast<i128>(coeffs_[i].get_si()) * bpow[d - i];
            bool neg = acc < 0;
            u128 mag_acc = neg ? static_cast<u128>(-acc) : static_cast<u128>(acc);
            mpz_class out;
            mpz_import(out.get_mpz_t(), 2, -1, 8, 0, 0, &mag_acc);
            if (neg) out = -out;
            return out;
        }
    }
    return (*this)(mpz_class(static_cast<long>(a)), mpz_class(static_cast<long>(b)));
}

std::string BinaryForm::to_string() const {
    std::string s;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) s += ',';
        s += coeffs_[i].get_str();
    }
    return s;
}

bool is_fundamental(const mpz_class& D) {
    if (D == 0) throw std::domain_error("is_fundamental: D must be nonzero");
    mpz_class r4;
    mpz_fdiv_r_ui(r4.get_mpz_t(), D.get_mpz_t(), 4);
    unsigned long rem = mpz_get_ui(r4.get_mpz_t());
    if (rem == 2 || rem == 3)
        throw std::domain_error("is_fundamental: D = 2,3 mod 4 is not a discriminant");

    auto squarefree_cheap = [](mpz_class n) {
        n = abs(n);
        if (n == 1) return true;
        static const std::vector<u32> small = primes_up_to(1'000'000);
        for (u32 p : small) {
            if (mpz_cmp_ui(n.get_mpz_t(), u64(p) * p) < 0) break;
            if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
            }
        }
        if (n == 1) return true;
        if (mpz_perfect_power_p(n.get_mpz_t())) return false;
        return true;  // unfactored non-power cofactor: treated as squarefree
    };

    if (rem == 1) return squarefree_cheap(D);
    mpz_class m = D / 4;
    mpz_class m4;
    mpz_fdiv_r_ui(m4.get_mpz_t(), m.get_mpz_t(), 4);
    unsigned long mr = mpz_get_ui(m4.get_mpz_t());
    if (mr != 2 && mr != 3) return false;
    return squarefree_cheap(m);
}

Discriminant classify_discriminant(const mpz_class& D) {
    return Discriminant{D, is_fundamental(D)};
}

}  // namespace alphaforge::polyform
