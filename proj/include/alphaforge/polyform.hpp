#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "alphaforge/numeric.hpp"

namespace alphaforge::polyform {

// Dense integer polynomial, ascending coefficients, degree >= 1.
// Immutable after construction; the discriminant is computed eagerly by an
// exact subresultant resultant so instances can be shared across threads.
class Polynomial {
  public:
    explicit Polynomial(std::vector<mpz_class> coeffs);

    // Text format: comma-separated ascending coefficients, "1,0,1" = X^2+1.
    static Polynomial parse(const std::string& text);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    const mpz_class& coeff(int i) const { return coeffs_[static_cast<size_t>(i)]; }
    const mpz_class& leading() const { return coeffs_.back(); }
    const mpz_class& constant() const { return coeffs_.front(); }
    const mpz_class& discriminant() const { return disc_; }

    mpz_class operator()(const mpz_class& x) const;
    std::vector<mpz_class> derivative_coeffs() const;
    mpz_class content() const;
    bool is_primitive() const { return content() == 1; }

    // Necessary conditions only: exact for degree <= 2, rational-root search
    // for degree 3 within a divisor budget, true otherwise.
    bool no_rational_root_cheap() const;

    std::string to_string() const;

  private:
    std::vector<mpz_class> coeffs_;
    mpz_class disc_;
};

// Homogenization F(X1,X2) = X2^d f(X1/X2); coefficient i multiplies X1^i X2^(d-i).
class BinaryForm {
  public:
    explicit BinaryForm(const Polynomial& f);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    const mpz_class& lead() const { return coeffs_.back(); }    // F(1,0)
    const mpz_class& trail() const { return coeffs_.front(); }  // F(0,1)

    // Exact F(a,b); takes a 128-bit Horner fast path when the precomputed
    // bound guarantees no overflow.
    mpz_class operator()(const mpz_class& a, const mpz_class& b) const;
    mpz_class operator()(i64 a, i64 b) const;

    std::string to_string() const;

  private:
    std::vector<mpz_class> coeffs_;
    double log2_coeff_bound_;  // log2(sum |c_i|)
};

// Exact resultant of two integer polynomials (ascending coefficients) by the
// subresultant PRS; no floating point anywhere.
mpz_class resultant(std::vector<mpz_class> a, std::vector<mpz_class> b);

// Disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f); degree 1 is defined as 1 so
// the p-not-dividing-Disc branch applies to every prime for linear f.
mpz_class discriminant(const std::vector<mpz_class>& coeffs);

inline mpz_class discriminant(const Polynomial& f) { return f.discriminant(); }
inline BinaryForm homogenize(const Polynomial& f) { return BinaryForm(f); }

inline mpz_class evaluate_form(const BinaryForm& F, const mpz_class& a, const mpz_class& b) {
    return F(a, b);
}

struct Discriminant {
    mpz_class value;
    bool is_fundamental;
};

// True iff D is a fundamental discriminant. Rejects D = 0 and D = 2,3 mod 4.
// Squarefreeness is certified by trial division up to 10^6 plus a perfect-
// power check on the cofactor; a surviving cofactor is treated as squarefree.
bool is_fundamental(const mpz_class& D);
Discriminant classify_discriminant(const mpz_class& D);

}  // namespace alphaforge::polyform
