#pragma once

#include <gmpxx.h>

#include "alphaforge/numeric.hpp"
#include "alphaforge/polyform.hpp"

namespace alphaforge::quadfield {

// Imaginary quadratic field Q(sqrt(D)), D a fundamental negative discriminant.
struct QuadField {
    mpz_class D;
    long h = 0;           // class number
    int w = 2;            // unit count: 4 for D=-4, 6 for D=-3, else 2
    double lambda_K = 0;  // residue of zeta_K at 1: 2*pi*h/(w*sqrt(|D|))

    static QuadField make(const mpz_class& D);

    // gamma_0(K) = lambda_K / zeta(2)
    double gamma0() const;
};

// Kronecker symbol (D/n); D = 0,1 mod 4 expected by callers.
int kronecker(const mpz_class& D, const mpz_class& n);
int kronecker(const mpz_class& D, u64 n);

// h(D) by exhaustive enumeration of reduced positive-definite forms
// (|b| <= a <= c, b^2-4ac = D, b >= 0 when |b| = a or a = c).
// Range error for |D| above the enumeration limit (10^12).
long class_number(const mpz_class& D);

// Number of prime ideals of norm exactly p: 1 + chi_D(p).
u64 n_p_K(const QuadField& K, u64 p);

// cont_p(K): 1/(p+1) if p | D, else (p/(p+1)) * n_p(K)/(p-1). Exact rational.
mpq_class cont_p_K(const QuadField& K, u64 p);

// n_p(f) for a quadratic f with fundamental discriminant, computed by root
// counting; equal to n_p(K) by the paper's case analysis (exposed so that
// equality is testable). Domain error if Disc(f) is not fundamental.
u64 n_p_quadratic_poly(const polyform::Polynomial& f, u64 p);

// #{primitive ideals of norm <= x}, by sieving the multiplicative local
// factors (split: 2 for k>=1; inert: k=0 only; ramified: k<=1).
// Range error beyond the memory-budget limit (10^8).
u64 primitive_ideal_count(const QuadField& K, u64 x);

// R(t) = sum_{p<=t} (1 - n_p(K)) log p = -sum chi_D(p) log p.
double remainder_R(const QuadField& K, u64 t, const ParallelConfig& cfg = {});

// psi_K(t) = sum over prime-ideal powers of norm <= t of log N(p), exact,
// used for the Theorem 2.4(2) numeric check.
double psi_K(const QuadField& K, u64 t);

}  // namespace alphaforge::quadfield
