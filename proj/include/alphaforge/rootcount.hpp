#pragma once

#include <vector>

#include "alphaforge/numeric.hpp"
#include "alphaforge/polyform.hpp"

namespace alphaforge::rootcount {

using polyform::Polynomial;

// n_{p^k} profile for one prime: counts[k-1] = n_{p^k}(f).
// stabilized is the Lemma-2.1 flag (p does not divide Disc f), in which case
// every entry equals n_p(f).
struct RootCountProfile {
    u64 p = 0;
    std::vector<u64> counts;
    bool stabilized = false;
};

enum class LiftPolicy {
    automatic,   // use the Lemma 2.1 shortcut when p | Disc(f) fails
    force_lift,  // always lift (used to test the series against closed forms)
};

unsigned val_p(const mpz_class& n, u64 p);  // n != 0

// Distinct roots of f mod p. Residue scan for small p, x^p-powering gcd plus
// deterministic equal-degree splitting for large p.
std::vector<u64> roots_mod_p(const Polynomial& f, u64 p);
u64 count_roots_mod_p(const Polynomial& f, u64 p);

// #{a in [0,p^k): f(a) = 0 mod p^k}. Range error when p^k exceeds 2^62.
u64 affine_roots_mod_pk(const Polynomial& f, u64 p, unsigned k);

// Affine plus projective part (#{b = 0 mod p: F(1,b) = 0 mod p^k}).
u64 n_pk(const Polynomial& f, u64 p, unsigned k,
         LiftPolicy policy = LiftPolicy::automatic);

RootCountProfile profile(const Polynomial& f, u64 p, unsigned k_max,
                         LiftPolicy policy = LiftPolicy::automatic);

namespace detail {
// The p-adic valuation recursion used for primes beyond the candidate-lifting
// range; exposed so tests can cross-check it against lifting and scans.
u64 affine_count_valuation(const Polynomial& f, u64 p, unsigned k);
u64 projective_count_valuation(const Polynomial& f, u64 p, unsigned k);
}  // namespace detail

}  // namespace alphaforge::rootcount
