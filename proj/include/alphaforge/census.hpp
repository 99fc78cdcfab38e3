#pragma once

#include <functional>
#include <optional>

#include "alphaforge/alpha.hpp"
#include "alphaforge/dickman.hpp"
#include "alphaforge/polyform.hpp"

namespace alphaforge::census {

using polyform::BinaryForm;
using polyform::Polynomial;

// Exact Psi(x, B) by a segmented divide-out sieve. Range error past `limit`.
u64 psi_exact(u64 x, u64 B, const ParallelConfig& cfg = {},
              u64 limit = 100'000'000ull);

struct CensusResult {
    u64 norm_bound = 0;
    u64 smooth_bound = 0;
    u64 pairs_total = 0;   // coprime pairs with 0 < F(a,b) <= norm_bound
    u64 pairs_smooth = 0;  // of those, B-smooth values
    double ratio = 0.0;
    double runtime_seconds = 0.0;
};

struct CensusOptions {
    // Called for every smooth coprime pair; forces single-threaded rows.
    std::function<void(i64 a, i64 b, u64 value)> smooth_hook;
};

// Exact counts for a positive-definite quadratic form by per-row line
// sieving: per prime, roots of F(.,b) mod p are arithmetic progressions and
// marked values are divided out exactly. Domain error for indefinite or
// degenerate forms; range error when coefficients or the bound leave the
// 64-bit evaluation budget.
CensusResult census_form(const BinaryForm& F, u64 norm_bound, u64 smooth_bound,
                         const ParallelConfig& cfg = {},
                         const CensusOptions& opt = {});

struct Theorem42Report {
    CensusResult census;
    alpha::AlphaEstimate alpha;
    double empirical_ratio = 0.0;
    double predicted_saias = 0.0;                 // expansion RHS at x e^alpha
    std::optional<double> predicted_exact_sieve;  // psi_exact RHS when in range
    double gap_abs_saias = 0.0, gap_rel_saias = 0.0;
    double gap_abs_exact = 0.0, gap_rel_exact = 0.0;
};

Theorem42Report theorem42_experiment(const Polynomial& f, u64 norm_bound,
                                     u64 smooth_bound,
                                     const alpha::AlphaEstimate& alpha_estimate,
                                     const dickman::RhoTable& table,
                                     const ParallelConfig& cfg = {},
                                     u64 psi_limit = 100'000'000ull);

}  // namespace alphaforge::census
