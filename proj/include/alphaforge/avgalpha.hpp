#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "alphaforge/alpha.hpp"
#include "alphaforge/polyform.hpp"

namespace alphaforge::avgalpha {

using polyform::Polynomial;

// Monic coefficient box E^(1)(m,d,I): degree d, leading coefficient 1,
// f_i in intervals[i] (inclusive) for i = 0..d-1.
struct CoefficientBox {
    int degree = 0;
    std::vector<std::pair<long, long>> intervals;

    u64 size() const;  // product of interval sizes (0 if any is empty)
};

inline constexpr u64 kEnumerationBudget = 10'000'000ull;

// Every monic polynomial in the box with Disc != 0, ascending lexicographic
// in (f_{d-1}, ..., f_0). Range error past the enumeration budget.
void enumerate_box(const CoefficientBox& box,
                   const std::function<void(const Polynomial&)>& fn);

struct MeanAlphaResult {
    double mean = 0.0;
    u64 count = 0;          // polynomials with Disc != 0
    u64 zero_disc = 0;      // excluded
    bool monte_carlo = false;
    double std_error = 0.0; // only for sampled (monte_carlo) runs
};

// (1/#E) sum of alpha_p(f) over the box, deterministic order and merge.
// Boxes above the budget fall back to seeded stratified sampling and are
// flagged monte_carlo with a reported standard error.
MeanAlphaResult mean_alpha_p(const CoefficientBox& box, u64 p,
                             const ParallelConfig& cfg = {});

struct SweepRow {
    long m = 0;
    double mean = 0.0;
    double deviation = 0.0;  // |mean - alpha_p(X)|
    double envelope = 0.0;   // d(log d + log m)/m + 1/m
    u64 count = 0;
};

// Symmetric boxes [-m,m]^d for each m.
std::vector<SweepRow> convergence_sweep(int d, u64 p,
                                        const std::vector<long>& m_values,
                                        const ParallelConfig& cfg = {});

struct HistogramBin {
    double lo = 0.0, hi = 0.0;
    u64 count = 0;
};

// Distribution of alpha_p(f) over the box (exported as CSV by the CLI; no
// statistical test is asserted).
std::vector<HistogramBin> histogram_alpha_p(const CoefficientBox& box, u64 p,
                                            int bins);

}  // namespace alphaforge::avgalpha
