#pragma once

#include <optional>

#include "alphaforge/polyform.hpp"
#include "alphaforge/rootcount.hpp"

namespace alphaforge::alpha {

using polyform::Polynomial;

enum class Method { regular_closed_form, lifted_series, quadratic_field };

struct LocalAlpha {
    u64 p = 0;
    double value = 0.0;
    Method method = Method::regular_closed_form;
    std::optional<rootcount::RootCountProfile> profile;
    bool approximate = false;      // stabilization not reached within range
    double remainder_bound = 0.0;  // Lemma-2.1 geometric bound on the cut tail
};

struct FieldConstants {
    double a_K = 0.0, b_K = 0.0, c_K = 0.0;
    int n_K = 0;
    mpz_class disc_magnitude;
};

struct AlphaEstimate {
    double partial_sum = 0.0;
    u64 cutoff_X = 0;
    double tail_bound = 0.0;  // includes the documented 1e-9*|partial| widening
    bool assumes_RH = true;
    FieldConstants field;
    u64 p0 = 2;

    double lo() const { return partial_sum - tail_bound; }
    double hi() const { return partial_sum + tail_bound; }
};

// Caller-supplied field data for alpha_certified on degrees >= 3 (or to
// override the built-in quadratic/linear handling).
struct ExplicitField {
    int n_K = 0;
    mpz_class disc_magnitude;
    u64 p0 = 2;
};

// a_K, b_K, c_K of Remark 2.5 (n_K = field degree, log of |Disc K|).
FieldConstants field_constants(int n_K, const mpz_class& disc_magnitude);

// alpha_p(f) by Prop. 2.3: closed form for p not dividing Disc(f)*lc(f),
// truncated lifted series with geometric-tail closure otherwise.
LocalAlpha alpha_p(const Polynomial& f, u64 p);

// Exact cont_p(f) = (p/(p+1)) * sum_k n_{p^k}/p^k as a rational; requires the
// stabilized tail (finite computation once three consecutive counts agree).
mpq_class exact_cont_p(const Polynomial& f, u64 p);

// Partial sum over p <= X, segmented sieve, compensated summation, ordered
// deterministic reduction (bit-identical for any worker count).
double alpha_partial(const Polynomial& f, u64 X, const ParallelConfig& cfg = {});

// The RH convergence-speed bound of §-final display; domain error when
// X < max(p0, n_K).
double tail_bound_RH(u64 X, int n_K, const mpz_class& disc_magnitude, u64 p0);

// Certified interval: quadratic with fundamental discriminant or linear
// primitive handled automatically, otherwise explicit field data required.
AlphaEstimate alpha_certified(const Polynomial& f, u64 X,
                              const ParallelConfig& cfg = {},
                              std::optional<ExplicitField> field = std::nullopt);

// alpha of any linear polynomial with coprime coefficients:
// 12 log A - gamma - log(2 pi) = -zeta'(2)/zeta(2).
double alpha_linear_exact();

}  // namespace alphaforge::alpha
