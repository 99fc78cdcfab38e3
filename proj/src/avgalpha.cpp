#include "alphaforge/avgalpha.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace alphaforge::avgalpha {

u64 CoefficientBox::size() const {
    u64 n = 1;
    for (auto [lo, hi] : intervals) {
        if (hi < lo) return 0;
        u64 w = static_cast<u64>(hi - lo + 1);
        if (n > kEnumerationBudget * 16 / w) return kEnumerationBudget * 16 + 1;
        n *= w;
    }
    return n;
}

namespace {

void check_box(const CoefficientBox& box) {
    if (box.degree < 1) throw std::domain_error("CoefficientBox: degree >= 1 required");
    if (box.intervals.size() != static_cast<size_t>(box.degree))
        throw std::domain_error("CoefficientBox: one interval per coefficient 0..d-1");
}

Polynomial make_poly(const std::vector<long>& lower, int degree) {
    std::vector<mpz_class> cs(static_cast<size_t>(degree) + 1);
    for (int i = 0; i < degree; ++i) cs[static_cast<size_t>(i)] = lower[static_cast<size_t>(i)];
    cs[static_cast<size_t>(degree)] = 1;
    return Polynomial(std::move(cs));
}

// iterate the box in ascending lexicographic order, f_{d-1} outermost
template <class Fn>
void iterate(const CoefficientBox& box, Fn fn) {
    const int d = box.degree;
    std::vector<long> cur(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) cur[static_cast<size_t>(i)] = box.intervals[static_cast<size_t>(i)].first;
    for (;;) {
        fn(cur);
        int i = 0;
        for (; i < d; ++i) {
            auto [lo, hi] = box.intervals[static_cast<size_t>(i)];
            if (cur[static_cast<size_t>(i)] < hi) {
                ++cur[static_cast<size_t>(i)];
                for (int j = 0; j < i; ++j)
                    cur[static_cast<size_t>(j)] = box.intervals[static_cast<size_t>(j)].first;
                break;
            }
        }
        if (i == d) break;
    }
}

}  // namespace

void enumerate_box(const CoefficientBox& box,
                   const std::function<void(const Polynomial&)>& fn) {
    check_box(box);
    u64 n = box.size();
    if (n == 0) return;
    if (n > kEnumerationBudget)
        throw std::out_of_range("enumerate_box: box size beyond enumeration budget");
    iterate(box, [&](const std::vector<long>& lower) {
        std::vector<mpz_class> cs(static_cast<size_t>(box.degree) + 1);
        for (int i = 0; i < box.degree; ++i) cs[static_cast<size_t>(i)] = lower[static_cast<size_t>(i)];
        cs[static_cast<size_t>(box.degree)] = 1;
        Polynomial f(std::move(cs));
        if (f.discriminant() != 0) fn(f);
    });
}

MeanAlphaResult mean_alpha_p(const CoefficientBox& box, u64 p, const ParallelConfig& cfg) {
    check_box(box);
    MeanAlphaResult out;
    u64 n = box.size();
    if (n == 0) return out;

    if (n <= kEnumerationBudget) {
        // exhaustive; parallelize over the outermost interval, merge in order
        auto [olo, ohi] = box.intervals.back();
        struct Part {
            KahanSum sum;
            u64 count = 0, zero_disc = 0;
        };
        KahanSum total;
        parallel_ordered_segments<Part>(
            0, static_cast<u64>(ohi - olo + 1), ParallelConfig{cfg.workers, 8},
            [&](u64 s, u64 e) {
                Part part;
                CoefficientBox sub = box;
                sub.intervals.back() = {olo + static_cast<long>(s),
                                        olo + static_cast<long>(e) - 1};
                iterate(sub, [&](const std::vector<long>& lower) {
                    Polynomial f = make_poly(lower, box.degree);
                    if (f.discriminant() == 0) {
                        ++part.zero_disc;
                        return;
                    }
                    part.sum.add(alpha::alpha_p(f, p).value);
                    ++part.count;
                });
                return part;
            },
            [&](const Part& part) {
                total.add(part.sum.sum);
                total.add(part.sum.comp);
                out.count += part.count;
                out.zero_disc += part.zero_disc;
            });
        out.mean = out.count ? total.value() / static_cast<double>(out.count) : 0.0;
        return out;
    }

    // stratified sampling beyond the budget: fixed seed, deterministic
    out.monte_carlo = true;
    std::mt19937_64 rng(0x5eedc0deULL);
    const u64 samples = kEnumerationBudget / 10;
    KahanSum sum, sumsq;
    for (u64 i = 0; i < samples; ++i) {
        std::vector<long> lower(static_cast<size_t>(box.degree));
        for (int j = 0; j < box.degree; ++j) {
            auto [lo, hi] = box.intervals[static_cast<size_t>(j)];
            std::uniform_int_distribution<long> dist(lo, hi);
            lower[static_cast<size_t>(j)] = dist(rng);
        }
        Polynomial f = make_poly(lower, box.degree);
        if (f.discriminant() == 0) {
            ++out.zero_disc;
            continue;
        }
        double v = alpha::alpha_p(f, p).value;
        sum.add(v);
        sumsq.add(v * v);
        ++out.count;
    }
    double nc = static_cast<double>(out.count);
    out.mean = out.count ? sum.value() / nc : 0.0;
    if (out.count > 1) {
        double var = (sumsq.value() - nc * out.mean * out.mean) / (nc - 1.0);
        out.std_error = std::sqrt(std::max(0.0, var) / nc);
    }
    return out;
}

std::vector<SweepRow> convergence_sweep(int d, u64 p, const std::vector<long>& m_values,
                                        const ParallelConfig& cfg) {
    double alpha_X = std::log(static_cast<double>(p)) /
                     (static_cast<double>(p) * static_cast<double>(p) - 1.0);
    std::vector<SweepRow> rows;
    rows.reserve(m_values.size());
    for (long m : m_values) {
        if (m < 1) throw std::domain_error("convergence_sweep: m >= 1 required");
        CoefficientBox box;
        box.degree = d;
        box.intervals.assign(static_cast<size_t>(d), {-m, m});
        MeanAlphaResult r = mean_alpha_p(box, p, cfg);
        SweepRow row;
        row.m = m;
        row.mean = r.mean;
        row.deviation = std::abs(r.mean - alpha_X);
        double md = static_cast<double>(m);
        row.envelope = d * (std::log(static_cast<double>(d)) + std::log(md)) / md + 1.0 / md;
        row.count = r.count;
        rows.push_back(row);
    }
    return rows;
}

std::vector<HistogramBin> histogram_alpha_p(const CoefficientBox& box, u64 p, int bins) {
    if (bins < 1) throw std::domain_error("histogram_alpha_p: bins >= 1 required");
    std::vector<double> values;
    enumerate_box(box, [&](const Polynomial& f) {
        values.push_back(alpha::alpha_p(f, p).value);
    });
    std::vector<HistogramBin> out(static_cast<size_t>(bins));
    if (values.empty()) return out;
    auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    double lo = *mn, hi = *mx;
    double w = (hi - lo) / bins;
    if (w <= 0) w = 1.0;
    for (int b = 0; b < bins; ++b) {
        out[static_cast<size_t>(b)].lo = lo + b * w;
        out[static_cast<size_t>(b)].hi = lo + (b + 1) * w;
    }
    for (double v : values) {
        int b = std::min(bins - 1, static_cast<int>((v - lo) / w));
        ++out[static_cast<size_t>(b)].count;
    }
    return out;
}

}  // namespace alphaforge::avgalpha
