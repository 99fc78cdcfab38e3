#include "alphaforge/dickman.hpp"

#include <cmath>
#include <stdexcept>

namespace alphaforge::dickman {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

constexpr int kDeg = 32;  // Chebyshev-Lobatto degree per unit interval

// 32-point Gauss-Legendre rule on [-1,1]: positive nodes and weights.
struct GLPoint { double x, w; };
constexpr GLPoint kGL32[16] = {
    {0.04830766568773831623481257, 0.09654008851472780056676483},
    {0.1444719615827964934851864, 0.095638720079274859419082},
    {0.2392873622521370745446032, 0.09384439908080456563918024},
    {0.3318686022821276497799168, 0.09117387869576388471286858},
    {0.4213512761306353453641194, 0.08765209300440381114277146},
    {0.5068999089322293900237475, 0.08331192422694675522219907},
    {0.5877157572407623290407455, 0.07819389578707030647174092},
    {0.6630442669302152009751152, 0.07234579410884850622539936},
    {0.7321821187402896803874267, 0.06582222277636184683765006},
    {0.7944837959679424069630973, 0.05868409347853554714528364},
    {0.849367613732569970133693, 0.05099805926237617619616324},
    {0.8963211557660521239653072, 0.04283589802222668065687865},
    {0.9349060759377396891709191, 0.03427386291302143310268773},
    {0.9647622555875064307738119, 0.02539206530926205945575259},
    {0.985611511545268335400175, 0.01627439473090567060517056},
    {0.9972638618494815635449811, 0.007018610009470096600407064},
};

template <class F>
double gauss_legendre(F f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (const auto& pt : kGL32) {
        acc += pt.w * f(mid + half * pt.x);
        acc += pt.w * f(mid - half * pt.x);
    }
    return acc * half;
}

}  // namespace

struct RhoTable::Piece {
    double left;  // interval [left, left+1]
    double base;  // rho(left); vals are stored relative to it so the table
                  // keeps full relative precision down to rho ~ 1e-300
    double nodes[kDeg + 1];
    double vals[kDeg + 1];

    double eval(double u) const { return base * eval_rel(u); }
    double eval_deriv(double u) const { return base * eval_deriv_rel(u); }
    double deriv_at_node(int i) const { return base * deriv_at_node_rel(i); }

    double eval_rel(double u) const {
        // barycentric interpolation, Chebyshev-Lobatto weights (-1)^j, halved ends
        double num = 0.0, den = 0.0;
        for (int j = 0; j <= kDeg; ++j) {
            double d = u - nodes[j];
            if (d == 0.0) return vals[j];
            double w = (j % 2 == 0) ? 1.0 : -1.0;
            if (j == 0 || j == kDeg) w *= 0.5;
            double t = w / d;
            num += t * vals[j];
            den += t;
        }
        return num / den;
    }

    double eval_deriv_rel(double u) const {
        // derivative of the barycentric form
        for (int j = 0; j <= kDeg; ++j)
            if (u == nodes[j]) return deriv_at_node_rel(j);
        double num = 0.0, den = 0.0;
        double p = eval_rel(u);
        for (int j = 0; j <= kDeg; ++j) {
            double w = (j % 2 == 0) ? 1.0 : -1.0;
            if (j == 0 || j == kDeg) w *= 0.5;
            double d = u - nodes[j];
            double t = w / d;
            num += t * (p - vals[j]) / d;
            den += t;
        }
        return num / den;
    }

    double deriv_at_node_rel(int i) const {
        // row i of the Chebyshev-Lobatto differentiation matrix
        auto wj = [](int j) {
            double w = (j % 2 == 0) ? 1.0 : -1.0;
            if (j == 0 || j == kDeg) w *= 0.5;
            return w;
        };
        double acc = 0.0, diag = 0.0;
        for (int j = 0; j <= kDeg; ++j) {
            if (j == i) continue;
            double dij = (wj(j) / wj(i)) / (nodes[i] - nodes[j]);
            acc += dij * vals[j];
            diag -= dij;
        }
        acc += diag * vals[i];
        return acc;
    }
};

RhoTable::~RhoTable() = default;
RhoTable::RhoTable(RhoTable&&) noexcept = default;
RhoTable& RhoTable::operator=(RhoTable&&) noexcept = default;

RhoTable::RhoTable(double u_max, double tolerance) : u_max_(u_max), tol_(tolerance) {
    if (u_max < 1.0) throw std::domain_error("RhoTable: u_max >= 1 required");
    // The difference form rho(u) = rho(k) - int rho(t-1)/t dt amplifies
    // relative error by the per-interval decay ratio (the value is a small
    // difference of large terms), which destroys the deep tail in binary64.
    // Build instead from the integrated DDE, u rho(u) = int_{u-1}^{u} rho:
    // positive quantities only, solved per interval by fixed-point iteration
    // (contraction factor (u-k)/u <= 1/k). Each piece is stored relative to
    // its own base rho(k), so the table keeps full relative precision.
    int n_pieces = static_cast<int>(std::ceil(u_max)) - 1;
    pieces_.reserve(static_cast<size_t>(n_pieces));
    for (int k = 1; k <= n_pieces; ++k) {
        Piece pc;
        pc.left = static_cast<double>(k);
        for (int j = 0; j <= kDeg; ++j)
            pc.nodes[j] = k + 0.5 * (1.0 - std::cos(M_PI * j / kDeg));
        if (k == 1) {
            // the DDE solves in closed form here
            pc.base = 1.0;
            for (int j = 0; j <= kDeg; ++j) pc.vals[j] = 1.0 - std::log(pc.nodes[j]);
            pc.vals[0] = 1.0;
            pieces_.push_back(pc);
            continue;
        }
        const Piece& prev = pieces_.back();
        // tail integrals of the previous piece at the shifted nodes,
        // accumulated from the right so the small ones stay relatively exact:
        // T[j] = int_{u_j - 1}^{k} rel_prev  (u_j - 1 lands on prev's nodes)
        double T[kDeg + 1];
        T[kDeg] = 0.0;
        for (int j = kDeg - 1; j >= 0; --j)
            T[j] = T[j + 1] +
                   gauss_legendre([&](double t) { return prev.eval_rel(t); },
                                  prev.nodes[j], prev.nodes[j + 1]);
        double total_prev = T[0];                    // int_{k-1}^{k} rel_prev
        pc.base = prev.base * total_prev / k;        // k rho(k) = int_{k-1}^k rho
        double gain = static_cast<double>(k) / total_prev;  // rho(k-1)/rho(k)

        for (int j = 0; j <= kDeg; ++j) pc.vals[j] = prev.vals[j];  // initial shape
        pc.vals[0] = 1.0;
        double D[kDeg + 1];
        for (int iter = 0; iter < 200; ++iter) {
            D[0] = 0.0;
            for (int j = 1; j <= kDeg; ++j)
                D[j] = D[j - 1] +
                       gauss_legendre([&](double t) { return pc.eval_rel(t); },
                                      pc.nodes[j - 1], pc.nodes[j]);
            double delta = 0.0;
            for (int j = 1; j <= kDeg; ++j) {
                double next = (gain * T[j] + D[j]) / pc.nodes[j];
                delta = std::max(delta, std::abs(next - pc.vals[j]) / next);
                pc.vals[j] = next;
            }
            if (delta < 1e-15) break;
        }
        pieces_.push_back(pc);
    }
    // residual grid and max |u rho'(u) + rho(u-1)| over interior nodes
    for (const auto& pc : pieces_)
        for (int j = 1; j < kDeg; ++j) {
            double u = pc.nodes[j];
            grid_.push_back(u);
            double resid = u * pc.deriv_at_node(j) + rho(u - 1.0);
            max_residual_ = std::max(max_residual_, std::abs(resid));
        }
}

const RhoTable::Piece& RhoTable::piece_for(double u) const {
    int k = static_cast<int>(std::floor(u));
    if (u == std::floor(u) && k >= 2) --k;  // right endpoint belongs to the piece below
    size_t idx = static_cast<size_t>(k - 1);
    return pieces_[idx];
}

double RhoTable::rho(double u) const {
    if (u < 0.0) return 0.0;
    if (u <= 1.0) return 1.0;
    if (u > u_max_)
        throw std::out_of_range("RhoTable::rho: u beyond table range");
    return piece_for(u).eval(u);
}

double RhoTable::interpolant_derivative(double u) const {
    if (u < 0.0 || u <= 1.0) return 0.0;
    if (u > u_max_) throw std::out_of_range("RhoTable: u beyond table range");
    return piece_for(u).eval_deriv(u);
}

double RhoTable::deriv(double u, int j) const {
    if (j < 0 || j > 4) throw std::out_of_range("RhoTable::deriv: order 0..4 supported");
    if (j == 0) return rho(u);
    if (u < 1.0) return 0.0;  // rho constant left of 1 (and 0 left of 0)
    // rho^(j)(u) = d^(j-1)/du^(j-1) [ -rho(u-1)/u ], right value at breakpoints:
    // -sum_{i=0}^{j-1} C(j-1,i) rho^(i)(u-1) (-1)^(j-1-i) (j-1-i)! u^-(j-i)
    double acc = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= j - 1; ++i) {
        if (i > 0) binom = binom * (j - i) / i;  // C(j-1, i)
        double fact = 1.0;
        for (int t = 2; t <= j - 1 - i; ++t) fact *= t;
        double sign = ((j - 1 - i) % 2 == 0) ? 1.0 : -1.0;
        double lower = (i == 0) ? rho(u - 1.0) : deriv(u - 1.0, i);
        acc += binom * lower * sign * fact * std::pow(u, -(j - i));
    }
    return -acc;
}

PsiEstimate psi_hildebrand(const RhoTable& table, double x, double B) {
    if (x < 1.0 || B < 2.0) throw std::domain_error("psi_hildebrand: x >= 1, B >= 2");
    PsiEstimate out;
    double u = std::log(x) / std::log(B);
    out.value = x * table.rho(u);
    out.region_ok = x >= 3.0 && B <= x &&
                    B >= std::exp(std::pow(std::log(std::log(x)), 1.67));
    return out;
}

PsiEstimate psi_saias(const RhoTable& table, double x, double B, int J) {
    if (J < 0 || J > 1)
        throw std::out_of_range("psi_saias: only J = 0, 1 supported (higher gamma_j unavailable)");
    PsiEstimate out = psi_hildebrand(table, x, B);
    double u = std::log(x) / std::log(B);
    if (J == 1) {
        double gamma1 = kEulerGamma - 1.0;
        out.value = x * (table.rho(u) + gamma1 * table.deriv(u, 1) / std::log(B));
    }
    // Theorem B region: 0 < u < J+1 requires {u} > C(J+1) loglogB/logB (C = 1)
    if (u > 0.0 && u < static_cast<double>(J) + 1.0) {
        double frac = u - std::floor(u);
        double thresh = (J + 1) * std::log(std::log(B)) / std::log(B);
        if (frac <= thresh) out.breakpoint_flagged = true;
    }
    return out;
}

double predicted_smooth_ratio(const RhoTable& table, double alpha_f, double x, double B) {
    double xs = x * std::exp(alpha_f);
    return psi_saias(table, xs, B, 1).value / xs;
}

double conjecture_prediction(const RhoTable& table, const std::vector<int>& degrees,
                             double area, double x, double B) {
    double u = std::log(x) / std::log(B);
    double prod = 1.0;
    for (int d : degrees) prod *= table.rho(d * u);
    return (6.0 / (M_PI * M_PI)) * area * x * x * prod;
}

}  // namespace alphaforge::dickman
