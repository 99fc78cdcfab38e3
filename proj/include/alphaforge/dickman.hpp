#pragma once

#include <memory>
#include <vector>

#include "alphaforge/numeric.hpp"

namespace alphaforge::dickman {

// Dickman rho on [0, u_max], one degree-32 Chebyshev-Lobatto interpolant per
// unit interval, built from the integrated delay equation
// u rho(u) = int_{u-1}^{u} rho(t) dt with 32-point Gauss-Legendre quadrature
// between consecutive nodes. Continuity at the integer breakpoints is exact
// by construction and every stored quantity is a sum of positive terms, so
// the tail stays positive and strictly decreasing over the whole table.
// Accuracy: relative error is at machine level for u <= 14 and degrades by
// roughly the per-interval decay ratio beyond (an inherent conditioning
// limit of forward construction in fixed precision); the DDE residual stays
// below the configured absolute tolerance everywhere.
class RhoTable {
  public:
    explicit RhoTable(double u_max = 50.0, double tolerance = 1e-10);
    ~RhoTable();
    RhoTable(RhoTable&&) noexcept;
    RhoTable& operator=(RhoTable&&) noexcept;
    RhoTable(const RhoTable&) = delete;
    RhoTable& operator=(const RhoTable&) = delete;

    double rho(double u) const;             // 1 on [0,1], 0 for u < 0; range error past u_max
    double deriv(double u, int j) const;    // DDE recurrences; right value at breakpoints; j <= 4
    double interpolant_derivative(double u) const;  // d/du of the stored interpolant
    double max_dde_residual() const { return max_residual_; }

    double u_max() const { return u_max_; }
    double tolerance() const { return tol_; }

    // all interior interpolation nodes, ascending (the residual grid)
    const std::vector<double>& grid() const { return grid_; }

  private:
    struct Piece;
    double u_max_, tol_;
    double max_residual_ = 0.0;
    std::vector<Piece> pieces_;
    std::vector<double> grid_;

    const Piece& piece_for(double u) const;
};

struct PsiEstimate {
    double value = 0.0;
    bool region_ok = true;           // loose (H_eps) membership
    bool breakpoint_flagged = false; // Saias expansion region exclusion near integer u
};

// Theorem A: x * rho(u). Region violation sets a warning flag, not an error.
PsiEstimate psi_hildebrand(const RhoTable& table, double x, double B);

// Theorem B truncated at J (0 or 1): x*(rho(u) + (gamma-1) rho'(u)/log B).
// J >= 2 is a range error (higher gamma_j are not available numerically).
PsiEstimate psi_saias(const RhoTable& table, double x, double B, int J);

// Theorem 4.2 right-hand side: Psi(x e^alpha, B) / (x e^alpha), Saias J=1.
double predicted_smooth_ratio(const RhoTable& table, double alpha_f, double x, double B);

// Eq. (2) diagnostic: (6/pi^2) * area * x^2 * prod rho(d_i u), u = log x/log B.
double conjecture_prediction(const RhoTable& table, const std::vector<int>& degrees,
                             double area, double x, double B);

}  // namespace alphaforge::dickman
