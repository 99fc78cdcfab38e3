#include <doctest.h>

#include <cmath>

#include "alphaforge/dickman.hpp"
#include "oracles.hpp"

using namespace alphaforge;
using dickman::RhoTable;

static const RhoTable& table() {
    static RhoTable t(50.0, 1e-10);
    return t;
}

TEST_CASE("rho: exact values on [0,2] and beyond") {
    const auto& t = table();
    CHECK(t.rho(0.7) == 1.0);
    CHECK(t.rho(0.0) == 1.0);
    CHECK(t.rho(-1.0) == 0.0);
    for (int i = 0; i < 100; ++i) {
        double u = 1.0 + (i + 0.5) / 100.0;
        CHECK(std::abs(t.rho(u) - (1.0 - std::log(u))) < 1e-10);
    }
    CHECK(t.rho(2.0) == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-13));
    CHECK(t.rho(3.0) == doctest::Approx(oracles::rho3_quadrature()).epsilon(1e-10));
    CHECK(t.rho(3.0) == doctest::Approx(0.048608388291131566).epsilon(1e-10));
    // frozen mpmath references
    CHECK(t.rho(4.0) == doctest::Approx(0.0049109256477608323).epsilon(1e-9));
    CHECK(t.rho(5.0) == doctest::Approx(0.00035472470045603973).epsilon(1e-9));
    CHECK(t.rho(10.0) == doctest::Approx(2.7701718377259590e-11).epsilon(1e-5));
    CHECK_THROWS_AS((void)t.rho(50.5), std::out_of_range);
}

TEST_CASE("rho is strictly decreasing and positive past 1") {
    const auto& t = table();
    double prev = 1.0;
    for (double u = 1.05; u <= 49.9; u += 0.35) {
        double v = t.rho(u);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("DDE residual within tolerance on the grid") {
    const auto& t = table();
    CHECK(t.max_dde_residual() <= t.tolerance());
    CHECK(t.max_dde_residual() <= 1e-10);
    CHECK(t.grid().size() > 1000);
}

TEST_CASE("derivatives: DDE recurrences and finite differences") {
    const auto& t = table();
    CHECK(t.deriv(2.0, 1) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(t.deriv(1.5, 1) == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
    CHECK(t.deriv(3.0, 1) ==
          doctest::Approx(-(1.0 - std::log(2.0)) / 3.0).epsilon(1e-12));
    CHECK(t.deriv(1.2, 0) == t.rho(1.2));
    CHECK_THROWS_AS((void)t.deriv(3.0, 5), std::out_of_range);
    // centered differences away from breakpoints
    for (double u : {1.5, 2.3, 2.7, 3.5, 4.4, 6.5}) {
        double h = 1e-5;
        double fd = (t.rho(u + h) - t.rho(u - h)) / (2.0 * h);
        CHECK(std::abs(t.deriv(u, 1) - fd) < 1e-6);
    }
    // second derivative vs finite difference of deriv-1
    for (double u : {2.5, 3.5, 4.5}) {
        double h = 1e-5;
        double fd = (t.deriv(u + h, 1) - t.deriv(u - h, 1)) / (2.0 * h);
        CHECK(t.deriv(u, 2) == doctest::Approx(fd).epsilon(1e-5));
    }
    // orders 3 and 4 exist and are finite away from breakpoints
    CHECK(std::isfinite(t.deriv(4.5, 3)));
    CHECK(std::isfinite(t.deriv(5.5, 4)));
}

TEST_CASE("psi_hildebrand and psi_saias") {
    const auto& t = table();
    auto h = dickman::psi_hildebrand(t, 1e6, 1e3);
    CHECK(h.value == doctest::Approx(1e6 * (1.0 - std::log(2.0))).epsilon(1e-12));
    CHECK(dickman::psi_hildebrand(t, 12345.0, 12345.0).value ==
          doctest::Approx(12345.0).epsilon(1e-15));
    auto s0 = dickman::psi_saias(t, 1e6, 1e3, 0);
    CHECK(s0.value == h.value);
    auto s1 = dickman::psi_saias(t, 1e6, 1e3, 1);
    CHECK(s1.value == doctest::Approx(337454.97).epsilon(1e-6));
    CHECK_THROWS_AS((void)dickman::psi_saias(t, 1e6, 1e3, 2), std::out_of_range);

    // region flag: u slightly above 1 with tiny fractional part
    auto flagged = dickman::psi_saias(t, 1000.0 * 1.007, 1000.0, 1);
    CHECK(flagged.breakpoint_flagged);
    auto unflagged = dickman::psi_saias(t, 1e6 * 15.85, 1e3, 1);  // u ~ 2.4
    CHECK_FALSE(unflagged.breakpoint_flagged);
    // loose region check
    CHECK(dickman::psi_hildebrand(t, 1e6, 1e3).region_ok);
    CHECK_FALSE(dickman::psi_hildebrand(t, 1e6, 2.0).region_ok);
}

TEST_CASE("predicted_smooth_ratio: baseline and monotone shift") {
    const auto& t = table();
    double base = dickman::predicted_smooth_ratio(t, 0.0, 1e6, 1e3);
    CHECK(base == doctest::Approx(dickman::psi_saias(t, 1e6, 1e3, 1).value / 1e6)
                      .epsilon(1e-15));
    for (double a : {0.3, 0.8, 1.4}) {
        CHECK(dickman::predicted_smooth_ratio(t, a, 1e6, 1e3) < base);
        CHECK(dickman::predicted_smooth_ratio(t, -a, 1e6, 1e3) > base);
    }
}

TEST_CASE("conjecture prediction (Eq. 2 diagnostic)") {
    const auto& t = table();
    double A = 2.5, x = 100.0;
    double c = 6.0 / (M_PI * M_PI);
    CHECK(dickman::conjecture_prediction(t, {1}, A, x, x) ==
          doctest::Approx(c * A * x * x).epsilon(1e-14));
    CHECK(dickman::conjecture_prediction(t, {2}, A, x, x) ==
          doctest::Approx(c * A * x * x * t.rho(2.0)).epsilon(1e-14));
    CHECK(dickman::conjecture_prediction(t, {1, 1}, A, x, std::sqrt(x)) ==
          doctest::Approx(c * A * x * x * t.rho(2.0) * t.rho(2.0)).epsilon(1e-12));
}
