#include <doctest.h>

#include <random>

#include "alphaforge/polyform.hpp"
#include "oracles.hpp"

using namespace alphaforge;
using polyform::BinaryForm;
using polyform::Polynomial;

namespace {
Polynomial random_monic(std::mt19937_64& rng, int d, long m) {
    std::uniform_int_distribution<long> dist(-m, m);
    std::vector<mpz_class> cs(static_cast<size_t>(d) + 1);
    for (int i = 0; i < d; ++i) cs[static_cast<size_t>(i)] = dist(rng);
    cs[static_cast<size_t>(d)] = 1;
    return Polynomial(std::move(cs));
}
}  // namespace

TEST_CASE("discriminant examples") {
    CHECK(Polynomial::parse("1,0,1").discriminant() == -4);
    CHECK(Polynomial::parse("0,1").discriminant() == 1);
    CHECK(Polynomial::parse("1,-2,1").discriminant() == 0);
    CHECK(Polynomial::parse("5,0,0,1").discriminant() == -675);  // -27*25
    CHECK(Polynomial::parse("2,3").discriminant() == 1);
    // x^3 + ax + b: disc = -4a^3 - 27b^2
    CHECK(Polynomial::parse("-1,2,0,1").discriminant() == -4 * 8 - 27);
}

TEST_CASE("resultant matches Sylvester-Bareiss oracle") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<long> dist(-9, 9);
    for (int iter = 0; iter < 300; ++iter) {
        int da = 1 + static_cast<int>(rng() % 4), db = 1 + static_cast<int>(rng() % 4);
        std::vector<mpz_class> a(static_cast<size_t>(da) + 1), b(static_cast<size_t>(db) + 1);
        for (auto& c : a) c = dist(rng);
        for (auto& c : b) c = dist(rng);
        if (a.back() == 0) a.back() = 1;
        if (b.back() == 0) b.back() = 1;
        CHECK(polyform::resultant(a, b) == oracles::sylvester_resultant(a, b));
    }
}

TEST_CASE("discriminant bound over random monic polynomials") {
    std::mt19937_64 rng(7);
    const long m = 20;
    for (int iter = 0; iter < 1200; ++iter) {
        int d = 2 + static_cast<int>(rng() % 4);
        Polynomial f = random_monic(rng, d, m);
        // (2d-1)! * m^(2d-1)
        mpz_class bound = 1;
        for (long i = 2; i <= 2 * d - 1; ++i) bound *= i;
        for (int i = 0; i < 2 * d - 1; ++i) bound *= m;
        CHECK(abs(f.discriminant()) <= bound);
    }
}

TEST_CASE("zero discriminant iff repeated root (gcd oracle)") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> dist(-6, 6);
    int zero_seen = 0;
    for (int iter = 0; iter < 400; ++iter) {
        int d = 2 + static_cast<int>(rng() % 3);
        Polynomial f = random_monic(rng, d, 6);
        int g = oracles::gcd_degree_q(f.coeffs(), f.derivative_coeffs());
        if (f.discriminant() == 0) {
            CHECK(g >= 1);
            ++zero_seen;
        } else {
            CHECK(g == 0);
        }
    }
    // force some repeated-root cases: (x - r)^2 (x - s)
    for (long r = -3; r <= 3; ++r)
        for (long s = -2; s <= 2; ++s) {
            std::vector<mpz_class> cs = {mpz_class(-r * r * s), mpz_class(r * r + 2 * r * s),
                                         mpz_class(-2 * r - s), mpz_class(1)};
            Polynomial f(std::move(cs));
            CHECK(f.discriminant() == 0);
            CHECK(oracles::gcd_degree_q(f.coeffs(), f.derivative_coeffs()) >= 1);
        }
    (void)zero_seen;
}

TEST_CASE("homogenize and evaluate") {
    auto f = Polynomial::parse("1,0,1");
    BinaryForm F(f);
    CHECK(F(mpz_class(3), mpz_class(4)) == 25);
    CHECK(F(mpz_class(0), mpz_class(0)) == 0);
    CHECK(F.lead() == f.leading());
    CHECK(F.trail() == f.constant());

    // Example 2.6 coefficients: q = 10^30 + 57 at (1,1)
    mpz_class q("1000000000000000000000000000057");
    Polynomial fq({q, 0, 1});
    BinaryForm Fq(fq);
    CHECK(Fq(mpz_class(1), mpz_class(1)) == q + 1);

    CHECK(BinaryForm(Polynomial::parse("3,2"))(mpz_class(1), mpz_class(1)) == 5);
    CHECK(BinaryForm(Polynomial::parse("5,0,0,1"))(mpz_class(2), mpz_class(1)) == 13);
}

TEST_CASE("F(x,1) = f(x) on random inputs, fast path consistent with exact") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> dist(-50, 50);
    for (int iter = 0; iter < 1000; ++iter) {
        int d = 1 + static_cast<int>(rng() % 5);
        Polynomial f = random_monic(rng, d, 30);
        BinaryForm F(f);
        mpz_class x = dist(rng);
        CHECK(F(x, mpz_class(1)) == f(x));
        long a = dist(rng), b = dist(rng);
        CHECK(F(static_cast<i64>(a), static_cast<i64>(b)) ==
              F(mpz_class(a), mpz_class(b)));
    }
}

TEST_CASE("fundamental discriminant classification") {
    CHECK(polyform::is_fundamental(mpz_class(-4)));
    CHECK(polyform::is_fundamental(mpz_class(-23)));
    CHECK_FALSE(polyform::is_fundamental(mpz_class(-12)));
    CHECK(polyform::is_fundamental(mpz_class(-20)));
    CHECK(polyform::is_fundamental(mpz_class(5)));
    CHECK(polyform::is_fundamental(mpz_class(8)));
    CHECK_FALSE(polyform::is_fundamental(mpz_class(9)));   // 3^2
    CHECK_FALSE(polyform::is_fundamental(mpz_class(-16)));
    CHECK_FALSE(polyform::is_fundamental(mpz_class(25)));
    CHECK_THROWS_AS((void)polyform::is_fundamental(mpz_class(6)), std::domain_error);
    CHECK_THROWS_AS((void)polyform::is_fundamental(mpz_class(-5)), std::domain_error);
    CHECK_THROWS_AS((void)polyform::is_fundamental(mpz_class(0)), std::domain_error);
    // Example 2.6: D = -4(10^30+57), q prime = 1 mod 4
    mpz_class q("1000000000000000000000000000057");
    CHECK(polyform::is_fundamental(-4 * q));
}

TEST_CASE("parsing and construction errors") {
    CHECK_THROWS_AS(Polynomial::parse("7"), std::domain_error);     // degree 0
    CHECK_THROWS_AS(Polynomial::parse("0,0"), std::domain_error);   // zero poly
    CHECK_THROWS_AS(Polynomial::parse(""), std::domain_error);
    CHECK_THROWS_AS(Polynomial::parse("1,,2"), std::domain_error);
    CHECK(Polynomial::parse("1, 0, 1").to_string() == "1,0,1");
    CHECK(Polynomial::parse("1,0,1,0").degree() == 2);  // trailing zero trimmed
    mpz_class q("1000000000000000000000000000057");
    CHECK(Polynomial::parse("1000000000000000000000000000057,0,1").constant() == q);
}

TEST_CASE("content, primitivity, cheap irreducibility necessities") {
    CHECK(Polynomial::parse("2,4,6").content() == 2);
    CHECK(Polynomial::parse("1,0,1").is_primitive());
    CHECK_FALSE(Polynomial::parse("2,0,2").is_primitive());
    CHECK(Polynomial::parse("1,0,1").no_rational_root_cheap());
    CHECK_FALSE(Polynomial::parse("-1,0,1").no_rational_root_cheap());  // x^2-1
    CHECK(Polynomial::parse("2,0,0,1").no_rational_root_cheap());       // x^3+2
    CHECK_FALSE(Polynomial::parse("-8,0,0,1").no_rational_root_cheap());  // root 2
    CHECK_FALSE(Polynomial::parse("1,2").no_rational_root_cheap());     // linear
}
