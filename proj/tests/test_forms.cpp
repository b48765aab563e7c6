#include <catch_amalgamated.hpp>

#include "uplane/forms.hpp"

using namespace uplane;

TEST_CASE("E2 against divisor sums")
{
    const QSeries e2 = basic_form(FormName::E2, 8 * 10);
    CHECK(e2.coefficient(0) == Rational(1));
    CHECK(e2.coefficient(8) == Rational(-24));
    CHECK(e2.coefficient(16) == Rational(-72));
    CHECK(e2.coefficient(8 * 6) == Rational(-24 * 12));
    CHECK(e2.coefficient(4).is_zero());
}

TEST_CASE("eta cubed")
{
    const QSeries e = basic_form(FormName::eta3, 60);
    CHECK(e.to_string() == "1/8:1 9/8:-3 25/8:5 49/8:-7");
}

TEST_CASE("u, h, T, f2 leading terms")
{
    const QSeries u = basic_form(FormName::u, 40);
    CHECK(u.valuation() == -2);
    CHECK(u.coefficient(-2) == Rational(1, 8));
    const QSeries h = basic_form(FormName::h, 40);
    CHECK(h.valuation() == 1);
    CHECK(h.coefficient(1) == Rational(1));
    const QSeries t = basic_form(FormName::T, 40);
    CHECK(t.valuation() == 2);
    CHECK(t.coefficient(2) == Rational(1));
    CHECK(basic_form(FormName::f2, 40).valuation() == 1);
    // u and T live on q^{-1/4} Z[[q^{1/2}]], h on q^{1/8} Z[[q^{1/2}]]
    for (const auto &[e, c] : u.terms()) {
        CHECK((e + 2) % 4 == 0);
    }
    for (const auto &[e, c] : h.terms()) {
        CHECK((e - 1) % 4 == 0);
    }
    CHECK_THROWS_AS(basic_form(FormName::u, 0), std::invalid_argument);
}

TEST_CASE("structural identities")
{
    const long w = 240;
    const QSeries t2 = basic_form(FormName::theta2, w);
    const QSeries t3 = basic_form(FormName::theta3, w);
    const QSeries t4 = basic_form(FormName::theta4, w);
    CHECK((t2 * t3).equals_below(basic_form(FormName::h, w) * Rational(2), w));
    CHECK((t2 * t3 * t4).equals_below(basic_form(FormName::eta3, w) * Rational(2), w));
    CHECK((basic_form(FormName::f2, w) * pow(t4, 8) * Rational(2)).equals_below(t2 * t3, w));
    CHECK(pow(t3, 4).equals_below(pow(t2, 4) + pow(t4, 4), w));
}

TEST_CASE("theta derivatives")
{
    CHECK(theta_deriv({1, 0, 0}, 30).to_string() == "1/8:2 9/8:2 25/8:2");
    // theta_1'(0) = pi i^2 S with S = 2 eta^3
    const long w = 100;
    CHECK(theta_deriv({1, 1, 1}, w).equals_below(basic_form(FormName::eta3, w) * Rational(2), w));
    CHECK(theta_deriv({0, 1, 1}, w).is_zero());
    // theta_3'' = pi^2 i^2 sum (2n)^2 q^{n^2/2}: leading term 8 q^{1/2}
    CHECK(theta_deriv({0, 0, 2}, 40).coefficient(4) == Rational(8));
}

TEST_CASE("theta derivative parity")
{
    for (int a = 0; a <= 1; ++a) {
        for (int b = 0; b <= 1; ++b) {
            for (int k = 0; k <= 9; ++k) {
                const bool zero = theta_deriv({a, b, k}, 200).is_zero();
                CHECK(zero == ((k + a * b) % 2 != 0));
            }
        }
    }
}

TEST_CASE("blowup kernels at mu = 0 and parity")
{
    const MuPoly<Rational> k01 = blowup_kernel(0, 1, 12, 48);
    const MuPoly<Rational> k11 = blowup_kernel(1, 1, 12, 48);
    CHECK(k01[0].equals_below(QSeries::one(), 48));
    CHECK(k11[0].is_zero());
    for (int j = 0; j <= 12; ++j) {
        // odd/even powers vanish identically; mu^2 of k01 also cancels, checked below
        if (j % 2 != 0) {
            CHECK(k01[j].is_zero());
        } else {
            CHECK(k11[j].is_zero());
        }
        if (j > 2) {
            CHECK_FALSE(k01[j].is_zero() == k11[j].is_zero());
        }
        CHECK(k01[j].precision() >= 48);
    }
    // the (1,1) kernel is normalized to start with +mu
    CHECK(k11[1].equals_below(QSeries::one(), 48));
}

TEST_CASE("kernel mu^2 coefficients")
{
    // mu^2 part of e^{-mu^2 T} theta4(mu/2 pi h)/theta4 is -T - S_2/(8 h^2 theta4)
    const long w = 48;
    const FormSet f(w + 32);
    const QSeries expect = -f.T - theta_deriv({0, 1, 2}, w + 32) * f.h_inv * f.h_inv * f.theta4_inv * Rational(1, 8);
    CHECK(blowup_kernel(0, 1, 2, w)[2].equals_below(expect, w));
    // and it cancels
    CHECK(blowup_kernel(0, 1, 2, w)[2].truncated(w).is_zero());
}

TEST_CASE("(1,1) kernel mu^9 term is nonzero")
{
    const MuPoly<Rational> k = blowup_kernel(1, 1, 9, 32);
    REQUIRE_FALSE(k[9].is_zero());
    CHECK(k[9].valuation() == -8);
    // 1/(2^8 9!) q^{-1}
    CHECK(k[9].coefficient(-8) == Rational(1, 92897280));
}

TEST_CASE("form names")
{
    for (const auto &[name, f] : kFormNames) {
        CHECK(parse_form_name(name) == f);
        CHECK(form_name(f) == name);
    }
    CHECK_FALSE(parse_form_name("theta1").has_value());
}
