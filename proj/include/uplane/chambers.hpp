#pragma once

// CP1 x CP1 chamber structure: wall-crossing terms, wall enumeration, the
// limiting-chamber closed form at F+, and the cross-chamber consistency check.

#include <cmath>
#include <vector>

#include "engine.hpp"
#include "errors.hpp"
#include "forms.hpp"

namespace uplane {

/// lambda = (M1 + rho_f/2) F + (M2 + rho_g/2) G, with F^2 = G^2 = 0 and (F,G) = 1.
struct WallVector {
    long M1 = 0;
    long M2 = 0;
    int rho_f = 0;
    int rho_g = 0;

    [[nodiscard]] Rational m1() const { return Rational(M1) + Rational(rho_f, 2); }
    [[nodiscard]] Rational m2() const { return Rational(M2) + Rational(rho_g, 2); }
    [[nodiscard]] Rational lambda_sq() const { return Rational(2) * m1() * m2(); }

    friend auto operator<=>(const WallVector &, const WallVector &) = default;
};

/// Period point omega(eps) = (x0 + x1 eps) F + (y0 + y1 eps) G, eps -> 0+.
struct ChamberSpec {
    Rational x0, y0, x1, y1;

    /// Sign of omega(eps) . lambda as eps -> 0+.
    [[nodiscard]] int side(const WallVector &w) const
    {
        const Rational v0 = x0 * w.m2() + y0 * w.m1();
        if (v0.sign() != 0) {
            return v0.sign();
        }
        return (x1 * w.m2() + y1 * w.m1()).sign();
    }
};

/// omega = F/2 + G, resolved on walls through it by ((1+eps)/2) F + (1-eps) G.
inline ChamberSpec chamber_half()
{
    return {Rational(1, 2), Rational(1), Rational(1, 2), Rational(-1)};
}

/// The limiting chamber omega -> F, approached as F + eps G.
inline ChamberSpec chamber_fplus()
{
    return {Rational(1), Rational(0), Rational(0), Rational(1)};
}

/// Most negative lambda^2 whose term can reach q^0 at degree p^m kappa^deg:
/// theta4^8 / h^3 (2u)^m T^l h^{-t} has valuation -(3 + 2m + 2l + t) >= -(3 + 2m + deg) eighths.
inline Rational lambda_sq_budget(int m, int degree)
{
    return Rational(-(3 + 2 * m + degree), 4);
}

/// Walls lambda with budget <= lambda^2 < 0 and omega_from . lambda > 0 > omega_to . lambda, sorted.
inline std::vector<WallVector> enumerate_walls(const ChamberSpec &from, const ChamberSpec &to, int rho_f, int rho_g,
                                               const Rational &budget)
{
    std::vector<WallVector> out;
    if (budget.sign() >= 0) {
        return out;
    }
    // |M1'| |M2'| <= |budget|/2 and |M'| >= 1/2 bound both components by |budget|
    const long bound = static_cast<long>(std::ceil((-budget).to_double())) + 1;
    for (long M1 = -bound; M1 <= bound; ++M1) {
        for (long M2 = -bound; M2 <= bound; ++M2) {
            const WallVector w{M1, M2, rho_f, rho_g};
            const Rational l2 = w.lambda_sq();
            if (l2.sign() >= 0 || l2 < budget) {
                continue;
            }
            if (from.side(w) > 0 && to.side(w) < 0) {
                out.push_back(w);
            }
        }
    }
    return out;
}

/// a + b i over the rationals.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational &operator+=(const GaussianRational &o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
};

/// (-i)^e.
inline GaussianRational minus_i_power(int e)
{
    switch (((e % 4) + 4) % 4) {
    case 0: return {Rational(1), Rational(0)};
    case 1: return {Rational(0), Rational(-1)};
    case 2: return {Rational(-1), Rational(0)};
    default: return {Rational(0), Rational(1)};
    }
}

/// theta4^8 / h^3 (2u)^m/m! T^l 4^l/l! h^{-t}
inline QSeries wall_integrand(const FormSet &f, int m, int l, int t)
{
    const QSeries t4_8 = pow(f.theta4, 8);
    return t4_8 * pow(f.h_inv, static_cast<unsigned>(3 + t)) * pow(f.u * Rational(2), static_cast<unsigned>(m)) *
           pow(f.T, static_cast<unsigned>(l)) * (power(Rational(4), l) * (factorial(m) * factorial(l)).inverse());
}

/// Coefficient of p^m kf^i kg^j in WC(lambda), real and imaginary parts.
///
/// WC(lambda) = -i (-1)^{(lambda-lambda0).w2} e^{2 pi i lambda0^2}
///              [q^{-lambda^2/2} theta4^8/h^3 exp(2pu + S^2 T - i (lambda,S)/h)]_{q^0}
/// with S = kf f + 2 kg g, so S^2 = 4 kf kg and (lambda,S) = M2' kf + 2 M1' kg.
inline GaussianRational wc_term_complex(const FormSet &forms, const WallVector &w, int m, int i, int j)
{
    const Rational l2 = w.lambda_sq();
    if (l2.sign() >= 0) {
        throw NotAWall("lambda^2 = " + l2.to_string() + " is not negative");
    }
    // q^{-lambda^2/2}: picking q^0 of the product reads the integrand at q^{lambda^2/2}
    const Rational shift = l2 * Rational(kDefaultDenom, 2);
    if (!shift.is_integer()) {
        throw std::invalid_argument("wall shift off the q^{1/8} lattice");
    }
    const long e = shift.numerator().get_si();
    // w2 = rho_f F + rho_g G; lambda0^2 = rho_f rho_g / 2
    const long sign_exp = w.M1 * w.rho_g + w.M2 * w.rho_f + w.rho_f * w.rho_g;
    const Rational sign(sign_exp % 2 == 0 ? 1 : -1);

    GaussianRational total;
    for (int l = 0; l <= std::min(i, j); ++l) {
        const int t = i + j - 2 * l;
        const Rational mono = binomial(t, i - l) * power(w.m2(), i - l) * power(Rational(2) * w.m1(), j - l) *
                              factorial(t).inverse();
        if (mono.is_zero()) {
            continue;
        }
        const QSeries integrand = wall_integrand(forms, m, l, t);
        if (e < integrand.valuation()) {
            continue;
        }
        const Rational v = integrand.coefficient(e) * mono * sign;
        // -i from the prefactor, (-i)^t from the t-th power of -i (lambda,S)/h
        const GaussianRational ph = minus_i_power(t + 1);
        total += {ph.re * v, ph.im * v};
    }
    return total;
}

/// Real coefficient of p^m kf^i kg^j in WC(lambda); a nonzero imaginary residue is a logic error.
inline Rational wc_term(const FormSet &forms, const WallVector &w, int m, int i, int j)
{
    const GaussianRational g = wc_term_complex(forms, w, m, i, j);
    if (!g.im.is_zero()) {
        throw std::logic_error("wall term has imaginary residue " + g.im.to_string());
    }
    return g.re;
}

/// B_0..B_n with B_1 = -1/2.
inline std::vector<Rational> bernoulli_numbers(int n)
{
    std::vector<Rational> b{Rational(1)};
    for (int k = 1; k <= n; ++k) {
        Rational s(0);
        for (int r = 0; r < k; ++r) {
            s += binomial(k + 1, r) * b[static_cast<std::size_t>(r)];
        }
        b.push_back(-s * Rational(k + 1).inverse());
    }
    return b;
}

/// Coefficient of x^k in the Laurent expansion of cot x (or csc x); zero unless k is odd and >= -1.
inline Rational cot_laurent(int k, bool csc = false)
{
    if (k < -1 || k % 2 == 0) {
        return Rational(0);
    }
    const int n = (k + 1) / 2;
    const Rational b2n = bernoulli_numbers(2 * n)[static_cast<std::size_t>(2 * n)];
    if (!csc) {
        const Rational c = power(Rational(2), 2 * n) * b2n * factorial(2 * n).inverse();
        return n % 2 == 0 ? c : -c;
    }
    const Rational c = Rational(2) * (power(Rational(2), 2 * n - 1) - Rational(1)) * b2n * factorial(2 * n).inverse();
    return n % 2 == 0 ? -c : c;
}

/// Coefficient of p^m kf^i kg^j of the F+ limiting chamber:
/// -1/4 [theta4^8/h^3 exp(2pu + 4 kf kg T) cot(kg/h)]_{q^0}, csc for rho_f = 1, zero for rho_g != 0.
inline Rational z_limiting(const FormSet &forms, int rho_f, int rho_g, int m, int i, int j)
{
    if (rho_g != 0) {
        return Rational(0);
    }
    // kf only enters through (4 kf kg T)^l / l!, so l = i; the rest of kg comes from cot
    const int k = j - i;
    const Rational c = cot_laurent(k, rho_f == 1);
    if (c.is_zero()) {
        return Rational(0);
    }
    QSeries s = wall_integrand(forms, m, i, 0);
    s = k >= 0 ? s * pow(forms.h_inv, static_cast<unsigned>(k)) : s * forms.h;
    return s.constant_term() * c * Rational(-1, 4);
}

struct ChamberDifference {
    Rational z_half;
    Rational z_fplus;
    Rational wall_sum;
    Rational imaginary_residue;
    std::size_t walls = 0;

    [[nodiscard]] bool holds() const { return z_half - z_fplus == wall_sum && imaginary_residue.is_zero(); }
};

/// Z(F/2+G) from the spin sum, Z(F+) from the closed form, and the wall sum between them.
/// SU(2) uses lambda0 = 0; SO(3) uses lambda0 = F/2.
inline ChamberDifference chamber_difference(const Engine<Rational> &engine, Group group, int m, int i, int j)
{
    const int rho_f = group == Group::SO3 ? 1 : 0;
    ChamberDifference d;
    d.z_half = p1xp1_coefficient(engine, group, m, i, j);
    d.z_fplus = z_limiting(engine.forms(), rho_f, 0, m, i, j);
    const auto walls = enumerate_walls(chamber_half(), chamber_fplus(), rho_f, 0, lambda_sq_budget(m, i + j));
    d.walls = walls.size();
    for (const auto &w : walls) {
        const GaussianRational g = wc_term_complex(engine.forms(), w, m, i, j);
        d.wall_sum += g.re;
        d.imaginary_residue += g.im;
    }
    return d;
}

/// Window covering chamber_difference for m <= max_m, i + j <= max_degree.
inline long chamber_window(int max_m, int max_degree)
{
    return std::max(precision_plan(lattice_setup(Target::P1xP1, Group::SU2), max_m, (max_degree + 1) / 2, max_degree),
                    3L + 2L * max_m + max_degree + 8);
}

} // namespace uplane
