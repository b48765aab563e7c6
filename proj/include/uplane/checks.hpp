#pragma once

// Invariant suites shared by `uplane check` and the acceptance runner.

#include <chrono>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chambers.hpp"
#include "engine.hpp"
#include "forms.hpp"
#include "maass.hpp"

namespace uplane::checks {

struct Outcome {
    std::string name;
    bool ok = true;
    std::string detail;
    double seconds = 0;
};

/// Collects failures; keeps the first few for reporting.
class Recorder {
public:
    explicit Recorder(std::string name) : m_name(std::move(name)), m_start(std::chrono::steady_clock::now()) {}

    void expect(bool cond, const std::string &what)
    {
        ++m_count;
        if (!cond) {
            if (m_failures++ == 0) {
                m_first = what;
            }
        }
    }

    void note(const std::string &s) { m_notes += (m_notes.empty() ? "" : "; ") + s; }

    [[nodiscard]] Outcome finish() const
    {
        Outcome o;
        o.name = m_name;
        o.ok = m_failures == 0;
        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - m_start).count();
        std::ostringstream d;
        d << m_count - m_failures << "/" << m_count << " assertions";
        if (!o.ok) {
            d << ", first failure: " << m_first;
        }
        if (!m_notes.empty()) {
            d << "; " << m_notes;
        }
        o.detail = d.str();
        return o;
    }

private:
    std::string m_name;
    std::chrono::steady_clock::time_point m_start;
    long m_count = 0;
    long m_failures = 0;
    std::string m_first;
    std::string m_notes;
};

template <typename F>
void guarded(Recorder &r, const std::string &what, F &&f)
{
    try {
        f();
    } catch (const std::exception &e) {
        r.expect(false, what + ": " + e.what());
    }
}

// Reference values: the D table at (m,n) in {(0,0),(0,2),(1,1),(2,0)}.
struct GoldenRow {
    int m, n;
    const char *d11, *d11_sym, *d01, *d01_sym;
};

inline constexpr GoldenRow kGoldenTable[] = {
    {0, 0, "1", "1/4*H1-6*H0", "-3/2", "-1/2*R1+13*R0"},
    {0, 2, "3/16", "49/64*H2-9/4*H1+2133/64*H0", "1", "-2*R2+7*R1-30*R0"},
    {1, 1, "5/16", "7/64*H2-1/4*H1+195/64*H0", "-1", "-1/4*R2+1/2*R1+6*R0"},
    {2, 0, "19/16", "1/64*H2+1/4*H1-411/64*H0", "-13/8", "-1/32*R2-7/16*R1+55/4*R0"},
};

inline Outcome golden_table()
{
    Recorder r("golden D table");
    for (const auto &row : kGoldenTable) {
        const std::string at = "(" + std::to_string(row.m) + "," + std::to_string(row.n) + ")";
        guarded(r, at, [&] {
            const Rational d11 = d_coeff<Rational>(1, 1, row.m, row.n);
            const Rational d01 = d_coeff<Rational>(0, 1, row.m, row.n);
            const LinearForm s11 = d_coeff<LinearForm>(1, 1, row.m, row.n);
            const LinearForm s01 = d_coeff<LinearForm>(0, 1, row.m, row.n);
            r.expect(d11 == Rational::parse(row.d11), "D11" + at + " = " + d11.to_string());
            r.expect(d01 == Rational::parse(row.d01), "D01" + at + " = " + d01.to_string());
            r.expect(s11 == LinearForm::parse(row.d11_sym), "D11" + at + " symbolic = " + s11.to_string());
            r.expect(s01 == LinearForm::parse(row.d01_sym), "D01" + at + " symbolic = " + s01.to_string());
        });
    }
    return r.finish();
}

inline Outcome maass_data()
{
    Recorder r("Hurwitz table, Q11+, M(q^8)");
    const std::pair<long, Rational> table[] = {{0, Rational(-1, 12)}, {3, Rational(1, 3)}, {4, Rational(1, 2)},
                                               {7, Rational(1)},      {8, Rational(1)},    {11, Rational(1)},
                                               {12, Rational(4, 3)}};
    for (const auto &[n, v] : table) {
        r.expect(hurwitz(n) == v, "H(" + std::to_string(n) + ") = " + hurwitz(n).to_string());
    }
    for (long n = 1; n <= 400; ++n) {
        const bool vanishes = hurwitz(n).is_zero();
        r.expect(vanishes == (n % 4 == 1 || n % 4 == 2), "H(" + std::to_string(n) + ") vanishing pattern");
    }
    guarded(r, "Q11+", [&] {
        // q^{-1/8}(1 + 28 q^{1/2} + 39 q + 196 q^{3/2} + 161 q^2), known below q^{17/8}
        const QSeries expect({{-1, Rational(1)}, {3, Rational(28)}, {7, Rational(39)}, {11, Rational(196)}, {15, Rational(161)}},
                             17);
        const QSeries q = q_plus<Rational>(MaassFamily::Q11, 17, CoefficientTables());
        r.expect(q.equals_below(expect, 17), "Q11+ = " + q.to_string());
    });
    const QSeries m = mock_theta_M(24);
    const QSeries m_expect({{7, Rational(-1)}, {15, Rational(2)}, {23, Rational(-3)}}, 24);
    r.expect(m.equals_below(m_expect, 24), "M(q^8) = " + m.to_string());
    return r.finish();
}

/// Expresses s as a polynomial in u by triangular elimination from the most negative exponent;
/// returns whether the residual vanishes on the window.
inline bool is_polynomial_in_u(const QSeries &s, const QSeries &u, int max_degree)
{
    QSeries rest = s;
    const Rational lead = u.coefficient(u.valuation());
    for (int d = max_degree; d >= 0; --d) {
        const QSeries ud = pow(u, static_cast<unsigned>(d));
        const long e = -2L * d;
        if (!rest.is_zero() && rest.valuation() < e) {
            return false;
        }
        const Rational c = rest.coefficient(e) * power(lead, d).inverse();
        rest = rest - ud * c;
    }
    return rest.is_zero();
}

inline Outcome blowup_kernels(long window = 64)
{
    Recorder r("blowup kernels");
    guarded(r, "kernels", [&] {
        const MuPoly<Rational> k01 = blowup_kernel(0, 1, 9, window);
        const MuPoly<Rational> k11 = blowup_kernel(1, 1, 9, window);
        const QSeries u2 = basic_form(FormName::u, window + 32) * Rational(2);
        const QSeries one = QSeries::one();
        const auto eq = [&](const QSeries &a, const QSeries &b) { return a.equals_below(b, window); };
        const auto inv_fact = [](int n) { return factorial(n).inverse(); };
        // K01 = 1 - 2 mu^4/4! + 8(2u) mu^6/6! - (32(2u)^2 + 4) mu^8/8!
        r.expect(eq(k01[0], one), "K01 mu^0");
        r.expect(eq(k01[4], one * (Rational(-2) * inv_fact(4))), "K01 mu^4");
        r.expect(eq(k01[6], u2 * (Rational(8) * inv_fact(6))), "K01 mu^6");
        r.expect(eq(k01[8], (u2 * u2 * Rational(32) + one * Rational(4)) * (-inv_fact(8))), "K01 mu^8");
        for (int j : {1, 2, 3, 5, 7}) {
            r.expect(k01[j].truncated(window).is_zero(), "K01 mu^" + std::to_string(j) + " vanishes");
        }
        // K11 = mu - (2u) mu^3/3! + ((2u)^2 + 2) mu^5/5! - ((2u)^3 + 6(2u)) mu^7/7!
        r.expect(eq(k11[1], one), "K11 mu^1");
        r.expect(eq(k11[3], u2 * (-inv_fact(3))), "K11 mu^3");
        r.expect(eq(k11[5], (u2 * u2 + one * Rational(2)) * inv_fact(5)), "K11 mu^5");
        r.expect(eq(k11[7], (u2 * u2 * u2 + u2 * Rational(6)) * (-inv_fact(7))), "K11 mu^7");
        for (int j : {0, 2, 4, 6, 8}) {
            r.expect(k11[j].truncated(window).is_zero(), "K11 mu^" + std::to_string(j) + " vanishes");
        }
        const QSeries u = basic_form(FormName::u, window + 32);
        for (int j = 0; j <= 9; ++j) {
            const int deg = (j + 1) / 2 + 1;
            r.expect(is_polynomial_in_u(k01[j].truncated(window), u.truncated(window), deg),
                     "K01 mu^" + std::to_string(j) + " polynomial in u");
            r.expect(is_polynomial_in_u(k11[j].truncated(window), u.truncated(window), deg),
                     "K11 mu^" + std::to_string(j) + " polynomial in u");
        }
        if (!k11[9].truncated(window).is_zero()) {
            r.note("K11 mu^9 is nonzero, leading term " +
                   k11[9].coefficient(k11[9].valuation()).to_string() + " q^" +
                   detail::exponent_string(k11[9].valuation(), kDefaultDenom));
        }
    });
    return r.finish();
}

/// [mu^1,3,5] D-hat^11 and [mu^0,4,6] D-hat^01 against D, for m + n <= max_total.
/// Checked over linear forms, so the identities hold for any H_l, R_n.
inline Outcome blowup_relations(int max_total = 4)
{
    Recorder r("blowup relations");
    constexpr int s = 1;  // global sign of the (1,1) kernel normalization
    guarded(r, "relations", [&] {
        const Engine<LinearForm> e(precision_plan(lattice_setup(Target::CP2hat, Group::SO3), max_total + 2, max_total, 6),
                                   6);
        const auto inv_fact = [](int n) { return factorial(n).inverse(); };
        for (int m = 0; m <= max_total; ++m) {
            for (int n = 0; m + n <= max_total; ++n) {
                const std::string at = "(" + std::to_string(m) + "," + std::to_string(n) + ")";
                const auto &h11 = e.dhat_coeff(1, 1, m, n);
                const auto &h01 = e.dhat_coeff(0, 1, m, n);
                const LinearForm d11 = e.d_coeff(1, 1, m, n);
                const LinearForm d11_1 = e.d_coeff(1, 1, m + 1, n);
                const LinearForm d11_2 = e.d_coeff(1, 1, m + 2, n);
                const LinearForm d01 = e.d_coeff(0, 1, m, n);
                const LinearForm d01_1 = e.d_coeff(0, 1, m + 1, n);
                r.expect(h11[1] == d11 * Rational(s), "mu^1 D-hat11" + at);
                r.expect(h11[3] == d11_1 * (Rational(-s) * inv_fact(3)), "mu^3 D-hat11" + at);
                r.expect(h11[5] == (d11_2 + d11 * Rational(2)) * (Rational(s) * inv_fact(5)), "mu^5 D-hat11" + at);
                r.expect(h01[0] == d01, "mu^0 D-hat01" + at);
                r.expect(h01[4] == d01 * (Rational(-2) * inv_fact(4)), "mu^4 D-hat01" + at);
                r.expect(h01[6] == d01_1 * (Rational(8) * inv_fact(6)), "mu^6 D-hat01" + at);
            }
        }
    });
    return r.finish();
}

/// Z(F/2+G) - Z(F+) = sum of wall terms on CP1 x CP1, m <= max_m, i + j <= max_degree.
inline Outcome wall_crossing(Group group = Group::SU2, int max_m = 2, int max_degree = 6)
{
    Recorder r(std::string("wall crossing ") + std::string(group_name(group)));
    guarded(r, "wallcross", [&] {
        const Engine<Rational> e(chamber_window(max_m, max_degree), max_degree);
        std::size_t walls = 0;
        std::size_t nonzero = 0;
        for (int m = 0; m <= max_m; ++m) {
            for (int i = 0; i <= max_degree; ++i) {
                for (int j = 0; i + j <= max_degree; ++j) {
                    const ChamberDifference d = chamber_difference(e, group, m, i, j);
                    const std::string at = "(" + std::to_string(m) + "," + std::to_string(i) + "," + std::to_string(j) + ")";
                    r.expect(d.imaginary_residue.is_zero(), "imaginary residue at " + at);
                    r.expect(d.holds(), "identity at " + at + ": " + d.z_half.to_string() + " - " +
                                            d.z_fplus.to_string() + " != " + d.wall_sum.to_string());
                    walls += d.walls;
                    nonzero += d.wall_sum.is_zero() ? 0 : 1;
                }
            }
        }
        r.note(std::to_string(walls) + " wall terms, " + std::to_string(nonzero) + " cells with nonzero wall sum");
    });
    return r.finish();
}

inline Outcome limiting_vanishing()
{
    Recorder r("limiting chamber, rho_g != 0");
    guarded(r, "vanishing", [&] {
        const FormSet f(chamber_window(3, 6));
        int points = 0;
        for (int m = 0; m <= 3 && points < 20; ++m) {
            for (int i = 0; i <= 4 && points < 20; ++i) {
                const int j = (m + 2 * i) % 5;
                for (int rho_f = 0; rho_f <= 1; ++rho_f) {
                    r.expect(z_limiting(f, rho_f, 1, m, i, j).is_zero(), "z_limiting(rho_g = 1)");
                }
                ++points;
            }
        }
        r.note(std::to_string(points) + " index points");
    });
    return r.finish();
}

inline Outcome identities(long window = 256)
{
    Recorder r("theta and E2 identities");
    const QSeries t2 = theta_deriv({1, 0, 0}, window);
    const QSeries t3 = theta_deriv({0, 0, 0}, window);
    const QSeries t4 = theta_deriv({0, 1, 0}, window);
    r.expect(pow(t3, 4).equals_below(pow(t2, 4) + pow(t4, 4), window), "theta3^4 = theta2^4 + theta4^4");
    r.expect((t2 * t3 * t4).equals_below(eta_cubed(window) * Rational(2), window), "theta2 theta3 theta4 = 2 eta^3");
    const QSeries e2 = eisenstein_e2(kDefaultDenom * 26);
    for (long n = 1; n <= 25; ++n) {
        long sigma = 0;
        for (long d = 1; d <= n; ++d) {
            if (n % d == 0) {
                sigma += d;
            }
        }
        r.expect(e2.coefficient(kDefaultDenom * n) == Rational(-24 * sigma), "E2 q^" + std::to_string(n));
    }
    r.expect(e2.coefficient(0) == Rational(1), "E2 constant term");
    return r.finish();
}

/// Random table cells recomputed with the window enlarged by 8.
inline Outcome stability(int cells = 60, unsigned seed = 20240601)
{
    Recorder r("precision stability");
    std::mt19937 rng(seed);
    guarded(r, "stability", [&] {
        struct Cell {
            int kind, a, b, m, n, j;
        };
        std::vector<Cell> picks;
        std::uniform_int_distribution<int> kind(0, 2);
        std::uniform_int_distribution<int> small(0, 3);
        for (int c = 0; c < cells; ++c) {
            const int k = kind(rng);
            const int sector = small(rng);
            picks.push_back({k, sector / 2, sector % 2, small(rng), small(rng) % 3, small(rng)});
        }
        for (const Cell &c : picks) {
            const std::string at = "kind " + std::to_string(c.kind) + " (" + std::to_string(c.a) + "," +
                                   std::to_string(c.b) + "," + std::to_string(c.m) + "," + std::to_string(c.n) + "," +
                                   std::to_string(c.j) + ")";
            if (c.kind == 0) {
                // D over linear forms
                const long w = precision_plan(lattice_setup(Target::CP2, Group::SO3), c.m, c.n, 0);
                const Engine<LinearForm> e0(w, 0);
                const Engine<LinearForm> e1(w + 8, 0);
                r.expect(e0.d_coeff(c.a, 1, c.m, c.n) == e1.d_coeff(c.a, 1, c.m, c.n), at);
            } else if (c.kind == 1) {
                // CP1 x CP1 monomial, numeric
                const int i = c.j % 3;
                const int j = c.n + 1;
                const long w = chamber_window(c.m, i + j);
                const Engine<Rational> e0(w, i + j);
                const Engine<Rational> e1(w + 8, i + j);
                r.expect(p1xp1_coefficient(e0, Group::SU2, c.m, i, j) == p1xp1_coefficient(e1, Group::SU2, c.m, i, j),
                         at);
            } else {
                // D-hat over linear forms, all mu powers
                const int mu = 6;
                const long w = precision_plan(lattice_setup(Target::CP2hat, Group::SO3), c.m, c.n, mu);
                const Engine<LinearForm> e0(w, mu);
                const Engine<LinearForm> e1(w + 8, mu);
                r.expect(e0.dhat_coeff(c.a, c.b, c.m, c.n) == e1.dhat_coeff(c.a, c.b, c.m, c.n), at);
            }
        }
        r.note(std::to_string(picks.size()) + " cells");
    });
    return r.finish();
}

} // namespace uplane::checks
