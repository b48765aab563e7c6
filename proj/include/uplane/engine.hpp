#pragma once

// Constant-term evaluation of the u-plane coefficients D and D-hat and the
// generating-function tables built from them.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "forms.hpp"
#include "maass.hpp"
#include "mu_poly.hpp"

namespace uplane {

enum class Target { CP2, CP2hat, P1xP1 };
enum class Group { SU2, SO3 };

inline std::string_view target_name(Target t)
{
    switch (t) {
    case Target::CP2: return "cp2";
    case Target::CP2hat: return "cp2hat";
    case Target::P1xP1: return "p1xp1";
    }
    return "?";
}

inline std::string_view group_name(Group g) { return g == Group::SU2 ? "su2" : "so3"; }

struct LatticeSetup {
    Target target = Target::CP2;
    int sigma = 1;
    int a = 1;
    int b = 1;
    std::string chamber;
};

/// The (a,b) sector and chamber the evaluated formulas use for a target and group.
/// For P1xP1 all four sectors enter; a = b = -1 marks the spin sum.
inline LatticeSetup lattice_setup(Target target, Group group)
{
    switch (target) {
    case Target::CP2:
        return group == Group::SO3 ? LatticeSetup{target, 1, 1, 1, "-"} : LatticeSetup{target, 1, 0, 1, "-"};
    case Target::CP2hat:
        return group == Group::SO3 ? LatticeSetup{target, 0, 1, 1, "H-eE"} : LatticeSetup{target, 0, 0, 1, "H-eE"};
    case Target::P1xP1:
        return LatticeSetup{target, 0, -1, -1, "F/2+G"};
    }
    throw std::invalid_argument("unknown target");
}

/// Exact coefficients keyed by (m, n), (m, n, mu power) or (m, i, j); absent keys were not computed.
template <typename C>
struct InvariantTable {
    LatticeSetup setup;
    Group group = Group::SU2;
    std::string variables;
    long precision = 0;
    std::map<std::vector<int>, C> entries;
};

/// Guaranteed-sufficient window (in eighths) for D or D-hat at (m, n) with kernels through mu_degree.
///
/// Valuation budget: 2(m+n) from u, 3+2n from h, 1 from 1/f2, 1 from Q+, mu_degree
/// from the kernel's 1/h powers, plus a margin of 8. Every factor built at window W
/// has precision >= W - 1 + valuation, so this covers q^0 with room to spare.
inline long precision_plan(const LatticeSetup & /*setup*/, int m, int n, int mu_degree)
{
    return 2L * (m + n) + (3L + 2L * n) + 1 + 1 + mu_degree + 8;
}

/// 1 / prod_{i<j} (3/2 - ab + i), i.e. Gamma(3/2-ab)/Gamma(3/2-ab+j).
inline Rational gamma_ratio(int ab, int j)
{
    Rational r(1);
    for (int i = 0; i < j; ++i) {
        r *= (Rational(3, 2) - Rational(ab) + Rational(i)).inverse();
    }
    return r;
}

/// sum_j (-1)^j C(k,j) Gamma-ratio 4^j 3^j E2^{k-j} (q d/dq)^j Q.
template <typename C>
PuiseuxSeries<C> ek_bracket(int k, int ab, const PuiseuxSeries<C> &q, const QSeries &e2)
{
    if (k < 0) {
        throw std::invalid_argument("ek_bracket: negative k");
    }
    PuiseuxSeries<C> total(kExact, q.denom());
    PuiseuxSeries<C> dq = q;
    for (int j = 0; j <= k; ++j) {
        if (j > 0) {
            dq = q_derive(dq);
        }
        Rational c = binomial(k, j) * gamma_ratio(ab, j) * power(Rational(12), j);
        if (j % 2 != 0) {
            c = -c;
        }
        const PuiseuxSeries<C> term = j == k ? dq : pow(e2, static_cast<unsigned>(k - j)) * dq;
        total += term * ring_traits<C>::from_rational(c);
    }
    return total;
}

/// Evaluates D and D-hat over one coefficient ring at a fixed window. Not thread-safe (memoizes).
template <CoeffRing C>
class Engine {
public:
    Engine(long window, int mu_degree, CoefficientTables tables = CoefficientTables())
        : m_forms(std::make_shared<FormSet>(window)), m_mu_degree(mu_degree), m_tables(std::move(tables))
    {
    }

    [[nodiscard]] long window() const { return m_forms->window; }
    [[nodiscard]] int mu_degree() const { return m_mu_degree; }
    [[nodiscard]] const FormSet &forms() const { return *m_forms; }
    [[nodiscard]] const CoefficientTables &tables() const { return m_tables; }

    /// (-1)^{k+ab+1} (2n-ab+1)!/(k!(n-k)!) 2^{m-3k-ab-1} / 3^n * theta4 u^{m+n-k} / (h^{3+2k-ab} f2)
    [[nodiscard]] QSeries r_factor(int a, int b, int m, int n, int k) const
    {
        if (k < 0 || k > n || m < 0) {
            throw std::invalid_argument("r_factor: need 0 <= k <= n and m >= 0");
        }
        const int ab = a * b;
        Rational c = factorial(2 * n - ab + 1) * (factorial(k) * factorial(n - k)).inverse() *
                     power(Rational(2), m - 3 * k - ab - 1) * power(Rational(3), -n);
        if ((k + ab + 1) % 2 != 0) {
            c = -c;
        }
        const FormSet &f = *m_forms;
        return f.theta4 * pow(f.u, static_cast<unsigned>(m + n - k)) *
               pow(f.h_inv, static_cast<unsigned>(3 + 2 * k - ab)) * f.f2_inv * c;
    }

    [[nodiscard]] const MuPoly<Rational> &kernel(int a, int b) const
    {
        auto &slot = m_kernels[static_cast<std::size_t>(2 * a + b)];
        if (!slot) {
            slot = blowup_kernel_from(*m_forms, a, b, m_mu_degree);
        }
        return *slot;
    }

    [[nodiscard]] C d_coeff(int a, int b, int m, int n) const
    {
        C total(0);
        for (int k = 0; k <= n; ++k) {
            const QSeries r = r_factor(a, b, m, n, k);
            const PuiseuxSeries<C> eq = bracket(a, b, k, 1 - r.valuation());
            total += constant_term_of_product(r, eq);
        }
        return total;
    }

    /// mu^0..mu_degree coefficients of D-hat^{ab}_{mn}.
    [[nodiscard]] const std::vector<C> &dhat_coeff(int a, int b, int m, int n) const
    {
        const auto key = std::make_tuple(a, b, m, n);
        if (const auto it = m_dhat.find(key); it != m_dhat.end()) {
            return it->second;
        }
        const MuPoly<Rational> &kern = kernel(a, b);
        long kernel_val = kExact;
        for (const auto &c : kern.coefficients()) {
            if (!c.is_zero()) {
                kernel_val = std::min(kernel_val, c.valuation());
            }
        }
        std::vector<C> out(static_cast<std::size_t>(m_mu_degree) + 1, C(0));
        for (int k = 0; k <= n; ++k) {
            const QSeries r = r_factor(a, b, m, n, k);
            // Q+ only as far as the q^0 extraction can see
            const PuiseuxSeries<C> x = r * bracket(a, b, k, 1 - r.valuation() - kernel_val);
            for (int j = 0; j <= m_mu_degree; ++j) {
                if (kern[j].is_zero()) {
                    continue;
                }
                out[static_cast<std::size_t>(j)] += constant_term_of_product(x, kern[j]);
            }
        }
        return m_dhat.emplace(key, std::move(out)).first->second;
    }

private:
    PuiseuxSeries<C> bracket(int a, int b, int k, long q_precision) const
    {
        const PuiseuxSeries<C> q = q_plus<C>(maass_family(a, b), q_precision, m_tables);
        return ek_bracket(k, a * b, q, m_forms->e2);
    }

    std::shared_ptr<const FormSet> m_forms;
    int m_mu_degree;
    CoefficientTables m_tables;
    mutable std::array<std::optional<MuPoly<Rational>>, 4> m_kernels;
    mutable std::map<std::tuple<int, int, int, int>, std::vector<C>> m_dhat;
};

/// D^{ab}_{mn} at the planned window.
template <CoeffRing C>
C d_coeff(int a, int b, int m, int n, const CoefficientTables &tables = CoefficientTables())
{
    const Engine<C> e(precision_plan(lattice_setup(Target::CP2, Group::SO3), m, n, 0), 0, tables);
    return e.d_coeff(a, b, m, n);
}

/// D-hat^{ab}_{mn} as mu^0..mu_degree coefficients at the planned window.
template <CoeffRing C>
std::vector<C> dhat_coeff(int a, int b, int m, int n, int mu_degree,
                          const CoefficientTables &tables = CoefficientTables())
{
    const Engine<C> e(precision_plan(lattice_setup(Target::CP2hat, Group::SO3), m, n, mu_degree), mu_degree,
                      tables);
    return e.dhat_coeff(a, b, m, n);
}

/// Spin-sum sign: (-1)^{ab} for SU(2), (-1)^{(a+1)b} for SO(3).
inline int spin_sign(Group g, int a, int b)
{
    const int e = g == Group::SU2 ? a * b : (a + 1) * b;
    return e % 2 == 0 ? 1 : -1;
}

/// Coefficient of kf^i kg^j in (kf + kg)^e (kg - kf)^d, with e + d = i + j.
inline Rational kappa_mu_monomial(int e, int d, int i, int j)
{
    if (e + d != i + j) {
        return Rational(0);
    }
    Rational c(0);
    for (int x = std::max(0, i - d); x <= std::min(i, e); ++x) {
        const int y = i - x;  // kf's drawn from the mu factor
        Rational t = binomial(e, x) * binomial(d, y);
        c += y % 2 == 0 ? t : -t;
    }
    return c;
}

/// Coefficient of p^m kf^i kg^j in the CP1xCP1 spin sum at omega = F/2 + G.
template <CoeffRing C>
C p1xp1_coefficient(const Engine<C> &engine, Group group, int m, int i, int j)
{
    C total(0);
    const int deg = i + j;
    if (deg > engine.mu_degree()) {
        throw std::invalid_argument("p1xp1_coefficient: engine mu_degree below i + j");
    }
    for (int a = 0; a <= 1; ++a) {
        for (int b = 0; b <= 1; ++b) {
            const int ab = a * b;
            for (int n = 0; 2 * n - ab + 1 <= deg; ++n) {
                const int e = 2 * n - ab + 1;
                const int d = deg - e;
                const Rational c = kappa_mu_monomial(e, d, i, j);
                if (c.is_zero()) {
                    continue;
                }
                const Rational w =
                    c * Rational(spin_sign(group, a, b)) * (factorial(m) * factorial(e) * Rational(2)).inverse();
                total += engine.dhat_coeff(a, b, m, n)[static_cast<std::size_t>(d)] * ring_traits<C>::from_rational(w);
            }
        }
    }
    return total;
}

/// Generating-function table of a target and group.
///
/// CP2: D^{ab}_{mn} keyed (m, n); CP2hat: [mu^j] D-hat^{ab}_{mn} keyed (m, n, j);
/// P1xP1: coefficient of p^m kf^i kg^j keyed (m, i, j). Cells have m <= max_m and kappa
/// degree (2n - ab + 1, resp. i + j) <= max_degree. A window of 0 selects the plan.
template <CoeffRing C>
InvariantTable<C> z_table(Target target, Group group, int max_m, int max_degree, int mu_degree,
                          const CoefficientTables &tables = CoefficientTables(), long window = 0)
{
    if (max_m < 0 || max_degree < 0 || mu_degree < 0) {
        throw std::invalid_argument("z_table: bounds must be non-negative");
    }
    InvariantTable<C> t;
    t.setup = lattice_setup(target, group);
    t.group = group;
    if (target == Target::P1xP1) {
        mu_degree = max_degree;
        t.variables = "p^m/m! kf^i kg^j, S = kf f + 2 kg g";
        const int max_n = (max_degree + 1) / 2;
        const long w = window > 0 ? window : precision_plan(t.setup, max_m, max_n, mu_degree);
        t.precision = w;
        const Engine<C> engine(w, mu_degree, tables);
        for (int m = 0; m <= max_m; ++m) {
            for (int i = 0; i <= max_degree; ++i) {
                for (int j = 0; i + j <= max_degree; ++j) {
                    t.entries.emplace(std::vector<int>{m, i, j}, p1xp1_coefficient(engine, group, m, i, j));
                }
            }
        }
        return t;
    }
    const int a = t.setup.a;
    const int b = t.setup.b;
    const int ab = a * b;
    const int max_n = max_degree - 1 + ab < 0 ? -1 : (max_degree - 1 + ab) / 2;
    const bool hat = target == Target::CP2hat;
    if (!hat) {
        mu_degree = 0;
    }
    t.variables = ab == 1 ? "p^m/m! kappa^{2n}/(2n)!" : "p^m/m! kappa^{2n+1}/(2n+1)!";
    if (hat) {
        t.variables += " [mu^j]";
    }
    const long w = window > 0 ? window : precision_plan(t.setup, max_m, std::max(max_n, 0), mu_degree);
    t.precision = w;
    const Engine<C> engine(w, mu_degree, tables);
    for (int m = 0; m <= max_m; ++m) {
        for (int n = 0; n <= max_n; ++n) {
            if (!hat) {
                t.entries.emplace(std::vector<int>{m, n}, engine.d_coeff(a, b, m, n));
                continue;
            }
            const auto &poly = engine.dhat_coeff(a, b, m, n);
            for (int j = 0; j <= mu_degree; ++j) {
                t.entries.emplace(std::vector<int>{m, n, j}, poly[static_cast<std::size_t>(j)]);
            }
        }
    }
    return t;
}

} // namespace uplane
