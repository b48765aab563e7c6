#pragma once

// q-expansions of the classical modular objects: theta nullwerte and their
// v-derivatives, eta^3, E_2, the Seiberg-Witten quantities u, h, T, f_2, and the
// blowup kernels e^{-mu^2 T} theta_ab(mu / 2 pi h) / theta_4.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "mu_poly.hpp"
#include "series.hpp"

namespace uplane {

enum class FormName { theta2, theta3, theta4, eta3, E2, u, h, T, f2 };

inline constexpr std::array<std::pair<std::string_view, FormName>, 9> kFormNames{{
    {"theta2", FormName::theta2},
    {"theta3", FormName::theta3},
    {"theta4", FormName::theta4},
    {"eta3", FormName::eta3},
    {"E2", FormName::E2},
    {"u", FormName::u},
    {"h", FormName::h},
    {"T", FormName::T},
    {"f2", FormName::f2},
}};

inline std::optional<FormName> parse_form_name(std::string_view s)
{
    for (const auto &[name, f] : kFormNames) {
        if (name == s) {
            return f;
        }
    }
    return std::nullopt;
}

inline std::string_view form_name(FormName f)
{
    for (const auto &[name, g] : kFormNames) {
        if (g == f) {
            return name;
        }
    }
    return "?";
}

/// Order-k v-derivative of theta_ab at v = 0, phase-normalized.
struct ThetaDerivSpec {
    int a = 0;
    int b = 0;
    int k = 0;
};

/// theta_ab^{(k)}(0|tau) = pi^k * i^{k + ab} * theta_deriv({a, b, k}).
///
/// The stored series is S = sum_n (-1)^{nb} (2n+a)^k q^{(2n+a)^2/8}; it vanishes
/// identically iff k + ab is odd (pair n with -n-a). For (1,1,1), S = 2 eta^3 and
/// the phase i^2 reproduces theta_1'(0) = -2 pi eta^3.
inline QSeries theta_deriv(const ThetaDerivSpec &spec, long precision)
{
    if ((spec.a != 0 && spec.a != 1) || (spec.b != 0 && spec.b != 1) || spec.k < 0) {
        throw std::invalid_argument("theta_deriv: need a, b in {0,1} and k >= 0");
    }
    std::vector<QSeries::term> terms;
    // (2n+a)^2 < precision  <=>  |2n+a| < sqrt(precision)
    for (long m = spec.a; m * m < precision; m += 2) {
        // m = 2n + a with n >= 0, and its partner -m = 2n' + a with n' = -n - a
        const long n = (m - spec.a) / 2;
        const long n_neg = -n - spec.a;
        const auto add = [&](long val, long nn) {
            Rational c = power(Rational(val), spec.k);
            if (spec.b == 1 && (nn % 2 != 0)) {
                c = -c;
            }
            terms.emplace_back(val * val, std::move(c));
        };
        add(m, n);
        if (m != 0) {
            add(-m, n_neg);
        }
    }
    return QSeries(std::move(terms), precision);
}

/// eta^3 = sum_{n>=0} (-1)^n (2n+1) q^{(2n+1)^2/8}
inline QSeries eta_cubed(long precision)
{
    std::vector<QSeries::term> terms;
    for (long n = 0; (2 * n + 1) * (2 * n + 1) < precision; ++n) {
        terms.emplace_back((2 * n + 1) * (2 * n + 1), Rational(n % 2 == 0 ? (2 * n + 1) : -(2 * n + 1)));
    }
    return QSeries(std::move(terms), precision);
}

/// E_2 = 1 - 24 sum_{n>=1} sigma_1(n) q^n
inline QSeries eisenstein_e2(long precision)
{
    const long top = precision <= 0 ? 0 : (precision - 1) / kDefaultDenom;
    std::vector<long> sigma(static_cast<std::size_t>(top + 1), 0);
    for (long d = 1; d <= top; ++d) {
        for (long n = d; n <= top; n += d) {
            sigma[static_cast<std::size_t>(n)] += d;
        }
    }
    std::vector<QSeries::term> terms;
    terms.emplace_back(0, Rational(1));
    for (long n = 1; n <= top; ++n) {
        terms.emplace_back(kDefaultDenom * n, Rational(-24 * sigma[static_cast<std::size_t>(n)]));
    }
    return QSeries(std::move(terms), precision);
}

/// Every derived form at one raw working window; precisions degrade through
/// the inversions and are tracked per series.
struct FormSet {
    long window = 0;
    QSeries theta2, theta3, theta4, eta3, e2;
    QSeries h, h_inv, u, T, f2, f2_inv, theta4_inv;

    explicit FormSet(long w) : window(w)
    {
        theta2 = theta_deriv({1, 0, 0}, w);
        theta3 = theta_deriv({0, 0, 0}, w);
        theta4 = theta_deriv({0, 1, 0}, w);
        eta3 = eta_cubed(w);
        e2 = eisenstein_e2(w);
        const QSeries t23 = theta2 * theta3;
        h = t23 * Rational(1, 2);
        h_inv = inverse(h);
        // u = (theta2^4 + theta3^4) / (2 (theta2 theta3)^2)
        u = (pow(theta2, 4) + pow(theta3, 4)) * inverse(t23 * t23) * Rational(1, 2);
        // T = -(E2 / h^2 - 8u) / 24
        T = (e2 * h_inv * h_inv - u * Rational(8)) * Rational(-1, 24);
        const QSeries t4_8 = pow(theta4, 8);
        // f2 = theta2 theta3 / (2 theta4^8) = h / theta4^8
        f2 = h * inverse(t4_8);
        f2_inv = t4_8 * h_inv;
        theta4_inv = inverse(theta4);
    }

    [[nodiscard]] const QSeries &get(FormName f) const
    {
        switch (f) {
        case FormName::theta2: return theta2;
        case FormName::theta3: return theta3;
        case FormName::theta4: return theta4;
        case FormName::eta3: return eta3;
        case FormName::E2: return e2;
        case FormName::u: return u;
        case FormName::h: return h;
        case FormName::T: return T;
        case FormName::f2: return f2;
        }
        throw std::invalid_argument("unknown form");
    }
};

/// Repeats `build(window)` with growing windows until the result is known below `precision`.
template <typename Build>
auto build_to_precision(long precision, Build &&build) -> decltype(build(0L))
{
    long margin = 16;
    for (int attempt = 0; attempt < 12; ++attempt, margin *= 2) {
        auto r = build(precision + margin);
        if (r.precision() >= precision) {
            return r.truncated(precision);
        }
    }
    throw InsufficientPrecision("could not reach the requested precision");
}

/// q-expansion of a named form, known exactly below q^{precision/8}.
inline QSeries basic_form(FormName name, long precision)
{
    if (precision <= 0) {
        throw std::invalid_argument("basic_form: precision must be positive");
    }
    return build_to_precision(precision, [name](long w) { return FormSet(w).get(name); });
}

/// Sign applied to the (1,1) kernel so that it equals the SO(3) blowup function
/// -theta_1(mu/2 pi h)/theta_4 e^{-mu^2 T}; the (1,1) mu^1 coefficient is then +1.
inline constexpr int kKernelSign11 = -1;

/// K_ab(mu) = e^{-mu^2 T} theta_ab(mu/(2 pi h)) / theta_4, with the (1,1) sign above.
///
/// With v = mu/(2 pi h), the v^k Taylor term of theta_ab contributes
/// mu^k i^{k+ab} S_k / (2^k k! h^k): the pi's cancel and only even k + ab
/// survive, leaving the real factor (-1)^{(k+ab)/2}.
inline MuPoly<Rational> blowup_kernel_from(const FormSet &forms, int a, int b, int mu_degree)
{
    if ((a != 0 && a != 1) || (b != 0 && b != 1)) {
        throw std::invalid_argument("blowup_kernel: a, b must be 0 or 1");
    }
    const int ab = a * b;
    MuPoly<Rational> theta_part(mu_degree);
    QSeries h_pow = QSeries::one();
    for (int k = 0; k <= mu_degree; ++k) {
        if (k > 0) {
            h_pow = h_pow * forms.h_inv;
        }
        if ((k + ab) % 2 != 0) {
            continue;
        }
        Rational c = (((k + ab) / 2) % 2 == 0 ? Rational(1) : Rational(-1)) * (power(Rational(2), k) * factorial(k)).inverse();
        if (ab == 1) {
            c *= Rational(kKernelSign11);
        }
        const QSeries s = theta_deriv({a, b, k}, forms.window);
        theta_part.set(k, s * h_pow * forms.theta4_inv * c);
    }
    return mu_mul(exp_mu_squared(-forms.T, mu_degree), theta_part);
}

/// Blowup kernel with every mu-coefficient known below q^{precision/8}.
inline MuPoly<Rational> blowup_kernel(int a, int b, int mu_degree, long precision)
{
    if (mu_degree < 0) {
        throw std::invalid_argument("blowup_kernel: mu_degree must be non-negative");
    }
    long margin = 16 + 2L * mu_degree;
    for (int attempt = 0; attempt < 12; ++attempt, margin *= 2) {
        const FormSet forms(precision + margin);
        MuPoly<Rational> k = blowup_kernel_from(forms, a, b, mu_degree);
        bool ok = true;
        for (const auto &c : k.coefficients()) {
            ok = ok && c.precision() >= precision;
        }
        if (ok) {
            MuPoly<Rational> out(mu_degree);
            for (int j = 0; j <= mu_degree; ++j) {
                out.set(j, k[j].truncated(precision));
            }
            return out;
        }
    }
    throw InsufficientPrecision("blowup_kernel: could not reach the requested precision");
}

} // namespace uplane
