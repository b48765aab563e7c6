#pragma once

// Truncated Laurent series in q^{1/8} over an exact coefficient ring.
//
// A series carries a precision P: every exponent e < P (in units of 1/denom) is
// known exactly, nothing is known at e >= P. Products track the window through
// negative valuations, so extracting a coefficient never silently reads a
// truncated region.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linear_form.hpp"
#include "rational.hpp"

namespace uplane {

inline constexpr long kDefaultDenom = 8;

/// Precision of series that are exact (finite polynomials with nothing truncated).
inline constexpr long kExact = std::numeric_limits<long>::max() / 4;

namespace detail {

/// p + v with p == kExact absorbing.
constexpr long window_shift(long p, long v) { return p >= kExact ? kExact : std::min(p + v, kExact); }

inline std::string exponent_string(long e, long denom)
{
    const long g = std::gcd(e < 0 ? -e : e, denom);
    const long num = e / (g == 0 ? 1 : g);
    const long den = denom / (g == 0 ? denom : g);
    if (e == 0) {
        return "0";
    }
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

} // namespace detail

template <typename C>
class PuiseuxSeries {
public:
    using coeff_type = C;
    using term = std::pair<long, C>;

    /// The zero series, exact.
    PuiseuxSeries() = default;

    explicit PuiseuxSeries(long precision, long denom = kDefaultDenom) : m_denom(denom), m_precision(precision) {}

    /// Builds from (exponent, coefficient) pairs; duplicates are summed, zeros and
    /// anything at or beyond `precision` dropped.
    PuiseuxSeries(std::vector<term> terms, long precision, long denom = kDefaultDenom)
        : m_denom(denom), m_precision(precision)
    {
        std::sort(terms.begin(), terms.end(), [](const term &a, const term &b) { return a.first < b.first; });
        for (auto &t : terms) {
            if (t.first >= m_precision) {
                break;
            }
            if (!m_terms.empty() && m_terms.back().first == t.first) {
                m_terms.back().second += t.second;
                if (ring_traits<C>::is_zero(m_terms.back().second)) {
                    m_terms.pop_back();
                }
            } else if (!ring_traits<C>::is_zero(t.second)) {
                m_terms.push_back(std::move(t));
            }
        }
    }

    static PuiseuxSeries one(long denom = kDefaultDenom) { return monomial(0, C(1), kExact, denom); }

    static PuiseuxSeries monomial(long e, C c, long precision = kExact, long denom = kDefaultDenom)
    {
        std::vector<term> t;
        t.emplace_back(e, std::move(c));
        return PuiseuxSeries(std::move(t), precision, denom);
    }

    [[nodiscard]] long denom() const { return m_denom; }
    [[nodiscard]] long precision() const { return m_precision; }
    [[nodiscard]] bool is_exact() const { return m_precision >= kExact; }
    [[nodiscard]] const std::vector<term> &terms() const { return m_terms; }
    [[nodiscard]] bool is_zero() const { return m_terms.empty(); }

    /// Smallest stored exponent; the precision for a (known) zero series.
    [[nodiscard]] long valuation() const { return m_terms.empty() ? m_precision : m_terms.front().first; }

    /// Coefficient of q^{e/denom}; throws if e is outside the guaranteed window.
    [[nodiscard]] C coefficient(long e) const
    {
        if (e >= m_precision) {
            throw InsufficientPrecision("coefficient of q^" + detail::exponent_string(e, m_denom) +
                                        " requested but series is only known below q^" +
                                        detail::exponent_string(m_precision, m_denom));
        }
        const auto it = std::lower_bound(m_terms.begin(), m_terms.end(), e,
                                         [](const term &t, long x) { return t.first < x; });
        if (it != m_terms.end() && it->first == e) {
            return it->second;
        }
        return C(0);
    }

    /// [.]_{q^0}
    [[nodiscard]] C constant_term() const
    {
        if (m_precision <= 0) {
            throw InsufficientPrecision("constant term requested but series is only known below q^" +
                                        detail::exponent_string(m_precision, m_denom));
        }
        return coefficient(0);
    }

    [[nodiscard]] PuiseuxSeries truncated(long precision) const
    {
        PuiseuxSeries r(std::min(precision, m_precision), m_denom);
        for (const auto &t : m_terms) {
            if (t.first >= r.m_precision) {
                break;
            }
            r.m_terms.push_back(t);
        }
        return r;
    }

    /// Multiplication by q^{e/denom}.
    [[nodiscard]] PuiseuxSeries shifted(long e) const
    {
        PuiseuxSeries r(detail::window_shift(m_precision, e), m_denom);
        r.m_terms.reserve(m_terms.size());
        for (const auto &[x, c] : m_terms) {
            r.m_terms.emplace_back(x + e, c);
        }
        return r;
    }

    /// Coefficient-wise map, e.g. lifting a rational series into the symbolic ring.
    template <typename F>
    [[nodiscard]] auto map(F &&f) const -> PuiseuxSeries<std::decay_t<decltype(f(std::declval<const C &>()))>>
    {
        using D = std::decay_t<decltype(f(std::declval<const C &>()))>;
        std::vector<typename PuiseuxSeries<D>::term> t;
        t.reserve(m_terms.size());
        for (const auto &[e, c] : m_terms) {
            t.emplace_back(e, f(c));
        }
        return PuiseuxSeries<D>(std::move(t), m_precision, m_denom);
    }

    PuiseuxSeries &operator*=(const C &k)
    {
        if (ring_traits<C>::is_zero(k)) {
            m_terms.clear();
            return *this;
        }
        for (auto &t : m_terms) {
            t.second *= k;
        }
        return *this;
    }

    friend PuiseuxSeries operator*(PuiseuxSeries a, const C &k) { return a *= k; }
    friend PuiseuxSeries operator*(const C &k, PuiseuxSeries a) { return a *= k; }
    friend PuiseuxSeries operator-(PuiseuxSeries a)
    {
        for (auto &t : a.m_terms) {
            t.second = C(0) - t.second;
        }
        return a;
    }

    friend PuiseuxSeries operator+(const PuiseuxSeries &a, const PuiseuxSeries &b) { return combine(a, b, false); }
    friend PuiseuxSeries operator-(const PuiseuxSeries &a, const PuiseuxSeries &b) { return combine(a, b, true); }
    PuiseuxSeries &operator+=(const PuiseuxSeries &b) { return *this = combine(*this, b, false); }
    PuiseuxSeries &operator-=(const PuiseuxSeries &b) { return *this = combine(*this, b, true); }

    /// Equality on the common guaranteed window.
    friend bool operator==(const PuiseuxSeries &a, const PuiseuxSeries &b)
    {
        check_denoms(a, b);
        const long w = std::min(a.m_precision, b.m_precision);
        return a.truncated(w).m_terms == b.truncated(w).m_terms;
    }

    /// Equality on exponents below `window`, which must lie inside both windows.
    [[nodiscard]] bool equals_below(const PuiseuxSeries &other, long window) const
    {
        check_denoms(*this, other);
        if (window > m_precision || window > other.m_precision) {
            throw InsufficientPrecision("comparison window q^" + detail::exponent_string(window, m_denom) +
                                        " exceeds a series precision");
        }
        return truncated(window).m_terms == other.truncated(window).m_terms;
    }

    /// "e:c" pairs in ascending exponent order, exponents as reduced fractions.
    [[nodiscard]] std::string to_string() const
    {
        std::ostringstream os;
        bool first = true;
        for (const auto &[e, c] : m_terms) {
            os << (first ? "" : " ") << detail::exponent_string(e, m_denom) << ':' << ring_traits<C>::to_string(c);
            first = false;
        }
        return os.str();
    }

    friend std::ostream &operator<<(std::ostream &os, const PuiseuxSeries &s)
    {
        os << s.to_string();
        if (!s.is_exact()) {
            os << " + O(q^" << detail::exponent_string(s.m_precision, s.m_denom) << ")";
        }
        return os;
    }

    static void check_denoms(const PuiseuxSeries &a, const PuiseuxSeries &b)
    {
        if (a.m_denom != b.m_denom) {
            throw DenominatorMismatch("series exponent denominators differ: " + std::to_string(a.m_denom) + " vs " +
                                      std::to_string(b.m_denom));
        }
    }

private:
    template <typename>
    friend class PuiseuxSeries;

    static PuiseuxSeries combine(const PuiseuxSeries &a, const PuiseuxSeries &b, bool subtract)
    {
        check_denoms(a, b);
        PuiseuxSeries r(std::min(a.m_precision, b.m_precision), a.m_denom);
        r.m_terms.reserve(a.m_terms.size() + b.m_terms.size());
        auto ia = a.m_terms.begin();
        auto ib = b.m_terms.begin();
        const auto push = [&r](long e, C c) {
            if (e < r.m_precision && !ring_traits<C>::is_zero(c)) {
                r.m_terms.emplace_back(e, std::move(c));
            }
        };
        while (ia != a.m_terms.end() || ib != b.m_terms.end()) {
            if (ib == b.m_terms.end() || (ia != a.m_terms.end() && ia->first < ib->first)) {
                push(ia->first, ia->second);
                ++ia;
            } else if (ia == a.m_terms.end() || ib->first < ia->first) {
                push(ib->first, subtract ? C(0) - ib->second : ib->second);
                ++ib;
            } else {
                push(ia->first, subtract ? ia->second - ib->second : ia->second + ib->second);
                ++ia;
                ++ib;
            }
        }
        return r;
    }

    long m_denom = kDefaultDenom;
    long m_precision = kExact;
    std::vector<term> m_terms;
};

template <typename A, typename B>
using product_coeff_t = std::decay_t<decltype(std::declval<const A &>() * std::declval<const B &>())>;

/// Precision of a*b: min(prec(a) + val(b), prec(b) + val(a)).
template <typename A, typename B>
long product_precision(const PuiseuxSeries<A> &a, const PuiseuxSeries<B> &b)
{
    return std::min(detail::window_shift(a.precision(), b.valuation()),
                    detail::window_shift(b.precision(), a.valuation()));
}

/// Cauchy product (schoolbook).
template <typename A, typename B>
PuiseuxSeries<product_coeff_t<A, B>> operator*(const PuiseuxSeries<A> &a, const PuiseuxSeries<B> &b)
{
    using C = product_coeff_t<A, B>;
    if (a.denom() != b.denom()) {
        throw DenominatorMismatch("series exponent denominators differ: " + std::to_string(a.denom()) + " vs " +
                                  std::to_string(b.denom()));
    }
    const long prec = product_precision(a, b);
    if (a.is_zero() || b.is_zero()) {
        return PuiseuxSeries<C>(prec, a.denom());
    }
    const long lo = a.valuation() + b.valuation();
    const long hi = std::min(prec, a.terms().back().first + b.terms().back().first + 1);
    if (hi <= lo) {
        return PuiseuxSeries<C>(prec, a.denom());
    }
    std::vector<C> acc(static_cast<std::size_t>(hi - lo), C(0));
    std::vector<bool> touched(acc.size(), false);
    for (const auto &[ea, ca] : a.terms()) {
        if (ea + b.valuation() >= hi) {
            break;
        }
        for (const auto &[eb, cb] : b.terms()) {
            const long e = ea + eb;
            if (e >= hi) {
                break;
            }
            const auto idx = static_cast<std::size_t>(e - lo);
            acc[idx] += ca * cb;
            touched[idx] = true;
        }
    }
    std::vector<typename PuiseuxSeries<C>::term> out;
    for (std::size_t i = 0; i < acc.size(); ++i) {
        if (touched[i]) {
            out.emplace_back(lo + static_cast<long>(i), std::move(acc[i]));
        }
    }
    return PuiseuxSeries<C>(std::move(out), prec, a.denom());
}

/// [a*b]_{q^0} without forming the full product.
template <typename A, typename B>
product_coeff_t<A, B> constant_term_of_product(const PuiseuxSeries<A> &a, const PuiseuxSeries<B> &b)
{
    using C = product_coeff_t<A, B>;
    if (a.denom() != b.denom()) {
        throw DenominatorMismatch("series exponent denominators differ");
    }
    const long prec = product_precision(a, b);
    if (prec <= 0) {
        throw InsufficientPrecision("constant term of a product outside its guaranteed window (precision q^" +
                                    detail::exponent_string(prec, a.denom()) + ")");
    }
    C acc(0);
    auto jb = b.terms().rbegin();
    for (const auto &[ea, ca] : a.terms()) {
        while (jb != b.terms().rend() && jb->first > -ea) {
            ++jb;
        }
        if (jb == b.terms().rend()) {
            break;
        }
        if (jb->first == -ea) {
            acc += ca * jb->second;
        }
    }
    return acc;
}

/// 1/a. For exact inputs a cap on the result precision is required.
template <typename C>
PuiseuxSeries<C> inverse(const PuiseuxSeries<C> &a, long cap = kExact)
{
    if (a.is_zero()) {
        throw std::domain_error("inverse of a zero series");
    }
    const long v = a.valuation();
    long prec = detail::window_shift(a.precision(), -2 * v);
    prec = std::min(prec, cap);
    if (prec >= kExact) {
        throw InsufficientPrecision("inverse of an exact series needs an explicit precision cap");
    }
    const C inv0 = ring_traits<C>::inverse(a.terms().front().second);
    const long len = prec + v;  // number of coefficients of the normalized inverse
    std::vector<C> b;
    if (len > 0) {
        b.reserve(static_cast<std::size_t>(len));
        b.push_back(inv0);
    }
    for (long n = 1; n < len; ++n) {
        C s(0);
        for (const auto &[e, c] : a.terms()) {
            const long k = e - v;
            if (k == 0) {
                continue;
            }
            if (k > n) {
                break;
            }
            s += c * b[static_cast<std::size_t>(n - k)];
        }
        b.push_back(C(0) - s * inv0);
    }
    std::vector<typename PuiseuxSeries<C>::term> t;
    for (long n = 0; n < len; ++n) {
        t.emplace_back(n - v, std::move(b[static_cast<std::size_t>(n)]));
    }
    return PuiseuxSeries<C>(std::move(t), prec, a.denom());
}

/// a^k by binary exponentiation; a^0 = 1 (exact).
template <typename C>
PuiseuxSeries<C> pow(const PuiseuxSeries<C> &a, unsigned k)
{
    PuiseuxSeries<C> result = PuiseuxSeries<C>::one(a.denom());
    PuiseuxSeries<C> base = a;
    while (k > 0) {
        if (k & 1U) {
            result = result * base;
        }
        k >>= 1U;
        if (k > 0) {
            base = base * base;
        }
    }
    return result;
}

/// q d/dq: c q^{e/8} -> c (e/8) q^{e/8}.
template <typename C>
PuiseuxSeries<C> q_derive(const PuiseuxSeries<C> &a)
{
    std::vector<typename PuiseuxSeries<C>::term> t;
    t.reserve(a.terms().size());
    for (const auto &[e, c] : a.terms()) {
        t.emplace_back(e, c * ring_traits<C>::from_rational(Rational(e, a.denom())));
    }
    return PuiseuxSeries<C>(std::move(t), a.precision(), a.denom());
}

template <CoeffRing C>
PuiseuxSeries<C> lift(const PuiseuxSeries<Rational> &s)
{
    if constexpr (std::is_same_v<C, Rational>) {
        return s;
    } else {
        return s.map([](const Rational &x) { return ring_traits<C>::from_rational(x); });
    }
}

using QSeries = PuiseuxSeries<Rational>;

} // namespace uplane
