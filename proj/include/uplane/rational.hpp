#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace uplane {

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long n) : m_value(n) {}  // NOLINT(google-explicit-constructor)
    Rational(int n) : m_value(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den)
    {
        if (den == 0) {
            throw std::domain_error("Rational: zero denominator");
        }
        m_value = mpq_class(num, den);
        m_value.canonicalize();
    }
    explicit Rational(const mpz_class &n) : m_value(n) {}
    Rational(const mpz_class &num, const mpz_class &den)
    {
        if (den == 0) {
            throw std::domain_error("Rational: zero denominator");
        }
        m_value = mpq_class(num, den);
        m_value.canonicalize();
    }
    explicit Rational(mpq_class v) : m_value(std::move(v)) { m_value.canonicalize(); }

    /// Parses "p", "-p" or "p/q" (decimal).
    static Rational parse(std::string_view text)
    {
        std::string s(text);
        const auto trim = [](std::string &t) {
            const auto b = t.find_first_not_of(" \t\r\n");
            const auto e = t.find_last_not_of(" \t\r\n");
            t = (b == std::string::npos) ? std::string{} : t.substr(b, e - b + 1);
        };
        trim(s);
        if (s.empty()) {
            throw std::invalid_argument("Rational::parse: empty string");
        }
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                return Rational(mpz_class(s.front() == '+' ? s.substr(1) : s, 10));
            }
            std::string num = s.substr(0, slash);
            std::string den = s.substr(slash + 1);
            trim(num);
            trim(den);
            if (!num.empty() && num.front() == '+') {
                num.erase(0, 1);
            }
            return Rational(mpz_class(num, 10), mpz_class(den, 10));
        } catch (const std::invalid_argument &) {
            throw std::invalid_argument("Rational::parse: malformed rational '" + s + "'");
        }
    }

    [[nodiscard]] mpz_class numerator() const { return m_value.get_num(); }
    [[nodiscard]] mpz_class denominator() const { return m_value.get_den(); }
    [[nodiscard]] const mpq_class &raw() const { return m_value; }

    [[nodiscard]] bool is_zero() const { return sgn(m_value) == 0; }
    [[nodiscard]] bool is_integer() const { return m_value.get_den() == 1; }
    [[nodiscard]] int sign() const { return sgn(m_value); }

    [[nodiscard]] std::string to_string() const
    {
        if (is_integer()) {
            return m_value.get_num().get_str();
        }
        return m_value.get_num().get_str() + "/" + m_value.get_den().get_str();
    }

    [[nodiscard]] double to_double() const { return m_value.get_d(); }

    Rational &operator+=(const Rational &o)
    {
        m_value += o.m_value;
        return *this;
    }
    Rational &operator-=(const Rational &o)
    {
        m_value -= o.m_value;
        return *this;
    }
    Rational &operator*=(const Rational &o)
    {
        m_value *= o.m_value;
        return *this;
    }
    Rational &operator/=(const Rational &o)
    {
        if (o.is_zero()) {
            throw std::domain_error("Rational: division by zero");
        }
        m_value /= o.m_value;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
    friend Rational operator-(const Rational &a) { return Rational(mpq_class(-a.m_value)); }

    friend bool operator==(const Rational &a, const Rational &b) { return a.m_value == b.m_value; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        const int c = cmp(a.m_value, b.m_value);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.to_string(); }

    /// Multiplicative inverse; throws on zero.
    [[nodiscard]] Rational inverse() const
    {
        if (is_zero()) {
            throw std::domain_error("Rational: inverse of zero");
        }
        return Rational(mpq_class(1) / m_value);
    }

private:
    mpq_class m_value{0};
};

/// n! as an exact rational.
inline Rational factorial(long n)
{
    if (n < 0) {
        throw std::domain_error("factorial of a negative integer");
    }
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(r);
}

inline Rational binomial(long n, long k)
{
    if (k < 0 || k > n) {
        return Rational(0);
    }
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

/// base^e for integer e (negative e allowed when base is nonzero).
inline Rational power(const Rational &base, long e)
{
    if (e < 0) {
        return power(base.inverse(), -e);
    }
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(num, den);
}

} // namespace uplane
