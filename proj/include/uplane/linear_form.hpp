#pragma once

#include <cctype>
#include <compare>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "rational.hpp"

namespace uplane {

/// Unknown table coefficient: H_l (weight 1/2 Maass form) or R_n (the Q01 table).
struct Symbol {
    enum class Kind : char { H = 'H', R = 'R' };
    Kind kind = Kind::H;
    int index = 0;

    [[nodiscard]] std::string name() const { return std::string(1, static_cast<char>(kind)) + std::to_string(index); }

    friend auto operator<=>(const Symbol &, const Symbol &) = default;
};

/// Assignment of rational values to symbols, used by LinearForm::evaluate.
using SymbolValues = std::function<Rational(const Symbol &)>;

/// constant + sum_s c_s * s over the symbols H_l, R_n. No stored coefficient is zero.
class LinearForm {
public:
    LinearForm() = default;
    LinearForm(Rational c) : m_constant(std::move(c)) {}  // NOLINT(google-explicit-constructor)
    LinearForm(int c) : m_constant(c) {}                  // NOLINT(google-explicit-constructor)
    LinearForm(long c) : m_constant(c) {}                 // NOLINT(google-explicit-constructor)

    static LinearForm symbol(Symbol s, Rational coeff = Rational(1))
    {
        LinearForm f;
        if (!coeff.is_zero()) {
            f.m_terms.emplace(s, std::move(coeff));
        }
        return f;
    }

    [[nodiscard]] const Rational &constant() const { return m_constant; }
    [[nodiscard]] const std::map<Symbol, Rational> &terms() const { return m_terms; }
    [[nodiscard]] bool is_constant() const { return m_terms.empty(); }
    [[nodiscard]] bool is_zero() const { return m_terms.empty() && m_constant.is_zero(); }

    [[nodiscard]] Rational coefficient(const Symbol &s) const
    {
        const auto it = m_terms.find(s);
        return it == m_terms.end() ? Rational(0) : it->second;
    }

    [[nodiscard]] Rational evaluate(const SymbolValues &values) const
    {
        Rational r = m_constant;
        for (const auto &[s, c] : m_terms) {
            r += c * values(s);
        }
        return r;
    }

    LinearForm &operator+=(const LinearForm &o)
    {
        m_constant += o.m_constant;
        for (const auto &[s, c] : o.m_terms) {
            accumulate(s, c);
        }
        return *this;
    }
    LinearForm &operator-=(const LinearForm &o)
    {
        m_constant -= o.m_constant;
        for (const auto &[s, c] : o.m_terms) {
            accumulate(s, -c);
        }
        return *this;
    }
    LinearForm &operator*=(const Rational &k)
    {
        if (k.is_zero()) {
            m_terms.clear();
            m_constant = Rational(0);
            return *this;
        }
        m_constant *= k;
        for (auto &[s, c] : m_terms) {
            c *= k;
        }
        return *this;
    }
    /// Only defined when at least one factor is constant; the result must stay linear.
    LinearForm &operator*=(const LinearForm &o)
    {
        if (o.is_constant()) {
            return *this *= o.m_constant;
        }
        if (!is_constant()) {
            throw NonLinearSymbolic("LinearForm: product of two symbolic forms is not linear");
        }
        const Rational k = m_constant;
        *this = o;
        return *this *= k;
    }

    friend LinearForm operator+(LinearForm a, const LinearForm &b) { return a += b; }
    friend LinearForm operator-(LinearForm a, const LinearForm &b) { return a -= b; }
    friend LinearForm operator*(LinearForm a, const LinearForm &b) { return a *= b; }
    friend LinearForm operator*(LinearForm a, const Rational &b) { return a *= b; }
    friend LinearForm operator*(const Rational &a, LinearForm b) { return b *= a; }
    friend LinearForm operator-(LinearForm a) { return a *= Rational(-1); }
    friend LinearForm operator/(LinearForm a, const LinearForm &b)
    {
        if (!b.is_constant()) {
            throw NonLinearSymbolic("LinearForm: division by a symbolic form");
        }
        return a *= b.m_constant.inverse();
    }

    friend bool operator==(const LinearForm &a, const LinearForm &b)
    {
        return a.m_constant == b.m_constant && a.m_terms == b.m_terms;
    }

    [[nodiscard]] LinearForm inverse() const
    {
        if (!is_constant()) {
            throw NonLinearSymbolic("LinearForm: symbolic leading coefficient is not invertible");
        }
        return LinearForm(m_constant.inverse());
    }

    /// Highest symbol index first, constant last: "-1/2*R1+13*R0", "1/4*H1-6*H0".
    [[nodiscard]] std::string to_string() const
    {
        if (is_zero()) {
            return "0";
        }
        std::string out;
        const auto append = [&out](const Rational &c, const std::string &name) {
            const bool neg = c.sign() < 0;
            const Rational mag = neg ? -c : c;
            if (out.empty()) {
                out += neg ? "-" : "";
            } else {
                out += neg ? "-" : "+";
            }
            if (name.empty()) {
                out += mag.to_string();
            } else if (mag == Rational(1)) {
                out += name;
            } else {
                out += mag.to_string() + "*" + name;
            }
        };
        for (auto it = m_terms.rbegin(); it != m_terms.rend(); ++it) {
            append(it->second, it->first.name());
        }
        if (!m_constant.is_zero()) {
            append(m_constant, "");
        }
        return out;
    }

    /// Inverse of to_string; accepts optional whitespace.
    static LinearForm parse(std::string_view text)
    {
        std::string s;
        for (const char ch : text) {
            if (!std::isspace(static_cast<unsigned char>(ch))) {
                s += ch;
            }
        }
        if (s.empty()) {
            throw std::invalid_argument("LinearForm::parse: empty string");
        }
        LinearForm out;
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t end = pos + 1;
            while (end < s.size() && s[end] != '+' && s[end] != '-') {
                ++end;
            }
            std::string term = s.substr(pos, end - pos);
            pos = end;
            bool neg = false;
            if (term.front() == '+' || term.front() == '-') {
                neg = term.front() == '-';
                term.erase(0, 1);
            }
            if (term.empty()) {
                throw std::invalid_argument("LinearForm::parse: dangling sign");
            }
            std::string coeff_text;
            std::string sym_text;
            const auto star = term.find('*');
            if (star != std::string::npos) {
                coeff_text = term.substr(0, star);
                sym_text = term.substr(star + 1);
            } else if (term.front() == 'H' || term.front() == 'R') {
                sym_text = term;
            } else {
                coeff_text = term;
            }
            Rational c = coeff_text.empty() ? Rational(1) : Rational::parse(coeff_text);
            if (neg) {
                c = -c;
            }
            if (sym_text.empty()) {
                out += LinearForm(c);
                continue;
            }
            if (sym_text.size() < 2 || (sym_text.front() != 'H' && sym_text.front() != 'R')) {
                throw std::invalid_argument("LinearForm::parse: unknown symbol '" + sym_text + "'");
            }
            Symbol sym{sym_text.front() == 'H' ? Symbol::Kind::H : Symbol::Kind::R, 0};
            try {
                std::size_t used = 0;
                sym.index = std::stoi(sym_text.substr(1), &used);
                if (used != sym_text.size() - 1) {
                    throw std::invalid_argument("trailing");
                }
            } catch (const std::exception &) {
                throw std::invalid_argument("LinearForm::parse: bad symbol index in '" + sym_text + "'");
            }
            out += symbol(sym, c);
        }
        return out;
    }

    friend std::ostream &operator<<(std::ostream &os, const LinearForm &f) { return os << f.to_string(); }

private:
    void accumulate(const Symbol &s, const Rational &c)
    {
        auto [it, inserted] = m_terms.try_emplace(s, c);
        if (!inserted) {
            it->second += c;
        }
        if (it->second.is_zero()) {
            m_terms.erase(it);
        }
    }

    Rational m_constant{0};
    std::map<Symbol, Rational> m_terms;
};

/// Coefficient-ring traits shared by the series templates.
template <typename C>
struct ring_traits;

template <>
struct ring_traits<Rational> {
    static bool is_zero(const Rational &x) { return x.is_zero(); }
    static Rational inverse(const Rational &x) { return x.inverse(); }
    static std::string to_string(const Rational &x) { return x.to_string(); }
    static Rational from_rational(const Rational &x) { return x; }
    static constexpr const char *mode = "numeric";
};

template <>
struct ring_traits<LinearForm> {
    static bool is_zero(const LinearForm &x) { return x.is_zero(); }
    static LinearForm inverse(const LinearForm &x) { return x.inverse(); }
    static std::string to_string(const LinearForm &x) { return x.to_string(); }
    static LinearForm from_rational(const Rational &x) { return LinearForm(x); }
    static constexpr const char *mode = "symbolic";
};

template <typename C>
concept CoeffRing = requires { ring_traits<C>::mode; };

} // namespace uplane
