#pragma once

// Holomorphic parts Q+_ab of the four harmonic Maass forms, Hurwitz class
// numbers, and the mock theta function M.

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "errors.hpp"
#include "linear_form.hpp"
#include "series.hpp"

namespace uplane {

/// Hurwitz class number H(n), with H(0) = -1/12.
///
/// Enumerates reduced forms [a, b, c] of discriminant -n: |b| <= a <= c, b >= 0
/// when |b| = a or a = c. Classes of a(x^2+y^2) weigh 1/2, of a(x^2+xy+y^2) 1/3.
inline Rational hurwitz(long n)
{
    if (n < 0) {
        throw std::invalid_argument("hurwitz: negative index");
    }
    if (n == 0) {
        return Rational(-1, 12);
    }
    if (n % 4 == 1 || n % 4 == 2) {
        return Rational(0);
    }
    Rational total(0);
    for (long a = 1; 3 * a * a <= n; ++a) {
        // b in (-a, a] so b = -a is folded into b = a
        for (long b = -a + 1; b <= a; ++b) {
            const long num = b * b + n;
            if (num % (4 * a) != 0) {
                continue;
            }
            const long c = num / (4 * a);
            if (c < a || (c == a && b < 0)) {
                continue;
            }
            if (b == 0 && a == c) {
                total += Rational(1, 2);
            } else if (b == a && a == c) {
                total += Rational(1, 3);
            } else {
                total += Rational(1);
            }
        }
    }
    return total;
}

/// Memoized Hurwitz values for 0..limit.
class HurwitzTable {
public:
    explicit HurwitzTable(long limit = 0) { extend(limit); }

    void extend(long limit)
    {
        for (long n = static_cast<long>(m_values.size()); n <= limit; ++n) {
            m_values.push_back(hurwitz(n));
        }
    }

    [[nodiscard]] const Rational &operator()(long n)
    {
        extend(n);
        return m_values[static_cast<std::size_t>(n)];
    }

private:
    std::vector<Rational> m_values;
};

enum class MaassFamily { Q10, Q00, Q01, Q11 };

inline MaassFamily maass_family(int a, int b)
{
    if (a == 1 && b == 0) return MaassFamily::Q10;
    if (a == 0 && b == 0) return MaassFamily::Q00;
    if (a == 0 && b == 1) return MaassFamily::Q01;
    if (a == 1 && b == 1) return MaassFamily::Q11;
    throw std::invalid_argument("maass_family: a, b must be 0 or 1");
}

/// Table-backed coefficients H_l and R_n; seeded with the known values, extensible from files.
class CoefficientTables {
public:
    CoefficientTables()
    {
        const long h[] = {1, 28, 39, 196, 161};
        for (int l = 0; l < 5; ++l) {
            m_values[{Symbol::Kind::H, l}] = Rational(h[l]);
        }
        const Rational r[] = {Rational(-1, 8), Rational(-1, 4), Rational(1, 2), Rational(-1), Rational(5, 4)};
        for (int n = 0; n < 5; ++n) {
            m_values[{Symbol::Kind::R, n}] = r[n];
        }
    }

    [[nodiscard]] std::optional<Rational> get(const Symbol &s) const
    {
        const auto it = m_values.find(s);
        if (it == m_values.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    void set(const Symbol &s, Rational v) { m_values[s] = std::move(v); }

    /// Number of consecutive known entries from index 0.
    [[nodiscard]] int known(Symbol::Kind kind) const
    {
        int n = 0;
        while (m_values.count({kind, n}) != 0) {
            ++n;
        }
        return n;
    }

    [[nodiscard]] SymbolValues values() const
    {
        return [this](const Symbol &s) {
            auto v = get(s);
            if (!v) {
                throw MissingCoefficient(s.name(), "no value for " + s.name());
            }
            return *v;
        };
    }

    /// Lines "H5 123" or "R7 -3/4"; blank lines and '#' comments are skipped.
    void load(std::istream &in)
    {
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (const auto hash = line.find('#'); hash != std::string::npos) {
                line.erase(hash);
            }
            std::istringstream ls(line);
            std::string sym;
            std::string val;
            if (!(ls >> sym)) {
                continue;
            }
            if (!(ls >> val) || sym.size() < 2 || (sym[0] != 'H' && sym[0] != 'R')) {
                throw std::invalid_argument("coefficient table line " + std::to_string(lineno) + ": expected 'H<l> value' or 'R<n> value'");
            }
            const auto form = LinearForm::parse(sym);
            const auto &[s, c] = *form.terms().begin();
            set(s, Rational::parse(val));
        }
    }

    void load_file(const std::string &path)
    {
        std::ifstream in(path);
        if (!in) {
            throw std::invalid_argument("cannot open coefficient table '" + path + "'");
        }
        load(in);
    }

    /// Seeded tables plus the file named by UPLANE_DATA, if set.
    static CoefficientTables from_environment()
    {
        CoefficientTables t;
        if (const char *path = std::getenv("UPLANE_DATA"); path != nullptr && *path != '\0') {
            t.load_file(path);
        }
        return t;
    }

private:
    std::map<Symbol, Rational> m_values;
};

/// Exponent (in eighths) of the l-th term of a family.
inline long maass_exponent(MaassFamily f, long l)
{
    switch (f) {
    case MaassFamily::Q10: return 4 * l - 1;  // l >= 1
    case MaassFamily::Q11: return 4 * l - 1;
    case MaassFamily::Q00:
    case MaassFamily::Q01: return 4 * l;
    }
    return 0;
}

/// Q+ of a family, known below q^{precision/8}.
///
/// Numeric mode throws MissingCoefficient for the first table entry the window
/// needs but the tables lack; symbolic mode emits H_l / R_n as symbols.
template <CoeffRing C>
PuiseuxSeries<C> q_plus(MaassFamily family, long precision, const CoefficientTables &tables)
{
    std::vector<typename PuiseuxSeries<C>::term> terms;
    const bool hurwitz_backed = family == MaassFamily::Q10 || family == MaassFamily::Q00;
    const Symbol::Kind kind = family == MaassFamily::Q11 ? Symbol::Kind::H : Symbol::Kind::R;
    for (long l = family == MaassFamily::Q10 ? 1 : 0; maass_exponent(family, l) < precision; ++l) {
        const long e = maass_exponent(family, l);
        if (hurwitz_backed) {
            const Rational v = hurwitz(family == MaassFamily::Q10 ? 4 * l - 1 : 4 * l);
            if (!v.is_zero()) {
                terms.emplace_back(e, ring_traits<C>::from_rational(v));
            }
            continue;
        }
        const Symbol s{kind, static_cast<int>(l)};
        if constexpr (std::is_same_v<C, LinearForm>) {
            terms.emplace_back(e, LinearForm::symbol(s));
        } else {
            const auto v = tables.get(s);
            if (!v) {
                throw MissingCoefficient(s.name(), "coefficient " + s.name() +
                                                       " is not tabulated; use symbolic mode or supply it in a data file");
            }
            if (!v->is_zero()) {
                terms.emplace_back(e, *v);
            }
        }
    }
    return PuiseuxSeries<C>(std::move(terms), precision);
}

/// M(q) with exponents in eighths, i.e. the stored coefficient at e is the
/// coefficient of q^e in M(q^8) = q^{-1} sum_n (-1)^{n+1} q^{8(n+1)^2}
/// prod_{k<=n}(1 - q^{16k-8}) / prod_{k<=n+1}(1 + q^{16k-8})^2.
inline QSeries mock_theta_M(long precision)
{
    QSeries total(precision);
    for (long n = 0; 8 * (n + 1) * (n + 1) - 1 < precision; ++n) {
        QSeries num = QSeries::monomial(8 * (n + 1) * (n + 1) - 1, Rational(n % 2 == 0 ? -1 : 1));
        QSeries den = QSeries::one();
        for (long k = 1; k <= n + 1; ++k) {
            const QSeries f = QSeries::one() + QSeries::monomial(16 * k - 8, Rational(1));
            den = den * f * f;
            if (k <= n) {
                num = num * (QSeries::one() - QSeries::monomial(16 * k - 8, Rational(1)));
            }
        }
        total += (num * inverse(den, precision)).truncated(precision);
    }
    return total;
}

} // namespace uplane
