#pragma once

#include <stdexcept>
#include <vector>

#include "series.hpp"

namespace uplane {

/// Polynomial in the blowup variable mu, truncated at mu_degree, with q-series coefficients.
template <typename C>
class MuPoly {
public:
    MuPoly() = default;
    explicit MuPoly(int mu_degree, long denom = kDefaultDenom)
        : m_coeffs(static_cast<std::size_t>(checked(mu_degree)) + 1, PuiseuxSeries<C>(kExact, denom))
    {
    }

    /// The constant polynomial c.
    static MuPoly constant(int mu_degree, PuiseuxSeries<C> c)
    {
        MuPoly p(mu_degree, c.denom());
        p.m_coeffs[0] = std::move(c);
        return p;
    }

    [[nodiscard]] int mu_degree() const { return static_cast<int>(m_coeffs.size()) - 1; }

    /// Coefficient of mu^k; zero (exact) for k beyond mu_degree is an error.
    [[nodiscard]] const PuiseuxSeries<C> &operator[](int k) const
    {
        if (k < 0 || k > mu_degree()) {
            throw std::out_of_range("MuPoly: mu power " + std::to_string(k) + " outside [0, " +
                                    std::to_string(mu_degree()) + "]");
        }
        return m_coeffs[static_cast<std::size_t>(k)];
    }

    void set(int k, PuiseuxSeries<C> s)
    {
        if (k < 0 || k > mu_degree()) {
            throw std::out_of_range("MuPoly::set: mu power outside range");
        }
        m_coeffs[static_cast<std::size_t>(k)] = std::move(s);
    }

    [[nodiscard]] const std::vector<PuiseuxSeries<C>> &coefficients() const { return m_coeffs; }

    friend MuPoly operator+(const MuPoly &a, const MuPoly &b)
    {
        check_degrees(a, b);
        MuPoly r = a;
        for (std::size_t k = 0; k < r.m_coeffs.size(); ++k) {
            r.m_coeffs[k] += b.m_coeffs[k];
        }
        return r;
    }

    /// Truncated product; per-coefficient q-precision follows the series rules.
    friend MuPoly operator*(const MuPoly &a, const MuPoly &b) { return mu_mul(a, b); }

    friend MuPoly mu_mul(const MuPoly &a, const MuPoly &b)
    {
        check_degrees(a, b);
        const int d = a.mu_degree();
        MuPoly r(d, a.m_coeffs.front().denom());
        for (int i = 0; i <= d; ++i) {
            if (a.m_coeffs[i].is_zero() && a.m_coeffs[i].is_exact()) {
                continue;
            }
            for (int j = 0; i + j <= d; ++j) {
                if (b.m_coeffs[j].is_zero() && b.m_coeffs[j].is_exact()) {
                    continue;
                }
                r.m_coeffs[i + j] += a.m_coeffs[i] * b.m_coeffs[j];
            }
        }
        return r;
    }

    friend MuPoly operator*(MuPoly a, const PuiseuxSeries<C> &s)
    {
        for (auto &c : a.m_coeffs) {
            c = c * s;
        }
        return a;
    }

private:
    static int checked(int d)
    {
        if (d < 0) {
            throw std::invalid_argument("MuPoly: negative mu_degree");
        }
        return d;
    }

    static void check_degrees(const MuPoly &a, const MuPoly &b)
    {
        if (a.mu_degree() != b.mu_degree()) {
            throw std::invalid_argument("MuPoly: incompatible mu_degree " + std::to_string(a.mu_degree()) + " vs " +
                                        std::to_string(b.mu_degree()));
        }
    }

    std::vector<PuiseuxSeries<C>> m_coeffs{PuiseuxSeries<C>()};
};

/// exp(x * mu^2) = sum_k x^k mu^{2k} / k!, truncated at mu_degree.
template <typename C>
MuPoly<C> exp_mu_squared(const PuiseuxSeries<C> &x, int mu_degree)
{
    MuPoly<C> r(mu_degree, x.denom());
    PuiseuxSeries<C> power = PuiseuxSeries<C>::one(x.denom());
    for (int k = 0; 2 * k <= mu_degree; ++k) {
        if (k > 0) {
            power = power * x;
        }
        r.set(2 * k, power * ring_traits<C>::from_rational(factorial(k).inverse()));
    }
    return r;
}

} // namespace uplane
