#pragma once

#include <stdexcept>
#include <string>

namespace uplane {

/// A requested coefficient lies outside a series' guaranteed window.
class InsufficientPrecision : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A table-backed coefficient (H_l or R_n) is not available in numeric mode.
class MissingCoefficient : public std::runtime_error {
public:
    MissingCoefficient(std::string symbol, const std::string &what)
        : std::runtime_error(what), m_symbol(std::move(symbol))
    {
    }
    [[nodiscard]] const std::string &symbol() const noexcept { return m_symbol; }

private:
    std::string m_symbol;
};

/// Series with different exponent denominators were combined.
class DenominatorMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A symbolic value was used where a ring operation needs an invertible scalar
/// or a product of two symbolic terms would leave the linear forms.
class NonLinearSymbolic : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A lattice vector with lambda^2 >= 0 was passed where a wall is required.
class NotAWall : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace uplane
