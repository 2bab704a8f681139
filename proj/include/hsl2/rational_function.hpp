#pragma once

#include "hsl2/polynomial.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hsl2 {

/// Names for the variable indices used by a computation session.
class VariablePool {
public:
    VariablePool() = default;
    explicit VariablePool(std::vector<std::string> names);

    /// {m, k}: highest weight and level of a Verma module.
    static const VariablePool& verma();
    /// {kappa, z1..zn, m1..mn}.
    static VariablePool derham(std::size_t n);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t index) const;
    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index(std::string_view name) const;

private:
    std::vector<std::string> names_;
};

// Variable indices of the Verma pool.
inline constexpr std::size_t kVarM = 0;
inline constexpr std::size_t kVarK = 1;

class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class UnboundVariableError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Element of Q(x_0, x_1, ...) kept in canonical form: numerator and
/// denominator coprime in Z[x], denominator with positive leading coefficient,
/// zero represented as 0/1. Canonical form makes equality structural.
class RationalFunction {
public:
    RationalFunction() : den_(1L) {}
    RationalFunction(long value) : num_(value), den_(1L) {}  // NOLINT(google-explicit-constructor)
    explicit RationalFunction(const Integer& value) : num_(value), den_(1L) {}
    explicit RationalFunction(const Rational& value);
    explicit RationalFunction(Polynomial p) : num_(std::move(p)), den_(1L) {}
    /// Normalizes num/den; throws std::domain_error on a zero denominator.
    RationalFunction(Polynomial num, Polynomial den);

    static RationalFunction variable(std::size_t index) { return RationalFunction(Polynomial::variable(index)); }

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    /// Requires is_constant().
    Rational constant_value() const;

    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& other);
    RationalFunction& operator-=(const RationalFunction& other);
    RationalFunction& operator*=(const RationalFunction& other);
    RationalFunction& operator/=(const RationalFunction& other);

    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }

    bool operator==(const RationalFunction& other) const { return num_ == other.num_ && den_ == other.den_; }

    RationalFunction inverse() const;
    RationalFunction pow(int exponent) const;

    /// Replaces a variable by a rational function. Throws PoleError when the
    /// denominator vanishes identically after substitution.
    RationalFunction substitute(std::size_t var, const RationalFunction& value) const;
    /// Specializes the listed variables; the rest stay symbolic.
    RationalFunction partial_evaluate(const std::map<std::size_t, Rational>& point) const;

    /// Serialization: terms in descending lex order, explicit exponents,
    /// "(num)/(den)" when the denominator is not 1.
    std::string to_string(const VariablePool& pool) const;

private:
    void normalize();
    Polynomial num_;
    Polynomial den_;
};

/// Normalizes num/den; std::domain_error on a zero denominator.
RationalFunction rf_normalize(const Polynomial& num, const Polynomial& den);

/// Exact value at a point that binds every variable of `r`.
/// UnboundVariableError if a variable is missing, PoleError if the
/// denominator vanishes there.
Rational rf_eval(const RationalFunction& r, const std::map<std::size_t, Rational>& point);

std::string to_string(const Polynomial& p, const VariablePool& pool);
std::string to_string(const Rational& q);

/// Parses expressions such as "(m^2 - k^2)/(m - k)", "3/7", "-kappa*z1^2".
RationalFunction parse_rational_function(std::string_view text, const VariablePool& pool);
Rational parse_rational(std::string_view text);

}  // namespace hsl2
