#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace hsl2 {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exponent vector over the variable pool. Variables are identified by their
/// pool index; trailing zero exponents are never stored, so the constant
/// monomial is the empty vector.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::uint32_t> exponents);

    static Monomial variable(std::size_t index, std::uint32_t power = 1);

    std::uint32_t exponent(std::size_t var) const {
        return var < exps_.size() ? exps_[var] : 0;
    }
    /// One past the highest variable index with a nonzero exponent.
    std::size_t span() const { return exps_.size(); }
    std::uint32_t total_degree() const;
    bool is_one() const { return exps_.empty(); }
    const std::vector<std::uint32_t>& exponents() const { return exps_; }

    bool divides(const Monomial& other) const;
    Monomial operator*(const Monomial& other) const;
    /// Requires divides(other) == true for `other / *this`.
    Monomial operator/(const Monomial& divisor) const;
    Monomial without(std::size_t var) const;

    /// Lexicographic order, variable 0 most significant.
    std::strong_ordering operator<=>(const Monomial& other) const;
    bool operator==(const Monomial& other) const = default;

private:
    void trim();
    std::vector<std::uint32_t> exps_;
};

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. Terms are kept sorted with the leading (lex-largest)
/// monomial first and no zero coefficients.
class Polynomial {
public:
    struct Term {
        Monomial mono;
        Integer coeff;
    };

    Polynomial() = default;
    Polynomial(long value);  // NOLINT(google-explicit-constructor)
    explicit Polynomial(const Integer& value);
    Polynomial(Monomial mono, Integer coeff);

    static Polynomial variable(std::size_t index);
    /// Builds from unsorted terms, merging duplicates and dropping zeros.
    static Polynomial from_terms(std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    bool is_one() const;
    /// Constant coefficient value; requires is_constant().
    Integer constant_value() const;
    const std::vector<Term>& terms() const { return terms_; }
    const Term& leading_term() const { return terms_.front(); }
    const Integer& leading_coeff() const { return terms_.front().coeff; }

    std::uint32_t degree_in(std::size_t var) const;
    std::uint32_t total_degree() const;
    bool contains(std::size_t var) const { return degree_in(var) > 0; }
    /// One past the highest variable index appearing in any term.
    std::size_t span() const;
    /// Lowest variable index present, if any.
    std::optional<std::size_t> lowest_variable() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);
    Polynomial& operator*=(const Integer& scalar);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Integer& s) { return a *= s; }

    bool operator==(const Polynomial& other) const;

    Polynomial pow(unsigned exponent) const;
    /// Exact quotient, or nullopt when `divisor` does not divide *this.
    std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;
    /// Divides every coefficient by an integer that is known to divide it.
    Polynomial divide_integer(const Integer& d) const;
    /// gcd of the integer coefficients, nonnegative.
    Integer integer_content() const;

    /// Coefficients of var^0, var^1, ... ; entries are free of var.
    std::vector<Polynomial> coefficients_in(std::size_t var) const;
    static Polynomial from_coefficients(const std::vector<Polynomial>& coeffs, std::size_t var);

    Polynomial substitute(std::size_t var, const Polynomial& value) const;
    Polynomial derivative(std::size_t var) const;

    /// Evaluates the variables listed in `point`; others stay symbolic.
    /// Returns the integer-scaled numerator and the common denominator.
    std::pair<Polynomial, Integer> partial_evaluate(const std::map<std::size_t, Rational>& point) const;

private:
    void normalize_terms();
    std::vector<Term> terms_;
};

/// Greatest common divisor in Z[x_0, x_1, ...], normalized so the leading
/// coefficient is positive. gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace hsl2
