#pragma once

#include "hsl2/rational_function.hpp"

#include <optional>
#include <vector>

namespace hsl2 {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Fraction-free (Bareiss) determinant over Z[x].
Polynomial bareiss_determinant(Matrix<Polynomial> a);

/// Determinant over Q(x): rows are scaled to polynomials, then Bareiss.
RationalFunction determinant(const Matrix<RationalFunction>& a);

/// Solves a x = b for square, nonsingular a over Q(x). Forward elimination is
/// fraction-free on the polynomial-scaled augmented matrix; back substitution
/// runs in Q(x). Returns nullopt when a is singular.
std::optional<std::vector<RationalFunction>> solve(const Matrix<RationalFunction>& a,
                                                   const std::vector<RationalFunction>& b);

/// Reduced row echelon form over a field (Rational or RationalFunction).
template <class F>
struct Echelon {
    Matrix<F> rref;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
    std::size_t rank() const { return pivots.size(); }
};

Echelon<Rational> row_reduce(Matrix<Rational> a);
Echelon<RationalFunction> row_reduce(Matrix<RationalFunction> a);

/// Basis of the null space, one vector per free column, free entry set to 1.
std::vector<std::vector<Rational>> kernel(const Matrix<Rational>& a, std::size_t cols);
std::vector<std::vector<RationalFunction>> kernel(const Matrix<RationalFunction>& a, std::size_t cols);

std::size_t rank(const Matrix<Rational>& a);

/// Particular solution of a x = b with all free variables zero, or nullopt
/// when the system is inconsistent.
std::optional<std::vector<Rational>> solve_particular(const Matrix<Rational>& a, const std::vector<Rational>& b,
                                                      std::size_t cols);

}  // namespace hsl2
