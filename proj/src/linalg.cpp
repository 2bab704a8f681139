#include "hsl2/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace hsl2 {

namespace {

bool is_zero(const Rational& x) { return sgn(x) == 0; }
bool is_zero(const RationalFunction& x) { return x.is_zero(); }
Rational inverse(const Rational& x) { return Rational(1) / x; }
RationalFunction inverse(const RationalFunction& x) { return x.inverse(); }

template <class F>
Echelon<F> row_reduce_impl(Matrix<F> a) {
    Echelon<F> out;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && is_zero(a[p][c])) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        const F inv = inverse(a[r][c]);
        for (std::size_t j = c; j < cols; ++j)
            if (!is_zero(a[r][j])) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(a[i][c])) continue;
            const F factor = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (!is_zero(a[r][j])) a[i][j] -= factor * a[r][j];
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rref = std::move(a);
    return out;
}

template <class F>
std::vector<std::vector<F>> kernel_impl(const Matrix<F>& a, std::size_t cols) {
    const Echelon<F> ech = row_reduce_impl(a);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : ech.pivots) is_pivot[c] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<F> v(cols, F(0L));
        v[free] = F(1L);
        for (std::size_t i = 0; i < ech.pivots.size(); ++i) v[ech.pivots[i]] = -ech.rref[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Multiplies a row of rational functions by the lcm of its denominators.
std::vector<Polynomial> clear_row(const std::vector<RationalFunction>& row, Polynomial& scale) {
    Polynomial l(1L);
    for (const auto& x : row) {
        const Polynomial& d = x.denominator();
        if (d.is_one()) continue;
        const Polynomial g = gcd(l, d);
        l = l * *d.divide_exact(g);
    }
    scale = l;
    std::vector<Polynomial> out;
    out.reserve(row.size());
    for (const auto& x : row) out.push_back(x.numerator() * *l.divide_exact(x.denominator()));
    return out;
}

// In-place Bareiss forward elimination on the first n columns.
// Returns the permutation sign, or 0 when a zero pivot column is met.
int bareiss_forward(Matrix<Polynomial>& a, std::size_t n) {
    int sign = 1;
    Polynomial prev(1L);
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k].is_zero()) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < cols; ++j) {
                Polynomial t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                auto q = t.divide_exact(prev);
                if (!q) throw std::logic_error("Bareiss step is not exact");
                a[i][j] = std::move(*q);
            }
            a[i][k] = Polynomial();
        }
        prev = a[k][k];
    }
    return sign;
}

}  // namespace

Polynomial bareiss_determinant(Matrix<Polynomial> a) {
    const std::size_t n = a.size();
    if (n == 0) return Polynomial(1L);
    const int sign = bareiss_forward(a, n);
    if (sign == 0) return Polynomial();
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

RationalFunction determinant(const Matrix<RationalFunction>& a) {
    Matrix<Polynomial> p;
    Polynomial denom(1L);
    for (const auto& row : a) {
        Polynomial s;
        p.push_back(clear_row(row, s));
        denom *= s;
    }
    return RationalFunction(bareiss_determinant(std::move(p)), denom);
}

std::optional<std::vector<RationalFunction>> solve(const Matrix<RationalFunction>& a,
                                                   const std::vector<RationalFunction>& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("solve: dimension mismatch");
    Matrix<Polynomial> aug;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<RationalFunction> row = a[i];
        row.push_back(b[i]);
        Polynomial s;
        aug.push_back(clear_row(row, s));
    }
    if (bareiss_forward(aug, n) == 0) return std::nullopt;
    std::vector<RationalFunction> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        RationalFunction acc(aug[ii][n]);
        for (std::size_t j = ii + 1; j < n; ++j)
            if (!aug[ii][j].is_zero()) acc -= RationalFunction(aug[ii][j]) * x[j];
        x[ii] = acc / RationalFunction(aug[ii][ii]);
    }
    return x;
}

Echelon<Rational> row_reduce(Matrix<Rational> a) { return row_reduce_impl(std::move(a)); }
Echelon<RationalFunction> row_reduce(Matrix<RationalFunction> a) { return row_reduce_impl(std::move(a)); }

std::vector<std::vector<Rational>> kernel(const Matrix<Rational>& a, std::size_t cols) {
    if (a.empty()) {
        std::vector<std::vector<Rational>> basis;
        for (std::size_t i = 0; i < cols; ++i) {
            std::vector<Rational> v(cols, Rational(0));
            v[i] = 1;
            basis.push_back(v);
        }
        return basis;
    }
    return kernel_impl(a, cols);
}

std::vector<std::vector<RationalFunction>> kernel(const Matrix<RationalFunction>& a, std::size_t cols) {
    if (a.empty()) {
        std::vector<std::vector<RationalFunction>> basis;
        for (std::size_t i = 0; i < cols; ++i) {
            std::vector<RationalFunction> v(cols);
            v[i] = RationalFunction(1L);
            basis.push_back(v);
        }
        return basis;
    }
    return kernel_impl(a, cols);
}

std::size_t rank(const Matrix<Rational>& a) { return row_reduce_impl(a).rank(); }

std::optional<std::vector<Rational>> solve_particular(const Matrix<Rational>& a, const std::vector<Rational>& b,
                                                      std::size_t cols) {
    Matrix<Rational> aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    const auto ech = row_reduce_impl(std::move(aug));
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
        if (ech.pivots[i] == cols) return std::nullopt;
        x[ech.pivots[i]] = ech.rref[i][cols];
    }
    return x;
}

}  // namespace hsl2
