#include "hsl2/polynomial.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace hsl2 {

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<std::uint32_t> exponents) : exps_(std::move(exponents)) { trim(); }

Monomial Monomial::variable(std::size_t index, std::uint32_t power) {
    std::vector<std::uint32_t> e(index + 1, 0);
    e[index] = power;
    return Monomial(std::move(e));
}

void Monomial::trim() {
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

std::uint32_t Monomial::total_degree() const {
    std::uint32_t d = 0;
    for (auto e : exps_) d += e;
    return d;
}

bool Monomial::divides(const Monomial& other) const {
    if (exps_.size() > other.exps_.size()) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
    const auto& longer = exps_.size() >= other.exps_.size() ? exps_ : other.exps_;
    const auto& shorter = exps_.size() >= other.exps_.size() ? other.exps_ : exps_;
    Monomial out;
    out.exps_ = longer;
    for (std::size_t i = 0; i < shorter.size(); ++i) out.exps_[i] += shorter[i];
    return out;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
    Monomial out;
    out.exps_ = exps_;
    for (std::size_t i = 0; i < divisor.exps_.size(); ++i) out.exps_[i] -= divisor.exps_[i];
    out.trim();
    return out;
}

Monomial Monomial::without(std::size_t var) const {
    Monomial out = *this;
    if (var < out.exps_.size()) {
        out.exps_[var] = 0;
        out.trim();
    }
    return out;
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
    const std::size_t n = std::max(exps_.size(), other.exps_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto a = exponent(i);
        const auto b = other.exponent(i);
        if (a != b) return a <=> b;
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(long value) {
    if (value != 0) terms_.push_back({Monomial{}, Integer(value)});
}

Polynomial::Polynomial(const Integer& value) {
    if (value != 0) terms_.push_back({Monomial{}, value});
}

Polynomial::Polynomial(Monomial mono, Integer coeff) {
    if (coeff != 0) terms_.push_back({std::move(mono), std::move(coeff)});
}

Polynomial Polynomial::variable(std::size_t index) { return Polynomial(Monomial::variable(index), Integer(1)); }

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
    Polynomial p;
    p.terms_ = std::move(terms);
    p.normalize_terms();
    return p;
}

void Polynomial::normalize_terms() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().mono == t.mono) {
            merged.back().coeff += t.coeff;
        } else {
            if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
            merged.push_back(std::move(t));
        }
    }
    if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
    terms_ = std::move(merged);
}

bool Polynomial::is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1; }

Integer Polynomial::constant_value() const {
    if (terms_.empty()) return Integer(0);
    if (!is_constant()) throw std::logic_error("constant_value() on a non-constant polynomial");
    return terms_[0].coeff;
}

std::uint32_t Polynomial::degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.exponent(var));
    return d;
}

std::uint32_t Polynomial::total_degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
    return d;
}

std::size_t Polynomial::span() const {
    std::size_t s = 0;
    for (const auto& t : terms_) s = std::max(s, t.mono.span());
    return s;
}

std::optional<std::size_t> Polynomial::lowest_variable() const {
    std::optional<std::size_t> best;
    for (const auto& t : terms_) {
        const auto& e = t.mono.exponents();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] != 0) {
                if (!best || i < *best) best = i;
                break;
            }
        }
    }
    return best;
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
}

namespace {

// Merges two descending-sorted term lists, b scaled by sign.
std::vector<Polynomial::Term> merge_terms(const std::vector<Polynomial::Term>& a,
                                          const std::vector<Polynomial::Term>& b, bool subtract) {
    std::vector<Polynomial::Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].mono > a[i].mono) {
            out.push_back({b[j].mono, subtract ? Integer(-b[j].coeff) : b[j].coeff});
            ++j;
        } else {
            Integer c = subtract ? Integer(a[i].coeff - b[j].coeff) : Integer(a[i].coeff + b[j].coeff);
            if (c != 0) out.push_back({a[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    if (other.terms_.empty()) return *this;
    if (terms_.empty()) return *this = other;
    terms_ = merge_terms(terms_, other.terms_, false);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    if (other.terms_.empty()) return *this;
    terms_ = merge_terms(terms_, other.terms_, true);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.terms_.size() == 1 && a.terms_[0].mono.is_one()) return b * a.terms_[0].coeff;
    if (b.terms_.size() == 1 && b.terms_[0].mono.is_one()) return a * b.terms_[0].coeff;
    std::vector<Polynomial::Term> prods;
    prods.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) prods.push_back({x.mono * y.mono, x.coeff * y.coeff});
    return Polynomial::from_terms(std::move(prods));
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

Polynomial& Polynomial::operator*=(const Integer& scalar) {
    if (scalar == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= scalar;
    return *this;
}

bool Polynomial::operator==(const Polynomial& other) const {
    if (terms_.size() != other.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (!(terms_[i].mono == other.terms_[i].mono) || terms_[i].coeff != other.terms_[i].coeff) return false;
    return true;
}

Polynomial Polynomial::pow(unsigned exponent) const {
    Polynomial result(1L);
    Polynomial base = *this;
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent > 0) base *= base;
    }
    return result;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
    if (is_zero()) return Polynomial{};
    if (divisor.is_constant()) {
        const Integer& d = divisor.terms_[0].coeff;
        Polynomial q = *this;
        for (auto& t : q.terms_) {
            if (!mpz_divisible_p(t.coeff.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
            mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), d.get_mpz_t());
        }
        return q;
    }
    const Term& lead = divisor.terms_.front();
    Polynomial remainder = *this;
    std::vector<Term> quotient;
    while (!remainder.is_zero()) {
        const Term& r = remainder.terms_.front();
        if (!lead.mono.divides(r.mono)) return std::nullopt;
        if (!mpz_divisible_p(r.coeff.get_mpz_t(), lead.coeff.get_mpz_t())) return std::nullopt;
        Integer c;
        mpz_divexact(c.get_mpz_t(), r.coeff.get_mpz_t(), lead.coeff.get_mpz_t());
        Polynomial step(r.mono / lead.mono, c);
        quotient.push_back(step.terms_.front());
        remainder -= step * divisor;
    }
    Polynomial q;
    q.terms_ = std::move(quotient);  // generated in descending order
    return q;
}

Polynomial Polynomial::divide_integer(const Integer& d) const {
    Polynomial q = *this;
    for (auto& t : q.terms_) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), d.get_mpz_t());
    return q;
}

Integer Polynomial::integer_content() const {
    Integer g = 0;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t var) const {
    std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
    for (const auto& t : terms_) buckets[t.mono.exponent(var)].push_back({t.mono.without(var), t.coeff});
    std::vector<Polynomial> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) {
        Polynomial p;
        p.terms_ = std::move(b);  // removing one variable keeps the relative lex order
        out.push_back(std::move(p));
    }
    return out;
}

Polynomial Polynomial::from_coefficients(const std::vector<Polynomial>& coeffs, std::size_t var) {
    std::vector<Term> terms;
    for (std::size_t d = 0; d < coeffs.size(); ++d) {
        const Monomial x = d == 0 ? Monomial{} : Monomial::variable(var, static_cast<std::uint32_t>(d));
        for (const auto& t : coeffs[d].terms_) terms.push_back({t.mono * x, t.coeff});
    }
    return from_terms(std::move(terms));
}

Polynomial Polynomial::substitute(std::size_t var, const Polynomial& value) const {
    if (!contains(var)) return *this;
    const auto coeffs = coefficients_in(var);
    Polynomial result;
    for (std::size_t d = coeffs.size(); d-- > 0;) {
        result *= value;
        result += coeffs[d];
    }
    return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        const auto e = t.mono.exponent(var);
        if (e == 0) continue;
        auto exps = t.mono.exponents();
        exps[var] -= 1;
        out.push_back({Monomial(std::move(exps)), t.coeff * e});
    }
    return from_terms(std::move(out));
}

std::pair<Polynomial, Integer> Polynomial::partial_evaluate(const std::map<std::size_t, Rational>& point) const {
    // Accumulate rational coefficients per residual monomial, then clear denominators.
    std::map<Monomial, Rational> acc;
    for (const auto& t : terms_) {
        Rational c(t.coeff);
        auto exps = t.mono.exponents();
        for (const auto& [var, val] : point) {
            if (var < exps.size() && exps[var] > 0) {
                Rational p;
                mpz_pow_ui(p.get_num_mpz_t(), val.get_num_mpz_t(), exps[var]);
                mpz_pow_ui(p.get_den_mpz_t(), val.get_den_mpz_t(), exps[var]);
                c *= p;
                exps[var] = 0;
            }
        }
        acc[Monomial(std::move(exps))] += c;
    }
    Integer den = 1;
    for (const auto& [m, c] : acc) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Term> out;
    for (const auto& [m, c] : acc) {
        if (c == 0) continue;
        Integer scaled = c.get_num() * (den / c.get_den());
        out.push_back({m, scaled});
    }
    return {from_terms(std::move(out)), den};
}

// ---------------------------------------------------------------------------
// gcd via content / primitive-part recursion and primitive PRS.

namespace {

Polynomial positive(Polynomial p) {
    if (!p.is_zero() && p.leading_coeff() < 0) return -p;
    return p;
}

Polynomial content_in(const Polynomial& p, std::size_t var) {
    Polynomial g;
    for (const auto& c : p.coefficients_in(var)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

Polynomial primitive_in(const Polynomial& p, std::size_t var) {
    if (p.is_zero()) return p;
    const Polynomial c = content_in(p, var);
    auto q = p.divide_exact(c);
    if (!q) throw std::logic_error("content does not divide polynomial");
    return *q;
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
    const auto db = b.degree_in(var);
    const Polynomial lb = b.coefficients_in(var).back();
    Polynomial r = a;
    while (!r.is_zero() && r.degree_in(var) >= db) {
        const auto dr = r.degree_in(var);
        const Polynomial lr = r.coefficients_in(var).back();
        Polynomial shift = lr;
        if (dr > db) shift *= Polynomial(Monomial::variable(var, dr - db), Integer(1));
        r = lb * r - shift * b;
    }
    return r;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return positive(b);
    if (b.is_zero()) return positive(a);
    if (a.is_constant() || b.is_constant()) {
        Integer g = a.integer_content();
        const Integer gb = b.integer_content();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), gb.get_mpz_t());
        return Polynomial(g);
    }
    if (a == b) return positive(a);
    const auto va = a.lowest_variable();
    const auto vb = b.lowest_variable();
    const std::size_t var = std::min(*va, *vb);
    if (!a.contains(var)) return gcd(a, content_in(b, var));
    if (!b.contains(var)) return gcd(content_in(a, var), b);

    const Polynomial ca = content_in(a, var);
    const Polynomial cb = content_in(b, var);
    const Polynomial cont = gcd(ca, cb);
    Polynomial pa = *a.divide_exact(ca);
    Polynomial pb = *b.divide_exact(cb);
    if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
    while (true) {
        Polynomial r = pseudo_remainder(pa, pb, var);
        if (r.is_zero()) break;
        if (!r.contains(var)) {
            pb = Polynomial(1L);
            break;
        }
        pa = std::move(pb);
        pb = primitive_in(r, var);
    }
    return positive(cont * primitive_in(pb, var));
}

}  // namespace hsl2
