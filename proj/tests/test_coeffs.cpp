#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hsl2/rational_function.hpp"

#include <random>

using namespace hsl2;

namespace {

const VariablePool& pool() { return VariablePool::verma(); }

RationalFunction rf(const char* text) { return parse_rational_function(text, pool()); }

Polynomial random_poly(std::mt19937_64& rng, int terms, unsigned max_deg) {
    Polynomial p;
    for (int t = 0; t < terms; ++t) {
        const auto em = static_cast<std::uint32_t>(rng() % (max_deg + 1));
        const auto ek = static_cast<std::uint32_t>(rng() % (max_deg + 1));
        const long c = static_cast<long>(rng() % 11) - 5;
        p += Polynomial(Monomial({em, ek}), Integer(c));
    }
    return p;
}

RationalFunction random_rf(std::mt19937_64& rng) {
    Polynomial den = random_poly(rng, 2, 1);
    if (den.is_zero()) den = Polynomial(1L);
    return RationalFunction(random_poly(rng, 3, 2), den);
}

// Expand-and-divide: multiply the claimed quotient back and compare.
bool cross_equal(const RationalFunction& r, const Polynomial& num, const Polynomial& den) {
    return r.numerator() * den == num * r.denominator();
}

}  // namespace

TEST_CASE("normalize cancels common factors") {
    const Polynomial m = Polynomial::variable(kVarM);
    const Polynomial k = Polynomial::variable(kVarK);
    const auto r = rf_normalize(m * m - k * k, m - k);
    CHECK(r == RationalFunction(m + k));
    CHECK(r.denominator().is_one());

    const auto z = rf_normalize(Polynomial(0L), k + Polynomial(2L));
    CHECK(z.is_zero());
    CHECK(z.denominator().is_one());

    const Polynomial num = m * k * Integer(2) + m * Integer(2);
    const Polynomial den = m * Integer(2);
    const auto q = rf_normalize(num, den);
    CHECK(q == RationalFunction(k + Polynomial(1L)));
    CHECK(cross_equal(q, num, den));

    CHECK_THROWS_AS(rf_normalize(m, Polynomial(0L)), std::domain_error);
}

TEST_CASE("denominator sign is canonical") {
    const auto r = rf("1/(-m)");
    CHECK(r.denominator().leading_coeff() > 0);
    CHECK(r == rf("-1/m"));
}

TEST_CASE("evaluation") {
    const auto line = rf("m + (1 - 1)*(k + 2)");
    CHECK(rf_eval(line, {{kVarM, 5}}) == 5);

    const auto kappa = rf("k + 2");
    CHECK(rf_eval(kappa, {{kVarK, -2}}) == 0);

    const auto r = rf("(m + k)/(m - k)");
    CHECK(rf_eval(r, {{kVarM, 3}, {kVarK, 1}}) == 2);
    CHECK_THROWS_AS(rf_eval(r, {{kVarM, 1}, {kVarK, 1}}), PoleError);
    CHECK_THROWS_AS(rf_eval(r, {{kVarM, 1}}), UnboundVariableError);
}

TEST_CASE("substitution and partial evaluation") {
    const auto r = rf("(m^2 - 1)/(m + k)");
    const auto s = r.substitute(kVarM, rf("2*k - 2"));
    CHECK(s == rf("((2*k - 2)^2 - 1)/(3*k - 2)"));
    CHECK_THROWS_AS(rf("1/(m - k)").substitute(kVarM, rf("k")), PoleError);
    const auto p = rf("(m + k)/(m - 2*k)").partial_evaluate({{kVarK, Rational(1, 2)}});
    CHECK(p == rf("(2*m + 1)/(2*m - 2)"));
}

TEST_CASE("text form round trips") {
    const auto r = rf("(2*m*k + 2*m)/(3*m^2 - k)");
    const auto text = r.to_string(pool());
    CHECK(text == "(2*m^1*k^1 + 2*m^1)/(3*m^2 - k^1)");
    CHECK(parse_rational_function(text, pool()) == r);
    CHECK(rf("0").to_string(pool()) == "0");
    CHECK(rf("-7").to_string(pool()) == "-7");
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK_THROWS_AS(rf("m +"), ParseError);
    CHECK_THROWS_AS(rf("q"), UnboundVariableError);
}

TEST_CASE("ring axioms on random samples") {
    std::mt19937_64 rng(12345);
    for (int it = 0; it < 1000; ++it) {
        const auto a = random_rf(rng);
        const auto b = random_rf(rng);
        const auto c = random_rf(rng);
        REQUIRE((a + b) * c == a * c + b * c);
        REQUIRE(a + b == b + a);
        REQUIRE((a - a).is_zero());
    }
}

TEST_CASE("normalize is idempotent and preserves values") {
    std::mt19937_64 rng(777);
    for (int it = 0; it < 200; ++it) {
        Polynomial den = random_poly(rng, 2, 2);
        if (den.is_zero()) continue;
        const Polynomial num = random_poly(rng, 3, 2) * den.pow(1 + it % 2);
        const auto once = rf_normalize(num, den);
        const auto twice = rf_normalize(once.numerator(), once.denominator());
        REQUIRE(once == twice);
        const std::map<std::size_t, Rational> pt{{kVarM, Rational(3, 7)}, {kVarK, Rational(-5, 2)}};
        auto [dn, dd] = den.partial_evaluate(pt);
        if (dn.is_zero()) continue;
        auto [nn, nd] = num.partial_evaluate(pt);
        Rational direct(nn.constant_value() * dd, dn.constant_value() * nd);
        direct.canonicalize();
        REQUIRE(rf_eval(once, pt) == direct);
    }
}

TEST_CASE("gcd of multiples is divisible by the common factor") {
    std::mt19937_64 rng(99);
    for (int it = 0; it < 200; ++it) {
        const Polynomial p = random_poly(rng, 3, 2);
        const Polynomial q = random_poly(rng, 3, 2);
        const Polynomial g = random_poly(rng, 2, 2);
        if (g.is_zero() || p.is_zero() || q.is_zero()) continue;
        const Polynomial d = gcd(p * g, q * g);
        REQUIRE(d.divide_exact(g).has_value());
        REQUIRE((p * g).divide_exact(d).has_value());
        REQUIRE((q * g).divide_exact(d).has_value());
    }
}
