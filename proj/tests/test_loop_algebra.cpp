#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hsl2/loop_algebra.hpp"

using namespace hsl2;

namespace {

std::vector<LoopSymbol> symbols(int max_power) {
    std::vector<LoopSymbol> out{LoopSymbol::central()};
    for (Letter l : {Letter::f, Letter::h, Letter::e})
        for (int p = -max_power; p <= max_power; ++p) out.emplace_back(l, p);
    return out;
}

LoopElement el(const LoopSymbol& s) { return LoopElement(s); }

// Explicit 2x2 matrix model of sl2 together with the cocycle, used as an oracle.
struct Mat {
    long a, b, c, d;  // [[a, b], [c, d]]
};
Mat mat(Letter l) {
    switch (l) {
        case Letter::e: return {0, 1, 0, 0};
        case Letter::f: return {0, 0, 1, 0};
        default: return {1, 0, 0, -1};
    }
}
Mat mul(const Mat& x, const Mat& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

}  // namespace

TEST_CASE("bracket examples") {
    CHECK(bracket(el({Letter::e, 0}), el({Letter::f, 0})) == el({Letter::h, 0}));
    const int n = 3;
    CHECK(bracket(el({Letter::h, n}), el({Letter::h, -n})) == LoopElement(LoopSymbol::central(), RationalFunction(2L * n)));
    CHECK(bracket(el({Letter::e, 1}), el({Letter::f, -1})) == el({Letter::h, 0}) + el(LoopSymbol::central()));
}

TEST_CASE("bracket matches the matrix commutator and trace cocycle") {
    for (const auto& x : symbols(3))
        for (const auto& y : symbols(3)) {
            if (x.is_central() || y.is_central()) {
                CHECK(bracket(x, y).empty());
                continue;
            }
            const Mat X = mat(x.letter), Y = mat(y.letter);
            const Mat xy = mul(X, Y), yx = mul(Y, X);
            const Mat com{xy.a - yx.a, xy.b - yx.b, xy.c - yx.c, xy.d - yx.d};
            LoopElement want;
            // decompose com = alpha e + beta f + gamma h
            want.add({Letter::e, x.power + y.power}, RationalFunction(com.b));
            want.add({Letter::f, x.power + y.power}, RationalFunction(com.c));
            want.add({Letter::h, x.power + y.power}, RationalFunction(com.a));
            if (x.power + y.power == 0) want.add(LoopSymbol::central(), RationalFunction(x.power * (xy.a + xy.d)));
            CHECK(bracket(el(x), el(y)) == want);
        }
}

TEST_CASE("antisymmetry and Jacobi identity for |power| <= 4") {
    const auto syms = symbols(4);
    for (const auto& x : syms)
        for (const auto& y : syms) REQUIRE((bracket(el(x), el(y)) + bracket(el(y), el(x))).is_zero());
    // The Jacobi sum only involves powers summing within range; check all triples.
    for (const auto& x : syms)
        for (const auto& y : syms)
            for (const auto& z : syms) {
                const LoopElement j = bracket(el(x), bracket(el(y), el(z))) + bracket(el(y), bracket(el(z), el(x))) +
                                      bracket(el(z), bracket(el(x), el(y)));
                REQUIRE(j.is_zero());
            }
}

TEST_CASE("maps: examples") {
    CHECK(apply_map(LoopMap::pi, el({Letter::h, -3})) == LoopElement({Letter::h, -3}, RationalFunction(-1L)));
    CHECK(apply_map(LoopMap::rho, el({Letter::f, -2})) == el({Letter::e, -3}));
    CHECK(apply_map(LoopMap::theta, el({Letter::f, -4})) == el({Letter::e, 4}));
    CHECK(apply_map(LoopMap::rho, el({Letter::h, 0})) == el(LoopSymbol::central()) - el({Letter::h, 0}));
    CHECK(apply_map(LoopMap::rho, el({Letter::h, -2})) == LoopElement({Letter::h, -2}, RationalFunction(-1L)));
}

TEST_CASE("maps are involutions and respect (or reverse) brackets") {
    const auto syms = symbols(4);
    for (LoopMap m : {LoopMap::pi, LoopMap::rho, LoopMap::theta})
        for (const auto& x : syms) REQUIRE(apply_map(m, apply_map(m, el(x))) == el(x));
    for (const auto& x : symbols(3))
        for (const auto& y : symbols(3)) {
            const LoopElement xy = bracket(el(x), el(y));
            for (LoopMap m : {LoopMap::pi, LoopMap::rho})
                REQUIRE(apply_map(m, xy) == bracket(apply_map(m, el(x)), apply_map(m, el(y))));
            REQUIRE(apply_map(LoopMap::theta, xy) ==
                    bracket(apply_map(LoopMap::theta, el(y)), apply_map(LoopMap::theta, el(x))));
        }
}

TEST_CASE("degrees and text form") {
    CHECK(LoopSymbol(Letter::f, -2).degree() == Degree{3, 2});
    CHECK(LoopSymbol(Letter::h, -2).degree() == Degree{2, 2});
    CHECK(LoopSymbol(Letter::e, -1).degree() == Degree{0, 1});
    CHECK(LoopSymbol(Letter::e, 0).degree() == Degree{-1, 0});
    CHECK(LoopSymbol(Letter::e, -3).to_string() == "e/T^3");
    CHECK(LoopSymbol(Letter::f, 2).to_string() == "f*T^2");
    CHECK(LoopSymbol::central().to_string() == "c");
    for (const auto& s : symbols(4)) CHECK(parse_loop_symbol(s.to_string()) == s);
    CHECK_THROWS_AS(LoopSymbol(Letter::c, 1), std::invalid_argument);
    CHECK_THROWS_AS(parse_loop_symbol("g/T"), std::invalid_argument);
}
