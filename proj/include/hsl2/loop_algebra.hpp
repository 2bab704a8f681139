#pragma once

#include "hsl2/rational_function.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hsl2 {

/// Z^2 grading of V(m, k-m): a word in f_1, f_2 has degree (#f_1, #f_2).
struct Degree {
    int p1 = 0;
    int p2 = 0;

    Degree operator+(const Degree& o) const { return {p1 + o.p1, p2 + o.p2}; }
    Degree operator-(const Degree& o) const { return {p1 - o.p1, p2 - o.p2}; }
    Degree operator-() const { return {-p1, -p2}; }
    bool nonnegative() const { return p1 >= 0 && p2 >= 0; }
    int total() const { return p1 + p2; }
    auto operator<=>(const Degree&) const = default;
};

std::string to_string(const Degree& d);

enum class Letter : std::uint8_t { f = 0, h = 1, e = 2, c = 3 };

char letter_char(Letter l);

/// Basis symbol x*T^power of the loop algebra, or the central element c.
struct LoopSymbol {
    Letter letter = Letter::c;
    int power = 0;

    LoopSymbol() = default;
    LoopSymbol(Letter l, int p);

    static LoopSymbol central() { return {}; }
    bool is_central() const { return letter == Letter::c; }

    /// f*T^j -> (1-j, -j), h*T^j -> (-j, -j), e*T^j -> (-1-j, -j), c -> (0, 0).
    Degree degree() const;
    /// True for the generators of n-hat-minus: f/T^i (i >= 0), h/T^j, e/T^j (j >= 1).
    bool is_lowering() const;

    /// "e/T^3", "f*T^2", "h", "e/T", "c".
    std::string to_string() const;

    auto operator<=>(const LoopSymbol&) const = default;
};

LoopSymbol parse_loop_symbol(std::string_view text);

/// Bracket of two basis symbols with integer structure constants.
/// Returns at most two terms (a loop symbol and possibly c).
std::vector<std::pair<LoopSymbol, long>> bracket(const LoopSymbol& x, const LoopSymbol& y);

class LoopElement {
public:
    LoopElement() = default;
    LoopElement(const LoopSymbol& s, RationalFunction coeff = RationalFunction(1L));  // NOLINT

    const std::map<LoopSymbol, RationalFunction>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    RationalFunction coefficient(const LoopSymbol& s) const;

    void add(const LoopSymbol& s, const RationalFunction& coeff);

    LoopElement& operator+=(const LoopElement& o);
    LoopElement& operator-=(const LoopElement& o);
    LoopElement& operator*=(const RationalFunction& s);
    friend LoopElement operator+(LoopElement a, const LoopElement& b) { return a += b; }
    friend LoopElement operator-(LoopElement a, const LoopElement& b) { return a -= b; }
    friend LoopElement operator*(LoopElement a, const RationalFunction& s) { return a *= s; }
    friend LoopElement operator*(const RationalFunction& s, LoopElement a) { return a *= s; }
    bool operator==(const LoopElement& o) const = default;

    std::string to_string(const VariablePool& pool) const;

private:
    std::map<LoopSymbol, RationalFunction> terms_;
};

LoopElement bracket(const LoopElement& x, const LoopElement& y);

enum class LoopMap {
    pi,     // e <-> f, h -> -h, same power
    rho,    // e*T^i -> f*T^(i+1), f*T^i -> e*T^(i-1), h*T^i -> -h*T^i + delta_{i,0} c
    theta,  // x*T^j -> w(x)*T^(-j), w swaps e and f; an antiautomorphism
};

/// Image of one basis symbol as integer combination.
std::vector<std::pair<LoopSymbol, long>> apply_map(LoopMap which, const LoopSymbol& s);
LoopElement apply_map(LoopMap which, const LoopElement& x);

}  // namespace hsl2
