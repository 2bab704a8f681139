#include "hsl2/loop_algebra.hpp"

#include <charconv>
#include <stdexcept>

namespace hsl2 {

std::string to_string(const Degree& d) { return "(" + std::to_string(d.p1) + "," + std::to_string(d.p2) + ")"; }

char letter_char(Letter l) {
    switch (l) {
        case Letter::f: return 'f';
        case Letter::h: return 'h';
        case Letter::e: return 'e';
        case Letter::c: return 'c';
    }
    return '?';
}

LoopSymbol::LoopSymbol(Letter l, int p) : letter(l), power(p) {
    if (l == Letter::c && p != 0) throw std::invalid_argument("central symbol carries no T-power");
}

Degree LoopSymbol::degree() const {
    switch (letter) {
        case Letter::f: return {1 - power, -power};
        case Letter::h: return {-power, -power};
        case Letter::e: return {-1 - power, -power};
        case Letter::c: return {0, 0};
    }
    return {};
}

bool LoopSymbol::is_lowering() const {
    switch (letter) {
        case Letter::f: return power <= 0;
        case Letter::h:
        case Letter::e: return power <= -1;
        case Letter::c: return false;
    }
    return false;
}

std::string LoopSymbol::to_string() const {
    std::string s(1, letter_char(letter));
    if (letter == Letter::c || power == 0) return s;
    const int a = power < 0 ? -power : power;
    s += power < 0 ? "/T" : "*T";
    if (a != 1) s += "^" + std::to_string(a);
    return s;
}

LoopSymbol parse_loop_symbol(std::string_view text) {
    auto bad = [&]() { return std::invalid_argument("malformed loop symbol '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    Letter l;
    switch (text[0]) {
        case 'e': l = Letter::e; break;
        case 'h': l = Letter::h; break;
        case 'f': l = Letter::f; break;
        case 'c':
            if (text.size() != 1) throw bad();
            return LoopSymbol::central();
        default: throw bad();
    }
    if (text.size() == 1) return {l, 0};
    if (text.size() < 3 || (text[1] != '/' && text[1] != '*') || text[2] != 'T') throw bad();
    int a = 1;
    if (text.size() > 3) {
        if (text[3] != '^') throw bad();
        const auto* first = text.data() + 4;
        const auto* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, a);
        if (ec != std::errc() || ptr != last || a < 0) throw bad();
    }
    return {l, text[1] == '/' ? -a : a};
}

namespace {

// [x, y] in sl2 as (letter, coefficient); coefficient 0 means zero.
std::pair<Letter, long> sl2_bracket(Letter x, Letter y) {
    using L = Letter;
    if (x == y) return {L::h, 0};
    if (x == L::e && y == L::f) return {L::h, 1};
    if (x == L::f && y == L::e) return {L::h, -1};
    if (x == L::h && y == L::e) return {L::e, 2};
    if (x == L::e && y == L::h) return {L::e, -2};
    if (x == L::h && y == L::f) return {L::f, -2};
    return {L::f, 2};  // [f, h]
}

long trace_form(Letter x, Letter y) {
    if ((x == Letter::e && y == Letter::f) || (x == Letter::f && y == Letter::e)) return 1;
    if (x == Letter::h && y == Letter::h) return 2;
    return 0;
}

}  // namespace

std::vector<std::pair<LoopSymbol, long>> bracket(const LoopSymbol& x, const LoopSymbol& y) {
    std::vector<std::pair<LoopSymbol, long>> out;
    if (x.is_central() || y.is_central()) return out;
    const auto [l, c] = sl2_bracket(x.letter, y.letter);
    if (c != 0) out.emplace_back(LoopSymbol(l, x.power + y.power), c);
    if (x.power + y.power == 0) {
        const long z = static_cast<long>(x.power) * trace_form(x.letter, y.letter);
        if (z != 0) out.emplace_back(LoopSymbol::central(), z);
    }
    return out;
}

LoopElement::LoopElement(const LoopSymbol& s, RationalFunction coeff) { add(s, coeff); }

RationalFunction LoopElement::coefficient(const LoopSymbol& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? RationalFunction() : it->second;
}

void LoopElement::add(const LoopSymbol& s, const RationalFunction& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(s, coeff);
    if (inserted) return;
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
}

LoopElement& LoopElement::operator+=(const LoopElement& o) {
    for (const auto& [s, c] : o.terms_) add(s, c);
    return *this;
}

LoopElement& LoopElement::operator-=(const LoopElement& o) {
    for (const auto& [s, c] : o.terms_) add(s, -c);
    return *this;
}

LoopElement& LoopElement::operator*=(const RationalFunction& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [sym, c] : terms_) c *= s;
    return *this;
}

std::string LoopElement::to_string(const VariablePool& pool) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [s, c] : terms_) {
        if (!out.empty()) out += " + ";
        if (!c.is_one()) out += "(" + c.to_string(pool) + ")*";
        out += s.to_string();
    }
    return out;
}

LoopElement bracket(const LoopElement& x, const LoopElement& y) {
    LoopElement out;
    for (const auto& [sx, cx] : x.terms())
        for (const auto& [sy, cy] : y.terms())
            for (const auto& [s, c] : bracket(sx, sy)) out.add(s, cx * cy * RationalFunction(c));
    return out;
}

std::vector<std::pair<LoopSymbol, long>> apply_map(LoopMap which, const LoopSymbol& s) {
    using L = Letter;
    if (s.is_central()) return {{s, 1}};
    const int p = s.power;
    switch (which) {
        case LoopMap::pi:
            if (s.letter == L::h) return {{s, -1}};
            return {{LoopSymbol(s.letter == L::e ? L::f : L::e, p), 1}};
        case LoopMap::rho:
            if (s.letter == L::e) return {{LoopSymbol(L::f, p + 1), 1}};
            if (s.letter == L::f) return {{LoopSymbol(L::e, p - 1), 1}};
            if (p == 0) return {{s, -1}, {LoopSymbol::central(), 1}};
            return {{s, -1}};
        case LoopMap::theta: {
            const L l = s.letter == L::e ? L::f : s.letter == L::f ? L::e : L::h;
            return {{LoopSymbol(l, -p), 1}};
        }
    }
    return {};
}

LoopElement apply_map(LoopMap which, const LoopElement& x) {
    LoopElement out;
    for (const auto& [s, c] : x.terms())
        for (const auto& [t, d] : apply_map(which, s)) out.add(t, c * RationalFunction(d));
    return out;
}

}  // namespace hsl2
