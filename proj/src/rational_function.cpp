#include "hsl2/rational_function.hpp"

#include <cctype>
#include <sstream>
#include <utility>

namespace hsl2 {

// ---------------------------------------------------------------------------
// VariablePool

VariablePool::VariablePool(std::vector<std::string> names) : names_(std::move(names)) {}

const VariablePool& VariablePool::verma() {
    static const VariablePool pool({"m", "k"});
    return pool;
}

VariablePool VariablePool::derham(std::size_t n) {
    std::vector<std::string> names{"kappa"};
    for (std::size_t i = 1; i <= n; ++i) names.push_back("z" + std::to_string(i));
    for (std::size_t i = 1; i <= n; ++i) names.push_back("m" + std::to_string(i));
    return VariablePool(std::move(names));
}

const std::string& VariablePool::name(std::size_t index) const {
    if (index >= names_.size()) throw std::out_of_range("variable index outside the pool");
    return names_[index];
}

std::optional<std::size_t> VariablePool::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

std::size_t VariablePool::index(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw UnboundVariableError("unknown variable '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(const Rational& value)
    : num_(Integer(value.get_num())), den_(Integer(value.get_den())) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    normalize();
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial(1L);
        return;
    }
    if (!den_.is_one()) {
        const Polynomial g = gcd(num_, den_);
        if (!g.is_one()) {
            num_ = *num_.divide_exact(g);
            den_ = *den_.divide_exact(g);
        }
    }
    if (den_.leading_coeff() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

Rational RationalFunction::constant_value() const {
    Rational q(num_.constant_value(), den_.constant_value());
    q.canonicalize();
    return q;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction out = *this;
    out.num_ = -out.num_;
    return out;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& other) {
    if (other.is_zero()) return *this;
    if (is_zero()) return *this = other;
    if (den_ == other.den_) {
        num_ += other.num_;
        if (!den_.is_one()) normalize();
        else if (num_.is_zero()) den_ = Polynomial(1L);
        return *this;
    }
    const Polynomial g = gcd(den_, other.den_);
    const Polynomial bd = *den_.divide_exact(g);
    const Polynomial dd = *other.den_.divide_exact(g);
    num_ = num_ * dd + other.num_ * bd;
    den_ = den_ * dd;
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& other) { return *this += -other; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& other) {
    if (is_zero() || other.is_zero()) return *this = RationalFunction();
    if (den_.is_one() && other.den_.is_one()) {
        num_ *= other.num_;
        return *this;
    }
    const Polynomial g1 = gcd(num_, other.den_);
    const Polynomial g2 = gcd(other.num_, den_);
    num_ = *num_.divide_exact(g1) * *other.num_.divide_exact(g2);
    den_ = *den_.divide_exact(g2) * *other.den_.divide_exact(g1);
    if (den_.leading_coeff() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& other) { return *this *= other.inverse(); }

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational function");
    RationalFunction out;
    out.num_ = den_;
    out.den_ = num_;
    if (out.den_.leading_coeff() < 0) {
        out.num_ = -out.num_;
        out.den_ = -out.den_;
    }
    return out;
}

RationalFunction RationalFunction::pow(int exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    RationalFunction out;
    out.num_ = num_.pow(static_cast<unsigned>(exponent));
    out.den_ = den_.pow(static_cast<unsigned>(exponent));
    return out;
}

RationalFunction RationalFunction::substitute(std::size_t var, const RationalFunction& value) const {
    if (!num_.contains(var) && !den_.contains(var)) return *this;
    // P(N/D) = sum p_i N^i D^(d-i) / D^d
    auto homogenize = [&](const Polynomial& p) {
        const auto coeffs = p.coefficients_in(var);
        const std::size_t d = coeffs.size() - 1;
        Polynomial acc;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i].is_zero()) continue;
            acc += coeffs[i] * value.num_.pow(static_cast<unsigned>(i)) *
                   value.den_.pow(static_cast<unsigned>(d - i));
        }
        return std::pair{acc, d};
    };
    auto [n, dn] = homogenize(num_);
    auto [d, dd] = homogenize(den_);
    if (d.is_zero()) throw PoleError("denominator vanishes identically after substitution");
    if (dn > dd) d *= value.den_.pow(static_cast<unsigned>(dn - dd));
    else if (dd > dn) n *= value.den_.pow(static_cast<unsigned>(dd - dn));
    return RationalFunction(std::move(n), std::move(d));
}

RationalFunction RationalFunction::partial_evaluate(const std::map<std::size_t, Rational>& point) const {
    auto [n, nd] = num_.partial_evaluate(point);
    auto [d, dd] = den_.partial_evaluate(point);
    if (d.is_zero()) throw PoleError("denominator vanishes at the specialization point");
    // (n/nd) / (d/dd) = (n*dd) / (d*nd)
    n *= dd;
    d *= nd;
    return RationalFunction(std::move(n), std::move(d));
}

RationalFunction rf_normalize(const Polynomial& num, const Polynomial& den) { return RationalFunction(num, den); }

Rational rf_eval(const RationalFunction& r, const std::map<std::size_t, Rational>& point) {
    for (const Polynomial* p : {&r.numerator(), &r.denominator()}) {
        for (const auto& t : p->terms()) {
            const auto& e = t.mono.exponents();
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0 && !point.contains(i))
                    throw UnboundVariableError("variable index " + std::to_string(i) + " is not bound");
        }
    }
    auto [n, nd] = r.numerator().partial_evaluate(point);
    auto [d, dd] = r.denominator().partial_evaluate(point);
    if (d.is_zero()) throw PoleError("rational function has a pole at the evaluation point");
    Rational q(n.constant_value() * dd, d.constant_value() * nd);
    q.canonicalize();
    return q;
}

// ---------------------------------------------------------------------------
// Text form

std::string to_string(const Polynomial& p, const VariablePool& pool) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        Integer mag = abs(t.coeff);
        const bool negative = t.coeff < 0;
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (mag != 1 || t.mono.is_one()) {
            os << mag.get_str();
            wrote = true;
        }
        const auto& e = t.mono.exponents();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (wrote) os << '*';
            os << (i < pool.size() ? pool.name(i) : "x" + std::to_string(i)) << '^' << e[i];
            wrote = true;
        }
    }
    return os.str();
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string RationalFunction::to_string(const VariablePool& pool) const {
    if (den_.is_one()) return hsl2::to_string(num_, pool);
    if (is_constant()) return constant_value().get_str();
    return "(" + hsl2::to_string(num_, pool) + ")/(" + hsl2::to_string(den_, pool) + ")";
}

// ---------------------------------------------------------------------------
// Parser: expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)* ;
// unary := '-' unary | power ; power := primary ('^' ['-'] int)?

namespace {

class Parser {
public:
    Parser(std::string_view text, const VariablePool& pool) : text_(text), pool_(pool) {}

    RationalFunction parse() {
        RationalFunction r = expr();
        skip();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    RationalFunction expr() {
        RationalFunction r = term();
        while (true) {
            if (accept('+')) r += term();
            else if (accept('-')) r -= term();
            else return r;
        }
    }
    RationalFunction term() {
        RationalFunction r = unary();
        while (true) {
            if (accept('*')) r *= unary();
            else if (accept('/')) {
                RationalFunction d = unary();
                if (d.is_zero()) fail("division by zero");
                r /= d;
            } else return r;
        }
    }
    RationalFunction unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }
    RationalFunction power() {
        RationalFunction base = primary();
        if (accept('^')) {
            const bool neg = accept('-');
            skip();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("expected integer exponent");
            const int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
            if (neg && base.is_zero()) fail("negative power of zero");
            return base.pow(neg ? -e : e);
        }
        return base;
    }
    RationalFunction primary() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            RationalFunction r = expr();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return RationalFunction(Integer(std::string(text_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const auto name = text_.substr(start, pos_ - start);
            const auto idx = pool_.find(name);
            if (!idx) throw UnboundVariableError("unknown variable '" + std::string(name) + "'");
            return RationalFunction::variable(*idx);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    const VariablePool& pool_;
    std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_rational_function(std::string_view text, const VariablePool& pool) {
    return Parser(text, pool).parse();
}

Rational parse_rational(std::string_view text) {
    static const VariablePool empty;
    const RationalFunction r = parse_rational_function(text, empty);
    return r.constant_value();
}

}  // namespace hsl2
