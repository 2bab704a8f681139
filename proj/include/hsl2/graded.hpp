#pragma once

#include "hsl2/loop_algebra.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hsl2 {

enum class Orientation { f_first, e_first };

/// f-first (f h e) when p1 >= p2, e-first (e h f) when p1 < p2.
Orientation orientation_for(const Degree& d);

/// PBW monomial applied to v. Depths are the exponents of 1/T: the factor
/// f/T^i has depth i. Each list is weakly decreasing; f depths are >= 0,
/// h and e depths are >= 1.
struct PBWKey {
    std::vector<int> f;
    std::vector<int> h;
    std::vector<int> e;

    Degree degree() const;
    Orientation orientation() const { return orientation_for(degree()); }
    bool is_vacuum() const { return f.empty() && h.empty() && e.empty(); }
    std::size_t length() const { return f.size() + h.size() + e.size(); }
    /// Factors from left to right in the canonical orientation.
    std::vector<LoopSymbol> word() const;
    /// "f/T^2 f h/T e/T v".
    std::string to_string() const;

    auto operator<=>(const PBWKey&) const = default;
};

/// Deterministic basis order: descending lexicographic on (f, h, e).
struct KeyOrder {
    bool operator()(const PBWKey& a, const PBWKey& b) const { return b < a; }
};

template <class T>
using KeyMap = std::map<PBWKey, T, KeyOrder>;

/// Homogeneous sparse combination of PBW keys. Instantiated for vectors of
/// V (in the PBW basis) and covectors of V* (in the dual basis).
template <class Tag>
class Graded {
public:
    Graded() = default;
    explicit Graded(Degree degree) : degree_(degree) {}
    static Graded basis(const PBWKey& key, RationalFunction coeff = RationalFunction(1L)) {
        Graded v(key.degree());
        v.add(key, coeff);
        return v;
    }

    const Degree& degree() const { return degree_; }
    const KeyMap<RationalFunction>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    std::size_t size() const { return coeffs_.size(); }
    RationalFunction coefficient(const PBWKey& key) const {
        auto it = coeffs_.find(key);
        return it == coeffs_.end() ? RationalFunction() : it->second;
    }

    /// Adds coeff to the coordinate of key; key must have the element's degree
    /// unless the element is still zero.
    void add(const PBWKey& key, const RationalFunction& coeff) {
        if (coeff.is_zero()) return;
        const Degree d = key.degree();
        if (d != degree_) {
            if (!coeffs_.empty()) throw std::invalid_argument("graded element: key degree mismatch");
            degree_ = d;
        }
        auto [it, inserted] = coeffs_.try_emplace(key, coeff);
        if (inserted) return;
        it->second += coeff;
        if (it->second.is_zero()) coeffs_.erase(it);
    }

    Graded& operator+=(const Graded& o) {
        for (const auto& [k, c] : o.coeffs_) add(k, c);
        return *this;
    }
    Graded& operator-=(const Graded& o) {
        for (const auto& [k, c] : o.coeffs_) add(k, -c);
        return *this;
    }
    Graded& operator*=(const RationalFunction& s) {
        if (s.is_zero()) {
            coeffs_.clear();
            return *this;
        }
        for (auto& [k, c] : coeffs_) c *= s;
        return *this;
    }
    friend Graded operator+(Graded a, const Graded& b) { return a += b; }
    friend Graded operator-(Graded a, const Graded& b) { return a -= b; }
    friend Graded operator*(Graded a, const RationalFunction& s) { return a *= s; }
    friend Graded operator*(const RationalFunction& s, Graded a) { return a *= s; }

    /// Zero elements compare equal regardless of their degree tag.
    bool operator==(const Graded& o) const {
        if (coeffs_.empty() && o.coeffs_.empty()) return true;
        return degree_ == o.degree_ && coeffs_ == o.coeffs_;
    }

    Graded partial_evaluate(const std::map<std::size_t, Rational>& point) const {
        Graded out(degree_);
        for (const auto& [k, c] : coeffs_) out.add(k, c.partial_evaluate(point));
        return out;
    }

    /// Coordinates in the given key order (zeros included).
    std::vector<RationalFunction> dense(const std::vector<PBWKey>& keys) const {
        std::vector<RationalFunction> out;
        out.reserve(keys.size());
        for (const auto& k : keys) out.push_back(coefficient(k));
        return out;
    }

    /// Scaled so the first nonzero coordinate in key order is 1.
    Graded monic() const {
        if (coeffs_.empty()) return *this;
        return *this * coeffs_.begin()->second.inverse();
    }

    std::string to_string(const VariablePool& pool) const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (const auto& [k, c] : coeffs_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.to_string(pool) + ")*" + label(k);
        }
        return out;
    }

    static std::string label(const PBWKey& k) { return Tag::dual ? "(" + k.to_string() + ")*" : k.to_string(); }

private:
    Degree degree_;
    KeyMap<RationalFunction> coeffs_;
};

struct VectorTag {
    static constexpr bool dual = false;
};
struct CovectorTag {
    static constexpr bool dual = true;
};

/// Element of a Verma module in PBW coordinates.
using ModuleVector = Graded<VectorTag>;
/// Element of the contragradient module in dual-basis coordinates.
using Covector = Graded<CovectorTag>;

}  // namespace hsl2
