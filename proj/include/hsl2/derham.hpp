#pragma once

#include "hsl2/linalg.hpp"
#include "hsl2/rational_function.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace hsl2 {

/// Parameters of Phi(t) = prod (t - z_i)^(-m_i/kappa). Points are exact
/// rationals; weights and kappa may be symbolic over VariablePool::derham(n).
struct MasterConfig {
    std::vector<Rational> z;
    std::vector<RationalFunction> m;
    RationalFunction kappa;

    std::size_t n() const { return z.size(); }
    /// m_(n+1) = m_1 + ... + m_n - 2.
    RationalFunction m_infinity() const;
    RationalFunction m_sum() const;
    /// Throws std::invalid_argument: n = 0, size mismatch, repeated points, kappa = 0.
    void validate() const;
    VariablePool pool() const { return VariablePool::derham(n()); }
    bool is_numeric() const;
};

/// Random rational parameters avoiding every resonance with a <= 12 and with
/// m_1 / kappa not an integer.
MasterConfig random_config(std::size_t n, std::mt19937_64& rng);

/// One basis element of Omega^0 or Omega^1: 1/(t-z_i)^a (resp. dt/(t-z_i)^a)
/// when point = i >= 1, t^a (resp. t^a dt) when point = 0.
struct DeRhamTerm {
    int point = 0;
    int order = 0;

    bool is_pole() const { return point > 0; }
    auto operator<=>(const DeRhamTerm&) const = default;
};

class DeRhamElement {
public:
    explicit DeRhamElement(int grade = 0) : grade_(grade) {}
    static DeRhamElement basis(int grade, const DeRhamTerm& term, RationalFunction coeff = RationalFunction(1L));
    static DeRhamElement pole(int grade, int point, int order, RationalFunction coeff = RationalFunction(1L));
    static DeRhamElement poly(int grade, int degree, RationalFunction coeff = RationalFunction(1L));

    int grade() const { return grade_; }
    const std::map<std::pair<int, int>, RationalFunction>& pole_terms() const { return poles_; }
    const std::map<int, RationalFunction>& poly_terms() const { return polys_; }
    /// Pole terms first (by point, then order), then polynomial terms.
    std::vector<std::pair<DeRhamTerm, RationalFunction>> terms() const;
    RationalFunction coefficient(const DeRhamTerm& term) const;
    bool is_zero() const { return poles_.empty() && polys_.empty(); }

    void add(const DeRhamTerm& term, const RationalFunction& coeff);
    DeRhamElement& operator+=(const DeRhamElement& o);
    DeRhamElement& operator-=(const DeRhamElement& o);
    DeRhamElement& operator*=(const RationalFunction& s);
    friend DeRhamElement operator+(DeRhamElement a, const DeRhamElement& b) { return a += b; }
    friend DeRhamElement operator-(DeRhamElement a, const DeRhamElement& b) { return a -= b; }
    friend DeRhamElement operator*(DeRhamElement a, const RationalFunction& s) { return a *= s; }
    friend DeRhamElement operator*(const RationalFunction& s, DeRhamElement a) { return a *= s; }
    bool operator==(const DeRhamElement& o) const = default;

    /// "(c)*dt/(t-z1)^2 + (c)*t^3 dt".
    std::string to_string(const VariablePool& pool) const;

private:
    int grade_;
    std::map<std::pair<int, int>, RationalFunction> poles_;
    std::map<int, RationalFunction> polys_;
};

std::string term_label(int grade, const DeRhamTerm& t);

/// Logarithmic form omega_j = dt/(t - z_j).
inline DeRhamElement omega(int j) { return DeRhamElement::pole(1, j, 1); }

/// The twisted differential d + alpha, alpha = -(1/kappa) sum m_i dt/(t-z_i).
DeRhamElement differential(const MasterConfig& cfg, const DeRhamElement& x);

/// Finite window: the source holds poles of order <= A and polynomials of
/// degree <= A, the target form-poles of order <= A+1 and t^a dt, a <= A-1.
struct Truncation {
    int A = 1;
};

std::vector<DeRhamTerm> source_basis(std::size_t n, const Truncation& tr);
std::vector<DeRhamTerm> target_basis(std::size_t n, const Truncation& tr);

/// Rows indexed by target_basis, columns by source_basis.
Matrix<RationalFunction> differential_matrix(const MasterConfig& cfg, const Truncation& tr);

struct CohomologyRanks {
    std::size_t h0 = 0;
    std::size_t h1 = 0;
    std::size_t rank = 0;
    std::size_t source_dim = 0;
    std::size_t target_dim = 0;
};

/// Kernel and cokernel dimensions of the truncated differential.
CohomologyRanks cohomology_ranks(const MasterConfig& cfg, const Truncation& tr);

struct RelationPrimitive {
    bool in_window = false;  // target expressible in the window's target basis
    std::optional<DeRhamElement> primitive;
};

/// Solves differential(g) = target inside the window; free coordinates are 0.
RelationPrimitive find_relation_primitive(const MasterConfig& cfg, const DeRhamElement& target,
                                          const Truncation& tr);

enum class ResonanceKind { point, infinity, kappa };

/// (i) m_i + (a-1) kappa = 0, (ii) m_(n+1) + 2 - a kappa = 0, (iii) kappa = 0.
struct DeRhamResonance {
    ResonanceKind kind = ResonanceKind::kappa;
    int i = 0;
    int a = 0;
    bool operator==(const DeRhamResonance&) const = default;
};

std::string to_string(const DeRhamResonance& r);

std::vector<DeRhamResonance> detect_resonances(const MasterConfig& cfg, int a_max);

}  // namespace hsl2
