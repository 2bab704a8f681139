#pragma once

#include "hsl2/contragradient.hpp"
#include "hsl2/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hsl2 {

struct GramMatrix {
    Degree degree;
    std::vector<PBWKey> keys;
    Matrix<RationalFunction> entries;  // entries[i][j] = S(w_i, w_j)
};

/// S(y_1 ... y_p v, w) = coefficient of v in theta(y_p) ... theta(y_1) w.
GramMatrix gram_matrix(const VermaModule& V, const Degree& gamma);

enum class LineKind { a_line, b_line, kappa_zero };

/// a-line: m - l + 1 + (a-1) kappa = 0, singular degree (l a, l (a-1)).
/// b-line: m + l + 1 - a kappa = 0, singular degree (l (a-1), l a).
/// kappa-zero: kappa = 0; singular vectors start in degree (1, 1).
struct ResonanceLine {
    LineKind kind = LineKind::kappa_zero;
    int l = 1;
    int a = 1;

    /// Defining linear form over the Verma pool (kappa = k + 2).
    RationalFunction form() const;
    Degree singular_degree() const;
    bool contains(const Rational& m, const Rational& k) const;
    /// A point of the line with the given k (or the given m for kappa-zero).
    std::pair<Rational, Rational> point(const Rational& t) const;
    std::string to_string() const;

    auto operator<=>(const ResonanceLine&) const = default;
};

/// Lines whose singular degree is componentwise <= gamma.
std::vector<ResonanceLine> applicable_lines(const Degree& gamma);
/// Applicable lines through (m, k).
std::vector<ResonanceLine> lines_through(const Rational& m, const Rational& k, const Degree& gamma);

struct DeterminantFactor {
    ResonanceLine line;
    int exponent = 0;  // found by trial division
    int expected = 0;  // Kac-Kazhdan multiplicity
};

struct DeterminantReport {
    Degree degree;
    RationalFunction det;
    std::vector<DeterminantFactor> factors;
    RationalFunction cofactor;  // det divided by all found factors
    bool matches = false;       // exponents as expected and cofactor constant
};

DeterminantReport factor_determinant(const VermaModule& V, const Degree& gamma);

struct SingularCandidate {
    ModuleVector vector;
    std::optional<ResonanceLine> line;
    Rational m0;
    Rational k0;
};

/// Basis of the joint kernel of e and f*T on V_gamma at (m0, k0).
std::vector<SingularCandidate> singular_vectors(const Degree& gamma, const Rational& m0, const Rational& k0);

/// e v' = 0 and fT v' = 0 in V(m0, k0 - m0).
bool is_singular(const ModuleVector& w, const Rational& m0, const Rational& k0);

/// Known closed forms at l = 1: F12(1,1) = f, F21(1,1) = e/T, and the
/// three-term F21(1,2). nullopt where no closed form is available here.
std::optional<ModuleVector> mff_vector(char which, int a, const Rational& k0);

struct ContinuationReport {
    char which = 'X';
    int a = 1;
    Rational m0;
    Rational k0;
    ResonanceLine line;
    Degree degree;
    std::vector<RationalFunction> on_line;  // coordinates restricted to the line, in k
    ModuleVector vector;
    bool nonzero = false;
    bool singular = false;
    std::size_t kernel_dim = 0;
    bool proportional_to_kernel = false;
    std::optional<bool> proportional_to_mff;
    bool holds = false;
};

class SecondLineError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// X_a = S^-1((m + (a-1)(k+2)) (f/T^(a-1) v)*) or Y_a = S^-1((m + 2 - a(k+2)) (e/T^a v)*),
/// solved over Q(m, k), restricted to its line and evaluated at k0.
/// Throws PoleError when the restriction has a pole at k0 and
/// SecondLineError when (m0, k0) lies on another applicable line.
ContinuationReport continue_XY(char which, int a, const Rational& k0);

}  // namespace hsl2
