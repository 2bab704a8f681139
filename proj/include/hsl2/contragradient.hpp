#pragma once

#include "hsl2/verma.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace hsl2 {

/// <phi, w>: zero when the degrees differ.
RationalFunction pair(const Covector& phi, const ModuleVector& w);

/// Contragradient action, <g phi, x> = <phi, theta(g) x>, evaluated on every
/// basis key of the target degree deg(phi) + deg(g).
Covector coact(const VermaModule& V, const LoopSymbol& g, const Covector& phi);
/// Homogeneous g only.
Covector coact(const VermaModule& V, const LoopElement& g, const Covector& phi);

/// (v)*.
inline Covector dual_vacuum() { return Covector::basis(PBWKey{}); }

enum class Side { A, B };

/// Both sides of the identity, as covectors of degree (a, a-1) for A and
/// (a-1, a) for B. The left side is the action of f/T^(a-1) (resp. e/T^a)
/// on (v)*; the right side is the closed formula.
std::pair<Covector, Covector> identity_sides(const VermaModule& V, Side side, int a);

struct IdentityRow {
    PBWKey key;
    RationalFunction lhs;
    RationalFunction rhs;
};

struct IdentityReport {
    Side side = Side::A;
    int a = 1;
    Degree degree;
    std::vector<IdentityRow> rows;       // every basis key of the component
    std::vector<IdentityRow> residuals;  // rows with lhs != rhs
    bool holds = false;
};

IdentityReport verify_identity(const VermaModule& V, Side side, int a);

/// Basis correspondence induced by the Dynkin involution: a key of
/// V(k-m, m) of degree (p1, p2) is sent to (sign, key) of V(m, k-m) of degree
/// (p2, p1). f/T^i -> e/T^(i+1), e/T^i -> f/T^(i-1), h/T^i -> -h/T^i.
/// Throws std::domain_error for p1 == p2, where the image is not a basis key.
std::pair<int, PBWKey> chi_key(const PBWKey& key);

/// Dual map on covectors, key by key.
Covector chi_star(const Covector& phi);

struct RhoRouteReport {
    int a = 1;
    bool lhs_agree = false;  // chi*(f/T^(a-1) (v')*) == e/T^a (v)*
    bool rhs_agree = false;  // chi*(closed form A in V') == closed form B in V
    bool holds = false;
};

/// Verifies (B) in V(m, k-m) by verifying (A) in V(k-m, m) and transporting
/// it through chi*. `twisted` must be the module with highest weight k - m.
RhoRouteReport verify_identity_via_rho(const VermaModule& V, const VermaModule& twisted, int a);

enum class Group { O, I, II, III };

const char* group_name(Group g);

/// Pairing values of the three kinds of terms of the identity A against one
/// basis vector w of degree (a, a-1).
struct GroupRow {
    PBWKey key;
    Group group = Group::O;
    int r = 0;  // number of f factors
    int s = 0;  // number of h factors
    RationalFunction p0;                 // <f/T^(a-1) (v)*, w>
    std::vector<RationalFunction> ph;    // l = 1..a-1: <h/T^l (f/T^(a-1-l) v)*, w>
    std::vector<RationalFunction> pe;    // l = 1..a-1: <e/T^l sum (f/T^i f/T^j v)*, w>
    // Tabulated values; absent where only sums are tabulated.
    std::optional<RationalFunction> want_p0;
    std::vector<std::optional<RationalFunction>> want_ph;
    std::vector<std::optional<RationalFunction>> want_pe;
    std::optional<RationalFunction> want_ph_sum;
    std::optional<RationalFunction> want_pe_sum;
    bool holds = false;
};

/// Computes all pairings for every basis vector of V_(a, a-1) and compares
/// them with the table of values proved group by group.
std::vector<GroupRow> group_oracles(const VermaModule& V, int a);

}  // namespace hsl2
