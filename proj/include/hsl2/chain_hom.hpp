#pragma once

#include "hsl2/contragradient.hpp"
#include "hsl2/derham.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace hsl2 {

/// Product of two functions of Omega^0(U), again in the basis
/// 1/(t-z_i)^a, t^a (partial fractions).
DeRhamElement multiply(const MasterConfig& cfg, const DeRhamElement& u1, const DeRhamElement& u2);

/// Laurent coefficients (power, coefficient) of a basis function in the local
/// coordinate of a slot, powers <= max_power. Slots 1..n are t - z_j; slot
/// n+1 is 1/t.
std::vector<std::pair<int, RationalFunction>> laurent(const MasterConfig& cfg, const DeRhamTerm& term,
                                                      std::size_t slot, int max_power);

/// e (x) u_1 + h (x) u_2 + f (x) u_3 with u_i in Omega^0(U).
class Sl2UElement {
public:
    Sl2UElement() = default;
    static Sl2UElement make(Letter x, DeRhamElement u);

    void add(Letter x, const DeRhamElement& u);
    const std::map<Letter, DeRhamElement>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Sl2UElement& operator+=(const Sl2UElement& o);
    Sl2UElement& operator-=(const Sl2UElement& o);
    Sl2UElement& operator*=(const RationalFunction& s);
    friend Sl2UElement operator+(Sl2UElement a, const Sl2UElement& b) { return a += b; }
    friend Sl2UElement operator-(Sl2UElement a, const Sl2UElement& b) { return a -= b; }
    friend Sl2UElement operator*(Sl2UElement a, const RationalFunction& s) { return a *= s; }
    bool operator==(const Sl2UElement& o) const = default;

    std::string to_string(const VariablePool& pool) const;

private:
    std::map<Letter, DeRhamElement> terms_;
};

/// Pointwise bracket [x (x) u1, y (x) u2] = [x, y] (x) u1 u2.
Sl2UElement bracket(const MasterConfig& cfg, const Sl2UElement& a, const Sl2UElement& b);

using TensorKey = std::vector<PBWKey>;

/// Element of V_1* (x) ... (x) V_(n+1)* in the tensor product of dual bases.
class TensorCovector {
public:
    explicit TensorCovector(std::size_t slots = 0) : slots_(slots) {}
    /// (v_1)* (x) ... (x) (v_(n+1))*.
    static TensorCovector vacuum(std::size_t slots, RationalFunction coeff = RationalFunction(1L));
    /// Vacuum in every slot but `slot` (1-based), which carries (key)*.
    static TensorCovector single(std::size_t slots, std::size_t slot, const PBWKey& key,
                                 RationalFunction coeff = RationalFunction(1L));

    std::size_t slots() const { return slots_; }
    const std::map<TensorKey, RationalFunction>& coeffs() const { return coeffs_; }
    RationalFunction coefficient(const TensorKey& key) const;
    bool is_zero() const { return coeffs_.empty(); }

    void add(const TensorKey& key, const RationalFunction& coeff);
    TensorCovector& operator+=(const TensorCovector& o);
    TensorCovector& operator-=(const TensorCovector& o);
    TensorCovector& operator*=(const RationalFunction& s);
    friend TensorCovector operator+(TensorCovector a, const TensorCovector& b) { return a += b; }
    friend TensorCovector operator-(TensorCovector a, const TensorCovector& b) { return a -= b; }
    friend TensorCovector operator*(TensorCovector a, const RationalFunction& s) { return a *= s; }
    bool operator==(const TensorCovector& o) const { return coeffs_ == o.coeffs_; }

    std::string to_string(const VariablePool& pool) const;
    static std::string key_string(const TensorKey& key);

private:
    std::size_t slots_;
    std::map<TensorKey, RationalFunction> coeffs_;
};

/// Degree-one chain: sum of g (x) w.
struct ChainOneElement {
    std::vector<std::pair<Sl2UElement, TensorCovector>> terms;
};

/// The tensor product of contragradient modules V_j* with V_j = V(m_j, k - m_j),
/// k = kappa - 2, and m_(n+1) = m_1 + ... + m_n - 2.
class TensorModule {
public:
    explicit TensorModule(MasterConfig cfg);

    const MasterConfig& config() const { return cfg_; }
    std::size_t slots() const { return modules_.size(); }
    const VermaModule& module(std::size_t slot) const { return *modules_.at(slot - 1); }

    /// Laurent expansion in each slot, pi in the last one, each piece
    /// acting through coact. `extra_order` widens the expansion window.
    TensorCovector mu_act(const Sl2UElement& g, const TensorCovector& w, int extra_order = 0) const;
    /// d: C_1 -> C_0, g (x) w -> mu(g, w).
    TensorCovector d(const ChainOneElement& x) const;

    /// eta^1 on 1-forms.
    TensorCovector eta1(const DeRhamElement& form) const;
    /// eta^0 on functions.
    ChainOneElement eta0(const DeRhamElement& fn) const;

private:
    Covector slot_act(std::size_t slot, const LoopSymbol& g, const PBWKey& key) const;

    MasterConfig cfg_;
    std::vector<std::unique_ptr<VermaModule>> modules_;
};

struct ChainSquareReport {
    DeRhamElement function;
    TensorCovector lhs;  // d(eta^0(function))
    TensorCovector rhs;  // eta^1(differential(function))
    TensorCovector residual;
    bool holds = false;
};

/// d eta^0 = eta^1 differential on one basis function.
ChainSquareReport verify_chain_square(const TensorModule& M, const DeRhamElement& basis_fn);
ChainSquareReport verify_chain_square(const MasterConfig& cfg, const DeRhamElement& basis_fn);

struct InjectivityReport {
    std::size_t eta1_rank = 0;
    std::size_t eta1_count = 0;
    std::size_t eta0_rank = 0;
    std::size_t eta0_count = 0;
    bool holds = false;
};

/// Linear independence of the images of the window's bases.
InjectivityReport check_injectivity(const TensorModule& M, const Truncation& tr);

}  // namespace hsl2
