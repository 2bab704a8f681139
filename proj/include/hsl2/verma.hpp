#pragma once

#include "hsl2/graded.hpp"

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

namespace hsl2 {

PBWKey parse_pbw_key(std::string_view text);

/// Complete PBW basis of V_gamma in the deterministic order.
std::vector<PBWKey> enumerate_basis(const Degree& gamma);
std::size_t dimension(const Degree& gamma);

/// Rewrites a word of lowering generators (applied to v) in the PBW basis.
/// The coefficients are integers and do not depend on the highest weight.
const KeyMap<Integer>& normal_order(const std::vector<LoopSymbol>& word);

struct HighestWeight {
    RationalFunction m;
    RationalFunction k;

    /// m and k as the free variables of the Verma pool.
    static HighestWeight symbolic();
};

/// The Verma module V(m, k-m) with generating vector v:
/// e v = 0, fT v = 0, h v = m v, c = k.
class VermaModule {
public:
    explicit VermaModule(HighestWeight hw = HighestWeight::symbolic());
    VermaModule(const VermaModule&) = delete;
    VermaModule& operator=(const VermaModule&) = delete;

    const HighestWeight& weight() const { return hw_; }
    ModuleVector vacuum() const { return ModuleVector::basis(PBWKey{}); }

    ModuleVector act(const LoopSymbol& g, const ModuleVector& w) const;
    ModuleVector act(const LoopElement& g, const ModuleVector& w) const;
    /// g applied to (word v); the word must consist of lowering generators.
    ModuleVector act_on_word(const LoopSymbol& g, const std::vector<LoopSymbol>& word) const;
    /// y_1 ... y_q v for arbitrary symbols, applied right to left.
    ModuleVector apply_word(const std::vector<LoopSymbol>& word) const;

    std::size_t memo_size() const;

private:
    ModuleVector compute(const LoopSymbol& g, const std::vector<LoopSymbol>& word) const;
    ModuleVector left_multiply(const LoopSymbol& y, const ModuleVector& w) const;

    HighestWeight hw_;
    mutable std::shared_mutex mutex_;
    mutable std::map<std::pair<LoopSymbol, std::vector<LoopSymbol>>, ModuleVector> memo_;
};

}  // namespace hsl2
