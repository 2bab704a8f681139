#include "hsl2/verma.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace hsl2 {

Orientation orientation_for(const Degree& d) { return d.p1 >= d.p2 ? Orientation::f_first : Orientation::e_first; }

// ---------------------------------------------------------------------------
// PBWKey

Degree PBWKey::degree() const {
    int p2 = 0;
    for (int i : f) p2 += i;
    for (int j : h) p2 += j;
    for (int k : e) p2 += k;
    return {p2 + static_cast<int>(f.size()) - static_cast<int>(e.size()), p2};
}

std::vector<LoopSymbol> PBWKey::word() const {
    std::vector<LoopSymbol> out;
    out.reserve(length());
    auto push = [&](Letter l, const std::vector<int>& depths) {
        for (int d : depths) out.emplace_back(l, -d);
    };
    if (orientation() == Orientation::f_first) {
        push(Letter::f, f);
        push(Letter::h, h);
        push(Letter::e, e);
    } else {
        push(Letter::e, e);
        push(Letter::h, h);
        push(Letter::f, f);
    }
    return out;
}

std::string PBWKey::to_string() const {
    std::string out;
    for (const auto& s : word()) out += s.to_string() + " ";
    return out + "v";
}

PBWKey parse_pbw_key(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    if (tokens.empty() || tokens.back() != "v") throw std::invalid_argument("PBW key must end with v");
    tokens.pop_back();
    std::vector<LoopSymbol> word;
    for (const auto& t : tokens) {
        const LoopSymbol s = parse_loop_symbol(t);
        if (!s.is_lowering()) throw std::invalid_argument("'" + t + "' is not a lowering generator");
        word.push_back(s);
    }
    const auto& nf = normal_order(word);
    if (nf.size() != 1 || nf.begin()->second != 1 || nf.begin()->first.word() != word)
        throw std::invalid_argument("'" + std::string(text) + "' is not a PBW basis key");
    return nf.begin()->first;
}

// ---------------------------------------------------------------------------
// Basis enumeration

namespace {

// Weakly decreasing sequences of parts in [min_part, max_part] summing to n,
// with at most max_count parts (exactly `exact` parts if exact >= 0).
void partitions(int n, int max_part, int min_part, int max_count, std::vector<int>& cur,
                std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    if (max_count == 0) return;
    for (int p = std::min(n, max_part); p >= min_part; --p) {
        cur.push_back(p);
        partitions(n - p, p, min_part, max_count - 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> partitions(int n, int max_count = 1 << 20) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    partitions(n, n, 1, max_count, cur, out);
    return out;
}

}  // namespace

std::vector<PBWKey> enumerate_basis(const Degree& gamma) {
    std::vector<PBWKey> out;
    if (!gamma.nonnegative()) return out;
    const int p2 = gamma.p2;
    const int d = gamma.p1 - gamma.p2;  // #f - #e
    for (int se = 0; se <= p2; ++se) {
        for (const auto& e : partitions(se)) {
            const int a = d + static_cast<int>(e.size());
            if (a < 0) continue;
            for (int sh = 0; sh + se <= p2; ++sh) {
                const int sf = p2 - se - sh;
                if (a == 0 && sf != 0) continue;
                const auto fparts = partitions(sf, a);
                for (const auto& h : partitions(sh)) {
                    for (auto f : fparts) {
                        f.resize(static_cast<std::size_t>(a), 0);
                        out.push_back(PBWKey{f, h, e});
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), KeyOrder{});
    return out;
}

std::size_t dimension(const Degree& gamma) { return enumerate_basis(gamma).size(); }

// ---------------------------------------------------------------------------
// Normal ordering

namespace {

int letter_rank(Letter l, Orientation o) {
    const int r = l == Letter::f ? 0 : l == Letter::h ? 1 : 2;
    return o == Orientation::f_first ? r : 2 - r;
}

PBWKey key_from_sorted(const std::vector<LoopSymbol>& word) {
    PBWKey key;
    for (const auto& s : word) {
        auto& dst = s.letter == Letter::f ? key.f : s.letter == Letter::h ? key.h : key.e;
        dst.push_back(-s.power);
    }
    return key;
}

struct NormalMemo {
    std::shared_mutex mutex;
    std::map<std::vector<LoopSymbol>, KeyMap<Integer>> table;
};

NormalMemo& normal_memo() {
    static NormalMemo memo;
    return memo;
}

void accumulate(KeyMap<Integer>& acc, const KeyMap<Integer>& src, const Integer& scale) {
    for (const auto& [k, c] : src) {
        auto [it, inserted] = acc.try_emplace(k, c * scale);
        if (inserted) continue;
        it->second += c * scale;
        if (it->second == 0) acc.erase(it);
    }
}

KeyMap<Integer> compute_normal(const std::vector<LoopSymbol>& word) {
    Degree deg;
    for (const auto& s : word) {
        if (!s.is_lowering()) throw std::invalid_argument("normal_order: '" + s.to_string() + "' is not lowering");
        deg = deg + s.degree();
    }
    const Orientation o = orientation_for(deg);
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
        const LoopSymbol& x = word[i];
        const LoopSymbol& y = word[i + 1];
        const int rx = letter_rank(x.letter, o);
        const int ry = letter_rank(y.letter, o);
        // Same letters commute and are sorted by decreasing depth, i.e. increasing power.
        const bool out_of_order = rx > ry || (rx == ry && x.power > y.power);
        if (!out_of_order) continue;
        std::vector<LoopSymbol> swapped = word;
        std::swap(swapped[i], swapped[i + 1]);
        KeyMap<Integer> acc = normal_order(swapped);
        if (rx != ry) {
            // x y = y x + [x, y]; brackets inside n-hat-minus have no central part.
            for (const auto& [s, c] : bracket(x, y)) {
                std::vector<LoopSymbol> shorter;
                shorter.reserve(word.size() - 1);
                shorter.insert(shorter.end(), word.begin(), word.begin() + static_cast<long>(i));
                shorter.push_back(s);
                shorter.insert(shorter.end(), word.begin() + static_cast<long>(i) + 2, word.end());
                accumulate(acc, normal_order(shorter), Integer(c));
            }
        }
        return acc;
    }
    KeyMap<Integer> single;
    single.emplace(key_from_sorted(word), Integer(1));
    return single;
}

}  // namespace

const KeyMap<Integer>& normal_order(const std::vector<LoopSymbol>& word) {
    NormalMemo& memo = normal_memo();
    {
        std::shared_lock lock(memo.mutex);
        auto it = memo.table.find(word);
        if (it != memo.table.end()) return it->second;
    }
    KeyMap<Integer> value = compute_normal(word);
    std::unique_lock lock(memo.mutex);
    return memo.table.try_emplace(word, std::move(value)).first->second;
}

HighestWeight HighestWeight::symbolic() {
    return {RationalFunction::variable(kVarM), RationalFunction::variable(kVarK)};
}

// ---------------------------------------------------------------------------
// VermaModule

VermaModule::VermaModule(HighestWeight hw) : hw_(std::move(hw)) {}

std::size_t VermaModule::memo_size() const {
    std::shared_lock lock(mutex_);
    return memo_.size();
}

namespace {

ModuleVector from_integers(const KeyMap<Integer>& nf, const Degree& deg, const RationalFunction& scale) {
    ModuleVector out(deg);
    if (scale.is_zero()) return out;
    for (const auto& [k, c] : nf) out.add(k, scale * RationalFunction(c));
    return out;
}

Degree word_degree(const std::vector<LoopSymbol>& word) {
    Degree d;
    for (const auto& s : word) d = d + s.degree();
    return d;
}

}  // namespace

ModuleVector VermaModule::left_multiply(const LoopSymbol& y, const ModuleVector& w) const {
    ModuleVector out(w.degree() + y.degree());
    for (const auto& [key, c] : w.coeffs()) {
        std::vector<LoopSymbol> word;
        word.reserve(key.length() + 1);
        word.push_back(y);
        const auto tail = key.word();
        word.insert(word.end(), tail.begin(), tail.end());
        for (const auto& [k2, n] : normal_order(word)) out.add(k2, c * RationalFunction(n));
    }
    return out;
}

ModuleVector VermaModule::act_on_word(const LoopSymbol& g, const std::vector<LoopSymbol>& word) const {
    const Degree target = word_degree(word) + g.degree();
    if (!target.nonnegative()) return ModuleVector(target);
    auto key = std::make_pair(g, word);
    {
        std::shared_lock lock(mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    ModuleVector value = compute(g, word);
    std::unique_lock lock(mutex_);
    return memo_.try_emplace(std::move(key), std::move(value)).first->second;
}

ModuleVector VermaModule::compute(const LoopSymbol& g, const std::vector<LoopSymbol>& word) const {
    const Degree target = word_degree(word) + g.degree();
    if (g.is_central()) return from_integers(normal_order(word), target, hw_.k);
    if (g.is_lowering()) {
        std::vector<LoopSymbol> longer;
        longer.reserve(word.size() + 1);
        longer.push_back(g);
        longer.insert(longer.end(), word.begin(), word.end());
        return from_integers(normal_order(longer), target, RationalFunction(1L));
    }
    if (word.empty()) {
        // Only h (power 0) survives the degree test at v.
        if (g.letter == Letter::h && g.power == 0) return ModuleVector::basis(PBWKey{}, hw_.m);
        return ModuleVector(target);
    }
    // g y_1 ... y_q v = y_1 (g y_2 ... y_q v) + [g, y_1] y_2 ... y_q v
    const LoopSymbol& y1 = word.front();
    const std::vector<LoopSymbol> rest(word.begin() + 1, word.end());
    ModuleVector out = left_multiply(y1, act_on_word(g, rest));
    for (const auto& [s, c] : bracket(g, y1)) {
        const RationalFunction coeff(c);
        if (s.is_central()) out += from_integers(normal_order(rest), word_degree(rest), hw_.k * coeff);
        else out += act_on_word(s, rest) * coeff;
    }
    if (out.is_zero()) return ModuleVector(target);
    return out;
}

ModuleVector VermaModule::act(const LoopSymbol& g, const ModuleVector& w) const {
    ModuleVector out(w.degree() + g.degree());
    for (const auto& [key, c] : w.coeffs()) out += act_on_word(g, key.word()) * c;
    return out;
}

ModuleVector VermaModule::act(const LoopElement& g, const ModuleVector& w) const {
    ModuleVector out;
    bool first = true;
    for (const auto& [s, c] : g.terms()) {
        ModuleVector part = act(s, w) * c;
        if (first) {
            out = std::move(part);
            first = false;
        } else {
            out += part;
        }
    }
    return out;
}

ModuleVector VermaModule::apply_word(const std::vector<LoopSymbol>& word) const {
    ModuleVector w = vacuum();
    for (auto it = word.rbegin(); it != word.rend(); ++it) w = act(*it, w);
    return w;
}

}  // namespace hsl2
