#include "hsl2/chain_hom.hpp"

#include <functional>
#include <stdexcept>

namespace hsl2 {

namespace {

Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

Rational power(const Rational& x, long e) {
    Rational out = 1;
    const Rational base = e < 0 ? Rational(1 / x) : x;
    for (long i = 0; i < (e < 0 ? -e : e); ++i) out *= base;
    return out;
}

RationalFunction rf(const Rational& q) { return RationalFunction(q); }

const Rational& point(const MasterConfig& cfg, int i) { return cfg.z.at(static_cast<std::size_t>(i - 1)); }

// (t - z_i)^r, r >= 0, in powers of t.
DeRhamElement shifted_power(const MasterConfig& cfg, int i, int r) {
    DeRhamElement out(0);
    for (int q = 0; q <= r; ++q) out.add({0, q}, rf(Rational(binomial(r, q)) * power(-point(cfg, i), r - q)));
    return out;
}

// 1 / ((t - z_i)^a (t - z_j)^b), i != j.
DeRhamElement two_poles(const MasterConfig& cfg, int i, int a, int j, int b) {
    if (a == 0) return DeRhamElement::pole(0, j, b);
    if (b == 0) return DeRhamElement::pole(0, i, a);
    const RationalFunction inv_d = rf(1 / (point(cfg, i) - point(cfg, j)));
    return (two_poles(cfg, i, a, j, b - 1) - two_poles(cfg, i, a - 1, j, b)) * inv_d;
}

// t^a / (t - z_i)^b.
DeRhamElement poly_over_pole(const MasterConfig& cfg, int a, int i, int b) {
    DeRhamElement out(0);
    const Rational& z = point(cfg, i);
    for (int s = 0; s <= a; ++s) {
        const RationalFunction c = rf(Rational(binomial(a, s)) * power(z, a - s));
        if (s < b) out.add({i, b - s}, c);
        else out += shifted_power(cfg, i, s - b) * c;
    }
    return out;
}

DeRhamElement basis_product(const MasterConfig& cfg, const DeRhamTerm& x, const DeRhamTerm& y) {
    if (!x.is_pole() && !y.is_pole()) return DeRhamElement::poly(0, x.order + y.order);
    if (x.is_pole() && y.is_pole()) {
        if (x.point == y.point) return DeRhamElement::pole(0, x.point, x.order + y.order);
        return two_poles(cfg, x.point, x.order, y.point, y.order);
    }
    const DeRhamTerm& p = x.is_pole() ? x : y;
    const DeRhamTerm& q = x.is_pole() ? y : x;
    return poly_over_pole(cfg, q.order, p.point, p.order);
}

int pole_order(const DeRhamTerm& t) { return t.order; }

}  // namespace

DeRhamElement multiply(const MasterConfig& cfg, const DeRhamElement& u1, const DeRhamElement& u2) {
    if (u1.grade() != 0 || u2.grade() != 0) throw std::invalid_argument("multiply expects functions");
    DeRhamElement out(0);
    for (const auto& [x, cx] : u1.terms())
        for (const auto& [y, cy] : u2.terms()) out += basis_product(cfg, x, y) * (cx * cy);
    return out;
}

std::vector<std::pair<int, RationalFunction>> laurent(const MasterConfig& cfg, const DeRhamTerm& term,
                                                      std::size_t slot, int max_power) {
    std::vector<std::pair<int, RationalFunction>> out;
    const std::size_t n = cfg.n();
    if (slot < 1 || slot > n + 1) throw std::out_of_range("slot outside 1..n+1");
    if (slot <= n) {
        const Rational& zj = cfg.z[slot - 1];
        if (term.is_pole()) {
            const int a = term.order;
            if (static_cast<std::size_t>(term.point) == slot) {
                if (-a <= max_power) out.push_back({-a, RationalFunction(1L)});
                return out;
            }
            // (w + d)^(-a), d = z_j - z_i.
            const Rational d = zj - point(cfg, term.point);
            for (int s = 0; s <= max_power; ++s) {
                Rational c = Rational(binomial(a + s - 1, s)) * power(d, -a - s);
                if (s % 2) c = -c;
                out.push_back({s, rf(c)});
            }
            return out;
        }
        const int a = term.order;
        for (int s = 0; s <= std::min(a, max_power); ++s)
            out.push_back({s, rf(Rational(binomial(a, s)) * power(zj, a - s))});
        return out;
    }
    // tau = 1/t.
    if (!term.is_pole()) {
        if (-term.order <= max_power) out.push_back({-term.order, RationalFunction(1L)});
        return out;
    }
    const int a = term.order;
    const Rational& z = point(cfg, term.point);
    for (int s = 0; a + s <= max_power; ++s) out.push_back({a + s, rf(Rational(binomial(a + s - 1, s)) * power(z, s))});
    return out;
}

// ---------------------------------------------------------------------------

Sl2UElement Sl2UElement::make(Letter x, DeRhamElement u) {
    Sl2UElement g;
    g.add(x, u);
    return g;
}

void Sl2UElement::add(Letter x, const DeRhamElement& u) {
    if (x == Letter::c) throw std::invalid_argument("sl2(U) has no central element");
    if (u.grade() != 0) throw std::invalid_argument("sl2(U) coefficients are functions");
    if (u.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(x, u);
    if (inserted) return;
    it->second += u;
    if (it->second.is_zero()) terms_.erase(it);
}

Sl2UElement& Sl2UElement::operator+=(const Sl2UElement& o) {
    for (const auto& [x, u] : o.terms_) add(x, u);
    return *this;
}

Sl2UElement& Sl2UElement::operator-=(const Sl2UElement& o) {
    for (const auto& [x, u] : o.terms_) add(x, u * RationalFunction(-1L));
    return *this;
}

Sl2UElement& Sl2UElement::operator*=(const RationalFunction& s) {
    if (s.is_zero()) terms_.clear();
    for (auto& [x, u] : terms_) u *= s;
    return *this;
}

std::string Sl2UElement::to_string(const VariablePool& pool) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [x, u] : terms_) {
        if (!out.empty()) out += " + ";
        out += LoopSymbol(x, 0).to_string() + "*[" + u.to_string(pool) + "]";
    }
    return out;
}

Sl2UElement bracket(const MasterConfig& cfg, const Sl2UElement& a, const Sl2UElement& b) {
    Sl2UElement out;
    for (const auto& [x, u1] : a.terms())
        for (const auto& [y, u2] : b.terms()) {
            const auto br = bracket(LoopSymbol(x, 0), LoopSymbol(y, 0));
            if (br.empty()) continue;
            const DeRhamElement prod = multiply(cfg, u1, u2);
            for (const auto& [s, c] : br) out.add(s.letter, prod * RationalFunction(c));
        }
    return out;
}

// ---------------------------------------------------------------------------

TensorCovector TensorCovector::vacuum(std::size_t slots, RationalFunction coeff) {
    TensorCovector w(slots);
    w.add(TensorKey(slots), coeff);
    return w;
}

TensorCovector TensorCovector::single(std::size_t slots, std::size_t slot, const PBWKey& key, RationalFunction coeff) {
    if (slot < 1 || slot > slots) throw std::out_of_range("slot outside the tensor product");
    TensorKey k(slots);
    k[slot - 1] = key;
    TensorCovector w(slots);
    w.add(k, coeff);
    return w;
}

RationalFunction TensorCovector::coefficient(const TensorKey& key) const {
    auto it = coeffs_.find(key);
    return it == coeffs_.end() ? RationalFunction() : it->second;
}

void TensorCovector::add(const TensorKey& key, const RationalFunction& coeff) {
    if (key.size() != slots_) throw std::invalid_argument("tensor key has the wrong number of slots");
    if (coeff.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(key, coeff);
    if (inserted) return;
    it->second += coeff;
    if (it->second.is_zero()) coeffs_.erase(it);
}

TensorCovector& TensorCovector::operator+=(const TensorCovector& o) {
    if (slots_ == 0) slots_ = o.slots_;
    for (const auto& [k, c] : o.coeffs_) add(k, c);
    return *this;
}

TensorCovector& TensorCovector::operator-=(const TensorCovector& o) {
    if (slots_ == 0) slots_ = o.slots_;
    for (const auto& [k, c] : o.coeffs_) add(k, -c);
    return *this;
}

TensorCovector& TensorCovector::operator*=(const RationalFunction& s) {
    if (s.is_zero()) coeffs_.clear();
    for (auto& [k, c] : coeffs_) c *= s;
    return *this;
}

std::string TensorCovector::key_string(const TensorKey& key) {
    std::string out;
    for (std::size_t j = 0; j < key.size(); ++j) {
        if (j) out += " (x) ";
        out += "(" + key[j].to_string() + ")*";
    }
    return out;
}

std::string TensorCovector::to_string(const VariablePool& pool) const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : coeffs_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string(pool) + ")*" + key_string(k);
    }
    return out;
}

// ---------------------------------------------------------------------------

TensorModule::TensorModule(MasterConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    const RationalFunction k = cfg_.kappa - RationalFunction(2L);
    for (const auto& m : cfg_.m) modules_.push_back(std::make_unique<VermaModule>(HighestWeight{m, k}));
    modules_.push_back(std::make_unique<VermaModule>(HighestWeight{cfg_.m_infinity(), k}));
}

Covector TensorModule::slot_act(std::size_t slot, const LoopSymbol& g, const PBWKey& key) const {
    return coact(module(slot), g, Covector::basis(key));
}

TensorCovector TensorModule::mu_act(const Sl2UElement& g, const TensorCovector& w, int extra_order) const {
    const std::size_t n1 = slots();
    TensorCovector out(n1);
    for (const auto& [x, u] : g.terms())
        for (const auto& [term, cu] : u.terms())
            for (const auto& [keys, cw] : w.coeffs())
                for (std::size_t j = 1; j <= n1; ++j) {
                    const PBWKey& kj = keys[j - 1];
                    const int bound = kj.degree().total() + pole_order(term) + 1 + extra_order;
                    for (const auto& [s, cs] : laurent(cfg_, term, j, bound)) {
                        std::vector<std::pair<LoopSymbol, long>> syms;
                        if (j < n1) syms.push_back({LoopSymbol(x, s), 1});
                        else syms = apply_map(LoopMap::pi, LoopSymbol(x, s));
                        for (const auto& [sym, sc] : syms) {
                            const Covector phi = slot_act(j, sym, kj);
                            if (phi.is_zero()) continue;
                            const RationalFunction c = cu * cw * cs * RationalFunction(sc);
                            for (const auto& [k2, c2] : phi.coeffs()) {
                                TensorKey nk = keys;
                                nk[j - 1] = k2;
                                out.add(nk, c * c2);
                            }
                        }
                    }
                }
    return out;
}

TensorCovector TensorModule::d(const ChainOneElement& x) const {
    TensorCovector out(slots());
    for (const auto& [g, w] : x.terms) out += mu_act(g, w);
    return out;
}

TensorCovector TensorModule::eta1(const DeRhamElement& form) const {
    if (form.grade() != 1) throw std::invalid_argument("eta^1 is defined on 1-forms");
    const std::size_t n1 = slots();
    TensorCovector out(n1);
    for (const auto& [t, c] : form.terms()) {
        if (t.is_pole()) {
            if (t.point > static_cast<int>(n1 - 1)) throw std::invalid_argument("pole outside the configuration");
            out += TensorCovector::single(n1, t.point, PBWKey{{t.order - 1}, {}, {}}, -(cfg_.kappa * c));
        } else {
            out += TensorCovector::single(n1, n1, PBWKey{{}, {}, {t.order + 1}}, cfg_.kappa * c);
        }
    }
    return out;
}

ChainOneElement TensorModule::eta0(const DeRhamElement& fn) const {
    if (fn.grade() != 0) throw std::invalid_argument("eta^0 is defined on functions");
    const std::size_t n1 = slots();
    ChainOneElement out;
    const RationalFunction two(2L);
    for (const auto& [t, c] : fn.terms()) {
        const int a = t.order;
        out.terms.push_back({Sl2UElement::make(Letter::f, DeRhamElement::basis(0, t, c)), TensorCovector::vacuum(n1)});
        if (t.is_pole()) {
            const int m = t.point;
            for (int l = 1; l <= a; ++l) {
                TensorCovector ff(n1);
                for (int j = 0; 2 * j <= a - l; ++j)
                    ff += TensorCovector::single(n1, m, PBWKey{{a - l - j, j}, {}, {}}, two);
                out.terms.push_back({Sl2UElement::make(Letter::e, DeRhamElement::pole(0, m, l, -c)), ff});
                out.terms.push_back({Sl2UElement::make(Letter::h, DeRhamElement::pole(0, m, l, -c)),
                                     TensorCovector::single(n1, m, PBWKey{{a - l}, {}, {}})});
            }
        } else {
            for (int l = 0; l <= a - 2; ++l) {
                TensorCovector ee(n1);
                for (int j = 1; 2 * j <= a - l; ++j)
                    ee += TensorCovector::single(n1, n1, PBWKey{{}, {}, {a - l - j, j}}, two);
                out.terms.push_back({Sl2UElement::make(Letter::e, DeRhamElement::poly(0, l, -c)), ee});
                out.terms.push_back({Sl2UElement::make(Letter::h, DeRhamElement::poly(0, l + 1, -c)),
                                     TensorCovector::single(n1, n1, PBWKey{{}, {}, {a - l - 1}})});
            }
        }
    }
    return out;
}

ChainSquareReport verify_chain_square(const TensorModule& M, const DeRhamElement& basis_fn) {
    ChainSquareReport rep;
    rep.function = basis_fn;
    rep.lhs = M.d(M.eta0(basis_fn));
    rep.rhs = M.eta1(differential(M.config(), basis_fn));
    rep.residual = rep.lhs - rep.rhs;
    rep.holds = rep.residual.is_zero();
    return rep;
}

ChainSquareReport verify_chain_square(const MasterConfig& cfg, const DeRhamElement& basis_fn) {
    const TensorModule M(cfg);
    return verify_chain_square(M, basis_fn);
}

namespace {

template <class Key>
std::size_t rank_of(const std::vector<std::map<Key, RationalFunction>>& rows) {
    std::map<Key, std::size_t> index;
    for (const auto& r : rows)
        for (const auto& [k, c] : r) index.try_emplace(k, index.size());
    bool constant = true;
    for (const auto& r : rows)
        for (const auto& [k, c] : r) constant = constant && c.is_constant();
    if (constant) {
        Matrix<Rational> mat(rows.size(), std::vector<Rational>(index.size()));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (const auto& [k, c] : rows[i]) mat[i][index[k]] = c.constant_value();
        return rank(mat);
    }
    Matrix<RationalFunction> mat(rows.size(), std::vector<RationalFunction>(index.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [k, c] : rows[i]) mat[i][index[k]] = c;
    return row_reduce(mat).rank();
}

}  // namespace

InjectivityReport check_injectivity(const TensorModule& M, const Truncation& tr) {
    InjectivityReport rep;
    const std::size_t n = M.config().n();
    std::vector<std::map<TensorKey, RationalFunction>> images1;
    for (const auto& t : target_basis(n, tr)) images1.push_back(M.eta1(DeRhamElement::basis(1, t)).coeffs());
    using ChainKey = std::tuple<Letter, DeRhamTerm, TensorKey>;
    std::vector<std::map<ChainKey, RationalFunction>> images0;
    for (const auto& t : source_basis(n, tr)) {
        std::map<ChainKey, RationalFunction> row;
        for (const auto& [g, w] : M.eta0(DeRhamElement::basis(0, t)).terms)
            for (const auto& [x, u] : g.terms())
                for (const auto& [term, cu] : u.terms())
                    for (const auto& [key, cw] : w.coeffs()) {
                        auto& slot = row[ChainKey{x, term, key}];
                        slot += cu * cw;
                    }
        std::erase_if(row, [](const auto& kv) { return kv.second.is_zero(); });
        images0.push_back(std::move(row));
    }
    rep.eta1_count = images1.size();
    rep.eta1_rank = rank_of(images1);
    rep.eta0_count = images0.size();
    rep.eta0_rank = rank_of(images0);
    rep.holds = rep.eta1_rank == rep.eta1_count && rep.eta0_rank == rep.eta0_count;
    return rep;
}

}  // namespace hsl2
