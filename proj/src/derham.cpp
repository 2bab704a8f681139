#include "hsl2/derham.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hsl2 {

RationalFunction MasterConfig::m_sum() const {
    RationalFunction s;
    for (const auto& x : m) s += x;
    return s;
}

RationalFunction MasterConfig::m_infinity() const { return m_sum() - RationalFunction(2L); }

void MasterConfig::validate() const {
    if (z.empty()) throw std::invalid_argument("master function needs at least one point");
    if (m.size() != z.size()) throw std::invalid_argument("number of weights differs from number of points");
    std::set<Rational> seen(z.begin(), z.end());
    if (seen.size() != z.size()) throw std::invalid_argument("points z_i must be distinct");
    if (kappa.is_zero()) throw std::invalid_argument("kappa = 0: the twisted de Rham complex is not defined");
}

bool MasterConfig::is_numeric() const {
    if (!kappa.is_constant()) return false;
    return std::all_of(m.begin(), m.end(), [](const RationalFunction& x) { return x.is_constant(); });
}

MasterConfig random_config(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-60, 60), den(1, 23);
    auto draw = [&] {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        return q;
    };
    while (true) {
        MasterConfig cfg;
        std::set<Rational> pts;
        while (pts.size() < n) pts.insert(draw());
        cfg.z.assign(pts.begin(), pts.end());
        std::shuffle(cfg.z.begin(), cfg.z.end(), rng);
        for (std::size_t i = 0; i < n; ++i) cfg.m.emplace_back(draw());
        cfg.kappa = RationalFunction(draw());
        if (cfg.kappa.is_zero()) continue;
        if (!detect_resonances(cfg, 12).empty()) continue;
        const Rational ratio = cfg.m[0].constant_value() / cfg.kappa.constant_value();
        if (ratio.get_den() == 1) continue;
        return cfg;
    }
}

// ---------------------------------------------------------------------------

DeRhamElement DeRhamElement::basis(int grade, const DeRhamTerm& term, RationalFunction coeff) {
    DeRhamElement x(grade);
    x.add(term, coeff);
    return x;
}

DeRhamElement DeRhamElement::pole(int grade, int point, int order, RationalFunction coeff) {
    if (point < 1 || order < 1) throw std::invalid_argument("pole term needs point >= 1 and order >= 1");
    return basis(grade, {point, order}, std::move(coeff));
}

DeRhamElement DeRhamElement::poly(int grade, int degree, RationalFunction coeff) {
    if (degree < 0) throw std::invalid_argument("polynomial term needs degree >= 0");
    return basis(grade, {0, degree}, std::move(coeff));
}

std::vector<std::pair<DeRhamTerm, RationalFunction>> DeRhamElement::terms() const {
    std::vector<std::pair<DeRhamTerm, RationalFunction>> out;
    for (const auto& [k, c] : poles_) out.push_back({{k.first, k.second}, c});
    for (const auto& [a, c] : polys_) out.push_back({{0, a}, c});
    return out;
}

RationalFunction DeRhamElement::coefficient(const DeRhamTerm& t) const {
    if (t.is_pole()) {
        auto it = poles_.find({t.point, t.order});
        return it == poles_.end() ? RationalFunction() : it->second;
    }
    auto it = polys_.find(t.order);
    return it == polys_.end() ? RationalFunction() : it->second;
}

namespace {

template <class Map, class Key>
void accumulate(Map& map, const Key& key, const RationalFunction& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = map.try_emplace(key, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) map.erase(it);
}

}  // namespace

void DeRhamElement::add(const DeRhamTerm& t, const RationalFunction& c) {
    if (t.is_pole()) {
        if (t.order < 1) throw std::invalid_argument("pole order must be >= 1");
        accumulate(poles_, std::pair{t.point, t.order}, c);
    } else {
        if (t.order < 0 || t.point < 0) throw std::invalid_argument("invalid polynomial term");
        accumulate(polys_, t.order, c);
    }
}

DeRhamElement& DeRhamElement::operator+=(const DeRhamElement& o) {
    if (o.grade_ != grade_ && !o.is_zero()) throw std::invalid_argument("adding elements of different grades");
    for (const auto& [t, c] : o.terms()) add(t, c);
    return *this;
}

DeRhamElement& DeRhamElement::operator-=(const DeRhamElement& o) { return *this += o * RationalFunction(-1L); }

DeRhamElement& DeRhamElement::operator*=(const RationalFunction& s) {
    if (s.is_zero()) {
        poles_.clear();
        polys_.clear();
        return *this;
    }
    for (auto& [k, c] : poles_) c *= s;
    for (auto& [k, c] : polys_) c *= s;
    return *this;
}

std::string term_label(int grade, const DeRhamTerm& t) {
    const std::string d = grade == 1 ? "dt" : "1";
    if (t.is_pole()) {
        std::string base = d + "/(t-z" + std::to_string(t.point) + ")";
        return t.order == 1 ? base : base + "^" + std::to_string(t.order);
    }
    if (t.order == 0) return d;
    std::string p = t.order == 1 ? "t" : "t^" + std::to_string(t.order);
    return grade == 1 ? p + " dt" : p;
}

std::string DeRhamElement::to_string(const VariablePool& pool) const {
    if (is_zero()) return "0";
    std::string out;
    for (const auto& [t, c] : terms()) {
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string(pool) + ")*" + term_label(grade_, t);
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

RationalFunction rf(const Rational& q) { return RationalFunction(q); }

// kappa * d(1/(t-z_i)^a).
DeRhamElement kappa_d_pole(const MasterConfig& cfg, int i, int a) {
    DeRhamElement out(1);
    const std::size_t n = cfg.n();
    out.add({i, a + 1}, -(cfg.m[i - 1] + RationalFunction(a) * cfg.kappa));
    for (std::size_t j = 1; j <= n; ++j) {
        if (static_cast<int>(j) == i) continue;
        const Rational d = cfg.z[j - 1] - cfg.z[i - 1];
        Rational dk = 1;
        for (int k = 1; k <= a; ++k) {
            dk *= d;
            out.add({i, a + 1 - k}, cfg.m[j - 1] * rf(1 / dk));
        }
        out.add({static_cast<int>(j), 1}, -(cfg.m[j - 1] * rf(1 / dk)));
    }
    return out;
}

// kappa * d(t^a).
DeRhamElement kappa_d_poly(const MasterConfig& cfg, int a) {
    DeRhamElement out(1);
    const std::size_t n = cfg.n();
    if (a >= 1) out.add({0, a - 1}, RationalFunction(a) * cfg.kappa - cfg.m_sum());
    for (std::size_t j = 1; j <= n; ++j) {
        Rational zs = 1;
        for (int s = 1; s <= a - 1; ++s) {
            zs *= cfg.z[j - 1];
            out.add({0, a - 1 - s}, -(cfg.m[j - 1] * rf(zs)));
        }
        Rational za = 1;
        for (int s = 0; s < a; ++s) za *= cfg.z[j - 1];
        out.add({static_cast<int>(j), 1}, -(cfg.m[j - 1] * rf(za)));
    }
    return out;
}

template <class Map>
bool all_constant(const Map& a) {
    for (const auto& row : a)
        for (const auto& x : row)
            if (!x.is_constant()) return false;
    return true;
}

Matrix<Rational> to_rational(const Matrix<RationalFunction>& a) {
    Matrix<Rational> out;
    for (const auto& row : a) {
        std::vector<Rational> r;
        for (const auto& x : row) r.push_back(x.constant_value());
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

DeRhamElement differential(const MasterConfig& cfg, const DeRhamElement& x) {
    if (x.grade() != 0) throw std::invalid_argument("differential is defined on grade 0");
    cfg.validate();
    DeRhamElement out(1);
    for (const auto& [t, c] : x.terms()) {
        if (t.is_pole() && t.point > static_cast<int>(cfg.n()))
            throw std::invalid_argument("pole at a point outside the configuration");
        out += (t.is_pole() ? kappa_d_pole(cfg, t.point, t.order) : kappa_d_poly(cfg, t.order)) * c;
    }
    return out * cfg.kappa.inverse();
}

std::vector<DeRhamTerm> source_basis(std::size_t n, const Truncation& tr) {
    std::vector<DeRhamTerm> out;
    for (int i = 1; i <= static_cast<int>(n); ++i)
        for (int a = 1; a <= tr.A; ++a) out.push_back({i, a});
    for (int a = 0; a <= tr.A; ++a) out.push_back({0, a});
    return out;
}

std::vector<DeRhamTerm> target_basis(std::size_t n, const Truncation& tr) {
    std::vector<DeRhamTerm> out;
    for (int i = 1; i <= static_cast<int>(n); ++i)
        for (int a = 1; a <= tr.A + 1; ++a) out.push_back({i, a});
    for (int a = 0; a <= tr.A - 1; ++a) out.push_back({0, a});
    return out;
}

Matrix<RationalFunction> differential_matrix(const MasterConfig& cfg, const Truncation& tr) {
    if (tr.A < 1) throw std::invalid_argument("truncation A must be >= 1");
    const auto src = source_basis(cfg.n(), tr);
    const auto tgt = target_basis(cfg.n(), tr);
    Matrix<RationalFunction> mat(tgt.size(), std::vector<RationalFunction>(src.size()));
    for (std::size_t c = 0; c < src.size(); ++c) {
        const DeRhamElement img = differential(cfg, DeRhamElement::basis(0, src[c]));
        for (std::size_t r = 0; r < tgt.size(); ++r) mat[r][c] = img.coefficient(tgt[r]);
    }
    return mat;
}

CohomologyRanks cohomology_ranks(const MasterConfig& cfg, const Truncation& tr) {
    const auto mat = differential_matrix(cfg, tr);
    CohomologyRanks out;
    out.source_dim = source_basis(cfg.n(), tr).size();
    out.target_dim = mat.size();
    out.rank = all_constant(mat) ? rank(to_rational(mat)) : row_reduce(mat).rank();
    out.h0 = out.source_dim - out.rank;
    out.h1 = out.target_dim - out.rank;
    return out;
}

RelationPrimitive find_relation_primitive(const MasterConfig& cfg, const DeRhamElement& target,
                                          const Truncation& tr) {
    if (target.grade() != 1) throw std::invalid_argument("relation target must be a 1-form");
    RelationPrimitive out;
    const auto src = source_basis(cfg.n(), tr);
    const auto tgt = target_basis(cfg.n(), tr);
    for (const auto& [t, c] : target.terms())
        if (std::find(tgt.begin(), tgt.end(), t) == tgt.end()) return out;
    out.in_window = true;
    Matrix<RationalFunction> aug = differential_matrix(cfg, tr);
    for (std::size_t r = 0; r < tgt.size(); ++r) aug[r].push_back(target.coefficient(tgt[r]));
    const std::size_t last = src.size();
    DeRhamElement g(0);
    if (all_constant(aug)) {
        const auto ech = row_reduce(to_rational(aug));
        for (std::size_t r = 0; r < ech.rank(); ++r) {
            if (ech.pivots[r] == last) return out;
            g.add(src[ech.pivots[r]], RationalFunction(ech.rref[r][last]));
        }
    } else {
        const auto ech = row_reduce(aug);
        for (std::size_t r = 0; r < ech.rank(); ++r) {
            if (ech.pivots[r] == last) return out;
            g.add(src[ech.pivots[r]], ech.rref[r][last]);
        }
    }
    out.primitive = std::move(g);
    return out;
}

std::string to_string(const DeRhamResonance& r) {
    switch (r.kind) {
        case ResonanceKind::point: return "(i) i=" + std::to_string(r.i) + " a=" + std::to_string(r.a);
        case ResonanceKind::infinity: return "(ii) a=" + std::to_string(r.a);
        case ResonanceKind::kappa: return "(iii)";
    }
    return {};
}

std::vector<DeRhamResonance> detect_resonances(const MasterConfig& cfg, int a_max) {
    std::vector<DeRhamResonance> out;
    for (int i = 1; i <= static_cast<int>(cfg.n()); ++i)
        for (int a = 1; a <= a_max; ++a)
            if ((cfg.m[i - 1] + RationalFunction(a - 1) * cfg.kappa).is_zero())
                out.push_back({ResonanceKind::point, i, a});
    for (int a = 1; a <= a_max; ++a)
        if ((cfg.m_infinity() + RationalFunction(2L) - RationalFunction(a) * cfg.kappa).is_zero())
            out.push_back({ResonanceKind::infinity, 0, a});
    if (cfg.kappa.is_zero()) out.push_back({ResonanceKind::kappa, 0, 0});
    return out;
}

}  // namespace hsl2
