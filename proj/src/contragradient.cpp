#include "hsl2/contragradient.hpp"

#include <stdexcept>

namespace hsl2 {

RationalFunction pair(const Covector& phi, const ModuleVector& w) {
    RationalFunction out;
    if (phi.is_zero() || w.is_zero() || phi.degree() != w.degree()) return out;
    const auto& small = phi.size() <= w.size() ? phi.coeffs() : w.coeffs();
    const auto& large = phi.size() <= w.size() ? w.coeffs() : phi.coeffs();
    for (const auto& [k, c] : small) {
        auto it = large.find(k);
        if (it != large.end()) out += c * it->second;
    }
    return out;
}

Covector coact(const VermaModule& V, const LoopSymbol& g, const Covector& phi) {
    const Degree target = phi.degree() + g.degree();
    Covector out(target);
    if (phi.is_zero() || !target.nonnegative()) return out;
    if (g.is_central()) return phi * V.weight().k;
    const auto image = apply_map(LoopMap::theta, g);
    const LoopSymbol tg = image.front().first;
    for (const auto& key : enumerate_basis(target)) {
        const ModuleVector y = V.act_on_word(tg, key.word());
        RationalFunction value;
        for (const auto& [k, c] : y.coeffs()) {
            auto it = phi.coeffs().find(k);
            if (it != phi.coeffs().end()) value += it->second * c;
        }
        out.add(key, value);
    }
    return out;
}

Covector coact(const VermaModule& V, const LoopElement& g, const Covector& phi) {
    Covector out;
    for (const auto& [s, c] : g.terms()) out += coact(V, s, phi) * c;
    return out;
}

namespace {

PBWKey f_key(std::vector<int> depths) { return PBWKey{std::move(depths), {}, {}}; }
PBWKey e_key(std::vector<int> depths) { return PBWKey{{}, {}, std::move(depths)}; }

LoopSymbol lower(Letter l, int depth) { return LoopSymbol(l, -depth); }

}  // namespace

std::pair<Covector, Covector> identity_sides(const VermaModule& V, Side side, int a) {
    if (a < 1) throw std::invalid_argument("identity requires a >= 1");
    const RationalFunction& m = V.weight().m;
    const RationalFunction& k = V.weight().k;
    const RationalFunction kappa = k + RationalFunction(2L);
    const Covector vstar = dual_vacuum();
    if (side == Side::A) {
        const Covector lhs = coact(V, lower(Letter::f, a - 1), vstar);
        Covector rhs = Covector::basis(f_key({a - 1}), m + RationalFunction(a - 1) * kappa);
        for (int l = 1; l <= a - 1; ++l) {
            rhs += coact(V, lower(Letter::h, l), Covector::basis(f_key({a - 1 - l})));
            Covector sum;
            for (int j = 0; 2 * j <= a - 1 - l; ++j) sum.add(f_key({a - 1 - l - j, j}), RationalFunction(1L));
            rhs += coact(V, lower(Letter::e, l), sum) * RationalFunction(2L);
        }
        return {lhs, rhs};
    }
    const Covector lhs = coact(V, lower(Letter::e, a), vstar);
    Covector rhs = Covector::basis(e_key({a}), RationalFunction(a) * kappa - m - RationalFunction(2L));
    for (int l = 0; l <= a - 2; ++l) {
        rhs -= coact(V, lower(Letter::h, l + 1), Covector::basis(e_key({a - l - 1})));
        Covector sum;
        for (int j = 1; 2 * j <= a - l; ++j) sum.add(e_key({a - l - j, j}), RationalFunction(1L));
        rhs += coact(V, lower(Letter::f, l), sum) * RationalFunction(2L);
    }
    return {lhs, rhs};
}

IdentityReport verify_identity(const VermaModule& V, Side side, int a) {
    IdentityReport rep;
    rep.side = side;
    rep.a = a;
    rep.degree = side == Side::A ? Degree{a, a - 1} : Degree{a - 1, a};
    const auto [lhs, rhs] = identity_sides(V, side, a);
    for (const auto& key : enumerate_basis(rep.degree)) {
        IdentityRow row{key, lhs.coefficient(key), rhs.coefficient(key)};
        if (!(row.lhs == row.rhs)) rep.residuals.push_back(row);
        rep.rows.push_back(std::move(row));
    }
    rep.holds = rep.residuals.empty();
    return rep;
}

std::pair<int, PBWKey> chi_key(const PBWKey& key) {
    const Degree d = key.degree();
    if (d.p1 == d.p2 && !key.is_vacuum())
        throw std::domain_error("chi: components with p1 == p2 are not mapped basis to basis");
    PBWKey out;
    for (int k : key.e) out.f.push_back(k - 1);
    out.h = key.h;
    for (int i : key.f) out.e.push_back(i + 1);
    return {key.h.size() % 2 == 0 ? 1 : -1, out};
}

Covector chi_star(const Covector& phi) {
    Covector out(Degree{phi.degree().p2, phi.degree().p1});
    for (const auto& [k, c] : phi.coeffs()) {
        const auto [sign, image] = chi_key(k);
        out.add(image, c * RationalFunction(sign));
    }
    return out;
}

RhoRouteReport verify_identity_via_rho(const VermaModule& V, const VermaModule& twisted, int a) {
    RhoRouteReport rep;
    rep.a = a;
    const auto [lhs_a, rhs_a] = identity_sides(twisted, Side::A, a);
    const auto [lhs_b, rhs_b] = identity_sides(V, Side::B, a);
    rep.lhs_agree = chi_star(lhs_a) == lhs_b;
    rep.rhs_agree = chi_star(rhs_a) == rhs_b;
    rep.holds = rep.lhs_agree && rep.rhs_agree && lhs_b == rhs_b;
    return rep;
}

const char* group_name(Group g) {
    switch (g) {
        case Group::O: return "O";
        case Group::I: return "I";
        case Group::II: return "II";
        case Group::III: return "III";
    }
    return "?";
}

std::vector<GroupRow> group_oracles(const VermaModule& V, int a) {
    if (a < 1) throw std::invalid_argument("group_oracles requires a >= 1");
    const RationalFunction& m = V.weight().m;
    const RationalFunction& k = V.weight().k;
    const Degree gamma{a, a - 1};

    // Covectors of the three kinds of terms.
    const Covector c0 = coact(V, lower(Letter::f, a - 1), dual_vacuum());
    std::vector<Covector> ch, ce;
    for (int l = 1; l <= a - 1; ++l) {
        ch.push_back(coact(V, lower(Letter::h, l), Covector::basis(f_key({a - 1 - l}))));
        Covector sum;
        for (int j = 0; 2 * j <= a - 1 - l; ++j) sum.add(f_key({a - 1 - l - j, j}), RationalFunction(1L));
        ce.push_back(coact(V, lower(Letter::e, l), sum));
    }

    std::vector<GroupRow> rows;
    for (const auto& key : enumerate_basis(gamma)) {
        GroupRow row;
        row.key = key;
        row.r = static_cast<int>(key.f.size());
        row.s = static_cast<int>(key.h.size());
        row.p0 = c0.coefficient(key);
        for (int l = 1; l <= a - 1; ++l) {
            row.ph.push_back(ch[l - 1].coefficient(key));
            row.pe.push_back(ce[l - 1].coefficient(key));
        }
        row.want_ph.assign(a - 1, std::nullopt);
        row.want_pe.assign(a - 1, std::nullopt);
        const auto R = [](long x) { return RationalFunction(x); };

        if (key == f_key({a - 1})) {
            row.group = Group::O;
            row.want_p0 = m + R(a - 1) * k;
            for (int l = 1; l <= a - 1; ++l) {
                row.want_ph[l - 1] = R(-2);
                row.want_pe[l - 1] = R(0);
            }
        } else if (row.r == 1) {
            row.group = Group::I;
            const int n = a - 1 - key.f[0];
            if (row.s == 1) {
                row.want_p0 = R(2L * n) * k;
                for (int l = 1; l <= a - 1; ++l) {
                    RationalFunction v;
                    if (l == n) v += R(2L * n) * k;
                    if (l > a - 1 - n) v += R(-4);
                    row.want_ph[l - 1] = v;
                    row.want_pe[l - 1] = l <= n ? R(2) : R(0);
                }
            } else {
                row.want_p0 = R(0);
                row.want_ph_sum = R(0);
                row.want_pe_sum = R(0);
            }
        } else if (row.r == 2) {
            row.group = Group::II;
            const int i1 = key.f[0];
            const int i2 = key.f[1];
            const int lk = key.e[0];
            const RationalFunction base = m - R(lk) * k;
            const RationalFunction pow2s(Integer(Integer(1) << row.s));
            row.want_p0 = R(2) * pow2s * base;
            for (int l = 1; l <= a - 1; ++l) {
                const int t = a - 1 - l;
                RationalFunction v;
                if (i1 == i2 && i1 == t) v = R(4) * pow2s * base;
                else if (i1 != i2 && (i1 == t || i2 == t)) v = R(2) * pow2s * base;
                row.want_ph[l - 1] = v;
                row.want_pe[l - 1] = l == a - 1 - i1 - i2 ? -pow2s * base : R(0);
            }
        } else {
            row.group = Group::III;
            row.want_p0 = R(0);
            for (int l = 1; l <= a - 1; ++l) {
                row.want_ph[l - 1] = R(0);
                row.want_pe[l - 1] = R(0);
            }
        }

        bool ok = !row.want_p0 || row.p0 == *row.want_p0;
        RationalFunction sum_h, sum_e;
        for (int l = 1; l <= a - 1; ++l) {
            if (row.want_ph[l - 1]) ok = ok && row.ph[l - 1] == *row.want_ph[l - 1];
            if (row.want_pe[l - 1]) ok = ok && row.pe[l - 1] == *row.want_pe[l - 1];
            sum_h += row.ph[l - 1];
            sum_e += row.pe[l - 1];
        }
        if (row.want_ph_sum) ok = ok && sum_h == *row.want_ph_sum;
        if (row.want_pe_sum) ok = ok && sum_e == *row.want_pe_sum;
        row.holds = ok;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace hsl2
