#include "hsl2/shapovalov.hpp"

#include <stdexcept>

namespace hsl2 {

namespace {

const RationalFunction& var_m() {
    static const RationalFunction m = RationalFunction::variable(kVarM);
    return m;
}
const RationalFunction& var_k() {
    static const RationalFunction k = RationalFunction::variable(kVarK);
    return k;
}

std::map<std::size_t, Rational> at(const Rational& m, const Rational& k) { return {{kVarM, m}, {kVarK, k}}; }

int divisor_count(int n) {
    int c = 0;
    for (int d = 1; d <= n; ++d) c += n % d == 0;
    return c;
}

}  // namespace

GramMatrix gram_matrix(const VermaModule& V, const Degree& gamma) {
    GramMatrix g;
    g.degree = gamma;
    g.keys = enumerate_basis(gamma);
    const std::size_t n = g.keys.size();
    g.entries.assign(n, std::vector<RationalFunction>(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<LoopSymbol> adjoint;
        for (const auto& s : g.keys[i].word()) adjoint.push_back(apply_map(LoopMap::theta, s).front().first);
        for (std::size_t j = 0; j < n; ++j) {
            ModuleVector u = ModuleVector::basis(g.keys[j]);
            for (const auto& t : adjoint) {
                u = V.act(t, u);
                if (u.is_zero()) break;
            }
            g.entries[i][j] = u.coefficient(PBWKey{});
        }
    }
    return g;
}

RationalFunction ResonanceLine::form() const {
    const RationalFunction kappa = var_k() + RationalFunction(2L);
    switch (kind) {
        case LineKind::a_line: return var_m() - RationalFunction(l - 1) + RationalFunction(a - 1) * kappa;
        case LineKind::b_line: return var_m() + RationalFunction(l + 1) - RationalFunction(a) * kappa;
        case LineKind::kappa_zero: return kappa;
    }
    return {};
}

Degree ResonanceLine::singular_degree() const {
    switch (kind) {
        case LineKind::a_line: return {l * a, l * (a - 1)};
        case LineKind::b_line: return {l * (a - 1), l * a};
        case LineKind::kappa_zero: return {1, 1};
    }
    return {};
}

bool ResonanceLine::contains(const Rational& m, const Rational& k) const {
    return sgn(rf_eval(form(), at(m, k))) == 0;
}

std::pair<Rational, Rational> ResonanceLine::point(const Rational& t) const {
    const Rational kappa = t + 2;
    switch (kind) {
        case LineKind::a_line: return {Rational(l - 1) - Rational(a - 1) * kappa, t};
        case LineKind::b_line: return {Rational(a) * kappa - Rational(l + 1), t};
        case LineKind::kappa_zero: return {t, Rational(-2)};
    }
    return {};
}

std::string ResonanceLine::to_string() const {
    switch (kind) {
        case LineKind::a_line: return "a-line(l=" + std::to_string(l) + ",a=" + std::to_string(a) + ")";
        case LineKind::b_line: return "b-line(l=" + std::to_string(l) + ",a=" + std::to_string(a) + ")";
        case LineKind::kappa_zero: return "kappa-zero";
    }
    return {};
}

std::vector<ResonanceLine> applicable_lines(const Degree& gamma) {
    std::vector<ResonanceLine> out;
    const int bound = std::max(gamma.p1, gamma.p2);
    for (LineKind kind : {LineKind::a_line, LineKind::b_line})
        for (int a = 1; a <= bound; ++a)
            for (int l = 1; l <= bound; ++l) {
                const ResonanceLine line{kind, l, a};
                const Degree d = line.singular_degree();
                if (d.p1 <= gamma.p1 && d.p2 <= gamma.p2) out.push_back(line);
            }
    if (gamma.p1 >= 1 && gamma.p2 >= 1) out.push_back({LineKind::kappa_zero, 1, 1});
    return out;
}

std::vector<ResonanceLine> lines_through(const Rational& m, const Rational& k, const Degree& gamma) {
    std::vector<ResonanceLine> out;
    for (const auto& line : applicable_lines(gamma))
        if (line.contains(m, k)) out.push_back(line);
    return out;
}

DeterminantReport factor_determinant(const VermaModule& V, const Degree& gamma) {
    DeterminantReport rep;
    rep.degree = gamma;
    rep.det = determinant(gram_matrix(V, gamma).entries);
    if (rep.det.is_zero()) return rep;
    Polynomial rest = rep.det.numerator();
    bool ok = rep.det.denominator().is_one();
    for (const auto& line : applicable_lines(gamma)) {
        DeterminantFactor f{line, 0, 0};
        const Polynomial lin = line.form().numerator();
        while (auto q = rest.divide_exact(lin)) {
            rest = std::move(*q);
            ++f.exponent;
        }
        if (line.kind == LineKind::kappa_zero) {
            for (int n = 1; n <= std::min(gamma.p1, gamma.p2); ++n)
                f.expected += divisor_count(n) * static_cast<int>(dimension(gamma - Degree{n, n}));
        } else {
            f.expected = static_cast<int>(dimension(gamma - line.singular_degree()));
        }
        ok = ok && f.exponent == f.expected;
        rep.factors.push_back(f);
    }
    rep.cofactor = RationalFunction(rest, rep.det.denominator());
    rep.matches = ok && rest.is_constant();
    return rep;
}

bool is_singular(const ModuleVector& w, const Rational& m0, const Rational& k0) {
    VermaModule V(HighestWeight{RationalFunction(m0), RationalFunction(k0)});
    return V.act(LoopSymbol(Letter::e, 0), w).is_zero() && V.act(LoopSymbol(Letter::f, 1), w).is_zero();
}

std::vector<SingularCandidate> singular_vectors(const Degree& gamma, const Rational& m0, const Rational& k0) {
    std::vector<SingularCandidate> out;
    if (gamma == Degree{0, 0} || !gamma.nonnegative()) return out;
    VermaModule V(HighestWeight{RationalFunction(m0), RationalFunction(k0)});
    const auto keys = enumerate_basis(gamma);
    const LoopSymbol raising[] = {LoopSymbol(Letter::e, 0), LoopSymbol(Letter::f, 1)};
    Matrix<Rational> rows;
    for (const auto& r : raising) {
        const auto targets = enumerate_basis(gamma + r.degree());
        std::vector<ModuleVector> images;
        for (const auto& k : keys) images.push_back(V.act_on_word(r, k.word()));
        for (const auto& t : targets) {
            std::vector<Rational> row;
            for (const auto& img : images) row.push_back(img.coefficient(t).constant_value());
            rows.push_back(std::move(row));
        }
    }
    const auto lines = lines_through(m0, k0, gamma);
    std::optional<ResonanceLine> line;
    for (const auto& l : lines)
        if (l.singular_degree() == gamma) line = l;
    for (const auto& v : kernel(rows, keys.size())) {
        SingularCandidate c{ModuleVector(gamma), line, m0, k0};
        for (std::size_t i = 0; i < keys.size(); ++i) c.vector.add(keys[i], RationalFunction(v[i]));
        out.push_back(std::move(c));
    }
    return out;
}

std::optional<ModuleVector> mff_vector(char which, int a, const Rational& k0) {
    const Rational kappa = k0 + 2;
    if (which == 'X' && a == 1) return ModuleVector::basis(PBWKey{{0}, {}, {}});
    if (which == 'Y' && a == 1) return ModuleVector::basis(PBWKey{{}, {}, {1}});
    if (which == 'Y' && a == 2) {
        const Rational m0 = 2 * kappa - 2;
        VermaModule V(HighestWeight{RationalFunction(m0), RationalFunction(k0)});
        const LoopSymbol f(Letter::f, 0), eT(Letter::e, -1), hT(Letter::h, -1), eT2(Letter::e, -2);
        ModuleVector w = V.apply_word({f, eT, eT});
        w += V.apply_word({hT, eT}) * RationalFunction(1 + kappa);
        w -= V.apply_word({eT2}) * RationalFunction((1 + kappa) * kappa);
        return w;
    }
    return std::nullopt;
}

ContinuationReport continue_XY(char which, int a, const Rational& k0) {
    if (which != 'X' && which != 'Y') throw std::invalid_argument("continue_XY: which must be X or Y");
    if (a < 1) throw std::invalid_argument("continue_XY: a must be >= 1");
    ContinuationReport rep;
    rep.which = which;
    rep.a = a;
    rep.k0 = k0;
    const RationalFunction kappa = var_k() + RationalFunction(2L);
    PBWKey target;
    RationalFunction factor, m_on_line;
    if (which == 'X') {
        rep.line = {LineKind::a_line, 1, a};
        rep.degree = {a, a - 1};
        target = PBWKey{{a - 1}, {}, {}};
        factor = var_m() + RationalFunction(a - 1) * kappa;
        m_on_line = -RationalFunction(a - 1) * kappa;
    } else {
        rep.line = {LineKind::b_line, 1, a};
        rep.degree = {a - 1, a};
        target = PBWKey{{}, {}, {a}};
        factor = var_m() + RationalFunction(2L) - RationalFunction(a) * kappa;
        m_on_line = RationalFunction(a) * kappa - RationalFunction(2L);
    }
    rep.m0 = rf_eval(m_on_line, {{kVarK, k0}});
    for (const auto& l : lines_through(rep.m0, k0, rep.degree))
        if (l != rep.line)
            throw SecondLineError("(" + rep.m0.get_str() + ", " + k0.get_str() + ") also lies on " + l.to_string());

    VermaModule V;
    const GramMatrix g = gram_matrix(V, rep.degree);
    std::vector<RationalFunction> rhs(g.keys.size());
    for (std::size_t i = 0; i < g.keys.size(); ++i)
        if (g.keys[i] == target) rhs[i] = factor;
    const auto x = solve(g.entries, rhs);
    if (!x) throw std::logic_error("Gram matrix is singular for generic parameters");

    rep.vector = ModuleVector(rep.degree);
    for (std::size_t i = 0; i < g.keys.size(); ++i) {
        const RationalFunction restricted = (*x)[i].substitute(kVarM, m_on_line);
        const Rational den = rf_eval(RationalFunction(restricted.denominator()), {{kVarK, k0}});
        if (sgn(den) == 0)
            throw PoleError("coordinate " + g.keys[i].to_string() + " has a pole at k0 = " + k0.get_str());
        rep.on_line.push_back(restricted);
        rep.vector.add(g.keys[i], RationalFunction(rf_eval(restricted, {{kVarK, k0}})));
    }
    rep.nonzero = !rep.vector.is_zero();
    rep.singular = is_singular(rep.vector, rep.m0, k0);
    const auto kern = singular_vectors(rep.degree, rep.m0, k0);
    rep.kernel_dim = kern.size();
    rep.proportional_to_kernel = kern.size() == 1 && rep.nonzero && kern[0].vector.monic() == rep.vector.monic();
    if (auto mff = mff_vector(which, a, k0)) rep.proportional_to_mff = rep.nonzero && mff->monic() == rep.vector.monic();
    rep.holds = rep.nonzero && rep.singular && rep.proportional_to_kernel && rep.proportional_to_mff.value_or(true);
    return rep;
}

}  // namespace hsl2
