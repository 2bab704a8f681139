#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hsl2/chain_hom.hpp"

using namespace hsl2;

namespace {

RationalFunction R(long x) { return RationalFunction(x); }

PBWKey fk(std::vector<int> d) { return PBWKey{std::move(d), {}, {}}; }
PBWKey ek(std::vector<int> d) { return PBWKey{{}, {}, std::move(d)}; }

std::vector<DeRhamTerm> functions(std::size_t n, int max_order) {
    std::vector<DeRhamTerm> out;
    for (int i = 1; i <= static_cast<int>(n); ++i)
        for (int a = 1; a <= max_order; ++a) out.push_back({i, a});
    for (int a = 0; a <= max_order; ++a) out.push_back({0, a});
    return out;
}

// Function value at t as an exact rational.
Rational value_at(const MasterConfig& cfg, const DeRhamElement& u, const Rational& t) {
    Rational s = 0;
    for (const auto& [term, c] : u.terms()) {
        Rational b = 1;
        const Rational base = term.is_pole() ? Rational(1 / (t - cfg.z[term.point - 1])) : t;
        for (int i = 0; i < term.order; ++i) b *= base;
        s += c.constant_value() * b;
    }
    return s;
}

// Keys of total degree <= 2 in one slot.
std::vector<PBWKey> small_keys() {
    std::vector<PBWKey> out;
    for (int t = 0; t <= 2; ++t)
        for (int p1 = 0; p1 <= t; ++p1)
            for (const auto& k : enumerate_basis({p1, t - p1})) out.push_back(k);
    return out;
}

}  // namespace

TEST_CASE("function products agree pointwise") {
    std::mt19937_64 rng(6);
    const MasterConfig cfg = random_config(3, rng);
    const auto fs = functions(3, 3);
    const std::vector<Rational> probes{Rational(101, 7), Rational(-55, 3), Rational(13, 11)};
    for (const auto& x : fs)
        for (const auto& y : fs) {
            const DeRhamElement ux = DeRhamElement::basis(0, x), uy = DeRhamElement::basis(0, y);
            const DeRhamElement prod = multiply(cfg, ux, uy);
            for (const auto& t : probes)
                CHECK(value_at(cfg, prod, t) == value_at(cfg, ux, t) * value_at(cfg, uy, t));
        }
}

TEST_CASE("Laurent expansions are multiplicative") {
    // Expansion of a product vs. the Cauchy product of the expansions.
    std::mt19937_64 rng(10);
    const MasterConfig cfg = random_config(2, rng);
    const auto fs = functions(2, 2);
    const int N = 6;
    for (std::size_t slot = 1; slot <= 3; ++slot)
        for (const auto& x : fs)
            for (const auto& y : fs) {
                std::map<int, RationalFunction> cauchy, direct;
                for (const auto& [s, c] : laurent(cfg, x, slot, N + 8))
                    for (const auto& [r, d] : laurent(cfg, y, slot, N + 8))
                        if (s + r <= N) cauchy[s + r] += c * d;
                for (const auto& [term, c] : multiply(cfg, DeRhamElement::basis(0, x), DeRhamElement::basis(0, y)).terms())
                    for (const auto& [s, d] : laurent(cfg, term, slot, N)) direct[s] += c * d;
                std::erase_if(cauchy, [](const auto& kv) { return kv.second.is_zero(); });
                std::erase_if(direct, [](const auto& kv) { return kv.second.is_zero(); });
                CHECK(cauchy == direct);
            }
    // 1/(t - z) at infinity: tau + z tau^2 + ...
    const auto inf = laurent(cfg, {1, 1}, 3, 3);
    REQUIRE(inf.size() == 3);
    CHECK(inf[0] == std::pair{1, R(1)});
    CHECK(inf[1] == std::pair{2, RationalFunction(cfg.z[0])});
}

TEST_CASE("sl2(U) bracket") {
    std::mt19937_64 rng(2);
    const MasterConfig cfg = random_config(2, rng);
    const auto u = DeRhamElement::pole(0, 1, 1), w = DeRhamElement::poly(0, 2);
    const auto ef = bracket(cfg, Sl2UElement::make(Letter::e, u), Sl2UElement::make(Letter::f, w));
    CHECK(ef == Sl2UElement::make(Letter::h, multiply(cfg, u, w)));
    const auto he = bracket(cfg, Sl2UElement::make(Letter::h, u), Sl2UElement::make(Letter::e, w));
    CHECK(he == Sl2UElement::make(Letter::e, multiply(cfg, u, w) * R(2)));
    CHECK(bracket(cfg, Sl2UElement::make(Letter::f, u), Sl2UElement::make(Letter::f, w)).is_zero());
}

TEST_CASE("mu examples") {
    std::mt19937_64 rng(12);
    for (std::size_t n = 1; n <= 3; ++n) {
        const MasterConfig cfg = random_config(n, rng);
        const TensorModule M(cfg);
        const std::size_t s = n + 1;
        TensorCovector want(s);
        for (std::size_t j = 1; j <= n; ++j) want += TensorCovector::single(s, j, fk({0}), cfg.m[j - 1]);
        const auto one = Sl2UElement::make(Letter::f, DeRhamElement::poly(0, 0));
        CHECK(M.mu_act(one, TensorCovector::vacuum(s)) == want);
        // Slot by slot.
        TensorCovector slotwise(s);
        for (std::size_t j = 1; j <= n; ++j) {
            const Covector phi = coact(M.module(j), LoopSymbol(Letter::f, 0), dual_vacuum());
            for (const auto& [k, c] : phi.coeffs()) slotwise += TensorCovector::single(s, j, k, c);
        }
        CHECK(coact(M.module(s), LoopSymbol(Letter::e, 0), dual_vacuum()).is_zero());
        CHECK(slotwise == want);
    }
    // f t^a at infinity becomes e/T^a through pi.
    const MasterConfig cfg = random_config(2, rng);
    const TensorModule M(cfg);
    const auto fta = Sl2UElement::make(Letter::f, DeRhamElement::poly(0, 2));
    const auto out = M.mu_act(fta, TensorCovector::vacuum(3));
    const RationalFunction want_inf = coact(M.module(3), LoopSymbol(Letter::e, -2), dual_vacuum()).coefficient(ek({2}));
    CHECK_FALSE(want_inf.is_zero());
    CHECK(out.coefficient({PBWKey{}, PBWKey{}, ek({2})}) == want_inf);
}

TEST_CASE("eta examples") {
    std::mt19937_64 rng(5);
    const MasterConfig cfg = random_config(2, rng);
    const TensorModule M(cfg);
    CHECK(M.eta1(DeRhamElement::pole(1, 2, 3)) == TensorCovector::single(3, 2, fk({2}), -cfg.kappa));
    CHECK(M.eta1(DeRhamElement::poly(1, 1)) == TensorCovector::single(3, 3, ek({2}), cfg.kappa));
    const auto e1 = M.eta0(DeRhamElement::poly(0, 0));
    REQUIRE(e1.terms.size() == 1);
    CHECK(e1.terms[0].first == Sl2UElement::make(Letter::f, DeRhamElement::poly(0, 0)));
    CHECK(e1.terms[0].second == TensorCovector::vacuum(3));
    // 1/(t-z_1)^2: f term plus l = 1, 2 pairs.
    CHECK(M.eta0(DeRhamElement::pole(0, 1, 2)).terms.size() == 5);
    CHECK_THROWS_AS(M.eta1(DeRhamElement::poly(0, 1)), std::invalid_argument);
    CHECK_THROWS_AS(M.eta0(DeRhamElement::poly(1, 1)), std::invalid_argument);
}

TEST_CASE("chain square on basis functions") {
    std::mt19937_64 rng(2718);
    for (std::size_t n = 1; n <= 3; ++n)
        for (int draw = 0; draw < 3; ++draw) {
            const TensorModule M(random_config(n, rng));
            for (const auto& t : functions(n, 4)) {
                const auto rep = verify_chain_square(M, DeRhamElement::basis(0, t));
                CHECK_MESSAGE(rep.holds, term_label(0, t));
                CHECK_FALSE(rep.rhs.is_zero());
            }
        }
}

TEST_CASE("chain square with symbolic kappa") {
    const VariablePool pool = VariablePool::derham(2);
    const MasterConfig cfg{{Rational(0), Rational(3, 2)}, {RationalFunction(Rational(1, 5)), R(2)},
                           RationalFunction::variable(pool.index("kappa"))};
    const TensorModule M(cfg);
    for (const auto& t : functions(2, 2)) CHECK(verify_chain_square(M, DeRhamElement::basis(0, t)).holds);
}

TEST_CASE("chain square detects perturbations") {
    std::mt19937_64 rng(44);
    const TensorModule M(random_config(2, rng));
    for (const auto& t : functions(2, 3)) {
        if (t == DeRhamTerm{0, 0} || t == DeRhamTerm{0, 1}) continue;  // single-term chains
        const DeRhamElement fn = DeRhamElement::basis(0, t);
        ChainOneElement chain = M.eta0(fn);
        chain.terms.pop_back();
        CHECK_FALSE(M.d(chain) == M.eta1(differential(M.config(), fn)));
    }
}

TEST_CASE("mu is a Lie action") {
    std::mt19937_64 rng(17);
    const MasterConfig cfg = random_config(2, rng);
    const TensorModule M(cfg);
    const auto fs = functions(2, 2);
    const auto keys = small_keys();
    std::uniform_int_distribution<std::size_t> pick_f(0, fs.size() - 1), pick_k(0, keys.size() - 1), pick_l(0, 2);
    const Letter letters[] = {Letter::f, Letter::h, Letter::e};
    for (int trial = 0; trial < 60; ++trial) {
        const auto g1 = Sl2UElement::make(letters[pick_l(rng)], DeRhamElement::basis(0, fs[pick_f(rng)]));
        const auto g2 = Sl2UElement::make(letters[pick_l(rng)], DeRhamElement::basis(0, fs[pick_f(rng)]));
        TensorCovector w(3);
        w.add({keys[pick_k(rng)], keys[pick_k(rng)], keys[pick_k(rng)]}, R(1));
        w.add({keys[pick_k(rng)], PBWKey{}, keys[pick_k(rng)]}, R(-3));
        const auto lhs = M.mu_act(bracket(cfg, g1, g2), w);
        const auto rhs = M.mu_act(g1, M.mu_act(g2, w)) - M.mu_act(g2, M.mu_act(g1, w));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Laurent truncation is sound") {
    std::mt19937_64 rng(23);
    const MasterConfig cfg = random_config(3, rng);
    const TensorModule M(cfg);
    const auto keys = small_keys();
    for (const auto& t : functions(3, 3))
        for (Letter x : {Letter::f, Letter::h, Letter::e})
            for (std::size_t i = 0; i < keys.size(); i += 3) {
                const auto g = Sl2UElement::make(x, DeRhamElement::basis(0, t));
                TensorCovector w(4);
                w.add({keys[i], PBWKey{}, keys[keys.size() - 1 - i], keys[i]}, R(1));
                const auto base = M.mu_act(g, w);
                CHECK(M.mu_act(g, w, 4) == base);
            }
}

TEST_CASE("logarithmic image") {
    std::mt19937_64 rng(29);
    const MasterConfig cfg = random_config(3, rng);
    const TensorModule M(cfg);
    for (const auto& [g, w] : M.eta0(DeRhamElement::poly(0, 0)).terms) {
        for (const auto& [x, u] : g.terms()) CHECK(x == Letter::f);
        for (const auto& [k, c] : w.coeffs())
            for (const auto& slot : k) CHECK((slot.h.empty() && slot.e.empty()));
    }
    for (int j = 1; j <= 3; ++j) {
        const auto img = M.eta1(omega(j));
        CHECK(img == TensorCovector::single(4, j, fk({0}), -cfg.kappa));
    }
}

TEST_CASE("eta is injective on the window") {
    std::mt19937_64 rng(31);
    for (std::size_t n = 1; n <= 3; ++n) {
        const TensorModule M(random_config(n, rng));
        const auto rep = check_injectivity(M, Truncation{4});
        CHECK(rep.holds);
        CHECK(rep.eta1_count == target_basis(n, Truncation{4}).size());
    }
}
