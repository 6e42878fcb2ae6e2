#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ellk3/weierstrass.hpp"

using namespace ellk3;

namespace {

UniPoly<FqCtx> random_poly(const FiniteField& F, int maxdeg, std::mt19937_64& rng) {
    FqCtx ctx{&F};
    std::vector<FFElem> v;
    int d = int(rng() % (maxdeg + 1));
    for (int i = 0; i <= d; ++i) v.push_back(F.element(rng() % F.order()));
    return UniPoly<FqCtx>(ctx, v);
}

}  // namespace

TEST_CASE("valuation at finite places") {
    const FiniteField& F2 = FiniteField::get(2, 1);
    FqCtx ctx{&F2};
    auto t = UniPoly<FqCtx>::t(ctx);
    auto one = UniPoly<FqCtx>::constant(ctx, F2.one());
    // f = t^3 (t + 1) has valuation 3 at 0
    auto f = t.pow(3) * (t + one);
    CHECK(valuation(f, Place::finite(F2.zero())) == 3);
    CHECK(valuation(f, Place::finite(F2.one())) == 1);
    // t^2 + 1 = (t + 1)^2 in characteristic 2
    auto g = t * t + one;
    CHECK(valuation(g, Place::finite(F2.one())) == 2);
    // zero polynomial: +infinity sentinel
    CHECK(valuation(UniPoly<FqCtx>(ctx), Place::finite(F2.zero())) == kValInfinity);
}

TEST_CASE("degenerate case (ii) member has Delta == 0") {
    // a = b = c = d = 0, a6 = 0, ~a2 = 1: the fibration is singular
    const FiniteField& F2 = FiniteField::get(2, 1);
    FqCtx ctx{&F2};
    Model<FqCtx> m = Model<FqCtx>::zero(ctx);
    m.a1 = UniPoly<FqCtx>::t_power(ctx, 2, F2.one());
    m.a2 = UniPoly<FqCtx>::t(ctx);
    auto delta = m.discriminant();
    CHECK(delta.is_zero());
    CHECK(valuation(delta, Place::finite(F2.zero())) == kValInfinity);
}

TEST_CASE("infinite place needs an ambient bound") {
    const FiniteField& F3 = FiniteField::get(3, 1);
    FqCtx ctx{&F3};
    auto f = UniPoly<FqCtx>::t_power(ctx, 3, F3.one());
    CHECK_THROWS_AS(valuation(f, Place::infinity()), std::invalid_argument);
    CHECK(valuation(f, Place::infinity(), 24) == 21);
    CHECK_THROWS_AS(valuation(f, Place::infinity(), 2), std::invalid_argument);
}

TEST_CASE("chart swap at infinity") {
    const FiniteField& F2 = FiniteField::get(2, 1);
    FqCtx ctx{&F2};
    // a6 = t^12 has the top-degree coefficient: at infinity it becomes 1
    Model<FqCtx> m = Model<FqCtx>::zero(ctx);
    m.a3 = UniPoly<FqCtx>::constant(ctx, F2.one());
    m.a6 = UniPoly<FqCtx>::t_power(ctx, 12, F2.one());
    auto sw = chart_at_infinity(m);
    CHECK(sw.a6 == UniPoly<FqCtx>::constant(ctx, F2.one()));
    // the swapped discriminant is s^24 Delta(1/s)
    std::mt19937_64 rng(0x51ab);
    const FiniteField& F4 = FiniteField::get(2, 2);
    FqCtx c4{&F4};
    for (int trial = 0; trial < 200; ++trial) {
        Model<FqCtx> r{c4, random_poly(F4, 2, rng), random_poly(F4, 4, rng),
                       random_poly(F4, 6, rng), random_poly(F4, 8, rng),
                       random_poly(F4, 12, rng)};
        auto d = r.discriminant();
        if (d.is_zero()) continue;
        auto swd = chart_at_infinity(r).discriminant();
        CHECK(swd == d.reverse(24));
        // involution: swapping twice restores the model
        CHECK(chart_at_infinity(chart_at_infinity(r)) == r);
    }
}

TEST_CASE("parameter translation") {
    const FiniteField& F2 = FiniteField::get(2, 1);
    FqCtx ctx{&F2};
    auto t = UniPoly<FqCtx>::t(ctx);
    auto one = UniPoly<FqCtx>::constant(ctx, F2.one());
    CHECK(t.translate(F2.one()) == t + one);
    // (t+1)^20 over GF(2) expands to t^20 + t^16 + t^4 + 1
    auto p = (t + one).pow(20);
    auto expected = t.pow(20) + t.pow(16) + t.pow(4) + one;
    CHECK(p == expected);
    CHECK(t.pow(20).translate(F2.one()) == expected);
    // (t+1)^2 + (t+1) = t^2 + t in characteristic 2
    auto f = t * t + t;
    CHECK(f.translate(F2.one()) == f);
    // valuation shifts under translation
    const FiniteField& F9 = FiniteField::get(3, 2);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        auto f9 = random_poly(F9, 8, rng);
        if (f9.is_zero()) continue;
        FFElem t0 = F9.element(rng() % 9), c = F9.element(rng() % 9);
        CHECK(valuation(f9, Place::finite(t0)) ==
              valuation(f9.translate(c), Place::finite(t0 - c)));
    }
}

TEST_CASE("valuation is additive") {
    std::mt19937_64 rng(0xadd);
    for (auto [p, k] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {2, 2}, {3, 1}, {5, 1}}) {
        const FiniteField& F = FiniteField::get(p, k);
        for (int trial = 0; trial < 300; ++trial) {
            auto f = random_poly(F, 6, rng), g = random_poly(F, 6, rng);
            if (f.is_zero() || g.is_zero()) continue;
            FFElem t0 = F.element(rng() % F.order());
            Place v = Place::finite(t0);
            CHECK(valuation(f * g, v) == valuation(f, v) + valuation(g, v));
            int bf = f.degree() + 1 + int(rng() % 3), bg = g.degree() + 1 + int(rng() % 3);
            CHECK(valuation(f * g, Place::infinity(), bf + bg) ==
                  valuation(f, Place::infinity(), bf) + valuation(g, Place::infinity(), bg));
        }
    }
}

TEST_CASE("global degree identity for a minimal K3 model") {
    // all finite valuations over the splitting field plus the infinite place
    // (ambient 24) sum to 24
    auto mf = parse_model_file(std::string(ELLK3_SOURCE_DIR) + "/fixtures/char3_i14star.model");
    REQUIRE(mf.fq);
    const FiniteField& F81 = FiniteField::get(3, 4);
    auto m = embed_model(*mf.fq, F81);
    auto delta = m.discriminant();
    int total = valuation(delta, Place::infinity(), 24);
    for (auto& [root, mult] : roots_in_field(delta)) total += mult;
    CHECK(total == 24);
}

TEST_CASE("roots with multiplicity") {
    const FiniteField& F5 = FiniteField::get(5, 1);
    FqCtx ctx{&F5};
    auto t = UniPoly<FqCtx>::t(ctx);
    auto f = (t - UniPoly<FqCtx>::constant(ctx, F5.from_int(2))).pow(3) * t;
    auto roots = roots_in_field(f);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].first == F5.zero());
    CHECK(roots[0].second == 1);
    CHECK(roots[1].first == F5.from_int(2));
    CHECK(roots[1].second == 3);
}

TEST_CASE("polynomial division and gcd") {
    const FiniteField& F7 = FiniteField::get(7, 1);
    FqCtx ctx{&F7};
    std::mt19937_64 rng(0xd1ff);
    for (int trial = 0; trial < 200; ++trial) {
        auto f = random_poly(F7, 8, rng), g = random_poly(F7, 5, rng);
        if (g.is_zero()) continue;
        auto [q, r] = f.divrem(g);
        CHECK(f == q * g + r);
        CHECK((r.is_zero() || r.degree() < g.degree()));
        auto h = gcd(f * g, g);
        if (!g.is_zero()) CHECK((g % h).is_zero());
    }
    CHECK_THROWS_AS(UniPoly<FqCtx>::t(ctx).divrem(UniPoly<FqCtx>(ctx)), std::domain_error);
}
