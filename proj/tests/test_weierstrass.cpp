#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ellk3/tate.hpp"

using namespace ellk3;

namespace {

UniPoly<FqCtx> rand_poly(const FiniteField& F, int maxdeg, std::mt19937_64& rng) {
    FqCtx ctx{&F};
    std::vector<FFElem> v;
    int d = int(rng() % (maxdeg + 1));
    for (int i = 0; i <= d; ++i) v.push_back(F.element(rng() % F.order()));
    return UniPoly<FqCtx>(ctx, v);
}

Model<FqCtx> rand_model(const FiniteField& F, std::mt19937_64& rng) {
    FqCtx ctx{&F};
    return {ctx, rand_poly(F, 2, rng), rand_poly(F, 4, rng), rand_poly(F, 6, rng),
            rand_poly(F, 8, rng), rand_poly(F, 12, rng)};
}

}  // namespace

TEST_CASE("characteristic-2 discriminant specializations") {
    const FiniteField& F2 = FiniteField::get(2, 1);
    FqCtx ctx{&F2};
    // a1 = a2 = a4 = a6 = 0: Delta = a3^4
    Model<FqCtx> m = Model<FqCtx>::zero(ctx);
    m.a3 = UniPoly<FqCtx>::t_power(ctx, 5, F2.one());
    CHECK(m.discriminant() == m.a3.pow(4));
    // the case (ii) display
    const FiniteField& F4 = FiniteField::get(2, 2);
    FqCtx c4{&F4};
    std::mt19937_64 rng(0x8e11);
    for (int trial = 0; trial < 100; ++trial) {
        auto t = UniPoly<FqCtx>::t(c4);
        FFElem a = F4.element(rng() % 4), b = F4.element(rng() % 4);
        FFElem c = F4.element(rng() % 4), d = F4.element(rng() % 4);
        auto ta2 = rand_poly(F4, 3, rng);
        auto a6 = rand_poly(F4, 12, rng);
        Model<FqCtx> mm = Model<FqCtx>::zero(c4);
        mm.a1 = t * t;
        mm.a3 = UniPoly<FqCtx>(c4, {b, a});
        mm.a4 = UniPoly<FqCtx>(c4, {d, c});
        mm.a2 = t * ta2;
        mm.a6 = a6;
        auto t6 = t.pow(6), t8 = t.pow(8);
        auto display = t8 * (t.pow(4) * a6 + t * t * mm.a3 * mm.a4 + t * ta2 * mm.a3 * mm.a3 +
                             mm.a4 * mm.a4) +
                       t6 * mm.a3.pow(3) + mm.a3.pow(4);
        CHECK(mm.discriminant() == display);
    }
}

TEST_CASE("characteristic-0 discriminant") {
    RatCtx ctx;
    Model<RatCtx> m = Model<RatCtx>::zero(ctx);
    m.a6 = UniPoly<RatCtx>::constant(ctx, Rational(1));  // y^2 = x^3 + 1
    auto d = m.discriminant();
    REQUIRE(d.degree() == 0);
    CHECK(d.coeff(0) == Rational(-432));
}

TEST_CASE("both discriminant routes agree in characteristic 2") {
    std::mt19937_64 rng(0x2222);
    for (uint32_t k : {1u, 2u, 3u, 4u}) {
        const FiniteField& F = FiniteField::get(2, k);
        for (int trial = 0; trial < 500; ++trial) {
            auto m = rand_model(F, rng);
            CHECK(m.discriminant_char2() == m.discriminant_universal());
        }
    }
    // integer-lift oracle: reduce a random integer model mod 2 and compare
    std::mt19937_64 rng2(0x1117);
    RatCtx rctx;
    const FiniteField& F2 = FiniteField::get(2, 1);
    for (int trial = 0; trial < 300; ++trial) {
        auto rp = [&](int maxdeg) {
            std::vector<Rational> v;
            int d = int(rng2() % (maxdeg + 1));
            for (int i = 0; i <= d; ++i) v.push_back(Rational(int64_t(rng2() % 19) - 9));
            return UniPoly<RatCtx>(rctx, v);
        };
        Model<RatCtx> mi{rctx, rp(2), rp(4), rp(6), rp(8), rp(12)};
        auto delta_int = mi.discriminant_universal();
        Model<FqCtx> m2 = reduce_mod_p(mi, F2);
        // reduce the integer discriminant coefficient-wise
        std::vector<FFElem> v;
        for (auto& q : delta_int.coeffs()) {
            BigInt n = rat_num(q) % 2;
            v.push_back(F2.from_int(n == 0 ? 0 : 1));
        }
        CHECK(UniPoly<FqCtx>(FqCtx{&F2}, v) == m2.discriminant_char2());
    }
}

TEST_CASE("coordinate changes") {
    std::mt19937_64 rng(0xc0de);
    for (auto [p, k] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 2}, {3, 1}, {5, 1}}) {
        const FiniteField& F = FiniteField::get(p, k);
        FqCtx ctx{&F};
        for (int trial = 0; trial < 200; ++trial) {
            auto m = rand_model(F, rng);
            CoordChange<FqCtx> id = CoordChange<FqCtx>::identity(ctx);
            CHECK(apply_change(m, id) == m);
            CoordChange<FqCtx> ch{F.element(1 + rng() % (F.order() - 1)),
                                  rand_poly(F, 2, rng), rand_poly(F, 1, rng),
                                  rand_poly(F, 3, rng)};
            auto m2 = apply_change(m, ch);
            // Delta' = u^-12 Delta and j is preserved: c4'^3 Delta == c4^3 Delta'
            FFElem u12 = ch.u.pow(12);
            CHECK(m2.discriminant().scale(u12) == m.discriminant());
            auto c4a = m.c4(), c4b = m2.c4();
            CHECK(c4b * c4b * c4b * m.discriminant() == c4a * c4a * c4a * m2.discriminant());
            // composition law
            CoordChange<FqCtx> ch2{F.element(1 + rng() % (F.order() - 1)),
                                   rand_poly(F, 2, rng), rand_poly(F, 1, rng),
                                   rand_poly(F, 3, rng)};
            CHECK(apply_change(apply_change(m, ch), ch2) == apply_change(m, ch.then(ch2)));
        }
    }
    const FiniteField& F2 = FiniteField::get(2, 1);
    FqCtx ctx{&F2};
    CHECK_THROWS_AS(apply_change(Model<FqCtx>::zero(ctx),
                                 CoordChange<FqCtx>::scaling(ctx, F2.zero())),
                    std::invalid_argument);
}

TEST_CASE("the y -> y + sqrt(e) t^6 change of the additive analysis") {
    // y^2 + t^2 xy = x^3 + t ~a2 x^2 + e t^12 becomes
    // y^2 + t^2 xy = x^3 + t ~a2 x^2 + sqrt(e) t^8 x
    const FiniteField& F4 = FiniteField::get(2, 2);
    FqCtx ctx{&F4};
    FFElem e = F4.gen();  // any nonzero e
    Model<FqCtx> m = Model<FqCtx>::zero(ctx);
    m.a1 = UniPoly<FqCtx>::t_power(ctx, 2, F4.one());
    m.a2 = UniPoly<FqCtx>::t_power(ctx, 1, F4.one());
    m.a6 = UniPoly<FqCtx>::t_power(ctx, 12, e);
    auto w = UniPoly<FqCtx>::t_power(ctx, 6, e.sqrt_char2());
    auto m2 = apply_change(m, CoordChange<FqCtx>::translation_y(ctx, w));
    CHECK(m2.a6.is_zero());
    CHECK(m2.a4 == UniPoly<FqCtx>::t_power(ctx, 8, e.sqrt_char2()));
    CHECK(m2.a3 == m.a3);
}

TEST_CASE("the characteristic-3 twist translation round trip") {
    // x -> x - (s - 2s^3)/3 carries the twisted model to the displayed one;
    // the twisted model is not 3-integral, which is exactly why the
    // translation matters for good reduction at 3.
    auto mf = parse_model_file(std::string(ELLK3_SOURCE_DIR) + "/fixtures/char0_14star.model");
    REQUIRE(mf.rat);
    RatCtx ctx;
    UniPoly<RatCtx> r(ctx, {Rational(0), Rational(1, 3), Rational(0), Rational(-2, 3)});
    auto twisted = apply_change(*mf.rat, CoordChange<RatCtx>::translation_x(ctx, r));
    bool has_denominator_3 = false;
    for (auto& c : twisted.a4.coeffs())
        if (rat_den(c) % 3 == 0) has_denominator_3 = true;
    CHECK(has_denominator_3);
    auto back = apply_change(twisted, CoordChange<RatCtx>::translation_x(ctx, -r));
    CHECK(back == *mf.rat);
    // and the displayed model reduces mod 3 to the fixture
    auto m3 = reduce_mod_p(*mf.rat, FiniteField::get(3, 1));
    auto fx = parse_model_file(std::string(ELLK3_SOURCE_DIR) + "/fixtures/char3_i14star.model");
    CHECK(m3 == *fx.fq);
}

TEST_CASE("a1 trichotomy in characteristic 2") {
    const FiniteField& F2 = FiniteField::get(2, 1);
    FqCtx ctx{&F2};
    Model<FqCtx> m = Model<FqCtx>::zero(ctx);
    m.a3 = UniPoly<FqCtx>::constant(ctx, F2.one());
    CHECK(a1_case(m).kind == A1Kind::zero);
    // a1 = t^2 + 1 = (t+1)^2: a square with its double zero at t = 1
    m.a1 = UniPoly<FqCtx>(ctx, {F2.one(), F2.zero(), F2.one()});
    auto c = a1_case(m);
    CHECK(c.kind == A1Kind::square);
    REQUIRE(c.zeros.size() == 1);
    CHECK(!c.zeros[0].at_infinity);
    CHECK(c.zeros[0].t0 == F2.one());
    // a1 = t: two distinct zeros 0 and infinity
    m.a1 = UniPoly<FqCtx>::t(ctx);
    c = a1_case(m);
    CHECK(c.kind == A1Kind::two_zeros);
    REQUIRE(c.zeros.size() == 2);
    CHECK((c.zeros[1].at_infinity && c.zeros[0].t0.is_zero()));
    // a1 = 1: constant, double zero at infinity
    m.a1 = UniPoly<FqCtx>::constant(ctx, F2.one());
    c = a1_case(m);
    CHECK(c.kind == A1Kind::square);
    REQUIRE(c.zeros.size() == 1);
    CHECK(c.zeros[0].at_infinity);
    // a1 = t^2 + t + 1: separable but the zeros live in GF(4)
    m.a1 = UniPoly<FqCtx>(ctx, {F2.one(), F2.one(), F2.one()});
    c = a1_case(m);
    CHECK(c.kind == A1Kind::two_zeros);
    CHECK(!c.split);
    // the case never changes under parameter translation
    const FiniteField& F4 = FiniteField::get(2, 2);
    std::mt19937_64 rng(0xa1);
    for (int trial = 0; trial < 100; ++trial) {
        auto mm = rand_model(F4, rng);
        if (mm.a1.degree() > 2) continue;
        FFElem cc = F4.element(rng() % 4);
        auto k1 = a1_case(mm).kind;
        auto k2 = a1_case(mm.translate_param(cc)).kind;
        CHECK(k1 == k2);
    }
}

TEST_CASE("case (ii) and (iii) normalization") {
    const FiniteField& F4 = FiniteField::get(2, 2);
    FqCtx ctx{&F4};
    std::mt19937_64 rng(0x41);
    auto t = UniPoly<FqCtx>::t(ctx);
    int done_ii = 0, done_iii = 0;
    for (int trial = 0; trial < 400 && (done_ii < 40 || done_iii < 40); ++trial) {
        auto m = rand_model(F4, rng);
        if (m.discriminant().is_zero()) continue;
        auto c = a1_case(m);
        if (c.kind == A1Kind::square && done_ii < 40) {
            auto n = normalize_case_ii(m);
            CHECK(n.a1 == t * t);
            CHECK(n.a3.degree() <= 1);
            CHECK(n.a4.degree() <= 1);
            CHECK(n.a2.coeff(0).is_zero());
            // same fibre at the normalized zero as at the original one
            auto before = tate_classify(m, c.zeros[0]);
            auto after = tate_classify(n, Place::finite(F4.zero()));
            CHECK(before.type == after.type);
            CHECK(before.v_delta == after.v_delta);
            ++done_ii;
        }
        if (c.kind == A1Kind::two_zeros && c.split && done_iii < 40) {
            auto n = normalize_case_iii(m);
            CHECK(n.a1 == t);
            for (int i = 1; i <= 5; ++i) CHECK(n.a3.coeff(i).is_zero());
            for (int i = 1; i <= 7; ++i) CHECK(n.a4.coeff(i).is_zero());
            auto before = tate_classify(m, c.zeros[0]);
            auto after = tate_classify(n, Place::finite(F4.zero()));
            CHECK(before.type == after.type);
            ++done_iii;
        }
    }
    CHECK(done_ii >= 40);
    CHECK(done_iii >= 40);
}

TEST_CASE("moving a place to infinity preserves the fibre") {
    const FiniteField& F4 = FiniteField::get(2, 2);
    std::mt19937_64 rng(0x1f);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 50; ++trial) {
        auto m = rand_model(F4, rng);
        if (m.discriminant().is_zero() || !m.within_k3_bounds()) continue;
        FFElem t0 = F4.element(1 + rng() % 3);
        auto before = tate_classify(m, Place::finite(t0));
        auto moved = move_place_to_infinity(m, t0);
        auto after = tate_classify(moved, Place::infinity());
        CHECK(before.type == after.type);
        CHECK(before.v_delta == after.v_delta);
        // 0 stays put
        CHECK(tate_classify(m, Place::finite(F4.zero())).type ==
              tate_classify(moved, Place::finite(F4.zero())).type);
        ++done;
    }
    CHECK(done == 50);
}

TEST_CASE("model files: parsing, serialization, errors") {
    std::istringstream bad1("ext=2\na1=t\n");
    CHECK_THROWS_AS(parse_model(bad1), ParseError);
    std::istringstream bad2("char=2 ext=1\na1=t^\n");
    try {
        parse_model(bad2);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    std::istringstream bad3("char=2 ext=1\nax=t\n");
    CHECK_THROWS_AS(parse_model(bad3), ParseError);

    const FiniteField& F9 = FiniteField::get(3, 2);
    std::mt19937_64 rng(0x5e5);
    for (int trial = 0; trial < 50; ++trial) {
        auto m = rand_model(F9, rng);
        std::string text = serialize_model(m, 3, 2);
        std::istringstream is(text);
        auto mf = parse_model(is);
        REQUIRE(mf.fq);
        CHECK(*mf.fq == m);
    }
    // characteristic 0 round trip with rational coefficients
    RatCtx rctx;
    Model<RatCtx> mr = Model<RatCtx>::zero(rctx);
    mr.a4 = UniPoly<RatCtx>(rctx, {Rational(-3, 7), Rational(2)});
    std::string text = serialize_model(mr, 0, 1, "s");
    std::istringstream is(text);
    auto mf = parse_model(is);
    REQUIRE(mf.rat);
    CHECK(*mf.rat == mr);
    CHECK(mf.param == "s");
}
