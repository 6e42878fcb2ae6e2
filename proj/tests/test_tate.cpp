#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ellk3/tate.hpp"

using namespace ellk3;

namespace {

std::string fixture(const std::string& name) {
    return std::string(ELLK3_SOURCE_DIR) + "/fixtures/" + name;
}

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

TEST_CASE("component counts and root lattices") {
    CHECK(KodairaType::I(0).components() == 1);
    CHECK(KodairaType::I(1).components() == 1);
    CHECK(KodairaType::I(20).components() == 20);
    CHECK(KodairaType::Istar(0).components() == 5);
    CHECK(KodairaType::Istar(14).components() == 19);
    CHECK(KodairaType::II().components() == 1);
    CHECK(KodairaType::III().components() == 2);
    CHECK(KodairaType::IV().components() == 3);
    CHECK(KodairaType::IVstar().components() == 7);
    CHECK(KodairaType::IIIstar().components() == 8);
    CHECK(KodairaType::IIstar().components() == 9);
    auto rl = KodairaType::I(20).root_lattice();
    REQUIRE(rl);
    CHECK((rl->series == 'A' && rl->rank == 19));
    rl = KodairaType::Istar(16).root_lattice();
    REQUIRE(rl);
    CHECK((rl->series == 'D' && rl->rank == 20));
    CHECK(!KodairaType::II().root_lattice());
    CHECK(KodairaType::parse("I13*") == KodairaType::Istar(13));
    CHECK(KodairaType::parse("IV*") == KodairaType::IVstar());
}

TEST_CASE("characteristic-3 model classifies to I14* at s = 0") {
    auto mf = parse_model_file(fixture("char3_i14star.model"));
    REQUIRE(mf.fq);
    const FiniteField& F3 = FiniteField::get(3, 1);
    auto r = tate_classify(*mf.fq, Place::finite(F3.zero()));
    CHECK(r.type == KodairaType::Istar(14));
    CHECK(r.v_delta == 20);
    CHECK(r.components == 19);
    CHECK(r.wild_defect == 0);
    CHECK(r.minimality_reductions == 0);

    auto rep = classify_all(*mf.fq, 8);
    CHECK(rep.complete);
    CHECK(rep.sum_v_delta == 24);
    CHECK(rep.euler_ok);
    REQUIRE(rep.config.size() == 5);
    int ones = 0;
    for (auto& s : rep.config) ones += (s == "I1");
    CHECK(ones == 4);
    CHECK(rep.max_additive_star == 14);
    CHECK(is_k3(*mf.fq).ok);
}

TEST_CASE("characteristic-2 additive terminations from the starred analysis") {
    const FiniteField& F2 = FiniteField::get(2, 1);
    FqCtx ctx{&F2};
    Model<FqCtx> m = Model<FqCtx>::zero(ctx);
    m.a2 = UniPoly<FqCtx>::t(ctx);
    m.a3 = UniPoly<FqCtx>::t_power(ctx, 5, F2.one());
    auto r = tate_classify(m, Place::finite(F2.zero()));
    CHECK(r.type == KodairaType::Istar(7));
    CHECK(r.v_delta == 20);
    m.a3 = UniPoly<FqCtx>::t_power(ctx, 6, F2.one());
    r = tate_classify(m, Place::finite(F2.zero()));
    CHECK(r.type == KodairaType::Istar(9));
    CHECK(r.v_delta == 24);

    // case (ii*) with ~a2 = 1, ~a6 = t^4: terminates at I12*
    Model<FqCtx> m2 = Model<FqCtx>::zero(ctx);
    m2.a1 = UniPoly<FqCtx>::t_power(ctx, 2, F2.one());
    m2.a2 = UniPoly<FqCtx>::t(ctx);
    m2.a6 = UniPoly<FqCtx>::t_power(ctx, 12, F2.one());
    r = tate_classify(m2, Place::finite(F2.zero()));
    CHECK(r.type == KodairaType::Istar(12));

    // case (iii*) final family with e = 1, c = 1 (so c = sqrt(e)):
    // I13* with v(Delta) = 21, 18 components, wild defect 2
    Model<FqCtx> m3 = Model<FqCtx>::zero(ctx);
    m3.a1 = UniPoly<FqCtx>::t(ctx);
    m3.a3 = UniPoly<FqCtx>::t_power(ctx, 6, F2.one());
    m3.a2 = UniPoly<FqCtx>(ctx, {F2.one(), F2.zero(), F2.zero(), F2.one(), F2.one()});
    m3.a4 = UniPoly<FqCtx>::t_power(ctx, 8, F2.one());
    m3.a6 = UniPoly<FqCtx>::t_power(ctx, 10, F2.one());
    r = tate_classify(m3, Place::finite(F2.zero()));
    CHECK(r.type == KodairaType::Istar(13));
    CHECK(r.v_delta == 21);
    CHECK(r.components == 18);
    CHECK(r.wild_defect == 2);
    // c = 0 != sqrt(e): I12* with v(Delta) = 20
    Model<FqCtx> m4 = m3;
    m4.a2 = UniPoly<FqCtx>(ctx, {F2.one(), F2.zero(), F2.zero(), F2.zero(), F2.one()});
    m4.a4 = UniPoly<FqCtx>(ctx);
    r = tate_classify(m4, Place::finite(F2.zero()));
    CHECK(r.type == KodairaType::Istar(12));
    CHECK(r.v_delta == 20);
}

TEST_CASE("good places and singular families") {
    const FiniteField& F5 = FiniteField::get(5, 1);
    FqCtx ctx{&F5};
    Model<FqCtx> m = Model<FqCtx>::zero(ctx);
    m.a6 = UniPoly<FqCtx>::constant(ctx, F5.one());
    // Delta = -432 != 0: good reduction everywhere finite
    auto r = tate_classify(m, Place::finite(F5.from_int(2)));
    CHECK(r.type == KodairaType::I(0));
    CHECK(r.v_delta == 0);
    Model<FqCtx> sing = Model<FqCtx>::zero(ctx);
    CHECK_THROWS_AS(tate_classify(sing, Place::finite(F5.zero())), std::domain_error);
}

TEST_CASE("multiplicative fibres match the independent valuation oracle") {
    std::mt19937_64 rng(0x0066);
    for (auto [p, k] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {2, 2}, {3, 1}, {5, 1}}) {
        const FiniteField& F = FiniteField::get(p, k);
        int multiplicative_seen = 0;
        for (int trial = 0; trial < 400; ++trial) {
            auto m = rand_model(F, rng);
            auto delta = m.discriminant();
            if (delta.is_zero()) continue;
            for (uint64_t i = 0; i < F.order(); ++i) {
                FFElem t0 = F.element(i);
                if (!delta.eval(t0).is_zero()) continue;
                auto r = tate_classify(m, Place::finite(t0));
                if (r.type.is_multiplicative()) {
                    ++multiplicative_seen;
                    CHECK(r.type.n == valuation(delta, Place::finite(t0)));
                    CHECK(r.v_delta == r.type.n);
                    CHECK(r.wild_defect == 0);
                }
            }
        }
        CHECK(multiplicative_seen > 50);
    }
}

TEST_CASE("Ogg relation: tame additive fibres have v(Delta) = m + 1") {
    std::mt19937_64 rng(0x0077);
    for (uint32_t p : {5u, 7u}) {
        const FiniteField& F = FiniteField::get(p, 1);
        int additive_seen = 0;
        for (int trial = 0; trial < 600; ++trial) {
            auto m = rand_model(F, rng);
            auto delta = m.discriminant();
            if (delta.is_zero()) continue;
            for (uint64_t i = 0; i < F.order(); ++i) {
                FFElem t0 = F.element(i);
                if (!delta.eval(t0).is_zero()) continue;
                auto r = tate_classify(m, Place::finite(t0));
                if (r.type.is_additive()) {
                    ++additive_seen;
                    CHECK(r.wild_defect == 0);
                    CHECK(r.v_delta == r.components + 1);
                }
            }
        }
        CHECK(additive_seen > 50);
    }
    // characteristics 2 and 3: the defect is nonnegative
    std::mt19937_64 rng2(0x0078);
    for (uint32_t p : {2u, 3u}) {
        const FiniteField& F = FiniteField::get(p, 1);
        for (int trial = 0; trial < 600; ++trial) {
            auto m = rand_model(F, rng2);
            auto delta = m.discriminant();
            if (delta.is_zero()) continue;
            for (uint64_t i = 0; i < F.order(); ++i) {
                FFElem t0 = F.element(i);
                if (!delta.eval(t0).is_zero()) continue;
                auto r = tate_classify(m, Place::finite(t0));
                if (r.type.is_additive()) CHECK(r.wild_defect >= 0);
            }
        }
    }
}

TEST_CASE("classification is invariant under admissible coordinate changes") {
    std::mt19937_64 rng(0x0088);
    for (auto [p, k] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {3, 1}, {5, 1}}) {
        const FiniteField& F = FiniteField::get(p, k);
        int checked = 0;
        for (int trial = 0; trial < 3000 && checked < 80; ++trial) {
            auto m = rand_model(F, rng);
            auto delta = m.discriminant();
            if (delta.is_zero()) continue;
            CoordChange<FqCtx> ch{F.element(1 + rng() % (F.order() - 1)),
                                  rand_poly(F, 2, rng), rand_poly(F, 1, rng),
                                  rand_poly(F, 3, rng)};
            auto m2 = apply_change(m, ch);
            FFElem t0 = F.element(rng() % F.order());
            if (delta.eval(t0).is_zero()) {
                auto r1 = tate_classify(m, Place::finite(t0));
                auto r2 = tate_classify(m2, Place::finite(t0));
                CHECK(r1.type == r2.type);
                CHECK(r1.v_delta == r2.v_delta);
                CHECK(r1.wild_defect == r2.wild_defect);
                ++checked;
            }
        }
        CHECK(checked == 80);
    }
}

TEST_CASE("reduction kinds") {
    const FiniteField& F2 = FiniteField::get(2, 1);
    FqCtx ctx{&F2};
    // a1 == 0: every place with v(Delta) > 0 is additive
    Model<FqCtx> m = Model<FqCtx>::zero(ctx);
    m.a2 = UniPoly<FqCtx>::t(ctx);
    m.a3 = UniPoly<FqCtx>(ctx, {F2.one(), F2.one()});  // a3 = 1 + t
    auto delta = m.discriminant();
    REQUIRE(!delta.is_zero());
    CHECK(reduction_kind(m, Place::finite(F2.one())) == ReductionKind::additive);
    // case (iii) shape with b = 0 is additive above 0
    Model<FqCtx> m3 = Model<FqCtx>::zero(ctx);
    m3.a1 = UniPoly<FqCtx>::t(ctx);
    m3.a3 = UniPoly<FqCtx>::t_power(ctx, 6, F2.one());
    m3.a2 = UniPoly<FqCtx>::constant(ctx, F2.one());
    CHECK(reduction_kind(m3, Place::finite(F2.zero())) == ReductionKind::additive);
    // Delta(t0) != 0: good
    const FiniteField& F5 = FiniteField::get(5, 1);
    FqCtx c5{&F5};
    Model<FqCtx> g = Model<FqCtx>::zero(c5);
    g.a6 = UniPoly<FqCtx>::constant(c5, F5.one());
    CHECK(reduction_kind(g, Place::finite(F5.zero())) == ReductionKind::good);
    // agreement with the fine classification on random models
    std::mt19937_64 rng(0x0099);
    const FiniteField& F4 = FiniteField::get(2, 2);
    for (int trial = 0; trial < 200; ++trial) {
        auto r = rand_model(F4, rng);
        if (r.discriminant().is_zero()) continue;
        FFElem t0 = F4.element(rng() % 4);
        CHECK_NOTHROW(reduction_kind(r, Place::finite(t0)));  // throws on disagreement
    }
}

TEST_CASE("non-minimal models are reduced and reported") {
    const FiniteField& F2 = FiniteField::get(2, 1);
    FqCtx ctx{&F2};
    Model<FqCtx> m = Model<FqCtx>::zero(ctx);
    m.a3 = UniPoly<FqCtx>::t_power(ctx, 5, F2.one());  // y^2 + t^5 y = x^3
    auto r = tate_classify(m, Place::finite(F2.zero()));
    CHECK(r.minimality_reductions == 1);
    CHECK(r.type == KodairaType::IVstar());
    CHECK(!is_k3(m).ok);
}

TEST_CASE("scan witnesses reclassify to their recorded types") {
    struct Expect {
        const char* file;
        const char* place_desc;  // "inf", "0", "1"
        KodairaType type;
    };
    const FiniteField& F2 = FiniteField::get(2, 1);
    std::vector<Expect> cases = {
        {"witness_case_ii_i18.model", "inf", KodairaType::I(18)},
        {"witness_case_ii_i12star.model", "0", KodairaType::Istar(12)},
        {"witness_case_iii_i18.model", "1", KodairaType::I(18)},
        {"witness_case_iii_i13star.model", "inf", KodairaType::Istar(13)},
        {"witness_case_i_i9star.model", "0", KodairaType::Istar(9)},
    };
    for (auto& e : cases) {
        auto mf = parse_model_file(fixture(e.file));
        REQUIRE(mf.fq);
        Place pl = std::string(e.place_desc) == "inf"
                       ? Place::infinity()
                       : Place::finite(std::string(e.place_desc) == "0" ? F2.zero() : F2.one());
        auto r = tate_classify(*mf.fq, pl);
        INFO(e.file);
        CHECK(r.type == e.type);
        CHECK(is_k3(*mf.fq).ok);
    }
}

TEST_CASE("classify_all flags unsplit discriminant factors") {
    // Delta of y^2 + s^2 xy + y = x^3 over GF(2) is (s+1)^2 (s^2+s+1)^2:
    // searching only GF(2) misses the conjugate quadratic roots
    const FiniteField& F2 = FiniteField::get(2, 1);
    FqCtx ctx{&F2};
    Model<FqCtx> m = Model<FqCtx>::zero(ctx);
    m.a1 = UniPoly<FqCtx>::t_power(ctx, 2, F2.one());
    m.a3 = UniPoly<FqCtx>::constant(ctx, F2.one());
    auto rep1 = classify_all(m, 1);
    CHECK(!rep1.complete);
    CHECK(rep1.unsplit_degree == 4);
    auto rep2 = classify_all(m, 2);
    CHECK(rep2.complete);
    CHECK(rep2.sum_v_delta == 24);
    CHECK(rep2.max_multiplicative == 18);
}

TEST_CASE("the degree-2 base change of the [1,1,1,9] surface") {
    // characteristic 0: fibres [1,1,1,1,1,1,18]; mod 2 the I18 is preserved
    // and the I1 fibres merge into three I2
    auto mf = parse_model_file(fixture("char0_i18_base_change.model"));
    REQUIRE(mf.rat);
    for (uint32_t p : {5u, 7u}) {
        auto mp = reduce_mod_p(*mf.rat, FiniteField::get(p, 1));
        auto rep = classify_all(mp, 2);  // the six roots of s^6 - 27 split in GF(p^2)
        CHECK(rep.euler_ok);
        CHECK(rep.max_multiplicative == 18);
        int i1 = 0;
        for (auto& s : rep.config) i1 += (s == "I1");
        CHECK(i1 == 6);
        CHECK(is_k3(mp).ok);
    }
    auto m2 = reduce_mod_p(*mf.rat, FiniteField::get(2, 1));
    auto rep2 = classify_all(m2, 2);
    CHECK(rep2.euler_ok);
    CHECK(rep2.max_multiplicative == 18);
    int i2 = 0;
    for (auto& s : rep2.config) i2 += (s == "I2");
    CHECK(i2 == 3);
    CHECK(is_k3(m2).ok);
}
