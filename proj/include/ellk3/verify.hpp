// Named verifications of the maximal-fibre statements, combining symbolic
// elimination, Tate classification, lattice congruences and finite-field
// scans, plus the scan engine itself (exhaustive over GF(2), sampled for
// larger fields). Each verification returns a verdict and a transcript.

#pragma once

#include <atomic>
#include <functional>
#include <thread>

#include "ellk3/lattice.hpp"
#include "ellk3/symbolic.hpp"

namespace ellk3 {

enum class Verdict { pass, fail, inconclusive, skipped };

inline const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::pass: return "PASS";
        case Verdict::fail: return "FAIL";
        case Verdict::inconclusive: return "INCONCLUSIVE";
        case Verdict::skipped: return "SKIPPED";
    }
    return "?";
}

struct VerifyResult {
    std::string name;
    Verdict verdict = Verdict::inconclusive;
    std::string transcript;
};

namespace verify_detail {

struct Section {
    std::ostringstream os;
    bool ok = true;
    bool inconclusive = false;

    void line(const std::string& s) { os << s << "\n"; }
    void claim(const std::string& what, bool holds) {
        os << (holds ? "  [ok] " : "  [FAILED] ") << what << "\n";
        ok = ok && holds;
    }
    void axiom(const std::string& what) {
        os << "  [axiom] " << what << "\n";
    }
};

/// Every consistent leaf is fully consumed and its residual discriminant
/// vanishes identically; reports the survivors of the first such leaf.
inline bool killed_and_singular(const ElimResult& res, const SymPoly& delta,
                                Section& sec, const SymRing& R) {
    if (res.verdict == ElimVerdict::budget_exhausted) {
        sec.inconclusive = true;
        sec.line("  branch budget exhausted");
        return false;
    }
    if (res.verdict != ElimVerdict::all_parameters_killed) return false;
    bool all = true;
    for (const auto& l : res.leaves) {
        if (l.contradiction) continue;
        SymPoly dres = apply_assignments(delta, l.assignments);
        std::string survivors;
        for (int s : l.survivors) survivors += (survivors.empty() ? "" : ", ") + R.name(s);
        sec.line("  leaf" + (l.path.empty() ? "" : " " + l.path) + ": survivors {" +
                 survivors + "}, residual Delta " + (dres.is_zero() ? "== 0" : "!= 0"));
        all = all && dres.is_zero();
    }
    return all;
}

}  // namespace verify_detail

// ---------------------------------------------------------------------------
// multiplicative side

/// No elliptic K3 fibration carries an I20 fibre: odd characteristic, via
/// the Artin invariant of supersingular K3 surfaces.
inline VerifyResult verify_thm20_odd() {
    using verify_detail::Section;
    Section sec;
    sec.line("== no I20 fibre, odd characteristic ==");
    sec.line("An I20 (or I21) fibre forces Picard number 22, hence a supersingular");
    sec.line("surface with |discr NS| = p^{2 sigma0}, sigma0 in 1..10, up to the even");
    sec.line("p-powers coming from possible p-torsion in the Mordell-Weil group.");

    sec.line("finite Mordell-Weil branch: one further reducible fibre I2 or III (both A1):");
    for (int torsion : {1, 2}) {
        LatticeConfig cfg;
        cfg.fibers = {KodairaType::I(20), KodairaType::I(2)};
        cfg.torsion = torsion;
        auto d = shioda_tate_discr(cfg);
        sec.line("  torsion " + std::to_string(torsion) + ": |discr NS| = " + d.value.str());
        bool rejected_everywhere = true;
        for (uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
            auto c = artin_compatible(d, p);
            if (c.compatible) rejected_everywhere = false;
        }
        // certificate covering every prime: two distinct prime factors
        BigInt n = rat_num(d.value);
        bool two_primes = (n % 2 == 0) && (n % 5 == 0);
        sec.claim("value " + d.value.str() + " is no p-power for any p (divisible by 2 and 5)",
                  rejected_everywhere && two_primes);
    }
    {
        LatticeConfig cfg;
        cfg.fibers = {KodairaType::I(21)};
        cfg.torsion = 1;  // torsion^2 must divide 21
        auto d = shioda_tate_discr(cfg);
        BigInt n = rat_num(d.value);
        bool two_primes = (n % 3 == 0) && (n % 7 == 0);
        sec.claim("I21 variant: |discr NS| = " + d.value.str() +
                      " is no p-power for any p (divisible by 3 and 7)",
                  two_primes);
    }

    sec.line("rank-1 branch: height pairing congruences");
    auto proof = congruence_proof(CongruenceScenario::I20_odd_char);
    sec.claim("every (i, (P.O)) case excluded (" + std::to_string(proof.cases_checked) +
                  " cases)",
              proof.all_excluded);
    sec.os << proof.transcript;

    VerifyResult out;
    out.name = "thm20_odd";
    out.verdict = sec.ok ? Verdict::pass : Verdict::fail;
    out.transcript = sec.os.str();
    return out;
}

/// The characteristic-2 case analysis excluding I_n fibres for n >= n_min
/// (n_min = 20 proves the theorem, n_min = 19 the stronger proposition).
inline VerifyResult verify_thm20_char2(int n_min = 20) {
    using verify_detail::Section;
    Section sec;
    sec.line("== no I" + std::to_string(n_min) + " fibre (or larger), characteristic 2 ==");

    // case (i): a1 == 0
    {
        sec.line("case (i): a1 == 0");
        auto fam = sym_family(SymFamily::general_char2);
        const SymRing& R = *fam.ring;
        SymModel zeroed = fam;
        for (int i = 0; i <= 2; ++i)
            zeroed.a1 = zeroed.a1.substitute(R.index_of("a1_" + std::to_string(i)),
                                             SymPoly::zero(R));
        SymPoly delta = zeroed.discriminant_char2();
        SymPoly a3_4 = zeroed.a3 * zeroed.a3 * zeroed.a3 * zeroed.a3;
        sec.claim("Delta == a3^4 identically", delta == a3_4);
        sec.claim("c4 == a1^4 == 0: every singular fibre additive, no I_n at all", true);
    }

    // case (ii): a1 = t^2
    {
        auto fam = sym_family(SymFamily::case_ii);
        const SymRing& R = *fam.ring;
        SymPoly delta = symbolic_discriminant(fam);
        sec.line("case (ii): a1 = t^2, a3 = a t + b, a4 = c t + d, a2 = t~a2");
        sec.claim("Delta has no t^5 term, so v_inf(Delta) = 19 is impossible",
                  delta.coeff_of_t(5).is_zero());
        int n_inf = std::max(n_min, 20);  // v_inf >= 19 already forces >= 20
        auto res = eliminate(impose_valuation(fam, delta, SymbolicPlace::infinity,
                                              std::min(n_min, 20)));
        (void)n_inf;
        bool ok = verify_detail::killed_and_singular(res, delta, sec, R);
        sec.claim("v_inf(Delta) >= " + std::to_string(std::min(n_min, 20)) +
                      ": every parameter except ~a2 killed, Delta == 0 (singular)",
                  ok);
        auto res0 = eliminate(impose_valuation(fam, delta, SymbolicPlace::zero, 5));
        bool killed_ab = false;
        for (const auto& l : res0.leaves) {
            if (l.contradiction) continue;
            bool a_dead = false, b_dead = false;
            for (auto& [idx, val] : l.assignments) {
                if (R.name(idx) == "a" && val.is_zero()) a_dead = true;
                if (R.name(idx) == "b" && val.is_zero()) b_dead = true;
            }
            killed_ab = a_dead && b_dead;
        }
        sec.claim("v_0(Delta) > 4 forces b = a = 0 (additive reduction at 0)", killed_ab);
        sec.line("  at t=0 one has c4 = t^8, so any singular fibre above 0 is additive;");
        sec.line("  a fibre above t0 != 0 moves to infinity by the translation in s = 1/t");
        sec.line("  (shape preserved; checked as a property test).");
    }

    // case (iii): a1 = t
    {
        auto fam = sym_family(SymFamily::case_iii);
        const SymRing& R = *fam.ring;
        SymPoly delta = symbolic_discriminant(fam);
        sec.line("case (iii): a1 = t, a3 = a t^6 + b, a4 = c t^8 + d");
        SymPoly d0 = delta.coeff_of_t(0);
        SymPoly b4 = SymPoly::sym(R, "b").pow(4);
        sec.claim("Delta(0) = b^4: v_0 > 0 forces b = 0, and c4 = t^4 makes the fibre additive",
                  d0 == b4);
        sec.line("  the equation is symmetric in 0 and infinity (chart swap preserves its shape)");
        auto res1 = eliminate(impose_valuation(fam, delta, SymbolicPlace::one, n_min));
        bool ok = verify_detail::killed_and_singular(res1, delta, sec, R);
        sec.claim("v_1(Delta) >= " + std::to_string(n_min) +
                      ": every parameter except a2 killed, Delta == 0 (singular)",
                  ok);
        sec.line("  a fibre above t0 != 0, infinity rescales to t0 = 1 (checked as a property test)");
    }

    VerifyResult out;
    out.name = n_min >= 20 ? "thm20_char2" : "prop19_char2";
    out.verdict = sec.inconclusive ? Verdict::inconclusive
                                   : (sec.ok ? Verdict::pass : Verdict::fail);
    out.transcript = sec.os.str();
    return out;
}

inline VerifyResult verify_prop19_char2() { return verify_thm20_char2(19); }

// ---------------------------------------------------------------------------
// additive side

namespace verify_detail {

inline Model<FqCtx> case_ii_star_model(const FiniteField& F, const std::vector<FFElem>& ta2,
                                       const std::vector<FFElem>& ta6) {
    FqCtx ctx{&F};
    Model<FqCtx> m = Model<FqCtx>::zero(ctx);
    m.a1 = UniPoly<FqCtx>::t_power(ctx, 2, F.one());
    m.a2 = UniPoly<FqCtx>(ctx, ta2).shift_up(1);
    m.a6 = UniPoly<FqCtx>(ctx, ta6).shift_up(8);
    return m;
}

inline Model<FqCtx> case_iii_star_model(const FiniteField& F, const FFElem& e,
                                        const FFElem& c, const std::vector<FFElem>& ta6) {
    // y^2 + t x y + t^6 y = x^3 + (e t^4 + c t^3 + ~a6) x^2 + c t^8 x + t^10 ~a6
    FqCtx ctx{&F};
    Model<FqCtx> m = Model<FqCtx>::zero(ctx);
    m.a1 = UniPoly<FqCtx>::t(ctx);
    m.a3 = UniPoly<FqCtx>::t_power(ctx, 6, F.one());
    UniPoly<FqCtx> ta6p(ctx, ta6);
    m.a2 = UniPoly<FqCtx>::t_power(ctx, 4, e) + UniPoly<FqCtx>::t_power(ctx, 3, c) + ta6p;
    m.a4 = UniPoly<FqCtx>::t_power(ctx, 8, c);
    m.a6 = ta6p.shift_up(10);
    return m;
}

}  // namespace verify_detail

/// No elliptic K3 surface has a fibre I_n* with n > 14; in characteristic 2
/// the additive maximum is I13*. Runs the lattice special cases, the
/// odd-characteristic congruences, and the characteristic-2 Tate analysis of
/// the three starred families.
inline VerifyResult verify_thm15star() {
    using verify_detail::Section;
    Section sec;
    sec.line("== no I_n* fibre for n > 14 ==");

    {
        LatticeConfig cfg;
        cfg.fibers = {KodairaType::Istar(16)};
        auto d = shioda_tate_discr(cfg);
        sec.claim("I16*: |discr NS| = discr D20 = 4", d.value == 4);
        auto c2 = artin_compatible(d, 2);
        bool only2 = c2.compatible && c2.sigma0 == 1;
        for (uint32_t p : {3u, 5u, 7u, 11u, 13u})
            only2 = only2 && !artin_compatible(d, p).compatible;
        sec.claim("Artin-compatible only in characteristic 2 (sigma0 = 1)", only2);
        sec.axiom("characteristic 2 is excluded by the classification of extremal "
                  "elliptic K3 surfaces in characteristic 2 (external input)");
    }
    {
        sec.line("I15* with finite Mordell-Weil group: extra A1 fibre, torsion 1 or 2:");
        for (int torsion : {1, 2}) {
            LatticeConfig cfg;
            cfg.fibers = {KodairaType::Istar(15), KodairaType::I(2)};
            cfg.torsion = torsion;
            auto d = shioda_tate_discr(cfg);
            bool rejected = true;
            for (uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u})
                rejected = rejected && !artin_compatible(d, p).compatible;
            sec.claim("torsion " + std::to_string(torsion) + ": |discr NS| = " + d.value.str() +
                          " = 2^" + (torsion == 1 ? std::string("3") : std::string("1")) +
                          " rejected for every p (odd power of 2)",
                      rejected && (d.value == 8 || d.value == 2));
        }
    }
    {
        sec.line("I15*, Mordell-Weil rank 1, odd characteristic:");
        auto proof = congruence_proof(CongruenceScenario::I15star_far_odd_char);
        sec.claim("identity/near contacts give even discriminants; far contact gives "
                      "residue 5 mod 8: all " + std::to_string(proof.cases_checked) +
                      " cases excluded",
                  proof.all_excluded);
        sec.os << proof.transcript;
    }

    VerifyResult out;
    out.name = "thm15star";
    out.verdict = sec.inconclusive ? Verdict::inconclusive
                                   : (sec.ok ? Verdict::pass : Verdict::fail);
    out.transcript = sec.os.str();
    return out;
}

/// Characteristic 2: the maximal additive fibre is I13*. Mechanizes the
/// starred case analysis at v_0(Delta) >= 20 and runs Tate's algorithm on the
/// resulting families.
inline VerifyResult verify_prop14star() {
    using verify_detail::Section;
    Section sec;
    sec.line("== characteristic 2: maximal additive fibre is I13* ==");
    const FiniteField& F2 = FiniteField::get(2, 1);
    const FiniteField& F4 = FiniteField::get(2, 2);
    FqCtx ctx2{&F2};

    // case (i*): a1 == 0, Delta = a3^4, v_0 >= 20 <=> v_0(a3) >= 5
    {
        sec.line("case (i*): a1 == 0, Delta = a3^4; v_0(Delta) >= 20 forces v_0(a3) in {5, 6}");
        Model<FqCtx> m = Model<FqCtx>::zero(ctx2);
        m.a2 = UniPoly<FqCtx>::t(ctx2);
        m.a3 = UniPoly<FqCtx>::t_power(ctx2, 5, F2.one());
        auto r5 = tate_classify(m, Place::finite(F2.zero()));
        sec.claim("a3 = t^5 terminates at I7* (got " + r5.type.str() + ")",
                  r5.type == KodairaType::Istar(7));
        m.a3 = UniPoly<FqCtx>::t_power(ctx2, 6, F2.one());
        auto r6 = tate_classify(m, Place::finite(F2.zero()));
        sec.claim("a3 = t^6 terminates at I9* (got " + r6.type.str() + ")",
                  r6.type == KodairaType::Istar(9));
        sec.line("  coordinate changes in Tate's algorithm do not affect a3 here,");
        sec.line("  so the chain stops when the a3 coefficient of order 5 resp. 6 enters;");
        sec.line("  both types stay below I14*.");
    }

    // case (ii*): derived family y^2 + t^2 xy = x^3 + t ~a2 x^2 + t^8 ~a6
    {
        auto fam = sym_family(SymFamily::case_ii);
        const SymRing& R = *fam.ring;
        SymPoly delta = symbolic_discriminant(fam);
        auto res = eliminate(impose_valuation(fam, delta, SymbolicPlace::zero, 20));
        bool shape_ok = res.verdict == ElimVerdict::all_parameters_killed;
        std::set<std::string> expect_killed = {"a", "b", "c", "d", "a6_0", "a6_1", "a6_2",
                                               "a6_3", "a6_4", "a6_5", "a6_6", "a6_7"};
        for (const auto& l : res.leaves) {
            if (l.contradiction) continue;
            std::set<std::string> killed;
            for (auto& [idx, val] : l.assignments)
                if (val.is_zero()) killed.insert(R.name(idx));
            shape_ok = shape_ok && killed == expect_killed;
        }
        sec.claim("case (ii*): v_0(Delta) >= 20 forces a=b=c=d=0 and a6 = t^8 ~a6 "
                  "(survivors ~a2, ~a6)", shape_ok);

        // exhaustive over GF(2): the maximal fibre in the family is I12*
        int max_star = -1;
        KodairaType max_type = KodairaType::I(0);
        for (uint64_t mask = 0; mask < (1u << 9); ++mask) {
            std::vector<FFElem> ta2(4, F2.zero()), ta6(5, F2.zero());
            for (int i = 0; i < 4; ++i) if ((mask >> i) & 1) ta2[size_t(i)] = F2.one();
            for (int i = 0; i < 5; ++i) if ((mask >> (4 + i)) & 1) ta6[size_t(i)] = F2.one();
            auto m = verify_detail::case_ii_star_model(F2, ta2, ta6);
            if (m.discriminant().is_zero()) continue;
            auto r = tate_classify(m, Place::finite(F2.zero()));
            if (r.type.kind == KodairaType::Kind::Istar && r.type.n > max_star) {
                max_star = r.type.n;
                max_type = r.type;
            }
        }
        sec.claim("case (ii*) exhaustive over GF(2): maximal I_n* at 0 is I12* (got " +
                      max_type.str() + ")", max_star == 12);
        // the paper instance: ~a2 = 1, ~a6 = e t^4
        auto m = verify_detail::case_ii_star_model(
            F2, {F2.one()}, {F2.zero(), F2.zero(), F2.zero(), F2.zero(), F2.one()});
        auto r = tate_classify(m, Place::finite(F2.zero()));
        sec.claim("~a6 = e t^4 (e = 1): the algorithm terminates at I12* where the t^8 "
                  "coefficient of a4 enters (got " + r.type.str() + ")",
                  r.type == KodairaType::Istar(12));
    }

    // case (iii*): derived family and the c = sqrt(e) dichotomy
    {
        auto fam = sym_family(SymFamily::case_iii);
        const SymRing& R = *fam.ring;
        SymPoly delta = symbolic_discriminant(fam);
        auto sys = impose_valuation(fam, delta, SymbolicPlace::zero, 20);
        sys.substitute("a", SymPoly::one(R));  // a != 0, normalized over the closure
        auto res = eliminate(sys);
        bool shape_ok = res.verdict == ElimVerdict::all_parameters_killed;
        bool links_ok = false;
        for (const auto& l : res.leaves) {
            if (l.contradiction) continue;
            std::map<std::string, SymPoly> as;
            for (auto& [idx, val] : l.assignments) as.emplace(R.name(idx), val);
            auto is0 = [&](const char* n) { return as.count(n) && as.at(n).is_zero(); };
            bool zeros = is0("b") && is0("d");
            for (int i = 0; i <= 9; ++i)
                zeros = zeros && is0(("a6_" + std::to_string(i)).c_str());
            bool linked = as.count("a2_0") && as.at("a2_0") == SymPoly::sym(R, "a6_10") &&
                          as.count("a2_1") && as.at("a2_1") == SymPoly::sym(R, "a6_11") &&
                          as.count("a2_2") && as.at("a2_2") == SymPoly::sym(R, "a6_12") &&
                          as.count("c") && as.at("c") == SymPoly::sym(R, "a2_3");
            links_ok = zeros && linked;
        }
        sec.claim("case (iii*), a = 1: v_0 >= 20 forces b = d = 0, a6 = t^10 ~a6 and "
                  "a2 = e t^4 + c t^3 + ~a6 (the displayed final family)",
                  shape_ok && links_ok);

        // Tate on the final family over GF(2) and GF(4): I13* iff c = sqrt(e)
        bool dichotomy = true, no14 = true, v21_iff = true;
        for (const FiniteField* P : {&F2, &F4}) {
            const FiniteField& F = *P;
            for (uint64_t ei = 0; ei < F.order(); ++ei)
                for (uint64_t ci = 0; ci < F.order(); ++ci) {
                    FFElem e = F.element(ei), c = F.element(ci);
                    auto m = verify_detail::case_iii_star_model(F, e, c, {F.one()});
                    auto r = tate_classify(m, Place::finite(F.zero()));
                    bool is_sqrt = (c * c == e);
                    if (r.type.kind == KodairaType::Kind::Istar && r.type.n >= 14) no14 = false;
                    if (is_sqrt) {
                        if (r.type != KodairaType::Istar(13)) dichotomy = false;
                        if (r.v_delta != 21) v21_iff = false;
                    } else {
                        if (r.type != KodairaType::Istar(12)) dichotomy = false;
                        if (r.v_delta != 20) v21_iff = false;
                    }
                }
        }
        sec.claim("final family over GF(2), GF(4): type is I13* iff c = sqrt(e), else I12*",
                  dichotomy);
        sec.claim("v_0(Delta) = 21 iff c = sqrt(e) (over GF(2) this reads c = e), else 20",
                  v21_iff);
        sec.claim("no member reaches I14*", no14);
        // the spec instance e = 1, c = 1 with delta = 2
        auto m = verify_detail::case_iii_star_model(F2, F2.one(), F2.one(), {F2.one()});
        auto r = tate_classify(m, Place::finite(F2.zero()));
        sec.claim("instance e = c = 1: I13* with v(Delta) = 21, m = 18, wild defect 2",
                  r.type == KodairaType::Istar(13) && r.v_delta == 21 &&
                      r.components == 18 && r.wild_defect == 2);

        // the a = 0 branch: b = 0 and v_0 >= 20 force a6 == 0 and d = 0
        auto sys0 = impose_valuation(fam, delta, SymbolicPlace::zero, 20);
        sys0.substitute("a", SymPoly::zero(R));
        auto res0 = eliminate(sys0);
        int max0 = -1;
        // residual family y^2 + txy = x^3 + a2 x^2 + c t^8 x over GF(2)
        for (uint64_t mask = 0; mask < (1u << 6); ++mask) {
            Model<FqCtx> m0 = Model<FqCtx>::zero(ctx2);
            m0.a1 = UniPoly<FqCtx>::t(ctx2);
            std::vector<FFElem> a2(5, F2.zero());
            for (int i = 0; i < 5; ++i) if ((mask >> i) & 1) a2[size_t(i)] = F2.one();
            m0.a2 = UniPoly<FqCtx>(ctx2, a2);
            if ((mask >> 5) & 1) m0.a4 = UniPoly<FqCtx>::t_power(ctx2, 8, F2.one());
            if (m0.discriminant().is_zero()) continue;
            auto r0 = tate_classify(m0, Place::finite(F2.zero()));
            if (r0.type.kind == KodairaType::Kind::Istar) max0 = std::max(max0, r0.type.n);
        }
        sec.claim("a = 0 branch resolves (all residual members stay below I14*; max I_n* = I" +
                      std::to_string(max0) + "*)",
                  res0.verdict == ElimVerdict::all_parameters_killed && max0 < 14);
    }

    VerifyResult out;
    out.name = "prop14star";
    out.verdict = sec.inconclusive ? Verdict::inconclusive
                                   : (sec.ok ? Verdict::pass : Verdict::fail);
    out.transcript = sec.os.str();
    return out;
}

// ---------------------------------------------------------------------------
// finite-field scans

enum class ScanFamily { case_i, case_ii, case_iii, case_ii_star, case_iii_star };

inline const char* scan_family_str(ScanFamily f) {
    switch (f) {
        case ScanFamily::case_i: return "case_i";
        case ScanFamily::case_ii: return "case_ii";
        case ScanFamily::case_iii: return "case_iii";
        case ScanFamily::case_ii_star: return "case_ii_star";
        case ScanFamily::case_iii_star: return "case_iii_star";
    }
    return "?";
}

inline ScanFamily parse_scan_family(const std::string& s) {
    for (ScanFamily f : {ScanFamily::case_i, ScanFamily::case_ii, ScanFamily::case_iii,
                         ScanFamily::case_ii_star, ScanFamily::case_iii_star})
        if (s == scan_family_str(f)) return f;
    throw std::invalid_argument("unknown scan family: " + s);
}

struct ScanWitness {
    uint64_t index = 0;
    KodairaType type;
    std::string place;
    std::string model_text;  // serialized model file
    bool k3 = false;
};

struct ScanReport {
    ScanFamily family;
    uint32_t p = 2, k = 1;
    bool exhaustive = true;
    uint64_t total = 0, tested = 0, skipped_degenerate = 0;
    int max_multiplicative = -1;
    int max_additive_star = -1;
    std::optional<ScanWitness> mult_witness;
    std::optional<ScanWitness> star_witness;
    std::string notes;

    std::string summary() const {
        std::ostringstream os;
        os << "family " << scan_family_str(family) << " over GF(" << p;
        if (k > 1) os << "^" << k;
        os << "), " << (exhaustive ? "exhaustive" : "sampled") << "\n";
        os << "tuples tested: " << tested << " of " << total
           << ", degenerate (Delta == 0) skipped: " << skipped_degenerate << "\n";
        os << "max multiplicative: "
           << (max_multiplicative >= 0 ? "I" + std::to_string(max_multiplicative) : "none")
           << "\n";
        os << "max additive I_n*: "
           << (max_additive_star >= 0 ? "I" + std::to_string(max_additive_star) + "*" : "none")
           << "\n";
        if (mult_witness)
            os << "multiplicative witness at tuple " << mult_witness->index << " ("
               << mult_witness->place << ", " << (mult_witness->k3 ? "K3" : "not K3") << ")\n";
        if (star_witness)
            os << "additive witness at tuple " << star_witness->index << " ("
               << star_witness->place << ", " << (star_witness->k3 ? "K3" : "not K3") << ")\n";
        if (!notes.empty()) os << notes;
        return os.str();
    }
};

struct ScanOptions {
    uint32_t jobs = 1;
    bool exhaustive = false;     // force exhaustive enumeration
    uint64_t sample = 1000000;   // tuples when sampling
    uint64_t seed = 0x5eed1e5u;
    uint64_t exhaustive_limit = 1u << 23;  // auto-exhaustive below this size
};

namespace scan_detail {

struct FamilyCodec {
    // digit layout: value in [0, field order) per listed coefficient slot
    std::vector<std::string> slots;  // descriptive
    uint64_t total = 0;
    std::function<Model<FqCtx>(uint64_t)> decode;
};

inline uint64_t pow_u64(uint64_t b, uint32_t e) {
    uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

inline FamilyCodec codec_for(ScanFamily fam, const FiniteField& F) {
    FqCtx ctx{&F};
    uint64_t q = F.order();
    FamilyCodec c;
    auto digit = [q](uint64_t& idx) {
        uint64_t d = idx % q;
        idx /= q;
        return d;
    };
    switch (fam) {
        case ScanFamily::case_ii: {
            c.total = pow_u64(q, 21);
            c.decode = [ctx, digit, &F](uint64_t idx) {
                Model<FqCtx> m = Model<FqCtx>::zero(ctx);
                m.a1 = UniPoly<FqCtx>::t_power(ctx, 2, F.one());
                FFElem a = F.element(digit(idx)), b = F.element(digit(idx));
                FFElem cc = F.element(digit(idx)), d = F.element(digit(idx));
                m.a3 = UniPoly<FqCtx>(ctx, {b, a});
                m.a4 = UniPoly<FqCtx>(ctx, {d, cc});
                std::vector<FFElem> ta2;
                for (int i = 0; i < 4; ++i) ta2.push_back(F.element(digit(idx)));
                m.a2 = UniPoly<FqCtx>(ctx, ta2).shift_up(1);
                std::vector<FFElem> a6;
                for (int i = 0; i < 13; ++i) a6.push_back(F.element(digit(idx)));
                m.a6 = UniPoly<FqCtx>(ctx, a6);
                return m;
            };
            break;
        }
        case ScanFamily::case_iii: {
            c.total = pow_u64(q, 22);
            c.decode = [ctx, digit, &F](uint64_t idx) {
                Model<FqCtx> m = Model<FqCtx>::zero(ctx);
                m.a1 = UniPoly<FqCtx>::t(ctx);
                FFElem a = F.element(digit(idx)), b = F.element(digit(idx));
                FFElem cc = F.element(digit(idx)), d = F.element(digit(idx));
                std::vector<FFElem> a3(7, F.zero());
                a3[0] = b; a3[6] = a;
                m.a3 = UniPoly<FqCtx>(ctx, a3);
                std::vector<FFElem> a4(9, F.zero());
                a4[0] = d; a4[8] = cc;
                m.a4 = UniPoly<FqCtx>(ctx, a4);
                std::vector<FFElem> a2;
                for (int i = 0; i < 5; ++i) a2.push_back(F.element(digit(idx)));
                m.a2 = UniPoly<FqCtx>(ctx, a2);
                std::vector<FFElem> a6;
                for (int i = 0; i < 13; ++i) a6.push_back(F.element(digit(idx)));
                m.a6 = UniPoly<FqCtx>(ctx, a6);
                return m;
            };
            break;
        }
        case ScanFamily::case_ii_star: {
            c.total = pow_u64(q, 9);
            c.decode = [ctx, digit, &F](uint64_t idx) {
                std::vector<FFElem> ta2, ta6;
                for (int i = 0; i < 4; ++i) ta2.push_back(F.element(digit(idx)));
                for (int i = 0; i < 5; ++i) ta6.push_back(F.element(digit(idx)));
                return verify_detail::case_ii_star_model(F, ta2, ta6);
            };
            break;
        }
        case ScanFamily::case_iii_star: {
            c.total = pow_u64(q, 5);
            c.decode = [ctx, digit, &F](uint64_t idx) {
                FFElem e = F.element(digit(idx)), cc = F.element(digit(idx));
                std::vector<FFElem> ta6;
                for (int i = 0; i < 3; ++i) ta6.push_back(F.element(digit(idx)));
                return verify_detail::case_iii_star_model(F, e, cc, ta6);
            };
            break;
        }
        case ScanFamily::case_i: {
            // The stratum that can reach I_n* with n >= 14 at all: v_0(Delta) =
            // 4 v_0(a3) >= 20, i.e. a3 = alpha t^5 + beta t^6 (not both zero).
            // Over GF(2) the parameter space is quotiented by the
            // shape-preserving coordinate changes (see scan notes); other
            // fields enumerate or sample the full stratum.
            uint64_t shapes = q * q - 1;
            c.total = shapes * pow_u64(q, 5 + 9 + 13);
            c.decode = [ctx, digit, &F, q](uint64_t idx) {
                uint64_t shape = idx % (q * q - 1);
                idx /= (q * q - 1);
                FFElem alpha = F.element((shape + 1) / q), beta = F.element((shape + 1) % q);
                Model<FqCtx> m = Model<FqCtx>::zero(ctx);
                std::vector<FFElem> a3(7, F.zero());
                a3[5] = alpha; a3[6] = beta;
                m.a3 = UniPoly<FqCtx>(ctx, a3);
                std::vector<FFElem> v;
                for (int i = 0; i < 5; ++i) v.push_back(F.element(digit(idx)));
                m.a2 = UniPoly<FqCtx>(ctx, v);
                v.clear();
                for (int i = 0; i < 9; ++i) v.push_back(F.element(digit(idx)));
                m.a4 = UniPoly<FqCtx>(ctx, v);
                v.clear();
                for (int i = 0; i < 13; ++i) v.push_back(F.element(digit(idx)));
                m.a6 = UniPoly<FqCtx>(ctx, v);
                return m;
            };
            break;
        }
    }
    return c;
}

// GF(2)-quotiented case (i) stratum: a2 is absorbed by an x-translation, a4
// runs over a complement of {s a3 + s^4 : deg s <= 2}, a6 over a complement
// of {w a3 + w^2 : deg w <= 6}. Shape-preserving changes do not alter fibre
// types, so the quotient scan is exhaustive for the classification maxima.
struct CaseIQuotient {
    std::vector<uint32_t> a4_reps, a6_reps;  // bit masks
    UniPoly<FqCtx> a3;
};

inline std::vector<uint32_t> complement_reps(const std::vector<uint32_t>& image_basis,
                                             int dim) {
    // row-reduce the image, collect pivot positions, enumerate vectors
    // supported on the non-pivot positions
    std::vector<uint32_t> basis;
    for (uint32_t r : image_basis) {
        for (uint32_t b : basis) {
            uint32_t lead = 1u << (31 - __builtin_clz(b));
            if (r & lead) r ^= b;
        }
        if (r) basis.push_back(r);
    }
    std::set<int> pivot_bits;
    for (uint32_t b : basis) pivot_bits.insert(31 - __builtin_clz(b));
    std::vector<int> free_bits;
    for (int i = 0; i < dim; ++i)
        if (!pivot_bits.count(i)) free_bits.push_back(i);
    std::vector<uint32_t> reps;
    for (uint64_t mask = 0; mask < (1ull << free_bits.size()); ++mask) {
        uint32_t v = 0;
        for (size_t i = 0; i < free_bits.size(); ++i)
            if ((mask >> i) & 1) v |= 1u << free_bits[size_t(i)];
        reps.push_back(v);
    }
    return reps;
}

inline std::vector<CaseIQuotient> case_i_quotients_gf2() {
    const FiniteField& F2 = FiniteField::get(2, 1);
    FqCtx ctx{&F2};
    std::vector<CaseIQuotient> out;
    for (uint32_t shape = 1; shape < 4; ++shape) {
        // shape bits: alpha = bit0 (t^5), beta = bit1 (t^6)
        std::vector<FFElem> a3v(7, F2.zero());
        if (shape & 1) a3v[5] = F2.one();
        if (shape & 2) a3v[6] = F2.one();
        UniPoly<FqCtx> a3(ctx, a3v);
        // image of s -> s a3 + s^4 inside degree <= 8 (9 bits)
        std::vector<uint32_t> im4;
        for (int i = 0; i < 3; ++i) {
            UniPoly<FqCtx> s = UniPoly<FqCtx>::t_power(ctx, i, F2.one());
            UniPoly<FqCtx> img = s * a3 + (s * s) * (s * s);
            uint32_t mask = 0;
            if (img.degree() > 8) throw std::logic_error("case (i) quotient: a4 image too big");
            for (int j = 0; j <= img.degree(); ++j)
                if (!img.coeff(j).is_zero()) mask |= 1u << j;
            im4.push_back(mask);
        }
        // image of w -> w a3 + w^2 inside degree <= 12 (13 bits)
        std::vector<uint32_t> im6;
        for (int i = 0; i < 7; ++i) {
            UniPoly<FqCtx> w = UniPoly<FqCtx>::t_power(ctx, i, F2.one());
            UniPoly<FqCtx> img = w * a3 + w * w;
            uint32_t mask = 0;
            if (img.degree() > 12) throw std::logic_error("case (i) quotient: a6 image too big");
            for (int j = 0; j <= img.degree(); ++j)
                if (!img.coeff(j).is_zero()) mask |= 1u << j;
            im6.push_back(mask);
        }
        CaseIQuotient Q;
        Q.a3 = a3;
        Q.a4_reps = complement_reps(im4, 9);
        Q.a6_reps = complement_reps(im6, 13);
        out.push_back(std::move(Q));
    }
    return out;
}

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

struct WorkerState {
    uint64_t tested = 0, skipped = 0;
    int max_mult = -1, max_star = -1;
    std::optional<ScanWitness> mult_wit, star_wit;
};

inline void consider(WorkerState& ws, uint64_t index, const Model<FqCtx>& m,
                     uint32_t p, uint32_t k) {
    auto delta = m.discriminant();
    if (delta.is_zero()) {
        ++ws.skipped;
        return;
    }
    ++ws.tested;
    auto record = [&](const FibreReport& r) {
        if (r.type.is_multiplicative() && r.type.n > ws.max_mult) {
            ws.max_mult = r.type.n;
            ScanWitness w;
            w.index = index;
            w.type = r.type;
            w.place = r.place.str();
            w.model_text = serialize_model(m, p, k);
            ws.mult_wit = w;
        }
        if (r.type.kind == KodairaType::Kind::Istar && r.type.n > ws.max_star) {
            ws.max_star = r.type.n;
            ScanWitness w;
            w.index = index;
            w.type = r.type;
            w.place = r.place.str();
            w.model_text = serialize_model(m, p, k);
            ws.star_wit = w;
        }
    };
    const FiniteField& F = *m.ctx.F;
    for (uint64_t i = 0; i < F.order(); ++i) {
        FFElem x = F.element(i);
        if (!delta.eval(x).is_zero()) continue;
        record(tate_classify(m, Place::finite(x)));
    }
    if (delta.degree() < 24) record(tate_classify(m, Place::infinity()));
}

}  // namespace scan_detail

/// Enumerates (or samples) a family over GF(p^k), classifies the fibres at
/// the rational places and at infinity, and records the maxima and first
/// witnesses. Any fibre with v(Delta) >= 19 lives at a rational place by the
/// conjugate-degree bound, so rational places suffice for the maxima claims.
inline ScanReport scan_family(ScanFamily fam, const FiniteField& F,
                              const ScanOptions& opts = {}) {
    using namespace scan_detail;
    ScanReport rep;
    rep.family = fam;
    rep.p = F.p();
    rep.k = F.k();

    // tuple space
    std::vector<std::pair<uint64_t, Model<FqCtx>>> fixed;  // quotiented case (i)
    FamilyCodec codec;
    if (fam == ScanFamily::case_i && F.p() == 2 && F.k() == 1) {
        uint64_t idx = 0;
        for (auto& Q : case_i_quotients_gf2()) {
            FqCtx ctx = Q.a3.ctx();
            const FiniteField& F2 = *ctx.F;
            for (uint32_t ra4 : Q.a4_reps)
                for (uint32_t ra6 : Q.a6_reps) {
                    Model<FqCtx> m = Model<FqCtx>::zero(ctx);
                    m.a3 = Q.a3;
                    std::vector<FFElem> v4(9, F2.zero()), v6(13, F2.zero());
                    for (int j = 0; j < 9; ++j)
                        if ((ra4 >> j) & 1) v4[size_t(j)] = F2.one();
                    for (int j = 0; j < 13; ++j)
                        if ((ra6 >> j) & 1) v6[size_t(j)] = F2.one();
                    m.a4 = UniPoly<FqCtx>(ctx, v4);
                    m.a6 = UniPoly<FqCtx>(ctx, v6);
                    fixed.emplace_back(idx++, m);
                }
        }
        rep.total = fixed.size();
        rep.exhaustive = true;
        rep.notes =
            "case (i): Delta = a3^4, so there is no multiplicative fibre at all and\n"
            "only the stratum v_0(a3) >= 5 can reach v(Delta) >= 20; the scan runs over\n"
            "that stratum modulo the shape-preserving coordinate changes (a2 absorbed,\n"
            "a4 and a6 over complements of the translation images).\n";
    } else {
        codec = codec_for(fam, F);
        rep.total = codec.total;
        rep.exhaustive = opts.exhaustive || codec.total <= opts.exhaustive_limit;
        if (fam == ScanFamily::case_i)
            rep.notes = "case (i): full stratum v_0(a3) >= 5 (no quotient over this field)\n";
    }

    uint64_t n_items = fixed.empty() ? (rep.exhaustive ? rep.total : opts.sample)
                                     : fixed.size();
    uint32_t jobs = std::max<uint32_t>(1, opts.jobs);
    std::vector<WorkerState> states(jobs);
    std::vector<std::thread> threads;
    auto run = [&](uint32_t w) {
        WorkerState& ws = states[w];
        for (uint64_t i = w; i < n_items; i += jobs) {
            uint64_t index;
            Model<FqCtx>* fixed_model = nullptr;
            if (!fixed.empty()) {
                index = fixed[i].first;
                fixed_model = &fixed[i].second;
            } else if (rep.exhaustive) {
                index = i;
            } else {
                index = splitmix64(opts.seed + i) % rep.total;
            }
            if (fixed_model) consider(ws, index, *fixed_model, rep.p, rep.k);
            else consider(ws, index, codec.decode(index), rep.p, rep.k);
        }
    };
    if (jobs == 1) run(0);
    else {
        for (uint32_t w = 0; w < jobs; ++w) threads.emplace_back(run, w);
        for (auto& th : threads) th.join();
    }
    for (auto& ws : states) {
        rep.tested += ws.tested;
        rep.skipped_degenerate += ws.skipped;
        auto merge = [](int& mx, std::optional<ScanWitness>& wit, int m2,
                        const std::optional<ScanWitness>& w2) {
            if (m2 > mx || (m2 == mx && w2 && (!wit || w2->index < wit->index))) {
                mx = m2;
                if (w2) wit = w2;
            }
        };
        merge(rep.max_multiplicative, rep.mult_witness, ws.max_mult, ws.mult_wit);
        merge(rep.max_additive_star, rep.star_witness, ws.max_star, ws.star_wit);
    }
    // witnesses: note K3 admissibility
    for (auto* w : {&rep.mult_witness, &rep.star_witness}) {
        if (!*w) continue;
        std::istringstream is((*w)->model_text);
        auto mf = parse_model(is);
        (*w)->k3 = is_k3(*mf.fq).ok;
    }
    rep.notes += "fibres with v(Delta) >= 19 cannot sit at a place of degree >= 2\n"
                 "(two conjugates would exceed the total discriminant degree 24),\n"
                 "so the rational places searched here decide the maxima claims.\n";
    return rep;
}

// ---------------------------------------------------------------------------
// the reduction corollary

/// The characteristic-0 fibration with singular fibres [1,1,1,1,1,19] cannot
/// have good reduction above 2: its mod-2 reduction must be singular, fail
/// K3 admissibility, or lose every fibre with >= 19 components. The model
/// equation is external input; without the file the check is skipped.
inline VerifyResult verify_corollary_bad_reduction(const std::string& model_path) {
    using verify_detail::Section;
    VerifyResult out;
    out.name = "corollary_bad_reduction";
    std::ifstream probe(model_path);
    if (!probe) {
        out.verdict = Verdict::skipped;
        out.transcript = "model file not supplied (" + model_path +
                         "); the equation is external input and is never fabricated\n";
        return out;
    }
    Section sec;
    auto mf = parse_model_file(model_path);
    if (!mf.rat) {
        out.verdict = Verdict::fail;
        out.transcript = "expected a characteristic-0 model file\n";
        return out;
    }
    sec.line("== reduction mod 2 of the [1,1,1,1,1,19] fibration ==");
    const FiniteField& F2 = FiniteField::get(2, 1);
    Model<FqCtx> m2 = reduce_mod_p(*mf.rat, F2);
    auto delta = m2.discriminant();
    if (delta.is_zero()) {
        sec.claim("reduction is singular in codimension 1 (Delta == 0 mod 2)", true);
    } else {
        auto k3 = is_k3(m2);
        sec.line("  mod-2 model: " + std::string(k3.ok ? "K3" : k3.reason));
        auto rep = classify_all(m2, 8);
        sec.os << rep.summary(mf.param);
        bool big = false;
        for (auto& f : rep.fibres)
            if (f.components >= 19) big = true;
        sec.claim("no fibre with >= 19 components survives reduction mod 2 "
                  "(an I19 could only degenerate to I_n*, n > 14, which is excluded)",
                  !big);
    }
    out.verdict = sec.ok ? Verdict::pass : Verdict::fail;
    out.transcript = sec.os.str();
    return out;
}

}  // namespace ellk3
