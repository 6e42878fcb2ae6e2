// Tate's algorithm over the local ring of a place of the projective line,
// valid in every residue characteristic (the long Weierstrass form is kept
// throughout; the algorithm never divides by 2 or 3). Provides the Kodaira
// type, the discriminant valuation, component counts, the wild-ramification
// defect, and global classification summaries.

#pragma once

#include <numeric>
#include <set>

#include "ellk3/weierstrass.hpp"

namespace ellk3 {

struct KodairaType {
    enum class Kind { In, Istar, II, III, IV, IVstar, IIIstar, IIstar };
    Kind kind = Kind::In;
    int n = 0;  // the index for In / In*; 0 otherwise

    static KodairaType I(int n) { return {Kind::In, n}; }
    static KodairaType Istar(int n) { return {Kind::Istar, n}; }
    static KodairaType II() { return {Kind::II, 0}; }
    static KodairaType III() { return {Kind::III, 0}; }
    static KodairaType IV() { return {Kind::IV, 0}; }
    static KodairaType IVstar() { return {Kind::IVstar, 0}; }
    static KodairaType IIIstar() { return {Kind::IIIstar, 0}; }
    static KodairaType IIstar() { return {Kind::IIstar, 0}; }

    bool operator==(const KodairaType& o) const { return kind == o.kind && n == o.n; }
    bool operator!=(const KodairaType& o) const { return !(*this == o); }
    bool operator<(const KodairaType& o) const {
        if (kind != o.kind) return int(kind) < int(o.kind);
        return n < o.n;
    }

    bool is_good() const { return kind == Kind::In && n == 0; }
    bool is_multiplicative() const { return kind == Kind::In && n > 0; }
    bool is_additive() const { return !is_good() && !is_multiplicative(); }

    /// Number of irreducible components of the fibre.
    int components() const {
        switch (kind) {
            case Kind::In: return n <= 1 ? 1 : n;
            case Kind::Istar: return n + 5;
            case Kind::II: return 1;
            case Kind::III: return 2;
            case Kind::IV: return 3;
            case Kind::IVstar: return 7;
            case Kind::IIIstar: return 8;
            case Kind::IIstar: return 9;
        }
        return 0;
    }

    /// Root lattice of the fibre: A, D or E with the given rank; nullopt for
    /// irreducible fibres (I0, I1, II).
    struct RootLattice { char series; int rank; };
    std::optional<RootLattice> root_lattice() const {
        switch (kind) {
            case Kind::In:
                if (n <= 1) return std::nullopt;
                return RootLattice{'A', n - 1};
            case Kind::Istar: return RootLattice{'D', n + 4};
            case Kind::II: return std::nullopt;
            case Kind::III: return RootLattice{'A', 1};
            case Kind::IV: return RootLattice{'A', 2};
            case Kind::IVstar: return RootLattice{'E', 6};
            case Kind::IIIstar: return RootLattice{'E', 7};
            case Kind::IIstar: return RootLattice{'E', 8};
        }
        return std::nullopt;
    }

    std::string str() const {
        switch (kind) {
            case Kind::In: return "I" + std::to_string(n);
            case Kind::Istar: return "I" + std::to_string(n) + "*";
            case Kind::II: return "II";
            case Kind::III: return "III";
            case Kind::IV: return "IV";
            case Kind::IVstar: return "IV*";
            case Kind::IIIstar: return "III*";
            case Kind::IIstar: return "II*";
        }
        return "?";
    }
    static KodairaType parse(const std::string& s);
};

inline KodairaType KodairaType::parse(const std::string& s) {
    if (s == "II") return II();
    if (s == "III") return III();
    if (s == "IV") return IV();
    if (s == "II*") return IIstar();
    if (s == "III*") return IIIstar();
    if (s == "IV*") return IVstar();
    if (s.size() >= 2 && s[0] == 'I') {
        bool star = s.back() == '*';
        std::string num = s.substr(1, s.size() - 1 - (star ? 1 : 0));
        int n = std::stoi(num);
        return star ? Istar(n) : I(n);
    }
    throw std::invalid_argument("unknown Kodaira type: " + s);
}

/// Per-place classification result.
struct FibreReport {
    Place place;
    KodairaType type;
    int v_delta = 0;            // of the place-minimal model
    int components = 1;
    int wild_defect = 0;        // v(Delta) - (m-1) - 2 at additive places
    int minimality_reductions = 0;

    std::string line(const std::string& var = "t") const {
        std::ostringstream os;
        os << place.str(var) << " | " << type.str() << " | " << v_delta << " | "
           << components << " | " << wild_defect;
        if (minimality_reductions)
            os << " | reductions=" << minimality_reductions;
        return os.str();
    }
};

namespace tate_detail {

using M = Model<FqCtx>;
using P = UniPoly<FqCtx>;

inline int v0(const P& f) {
    if (f.is_zero()) return kValInfinity;
    int i = 0;
    while (f.ctx().is_zero(f.coeff(i))) ++i;
    return i;
}

inline FFElem half_neg(const FqCtx& ctx, const FFElem& a) {
    // -a/2 in odd characteristic
    return ctx.neg(ctx.mul(a, ctx.inv(ctx.from_int(2))));
}

/// Singular point of the reduced curve at t = 0 (which exists and is rational
/// because the residue field is perfect and v(Delta) > 0).
inline std::pair<FFElem, FFElem> singular_point(const M& m) {
    const FqCtx& ctx = m.ctx;
    const FiniteField& F = *ctx.F;
    FFElem a1 = m.a1.coeff(0), a2 = m.a2.coeff(0), a3 = m.a3.coeff(0),
           a4 = m.a4.coeff(0), a6 = m.a6.coeff(0);
    FFElem x0, y0;
    if (F.p() == 2) {
        if (!a1.is_zero()) {
            x0 = a3 * a1.inv();
            y0 = (x0 * x0 + a4) * a1.inv();
        } else {
            if (!a3.is_zero())
                throw std::logic_error("reduction is smooth at every finite point");
            x0 = a4.sqrt_char2();
            y0 = (x0 * x0 * x0 + a2 * x0 * x0 + a4 * x0 + a6).sqrt_char2();
        }
    } else {
        FFElem b2 = a1 * a1 + F.from_int(4) * a2;
        FFElem b4 = F.from_int(2) * a4 + a1 * a3;
        FFElem b6 = a3 * a3 + F.from_int(4) * a6;
        FFElem q4 = F.from_int(4).inv(), q2 = F.from_int(2).inv();
        FqCtx rc = ctx;
        P g(rc, {b6 * q4, b4 * q2, b2 * q4, F.one()});
        P gp = g.derivative();
        if (gp.is_zero()) {
            // characteristic 3 with b2, b4 both zero: g = x^3 + b6/4
            x0 = (-(b6 * q4)).pth_root();
        } else {
            P h = gcd(g, gp);
            if (h.degree() == 0)
                throw std::logic_error("reduction is smooth at every finite point");
            if (h.degree() == 1) {
                x0 = -h.coeff(0);
            } else {
                // h = (x - x0)^2, characteristic >= 5
                x0 = half_neg(rc, h.coeff(1));
            }
        }
        y0 = half_neg(ctx, a1 * x0 + a3);
    }
    // sanity: the point is singular on the reduction
    FFElem f = y0 * y0 + a1 * x0 * y0 + a3 * y0 - x0 * x0 * x0 - a2 * x0 * x0 -
               a4 * x0 - a6;
    FFElem fx = a1 * y0 - (F.from_int(3) * x0 * x0 + F.from_int(2) * a2 * x0 + a4);
    FFElem fy = F.from_int(2) * y0 + a1 * x0 + a3;
    if (!f.is_zero() || !fx.is_zero() || !fy.is_zero())
        throw std::logic_error("singular point computation failed");
    return {x0, y0};
}

/// Repeated-root structure of a monic cubic over the residue field:
/// (root, multiplicity) of the unique repeated root, or nullopt if separable.
inline std::optional<std::pair<FFElem, int>> repeated_root(const P& cubic) {
    const FqCtx& ctx = cubic.ctx();
    P d = cubic.derivative();
    FFElem alpha;
    if (d.is_zero()) {
        // characteristic 3, cubic = T^3 + c = (T - alpha)^3
        alpha = (-cubic.coeff(0)).pth_root();
        return std::make_pair(alpha, 3);
    }
    P h = gcd(cubic, d);
    if (h.degree() == 0) return std::nullopt;
    if (h.degree() == 1) {
        alpha = -h.coeff(0);
    } else {
        // h = (T - alpha)^2
        if (ctx.characteristic() == 2) {
            if (!h.coeff(1).is_zero())
                throw std::logic_error("cubic with two distinct double roots");
            alpha = h.coeff(0).sqrt_char2();
        } else {
            alpha = half_neg(ctx, h.coeff(1));
        }
    }
    int mult = valuation(cubic, Place::finite(alpha));
    if (mult < 2) throw std::logic_error("repeated-root extraction failed");
    return std::make_pair(alpha, mult);
}

struct LocalResult {
    KodairaType type;
    int v_delta;
    int reductions;
    M minimal_model;  // after place-minimalization and the algorithm's moves
};

/// Tate's algorithm at the place t = 0. Restarts with the uniformizer
/// rescaling a_i := a_i / t^i whenever the terminal test demands it.
inline LocalResult tate_at_zero(M m) {
    const FqCtx ctx = m.ctx;
    const FiniteField& F = *ctx.F;
    const uint32_t p = F.p();
    auto cst = [&](const FFElem& e) { return P::constant(ctx, e); };
    auto tp = [&](int e, const FFElem& c) { return P::t_power(ctx, e, c); };

    int reductions = 0;
    while (true) {
        P delta = m.discriminant();
        if (delta.is_zero()) throw std::domain_error("discriminant vanishes identically");
        int vD = v0(delta);
        if (vD == 0) return {KodairaType::I(0), 0, reductions, m};

        // Step 2: move the singular point of the reduction to (0, 0).
        {
            auto [x0, y0] = singular_point(m);
            CoordChange<FqCtx> ch{ctx.one(), cst(x0), P(ctx), cst(y0)};
            m = apply_change(m, ch);
        }
        if (v0(m.b2()) == 0) return {KodairaType::I(vD), vD, reductions, m};
        if (v0(m.a6) < 2) return {KodairaType::II(), vD, reductions, m};
        if (v0(m.b8()) < 3) return {KodairaType::III(), vD, reductions, m};
        if (v0(m.b6()) < 3) return {KodairaType::IV(), vD, reductions, m};

        // Normalize to v(a1) >= 1, v(a2) >= 1, v(a3) >= 2, v(a4) >= 2, v(a6) >= 3.
        if (p == 2) {
            FFElem s0 = m.a2.coeff(0).sqrt_char2();
            m = apply_change(m, CoordChange<FqCtx>::shear_y(ctx, cst(s0)));
            if (v0(m.a6) == 2) {
                FFElem g = m.a6.coeff(2).sqrt_char2();
                m = apply_change(m, CoordChange<FqCtx>::translation_y(ctx, tp(1, g)));
            }
        } else {
            m = apply_change(m, CoordChange<FqCtx>::shear_y(
                                    ctx, m.a1.scale(ctx.neg(ctx.inv(ctx.from_int(2))))));
            m = apply_change(m, CoordChange<FqCtx>::translation_y(
                                    ctx, m.a3.scale(ctx.neg(ctx.inv(ctx.from_int(2))))));
        }
        if (v0(m.a1) < 1 || v0(m.a2) < 1 || v0(m.a3) < 2 || v0(m.a4) < 2 || v0(m.a6) < 3)
            throw std::logic_error("normalization before the cubic test failed");

        // Step 6: the residual cubic P(T) = T^3 + a2[1] T^2 + a4[2] T + a6[3].
        P cubic(ctx, {m.a6.coeff(3), m.a4.coeff(2), m.a2.coeff(1), ctx.one()});
        auto rep = repeated_root(cubic);
        if (!rep) return {KodairaType::Istar(0), vD, reductions, m};

        if (rep->second == 2) {
            // Step 7: type I_n*, n >= 1. Move the double root of the cubic to 0.
            if (!rep->first.is_zero())
                m = apply_change(m, CoordChange<FqCtx>::translation_x(ctx, tp(1, rep->first)));
            if (v0(m.a2) != 1 || v0(m.a4) < 3 || v0(m.a6) < 4)
                throw std::logic_error("I_n* chain entered with wrong valuations");
            int n = 1;
            while (true) {
                if (n > vD) throw std::logic_error("I_n* chain failed to terminate");
                if (n % 2 == 1) {
                    int k = (n + 1) / 2;
                    FFElem b = m.a3.coeff(k + 1), cc = m.a6.coeff(2 * k + 2);
                    bool distinct;
                    FFElem y0;
                    if (p == 2) {
                        distinct = !b.is_zero();
                        if (!distinct) y0 = cc.sqrt_char2();
                    } else {
                        FFElem disc = b * b + F.from_int(4) * cc;
                        distinct = !disc.is_zero();
                        if (!distinct) y0 = half_neg(ctx, b);
                    }
                    if (distinct) return {KodairaType::Istar(n), vD, reductions, m};
                    if (!y0.is_zero())
                        m = apply_change(m, CoordChange<FqCtx>::translation_y(ctx, tp(k + 1, y0)));
                } else {
                    int k = n / 2;
                    FFElem A = m.a2.coeff(1), b = m.a4.coeff(k + 2), cc = m.a6.coeff(2 * k + 3);
                    bool distinct;
                    FFElem x0;
                    if (p == 2) {
                        distinct = !b.is_zero();
                        if (!distinct) x0 = (cc * A.inv()).sqrt_char2();
                    } else {
                        FFElem disc = b * b - F.from_int(4) * A * cc;
                        distinct = !disc.is_zero();
                        if (!distinct) x0 = ctx.neg(b * (F.from_int(2) * A).inv());
                    }
                    if (distinct) return {KodairaType::Istar(n), vD, reductions, m};
                    if (!x0.is_zero())
                        m = apply_change(m, CoordChange<FqCtx>::translation_x(ctx, tp(k + 1, x0)));
                }
                ++n;
            }
        }

        // Triple root: move it to 0, then the types IV*, III*, II* in turn.
        if (!rep->first.is_zero())
            m = apply_change(m, CoordChange<FqCtx>::translation_x(ctx, tp(1, rep->first)));
        {
            FFElem b = m.a3.coeff(2), cc = m.a6.coeff(4);
            bool distinct;
            FFElem y0;
            if (p == 2) {
                distinct = !b.is_zero();
                if (!distinct) y0 = cc.sqrt_char2();
            } else {
                FFElem disc = b * b + F.from_int(4) * cc;
                distinct = !disc.is_zero();
                if (!distinct) y0 = half_neg(ctx, b);
            }
            if (distinct) return {KodairaType::IVstar(), vD, reductions, m};
            if (!y0.is_zero())
                m = apply_change(m, CoordChange<FqCtx>::translation_y(ctx, tp(2, y0)));
        }
        if (v0(m.a4) < 4) return {KodairaType::IIIstar(), vD, reductions, m};
        if (v0(m.a6) < 6) return {KodairaType::IIstar(), vD, reductions, m};

        // Step 11: not minimal here; rescale by the uniformizer and restart.
        m = Model<FqCtx>{ctx, m.a1.shift_down(1), m.a2.shift_down(2), m.a3.shift_down(3),
                         m.a4.shift_down(4), m.a6.shift_down(6)};
        ++reductions;
    }
}

}  // namespace tate_detail

/// Classifies the fibre of m above the given place. The place may lie in an
/// extension of the coefficient field; the model is embedded as needed.
/// Good places simply report I0.
inline FibreReport tate_classify(const Model<FqCtx>& m, const Place& place) {
    Model<FqCtx> local = m;
    if (place.at_infinity) {
        local = chart_at_infinity(m);
    } else {
        const FiniteField* Fp = place.t0.field;
        if (Fp != m.ctx.F) local = embed_model(m, *Fp);
        if (!place.t0.is_zero()) local = local.translate_param(place.t0);
    }
    auto res = tate_detail::tate_at_zero(local);
    FibreReport r;
    r.place = place;
    r.type = res.type;
    r.v_delta = res.v_delta;
    r.components = res.type.components();
    r.minimality_reductions = res.reductions;
    if (res.type.is_additive()) {
        r.wild_defect = res.v_delta - (r.components - 1) - 2;
        if (r.wild_defect < 0) throw std::logic_error("negative wild ramification defect");
        uint32_t p = m.ctx.characteristic();
        if (r.wild_defect > 0 && p != 2 && p != 3)
            throw std::logic_error("wild ramification outside characteristic 2/3");
    }
    return r;
}

enum class ReductionKind { good, multiplicative, additive };

inline const char* reduction_kind_str(ReductionKind k) {
    switch (k) {
        case ReductionKind::good: return "good";
        case ReductionKind::multiplicative: return "multiplicative";
        case ReductionKind::additive: return "additive";
    }
    return "?";
}

/// Coarse reduction type at a place, read off the place-minimal model:
/// good iff v(Delta) = 0, multiplicative iff v(Delta) > 0 and v(c4) = 0.
inline ReductionKind reduction_kind(const Model<FqCtx>& m, const Place& place) {
    Model<FqCtx> local = m;
    if (place.at_infinity) {
        local = chart_at_infinity(m);
    } else {
        const FiniteField* Fp = place.t0.field;
        if (Fp != m.ctx.F) local = embed_model(m, *Fp);
        if (!place.t0.is_zero()) local = local.translate_param(place.t0);
    }
    auto res = tate_detail::tate_at_zero(local);
    const auto& mm = res.minimal_model;
    int vD = tate_detail::v0(mm.discriminant());
    ReductionKind kind;
    if (vD == 0) kind = ReductionKind::good;
    else if (tate_detail::v0(mm.c4()) == 0) kind = ReductionKind::multiplicative;
    else kind = ReductionKind::additive;
    // agreement with the fine classification
    ReductionKind fine = res.type.is_good() ? ReductionKind::good
                        : res.type.is_multiplicative() ? ReductionKind::multiplicative
                                                       : ReductionKind::additive;
    if (kind != fine) throw std::logic_error("reduction kind disagrees with Tate type");
    return kind;
}

/// Global classification of every singular fibre found over GF(p^L) with
/// L = lcm(model extension, search_ext), plus the place at infinity.
struct GlobalReport {
    std::vector<FibreReport> fibres;    // singular places only
    int sum_v_delta = 0;
    int deg_delta = 0;
    bool complete = true;               // false if Delta has unsplit factors
    int unsplit_degree = 0;
    bool euler_ok = false;              // sum of v(Delta) over all places == 24
    std::optional<int> max_multiplicative;  // largest n with an I_n fibre
    std::optional<int> max_additive_star;   // largest n with an I_n* fibre
    std::vector<std::string> config;    // multiset of type names

    std::string summary(const std::string& var = "t") const {
        std::ostringstream os;
        for (const auto& f : fibres) os << f.line(var) << "\n";
        os << "sum v(Delta) = " << sum_v_delta << (complete ? "" : " (incomplete)") << "\n";
        return os.str();
    }
};

inline GlobalReport classify_all(const Model<FqCtx>& m, uint32_t search_ext = 8) {
    if (!m.within_k3_bounds())
        throw std::invalid_argument("classification requires the K3 degree bounds");
    const FiniteField& F0 = *m.ctx.F;
    uint32_t k0 = F0.k();
    uint32_t L = std::lcm(k0, std::max<uint32_t>(1, search_ext));
    uint64_t order = 1;
    for (uint32_t i = 0; i < L; ++i) {
        order *= F0.p();
        if (order > FiniteField::kMaxOrder)
            throw std::invalid_argument("search extension too large to enumerate");
    }
    const FiniteField& FL = FiniteField::get(F0.p(), L);
    Model<FqCtx> mL = embed_model(m, FL);
    auto delta = mL.discriminant();
    if (delta.is_zero()) throw std::domain_error("discriminant vanishes identically");

    GlobalReport rep;
    rep.deg_delta = delta.degree();
    int found = 0;
    for (auto& [root, mult] : roots_in_field(delta)) {
        found += mult;
        rep.fibres.push_back(tate_classify(mL, Place::finite(root)));
    }
    rep.unsplit_degree = rep.deg_delta - found;
    rep.complete = rep.unsplit_degree == 0;
    if (delta.degree() < 24) rep.fibres.push_back(tate_classify(mL, Place::infinity()));
    for (auto& f : rep.fibres) rep.sum_v_delta += f.v_delta;
    // drop good places that slipped in (infinity with v = 0)
    std::erase_if(rep.fibres, [](const FibreReport& f) { return f.type.is_good(); });
    for (const auto& f : rep.fibres) {
        rep.config.push_back(f.type.str());
        if (f.type.is_multiplicative()) {
            if (!rep.max_multiplicative || f.type.n > *rep.max_multiplicative)
                rep.max_multiplicative = f.type.n;
        }
        if (f.type.kind == KodairaType::Kind::Istar) {
            if (!rep.max_additive_star || f.type.n > *rep.max_additive_star)
                rep.max_additive_star = f.type.n;
        }
    }
    std::sort(rep.config.begin(), rep.config.end());
    rep.euler_ok = rep.complete && rep.sum_v_delta == 24;
    return rep;
}

/// K3 admissibility: degree bounds, some deg a_i > i, Delta not identically
/// zero, and global minimality (checked at every place that could possibly be
/// non-minimal: v(Delta) >= 12 forces the place degree to be at most 2).
struct K3Verdict {
    bool ok = false;
    std::string reason;
};

inline K3Verdict is_k3(const Model<FqCtx>& m) {
    if (m.discriminant().is_zero())
        return {false, "Delta vanishes identically (singular fibration)"};
    if (!m.within_k3_bounds()) return {false, "degree bounds deg a_i <= 2i violated"};
    if (!m.some_degree_exceeds_i())
        return {false, "all deg a_i <= i (rational elliptic surface)"};
    const FiniteField& F0 = *m.ctx.F;
    uint32_t L = 2 * F0.k();
    uint64_t order = 1;
    bool can_enum = true;
    for (uint32_t i = 0; i < L; ++i) {
        order *= F0.p();
        if (order > FiniteField::kMaxOrder) { can_enum = false; break; }
    }
    if (!can_enum) return {false, "coefficient field too large for the minimality scan"};
    const FiniteField& FL = FiniteField::get(F0.p(), L);
    Model<FqCtx> mL = embed_model(m, FL);
    auto delta = mL.discriminant();
    for (auto& [root, mult] : roots_in_field(delta)) {
        if (mult < 12) continue;
        auto rr = tate_classify(mL, Place::finite(root));
        if (rr.minimality_reductions > 0)
            return {false, "model not minimal at " + Place::finite(root).str()};
    }
    if (delta.degree() <= 12) {
        auto rr = tate_classify(mL, Place::infinity());
        if (rr.minimality_reductions > 0)
            return {false, "model not minimal at infinity"};
    }
    // With the bounds in place the valuations over all places sum to 24.
    return {true, "elliptic K3 surface"};
}

}  // namespace ellk3
