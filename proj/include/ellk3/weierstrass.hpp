// Weierstrass models of elliptic surfaces over the projective line: the
// standard invariants, the discriminant in every characteristic, admissible
// coordinate changes, the characteristic-2 normal-form trichotomy for a1,
// and the model file format used by the command line tools.

#pragma once

#include <cctype>
#include <fstream>
#include <optional>
#include <variant>

#include "ellk3/poly.hpp"

namespace ellk3 {

/// (x, y) -> (u^2 x + r, u^3 y + u^2 s x + w) with constant unit u and
/// polynomial translations r, s, w. Discriminants transform by u^-12.
template <class Ctx>
struct CoordChange {
    using Elem = typename Ctx::Elem;
    Elem u;
    UniPoly<Ctx> r, s, w;

    static CoordChange identity(Ctx ctx) {
        return {ctx.one(), UniPoly<Ctx>(ctx), UniPoly<Ctx>(ctx), UniPoly<Ctx>(ctx)};
    }
    static CoordChange translation_x(Ctx ctx, UniPoly<Ctx> r) {
        return {ctx.one(), std::move(r), UniPoly<Ctx>(ctx), UniPoly<Ctx>(ctx)};
    }
    static CoordChange shear_y(Ctx ctx, UniPoly<Ctx> s) {
        return {ctx.one(), UniPoly<Ctx>(ctx), std::move(s), UniPoly<Ctx>(ctx)};
    }
    static CoordChange translation_y(Ctx ctx, UniPoly<Ctx> w) {
        return {ctx.one(), UniPoly<Ctx>(ctx), UniPoly<Ctx>(ctx), std::move(w)};
    }
    static CoordChange scaling(Ctx ctx, const Elem& u) {
        return {u, UniPoly<Ctx>(ctx), UniPoly<Ctx>(ctx), UniPoly<Ctx>(ctx)};
    }

    /// Composite "apply *this first, then c2".
    CoordChange then(const CoordChange& c2) const {
        Ctx ctx = r.ctx();
        Elem u1sq = ctx.mul(u, u);
        Elem u1cb = ctx.mul(u1sq, u);
        return {ctx.mul(u, c2.u),
                r + c2.r.scale(u1sq),
                s + c2.s.scale(u),
                w + c2.w.scale(u1cb) + (s * c2.r).scale(u1sq)};
    }
};

template <class Ctx>
struct Model {
    using P = UniPoly<Ctx>;
    Ctx ctx;
    P a1, a2, a3, a4, a6;

    static Model zero(Ctx c) { return {c, P(c), P(c), P(c), P(c), P(c)}; }

    // quantities b2, b4, b6, b8, c4 of the long Weierstrass form
    P b2() const { return a1 * a1 + a2.scale(ctx.from_int(4)); }
    P b4() const { return a4.scale(ctx.from_int(2)) + a1 * a3; }
    P b6() const { return a3 * a3 + a6.scale(ctx.from_int(4)); }
    P b8() const {
        return a1 * a1 * a6 + (a2 * a6).scale(ctx.from_int(4)) - a1 * a3 * a4 +
               a2 * a3 * a3 - a4 * a4;
    }
    P c4() const { return b2() * b2() - b4().scale(ctx.from_int(24)); }

    /// Universal discriminant -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6.
    P discriminant_universal() const {
        P B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -(B2 * B2 * B8) - (B4 * B4 * B4).scale(ctx.from_int(8)) -
               (B6 * B6).scale(ctx.from_int(27)) + (B2 * B4 * B6).scale(ctx.from_int(9));
    }
    /// In characteristic 2 the discriminant collapses to
    /// a1^4 (a1^2 a6 + a1 a3 a4 + a2 a3^2 + a4^2) + a1^3 a3^3 + a3^4.
    P discriminant_char2() const {
        P inner = a1 * a1 * a6 + a1 * a3 * a4 + a2 * a3 * a3 + a4 * a4;
        P A1sq = a1 * a1;
        return A1sq * A1sq * inner + A1sq * a1 * a3 * a3 * a3 + (a3 * a3) * (a3 * a3);
    }
    P discriminant() const {
        if (ctx.characteristic() == 2) return discriminant_char2();
        return discriminant_universal();
    }

    bool operator==(const Model& o) const {
        return a1 == o.a1 && a2 == o.a2 && a3 == o.a3 && a4 == o.a4 && a6 == o.a6;
    }

    bool within_k3_bounds() const {
        return a1.degree() <= 2 && a2.degree() <= 4 && a3.degree() <= 6 &&
               a4.degree() <= 8 && a6.degree() <= 12;
    }
    bool some_degree_exceeds_i() const {
        return a1.degree() > 1 || a2.degree() > 2 || a3.degree() > 3 ||
               a4.degree() > 4 || a6.degree() > 6;
    }

    Model translate_param(const typename Ctx::Elem& c) const {
        return {ctx, a1.translate(c), a2.translate(c), a3.translate(c),
                a4.translate(c), a6.translate(c)};
    }
    /// t -> lambda * t (an automorphism of the base line).
    Model scale_param(const typename Ctx::Elem& lam) const {
        auto sc = [&](const P& f) {
            std::vector<typename Ctx::Elem> v = f.coeffs();
            typename Ctx::Elem powl = ctx.one();
            for (auto& x : v) { x = ctx.mul(x, powl); powl = ctx.mul(powl, lam); }
            return P(ctx, std::move(v));
        };
        return {ctx, sc(a1), sc(a2), sc(a3), sc(a4), sc(a6)};
    }
};

/// a_i(s) = s^{2i} a_i(1/s): classification at s = 0 is classification at
/// t = infinity; the discriminant transforms by s^24 Delta(1/s).
template <class Ctx>
Model<Ctx> chart_at_infinity(const Model<Ctx>& m) {
    if (!m.within_k3_bounds())
        throw std::invalid_argument("chart swap requires deg a_i <= 2i");
    return {m.ctx, m.a1.reverse(2), m.a2.reverse(4), m.a3.reverse(6),
            m.a4.reverse(8), m.a6.reverse(12)};
}

template <class Ctx>
Model<Ctx> apply_change(const Model<Ctx>& m, const CoordChange<Ctx>& c,
                        bool require_k3_bounds = false) {
    const Ctx& ctx = m.ctx;
    if (ctx.is_zero(c.u)) throw std::invalid_argument("scale u must be nonzero");
    using P = UniPoly<Ctx>;
    const P &r = c.r, &s = c.s, &w = c.w;
    auto cst = [&](int64_t v) { return P::constant(ctx, ctx.from_int(v)); };
    P a1n = m.a1 + s.scale(ctx.from_int(2));
    P a2n = m.a2 - s * m.a1 + r.scale(ctx.from_int(3)) - s * s;
    P a3n = m.a3 + r * m.a1 + w.scale(ctx.from_int(2));
    P a4n = m.a4 - s * m.a3 + (r * m.a2).scale(ctx.from_int(2)) - (w + r * s) * m.a1 +
            (r * r).scale(ctx.from_int(3)) - (s * w).scale(ctx.from_int(2));
    P a6n = m.a6 + r * m.a4 + r * r * m.a2 + r * r * r - w * m.a3 - w * w - r * w * m.a1;
    (void)cst;
    auto ui = ctx.inv(c.u);
    auto upow = [&](int e) {
        typename Ctx::Elem acc = ctx.one();
        for (int i = 0; i < e; ++i) acc = ctx.mul(acc, ui);
        return acc;
    };
    Model<Ctx> out{ctx, a1n.scale(upow(1)), a2n.scale(upow(2)), a3n.scale(upow(3)),
                   a4n.scale(upow(4)), a6n.scale(upow(6))};
    if (require_k3_bounds && !out.within_k3_bounds())
        throw std::invalid_argument("coordinate change violates the K3 degree bounds");
    return out;
}

// ---------------------------------------------------------------------------
// the characteristic-2 trichotomy of the quadratic a1

enum class A1Kind { zero, square, two_zeros };

struct A1Case {
    A1Kind kind;
    // For `square`: the double zero (finite place or infinity).
    // For `two_zeros`: both zeros when they are rational over the coefficient
    // field (a separable quadratic may need the degree-2 extension; then
    // `zeros` is left empty and `split` is false).
    std::vector<Place> zeros;
    bool split = true;
};

/// Classifies a1 (degree <= 2, characteristic 2) as identically zero, a
/// nonzero square, or separable with two distinct zeros on the line. A
/// nonzero constant counts as a square: its double zero sits at infinity.
inline A1Case a1_case(const Model<FqCtx>& m) {
    const FqCtx& ctx = m.ctx;
    if (ctx.characteristic() != 2)
        throw std::invalid_argument("a1 trichotomy is specific to characteristic 2");
    if (m.a1.degree() > 2) throw std::invalid_argument("a1 must have degree <= 2");
    A1Case out{A1Kind::zero, {}, true};
    if (m.a1.is_zero()) return out;
    FFElem c0 = m.a1.coeff(0), c1 = m.a1.coeff(1), c2 = m.a1.coeff(2);
    if (c1.is_zero()) {
        // c2 t^2 + c0 is a square in characteristic 2
        out.kind = A1Kind::square;
        if (c2.is_zero()) out.zeros = {Place::infinity()};
        else out.zeros = {Place::finite((c0 * c2.inv()).sqrt_char2())};
        return out;
    }
    out.kind = A1Kind::two_zeros;
    if (c2.is_zero()) {
        out.zeros = {Place::finite(c0 * c1.inv()), Place::infinity()};  // -c0/c1 = c0/c1
        return out;
    }
    auto rs = roots_in_field(m.a1);
    if (rs.size() == 2) {
        out.zeros = {Place::finite(rs[0].first), Place::finite(rs[1].first)};
    } else {
        out.split = false;  // conjugate pair over the quadratic extension
    }
    return out;
}

namespace detail {

// a3 / a4 reduced modulo a1 via an x- resp. y-translation; used by the
// characteristic-2 normalizations below.
inline UniPoly<FqCtx> quo_by_tpow(const UniPoly<FqCtx>& f, int e) {
    if (f.degree() < e) return UniPoly<FqCtx>(f.ctx());
    auto coeffs = f.coeffs();
    return UniPoly<FqCtx>(f.ctx(),
                          std::vector<FFElem>(coeffs.begin() + e, coeffs.end()));
}

}  // namespace detail

/// Moves a finite place t0 != 0 to infinity while fixing 0, via the chart
/// swap conjugated by the translation s -> s + 1/t0. Requires K3 bounds.
inline Model<FqCtx> move_place_to_infinity(const Model<FqCtx>& m, const FFElem& t0) {
    if (t0.is_zero()) throw std::invalid_argument("cannot move 0 to infinity this way");
    Model<FqCtx> s = chart_at_infinity(m);
    s = s.translate_param(t0.inv());
    return chart_at_infinity(s);
}

/// Brings a case-(ii) model (a1 a nonzero square) to the shape
///   a1 = t^2, deg a3 <= 1, deg a4 <= 1, t | a2,
/// returning the normalized model. Throws unless a1 is a square with its
/// double zero rational (or at infinity).
inline Model<FqCtx> normalize_case_ii(const Model<FqCtx>& m) {
    const FqCtx& ctx = m.ctx;
    A1Case cs = a1_case(m);
    if (cs.kind != A1Kind::square) throw std::invalid_argument("model is not in case (ii)");
    Model<FqCtx> cur = m;
    if (cs.zeros.at(0).at_infinity) {
        cur = chart_at_infinity(cur);
    } else if (!cs.zeros.at(0).t0.is_zero()) {
        cur = cur.translate_param(cs.zeros.at(0).t0);
    }
    // now a1 = gamma t^2; rescale to make it monic
    FFElem gamma = cur.a1.coeff(2);
    if (gamma.is_zero() || !cur.a1.coeff(0).is_zero() || !cur.a1.coeff(1).is_zero())
        throw std::logic_error("case (ii) normalization: unexpected a1 shape");
    cur = apply_change(cur, CoordChange<FqCtx>::scaling(ctx, gamma));
    // x-translation: a3 mod t^2
    auto r = detail::quo_by_tpow(cur.a3, 2);
    cur = apply_change(cur, CoordChange<FqCtx>::translation_x(ctx, r));
    // y-shear by the square root of a2(0): kills the constant term of a2
    FFElem s0 = cur.a2.coeff(0).sqrt_char2();
    cur = apply_change(cur, CoordChange<FqCtx>::shear_y(
                                ctx, UniPoly<FqCtx>::constant(ctx, s0)));
    // y-translation: a4 mod t^2
    auto w = detail::quo_by_tpow(cur.a4, 2);
    cur = apply_change(cur, CoordChange<FqCtx>::translation_y(ctx, w));
    if (!(cur.a1 == UniPoly<FqCtx>::t_power(ctx, 2, ctx.one())) ||
        cur.a3.degree() > 1 || cur.a4.degree() > 1 || !cur.a2.coeff(0).is_zero())
        throw std::logic_error("case (ii) normalization failed");
    return cur;
}

/// Brings a case-(iii) model (a1 separable, rational zeros) to the shape
///   a1 = t, a3 = a t^6 + b, a4 = c t^8 + d
/// with the two zeros of a1 at 0 and infinity.
inline Model<FqCtx> normalize_case_iii(const Model<FqCtx>& m) {
    const FqCtx& ctx = m.ctx;
    A1Case cs = a1_case(m);
    if (cs.kind != A1Kind::two_zeros) throw std::invalid_argument("model is not in case (iii)");
    if (!cs.split)
        throw std::invalid_argument("zeros of a1 lie in a quadratic extension; extend the base field first");
    Model<FqCtx> cur = m;
    Place z1 = cs.zeros.at(0), z2 = cs.zeros.at(1);
    if (z1.at_infinity) std::swap(z1, z2);
    if (!z1.t0.is_zero()) {
        cur = cur.translate_param(z1.t0);
        if (!z2.at_infinity) z2 = Place::finite(z2.t0 - z1.t0);
    }
    if (!z2.at_infinity) {
        cur = move_place_to_infinity(cur, z2.t0);
    }
    FFElem gamma = cur.a1.coeff(1);
    if (gamma.is_zero() || !cur.a1.coeff(0).is_zero() || cur.a1.degree() != 1)
        throw std::logic_error("case (iii) normalization: unexpected a1 shape");
    cur = apply_change(cur, CoordChange<FqCtx>::scaling(ctx, gamma));
    // x-translation killing the middle terms t^1..t^5 of a3
    {
        auto mid = cur.a3;
        std::vector<FFElem> v = mid.coeffs();
        if (v.size() > 0) v[0] = ctx.zero();
        if (v.size() > 6) v[6] = ctx.zero();
        auto r = detail::quo_by_tpow(UniPoly<FqCtx>(ctx, std::move(v)), 1);
        cur = apply_change(cur, CoordChange<FqCtx>::translation_x(ctx, r));
    }
    // y-translation killing the middle terms t^1..t^7 of a4
    {
        auto mid = cur.a4;
        std::vector<FFElem> v = mid.coeffs();
        if (v.size() > 0) v[0] = ctx.zero();
        if (v.size() > 8) v[8] = ctx.zero();
        auto w = detail::quo_by_tpow(UniPoly<FqCtx>(ctx, std::move(v)), 1);
        cur = apply_change(cur, CoordChange<FqCtx>::translation_y(ctx, w));
    }
    bool a3_ok = cur.a3.coeff(1).is_zero() && cur.a3.coeff(2).is_zero() &&
                 cur.a3.coeff(3).is_zero() && cur.a3.coeff(4).is_zero() &&
                 cur.a3.coeff(5).is_zero();
    bool a4_ok = true;
    for (int i = 1; i <= 7; ++i) a4_ok = a4_ok && cur.a4.coeff(i).is_zero();
    if (!(cur.a1 == UniPoly<FqCtx>::t(ctx)) || !a3_ok || !a4_ok)
        throw std::logic_error("case (iii) normalization failed");
    return cur;
}

inline Model<FqCtx> embed_model(const Model<FqCtx>& m, const FiniteField& big) {
    FqCtx bc{&big};
    auto lift = [&](const UniPoly<FqCtx>& f) {
        std::vector<FFElem> v;
        v.reserve(f.coeffs().size());
        for (const auto& c : f.coeffs()) v.push_back(FieldEmbedding::apply(c, big));
        return UniPoly<FqCtx>(bc, std::move(v));
    };
    return {bc, lift(m.a1), lift(m.a2), lift(m.a3), lift(m.a4), lift(m.a6)};
}

/// Reduction of an integer/rational model modulo p (denominators must be
/// units mod p).
inline Model<FqCtx> reduce_mod_p(const Model<RatCtx>& m, const FiniteField& F) {
    FqCtx ctx{&F};
    uint32_t p = F.p();
    auto red = [&](const UniPoly<RatCtx>& f) {
        std::vector<FFElem> v;
        for (const auto& q : f.coeffs()) {
            BigInt num = rat_num(q), den = rat_den(q);
            BigInt pb(p);
            if (den % pb == 0) throw std::domain_error("denominator not invertible mod p");
            BigInt nm = num % pb; if (nm < 0) nm += pb;
            BigInt dm = den % pb;
            FFElem e = F.from_int(int64_t(nm)) * F.from_int(int64_t(dm)).inv();
            v.push_back(e);
        }
        return UniPoly<FqCtx>(ctx, std::move(v));
    };
    return {ctx, red(m.a1), red(m.a2), red(m.a3), red(m.a4), red(m.a6)};
}

// ---------------------------------------------------------------------------
// model files
//
//   # comment lines and blanks are ignored
//   char=2 ext=1
//   param=t            (optional display name)
//   a1=t^2
//   a3=1 + 1*t
//   ...
//
// Element literals: plain integers for prime fields and characteristic 0,
// "n/d" rationals in characteristic 0, "p^k:c0,c1,..." in extension fields.

struct ModelFile {
    uint32_t characteristic = 0;  // 0 means rational coefficients
    uint32_t ext = 1;
    std::string param = "t";
    std::optional<Model<FqCtx>> fq;
    std::optional<Model<RatCtx>> rat;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                             std::to_string(col) + ")"),
          line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

  private:
    int line_, col_;
};

namespace detail {

template <class Ctx>
UniPoly<Ctx> parse_poly(Ctx ctx, const std::string& src, const std::string& var,
                        int lineno) {
    // grammar: term (('+'|'-') term)*, term = coeff ['*' var ['^' exp]] | var ['^' exp]
    UniPoly<Ctx> acc(ctx);
    size_t i = 0;
    auto skip = [&] { while (i < src.size() && std::isspace((unsigned char)src[i])) ++i; };
    auto fail = [&](const std::string& m) -> void { throw ParseError(m, lineno, int(i) + 1); };
    skip();
    if (i == src.size()) fail("empty polynomial");
    bool first = true;
    while (true) {
        skip();
        if (i == src.size()) break;
        bool negate = false;
        if (!first || src[i] == '+' || src[i] == '-') {
            if (i == src.size() || (src[i] != '+' && src[i] != '-'))
                fail("expected '+' or '-'");
            negate = src[i] == '-';
            ++i;
            skip();
        }
        first = false;
        // coefficient (optional if the term starts with the variable)
        std::string coeff_tok;
        if (i < src.size() && src.compare(i, var.size(), var) == 0 &&
            (i + var.size() == src.size() ||
             !std::isalnum((unsigned char)src[i + var.size()]))) {
            coeff_tok = "1";
        } else {
            size_t start = i;
            while (i < src.size() && (std::isalnum((unsigned char)src[i]) || src[i] == '/' ||
                                      src[i] == '^' || src[i] == ':' || src[i] == ',' ||
                                      src[i] == '-')) {
                // '^' may belong to a field literal p^k:..., stop before "*"
                ++i;
            }
            coeff_tok = src.substr(start, i - start);
            if (coeff_tok.empty()) fail("expected coefficient");
        }
        skip();
        int exp = 0;
        if (i < src.size() && src[i] == '*') {
            ++i;
            skip();
            if (src.compare(i, var.size(), var) != 0) fail("expected parameter after '*'");
            i += var.size();
            exp = 1;
            if (i < src.size() && src[i] == '^') {
                ++i;
                size_t start = i;
                while (i < src.size() && std::isdigit((unsigned char)src[i])) ++i;
                if (start == i) fail("expected exponent");
                exp = std::stoi(src.substr(start, i - start));
            }
        } else if (coeff_tok == "1" && src.compare(i, var.size(), var) == 0) {
            i += var.size();
            exp = 1;
            if (i < src.size() && src[i] == '^') {
                ++i;
                size_t start = i;
                while (i < src.size() && std::isdigit((unsigned char)src[i])) ++i;
                if (start == i) fail("expected exponent");
                exp = std::stoi(src.substr(start, i - start));
            }
        }
        typename Ctx::Elem c;
        try {
            if constexpr (std::is_same_v<Ctx, FqCtx>) {
                c = ctx.F->parse_elem(coeff_tok);
            } else {
                c = Rational(coeff_tok);
            }
        } catch (const std::exception& e) {
            fail(std::string("bad coefficient '") + coeff_tok + "': " + e.what());
        }
        if (negate) c = ctx.neg(c);
        acc = acc + UniPoly<Ctx>::t_power(ctx, exp, c);
        skip();
        if (i == src.size()) break;
    }
    return acc;
}

}  // namespace detail

inline ModelFile parse_model(std::istream& in) {
    ModelFile mf;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    std::map<std::string, std::pair<std::string, int>> polys;
    while (std::getline(in, line)) {
        ++lineno;
        size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        auto notspace = [](unsigned char ch) { return !std::isspace(ch); };
        auto b = std::find_if(line.begin(), line.end(), notspace);
        if (b == line.end()) continue;
        std::string s(b, std::find_if(line.rbegin(), line.rend(), notspace).base());
        if (!header_seen) {
            std::istringstream is(s);
            std::string tok;
            bool have_char = false;
            while (is >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) throw ParseError("expected key=value", lineno, 1);
                std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                if (key == "char") { mf.characteristic = uint32_t(std::stoul(val)); have_char = true; }
                else if (key == "ext") mf.ext = uint32_t(std::stoul(val));
                else throw ParseError("unknown header key '" + key + "'", lineno, 1);
            }
            if (!have_char) throw ParseError("first line must declare char=p", lineno, 1);
            header_seen = true;
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", lineno, 1);
        std::string key = s.substr(0, eq), val = s.substr(eq + 1);
        while (!key.empty() && std::isspace((unsigned char)key.back())) key.pop_back();
        if (key == "param") {
            while (!val.empty() && std::isspace((unsigned char)val.front())) val.erase(val.begin());
            mf.param = val;
            continue;
        }
        if (key != "a1" && key != "a2" && key != "a3" && key != "a4" && key != "a6")
            throw ParseError("unknown key '" + key + "'", lineno, 1);
        polys[key] = {val, lineno};
    }
    if (!header_seen) throw ParseError("missing header line", lineno ? lineno : 1, 1);
    auto get = [&](const std::string& k) -> std::pair<std::string, int> {
        auto it = polys.find(k);
        if (it == polys.end()) return {"0", 1};
        return it->second;
    };
    if (mf.characteristic == 0) {
        RatCtx ctx;
        Model<RatCtx> m = Model<RatCtx>::zero(ctx);
        auto rd = [&](const std::string& k) {
            auto [src, ln] = get(k);
            return detail::parse_poly(ctx, src, mf.param, ln);
        };
        m.a1 = rd("a1"); m.a2 = rd("a2"); m.a3 = rd("a3"); m.a4 = rd("a4"); m.a6 = rd("a6");
        mf.rat = m;
    } else {
        const FiniteField& F = FiniteField::get(mf.characteristic, mf.ext);
        FqCtx ctx{&F};
        Model<FqCtx> m = Model<FqCtx>::zero(ctx);
        auto rd = [&](const std::string& k) {
            auto [src, ln] = get(k);
            return detail::parse_poly(ctx, src, mf.param, ln);
        };
        m.a1 = rd("a1"); m.a2 = rd("a2"); m.a3 = rd("a3"); m.a4 = rd("a4"); m.a6 = rd("a6");
        mf.fq = m;
    }
    return mf;
}

inline ModelFile parse_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    return parse_model(in);
}

template <class Ctx>
inline std::string serialize_model(const Model<Ctx>& m, uint32_t characteristic,
                                   uint32_t ext, const std::string& param = "t") {
    std::ostringstream os;
    os << "char=" << characteristic;
    if (characteristic != 0) os << " ext=" << ext;
    os << "\n";
    if (param != "t") os << "param=" << param << "\n";
    os << "a1=" << m.a1.str(param) << "\n";
    os << "a2=" << m.a2.str(param) << "\n";
    os << "a3=" << m.a3.str(param) << "\n";
    os << "a4=" << m.a4.str(param) << "\n";
    os << "a6=" << m.a6.str(param) << "\n";
    return os.str();
}

}  // namespace ellk3
