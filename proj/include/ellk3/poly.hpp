// Univariate polynomials in the base parameter t over an exact coefficient
// ring (a finite field, or the rationals for characteristic-0 cross checks),
// together with places of the projective line and their valuations.

#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ellk3/field.hpp"

namespace ellk3 {

/// Coefficient context for polynomials over a finite field. Carries the
/// parent field so that constants exist even for empty polynomials.
struct FqCtx {
    const FiniteField* F = nullptr;
    using Elem = FFElem;

    Elem zero() const { return F->zero(); }
    Elem one() const { return F->one(); }
    Elem from_int(int64_t v) const { return F->from_int(v); }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const { return F->add(a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return F->sub(a, b); }
    Elem neg(const Elem& a) const { return F->neg(a); }
    Elem mul(const Elem& a, const Elem& b) const { return F->mul(a, b); }
    Elem inv(const Elem& a) const { return F->inv(a); }
    uint32_t characteristic() const { return F->p(); }
    std::string str(const Elem& a) const { return F->elem_str(a); }
    bool same(const FqCtx& o) const { return F == o.F; }
};

/// Coefficient context for exact rational arithmetic (characteristic 0).
struct RatCtx {
    using Elem = Rational;

    Elem zero() const { return Rational(0); }
    Elem one() const { return Rational(1); }
    Elem from_int(int64_t v) const { return Rational(v); }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw std::domain_error("division by zero");
        return 1 / a;
    }
    uint32_t characteristic() const { return 0; }
    std::string str(const Elem& a) const { return a.str(); }
    bool same(const RatCtx&) const { return true; }
};

constexpr int kValInfinity = std::numeric_limits<int>::max() / 2;

/// Dense little-endian polynomial; trailing zeros stripped, the zero
/// polynomial has an empty coefficient vector (degree sentinel -1).
template <class Ctx>
class UniPoly {
  public:
    using Elem = typename Ctx::Elem;

    UniPoly() = default;
    explicit UniPoly(Ctx ctx) : ctx_(ctx) {}
    UniPoly(Ctx ctx, std::vector<Elem> coeffs) : ctx_(ctx), c_(std::move(coeffs)) { trim(); }

    static UniPoly constant(Ctx ctx, const Elem& e) { return UniPoly(ctx, {e}); }
    static UniPoly t_power(Ctx ctx, int e, const Elem& coeff) {
        std::vector<Elem> v(size_t(e) + 1, ctx.zero());
        v.back() = coeff;
        return UniPoly(ctx, std::move(v));
    }
    static UniPoly t(Ctx ctx) { return t_power(ctx, 1, ctx.one()); }

    const Ctx& ctx() const { return ctx_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }  // -1 for zero
    const std::vector<Elem>& coeffs() const { return c_; }

    Elem coeff(int i) const {
        if (i < 0 || size_t(i) >= c_.size()) return ctx_.zero();
        return c_[size_t(i)];
    }
    Elem leading() const {
        if (is_zero()) throw std::domain_error("zero polynomial has no leading coefficient");
        return c_.back();
    }

    bool operator==(const UniPoly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (size_t i = 0; i < c_.size(); ++i)
            if (!ctx_.eq(c_[i], o.c_[i])) return false;
        return true;
    }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    UniPoly operator+(const UniPoly& o) const {
        std::vector<Elem> r(std::max(c_.size(), o.c_.size()), ctx_.zero());
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = ctx_.add(coeff(int(i)), o.coeff(int(i)));
        return UniPoly(ctx_, std::move(r));
    }
    UniPoly operator-(const UniPoly& o) const {
        std::vector<Elem> r(std::max(c_.size(), o.c_.size()), ctx_.zero());
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = ctx_.sub(coeff(int(i)), o.coeff(int(i)));
        return UniPoly(ctx_, std::move(r));
    }
    UniPoly operator-() const {
        std::vector<Elem> r = c_;
        for (auto& x : r) x = ctx_.neg(x);
        return UniPoly(ctx_, std::move(r));
    }
    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return UniPoly(ctx_);
        std::vector<Elem> r(c_.size() + o.c_.size() - 1, ctx_.zero());
        for (size_t i = 0; i < c_.size(); ++i) {
            if (ctx_.is_zero(c_[i])) continue;
            for (size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = ctx_.add(r[i + j], ctx_.mul(c_[i], o.c_[j]));
        }
        return UniPoly(ctx_, std::move(r));
    }
    UniPoly scale(const Elem& s) const {
        std::vector<Elem> r = c_;
        for (auto& x : r) x = ctx_.mul(x, s);
        return UniPoly(ctx_, std::move(r));
    }
    UniPoly pow(uint32_t e) const {
        UniPoly acc = constant(ctx_, ctx_.one());
        UniPoly base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            if (e >>= 1) base = base * base;
        }
        return acc;
    }

    Elem eval(const Elem& x) const {
        Elem acc = ctx_.zero();
        for (size_t i = c_.size(); i-- > 0;)
            acc = ctx_.add(ctx_.mul(acc, x), c_[i]);
        return acc;
    }

    /// Quotient and remainder; divisor need not be monic but its leading
    /// coefficient must be invertible (always true over a field).
    std::pair<UniPoly, UniPoly> divrem(const UniPoly& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        UniPoly rem = *this;
        if (degree() < d.degree()) return {UniPoly(ctx_), rem};
        Elem lc_inv = ctx_.inv(d.leading());
        std::vector<Elem> q(size_t(degree() - d.degree()) + 1, ctx_.zero());
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            int sh = rem.degree() - d.degree();
            Elem f = ctx_.mul(rem.leading(), lc_inv);
            q[size_t(sh)] = f;
            std::vector<Elem> sub(rem.c_);
            for (int i = 0; i <= d.degree(); ++i)
                sub[size_t(sh + i)] = ctx_.sub(sub[size_t(sh + i)], ctx_.mul(f, d.c_[size_t(i)]));
            rem = UniPoly(ctx_, std::move(sub));
        }
        return {UniPoly(ctx_, std::move(q)), rem};
    }
    UniPoly operator/(const UniPoly& d) const { return divrem(d).first; }
    UniPoly operator%(const UniPoly& d) const { return divrem(d).second; }

    /// Exact division by t^e; throws unless t^e divides.
    UniPoly shift_down(int e) const {
        if (is_zero()) return *this;
        if (degree() < e) throw std::domain_error("not divisible by t^e");
        for (int i = 0; i < e; ++i)
            if (!ctx_.is_zero(c_[size_t(i)])) throw std::domain_error("not divisible by t^e");
        return UniPoly(ctx_, std::vector<Elem>(c_.begin() + e, c_.end()));
    }
    UniPoly shift_up(int e) const {
        if (is_zero()) return *this;
        std::vector<Elem> r(size_t(e), ctx_.zero());
        r.insert(r.end(), c_.begin(), c_.end());
        return UniPoly(ctx_, std::move(r));
    }

    UniPoly derivative() const {
        if (degree() < 1) return UniPoly(ctx_);
        std::vector<Elem> r(c_.size() - 1, ctx_.zero());
        for (size_t i = 1; i < c_.size(); ++i) {
            Elem m = ctx_.from_int(int64_t(i));
            r[i - 1] = ctx_.mul(c_[i], m);
        }
        return UniPoly(ctx_, std::move(r));
    }

    /// f(t + c); valuation at t0 of f equals valuation at t0 - c of the result.
    UniPoly translate(const Elem& c) const {
        UniPoly res(ctx_);
        if (is_zero()) return res;
        UniPoly tc(ctx_, {c, ctx_.one()});
        for (int i = degree(); i >= 0; --i)
            res = res * tc + constant(ctx_, c_[size_t(i)]);
        return res;
    }

    /// s^bound * f(1/s): the chart swap with an ambient degree bound.
    UniPoly reverse(int bound) const {
        if (degree() > bound) throw std::invalid_argument("degree exceeds ambient bound");
        std::vector<Elem> r(size_t(bound) + 1, ctx_.zero());
        for (size_t i = 0; i < c_.size(); ++i) r[size_t(bound) - i] = c_[i];
        return UniPoly(ctx_, std::move(r));
    }

    std::string str(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string out;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (ctx_.is_zero(c_[i])) continue;
            if (!out.empty()) out += " + ";
            std::string cs = ctx_.str(c_[i]);
            if (i == 0) { out += cs; continue; }
            bool unit = (cs == "1");
            if (!unit) out += cs + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
        return out;
    }

  private:
    void trim() {
        while (!c_.empty() && ctx_.is_zero(c_.back())) c_.pop_back();
    }

    Ctx ctx_;
    std::vector<Elem> c_;
};

template <class Ctx>
UniPoly<Ctx> gcd(UniPoly<Ctx> a, UniPoly<Ctx> b) {
    while (!b.is_zero()) {
        auto r = a % b;
        a = b;
        b = r;
    }
    if (!a.is_zero()) a = a.scale(a.ctx().inv(a.leading()));  // monic
    return a;
}

/// A place of the projective line: a point of the coefficient field (or of a
/// declared extension) or the point at infinity.
struct Place {
    bool at_infinity = false;
    FFElem t0{};  // meaningful when finite

    static Place infinity() { Place p; p.at_infinity = true; return p; }
    static Place finite(const FFElem& x) { Place p; p.t0 = x; return p; }

    bool operator==(const Place& o) const {
        if (at_infinity != o.at_infinity) return false;
        if (at_infinity) return true;
        return t0 == o.t0;
    }
    std::string str(const std::string& var = "t") const {
        return at_infinity ? var + "=inf" : var + "=" + t0.str();
    }
};

/// Multiplicity of the place in f. For the zero polynomial returns the +inf
/// sentinel. At the infinite place an ambient degree bound is required and
/// the value is bound - deg f.
inline int valuation(const UniPoly<FqCtx>& f, const Place& v,
                     std::optional<int> ambient_bound = std::nullopt) {
    if (f.is_zero()) return kValInfinity;
    if (v.at_infinity) {
        if (!ambient_bound)
            throw std::invalid_argument("infinite place queried without an ambient degree bound");
        if (f.degree() > *ambient_bound)
            throw std::invalid_argument("degree exceeds ambient bound");
        return *ambient_bound - f.degree();
    }
    // repeated synthetic division by (t - t0)
    const FqCtx& ctx = f.ctx();
    FFElem t0 = v.t0;
    if (t0.field != ctx.F) throw std::invalid_argument("place lies in a different field");
    std::vector<FFElem> cur = f.coeffs();
    int m = 0;
    while (true) {
        // evaluate and divide in one pass: cur(t) = (t-t0)*q(t) + rem
        FFElem rem = ctx.zero();
        std::vector<FFElem> q(cur.size() > 1 ? cur.size() - 1 : 0, ctx.zero());
        for (size_t i = cur.size(); i-- > 0;) {
            FFElem val = ctx.add(ctx.mul(rem, t0), cur[i]);
            if (i > 0) q[i - 1] = rem = val;
            else rem = val;
        }
        if (!rem.is_zero()) return m;
        ++m;
        if (q.empty()) return m;  // f was a constant multiple of (t-t0)^m exactly
        cur = std::move(q);
        while (!cur.empty() && cur.back().is_zero()) cur.pop_back();
        if (cur.empty()) return m;
    }
}

/// All roots of f in its coefficient field, with multiplicities, found by
/// enumeration (the fields here have at most 2^16 elements).
inline std::vector<std::pair<FFElem, int>> roots_in_field(const UniPoly<FqCtx>& f) {
    std::vector<std::pair<FFElem, int>> out;
    if (f.is_zero()) throw std::invalid_argument("zero polynomial has every root");
    const FiniteField& F = *f.ctx().F;
    if (F.order() > FiniteField::kMaxOrder)
        throw std::invalid_argument("field too large to enumerate");
    for (uint64_t i = 0; i < F.order(); ++i) {
        FFElem x = F.element(i);
        if (f.eval(x).is_zero()) {
            int m = valuation(f, Place::finite(x));
            out.emplace_back(x, m);
        }
    }
    return out;
}

}  // namespace ellk3
