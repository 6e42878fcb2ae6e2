// Multivariate polynomials over GF(2) in named parameter symbols and the base
// parameter t, with coefficient extraction and a branching elimination solver.
// This is the machinery behind the characteristic-2 case analyses: impose a
// discriminant valuation, then eliminate parameters until the family is
// forced singular or additive.

#pragma once

#include <cassert>
#include <deque>
#include <set>

#include "ellk3/weierstrass.hpp"

namespace ellk3 {

/// Fixed universe of parameter symbols plus the distinguished parameter t.
class SymRing {
  public:
    explicit SymRing(std::vector<std::string> symbols) : names_(std::move(symbols)) {
        for (size_t i = 0; i < names_.size(); ++i) {
            if (!index_.emplace(names_[i], int(i)).second)
                throw std::invalid_argument("duplicate symbol: " + names_[i]);
        }
    }
    int nsyms() const { return int(names_.size()); }
    int t_index() const { return nsyms(); }
    int index_of(const std::string& n) const {
        auto it = index_.find(n);
        if (it == index_.end()) throw std::invalid_argument("unknown symbol: " + n);
        return it->second;
    }
    const std::string& name(int i) const { return names_.at(size_t(i)); }

  private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
};

using ExpVec = std::vector<uint16_t>;  // length nsyms + 1; the last entry is the t-exponent

/// GF(2)-polynomial: a set of monomials (XOR addition). Squaring doubles
/// exponents, so (f + g)^2 = f^2 + g^2.
class SymPoly {
  public:
    SymPoly() = default;
    explicit SymPoly(const SymRing* r) : ring_(r) {}

    static SymPoly zero(const SymRing& r) { return SymPoly(&r); }
    static SymPoly one(const SymRing& r) {
        SymPoly p(&r);
        p.terms_.insert(ExpVec(size_t(r.nsyms()) + 1, 0));
        return p;
    }
    static SymPoly sym(const SymRing& r, const std::string& name, uint16_t e = 1) {
        SymPoly p(&r);
        ExpVec v(size_t(r.nsyms()) + 1, 0);
        v[size_t(r.index_of(name))] = e;
        p.terms_.insert(std::move(v));
        return p;
    }
    static SymPoly t(const SymRing& r, uint16_t e = 1) {
        SymPoly p(&r);
        ExpVec v(size_t(r.nsyms()) + 1, 0);
        v.back() = e;
        p.terms_.insert(std::move(v));
        return p;
    }

    const SymRing& ring() const { return *ring_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 &&
               std::all_of(terms_.begin()->begin(), terms_.begin()->end(),
                           [](uint16_t e) { return e == 0; });
    }
    size_t term_count() const { return terms_.size(); }
    const std::set<ExpVec>& terms() const { return terms_; }

    bool operator==(const SymPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const SymPoly& o) const { return !(*this == o); }
    bool operator<(const SymPoly& o) const { return terms_ < o.terms_; }

    SymPoly operator+(const SymPoly& o) const {
        SymPoly r(ring_);
        r.terms_ = terms_;
        for (const auto& m : o.terms_) r.flip(m);
        return r;
    }
    SymPoly operator*(const SymPoly& o) const {
        SymPoly r(ring_);
        for (const auto& x : terms_)
            for (const auto& y : o.terms_) {
                ExpVec m(x.size());
                for (size_t i = 0; i < m.size(); ++i) m[i] = uint16_t(x[i] + y[i]);
                r.flip(m);
            }
        return r;
    }
    SymPoly square() const {
        SymPoly r(ring_);
        for (auto m : terms_) {
            for (auto& e : m) e = uint16_t(e * 2);
            r.terms_.insert(std::move(m));
        }
        return r;
    }
    SymPoly pow(uint32_t e) const {
        SymPoly acc = one(*ring_);
        SymPoly base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            if (e >>= 1) base = base.square();
        }
        return acc;
    }

    int t_degree() const {
        int d = -1;
        for (const auto& m : terms_) d = std::max(d, int(m.back()));
        return d;
    }
    /// Coefficient of t^j, as a polynomial in the symbols alone.
    SymPoly coeff_of_t(int j) const {
        SymPoly r(ring_);
        for (auto m : terms_) {
            if (int(m.back()) != j) continue;
            m.back() = 0;
            r.terms_.insert(std::move(m));
        }
        return r;
    }
    /// t -> t + 1: binomial expansion; C(e, j) is odd iff j's bits lie in e's.
    SymPoly translate_t() const {
        SymPoly r(ring_);
        for (const auto& m : terms_) {
            uint16_t e = m.back();
            // iterate over all submasks of e
            uint16_t sub = e;
            while (true) {
                ExpVec mm = m;
                mm.back() = sub;
                r.flip(mm);
                if (sub == 0) break;
                sub = uint16_t((sub - 1) & e);
            }
        }
        return r;
    }

    std::set<int> symbols_used() const {
        std::set<int> out;
        for (const auto& m : terms_)
            for (int i = 0; i < ring_->nsyms(); ++i)
                if (m[size_t(i)]) out.insert(i);
        return out;
    }
    bool uses_symbol(int idx) const {
        for (const auto& m : terms_)
            if (m[size_t(idx)]) return true;
        return false;
    }
    bool uses_t() const {
        for (const auto& m : terms_)
            if (m.back()) return true;
        return false;
    }

    SymPoly substitute(int idx, const SymPoly& value) const {
        SymPoly r(ring_);
        for (const auto& m : terms_) {
            uint16_t e = m[size_t(idx)];
            ExpVec rest = m;
            rest[size_t(idx)] = 0;
            SymPoly term(ring_);
            term.terms_.insert(std::move(rest));
            if (e) term = term * value.pow(e);
            r = r + term;
        }
        return r;
    }

    /// True iff every exponent is divisible by 2^j (then the polynomial is a
    /// perfect 2^j-th power, by Frobenius linearity).
    bool is_perfect_power2(int j) const {
        uint16_t mask = uint16_t((1u << j) - 1);
        for (const auto& m : terms_)
            for (auto e : m)
                if (e & mask) return false;
        return true;
    }
    SymPoly root_power2(int j) const {
        if (!is_perfect_power2(j)) throw std::domain_error("not a perfect 2^j-th power");
        SymPoly r(ring_);
        for (auto m : terms_) {
            for (auto& e : m) e = uint16_t(e >> j);
            r.terms_.insert(std::move(m));
        }
        return r;
    }

    /// Evaluation homomorphism into GF(2^k)[t]; the assignment must cover
    /// every symbol that occurs.
    UniPoly<FqCtx> specialize(const std::map<std::string, FFElem>& assignment,
                              const FqCtx& ctx) const {
        if (ctx.characteristic() != 2)
            throw std::invalid_argument("specialization targets characteristic 2");
        std::vector<std::optional<FFElem>> vals(size_t(ring_->nsyms()));
        for (const auto& [name, v] : assignment) {
            ctx.F->check(v);
            vals[size_t(ring_->index_of(name))] = v;
        }
        UniPoly<FqCtx> acc(ctx);
        for (const auto& m : terms_) {
            FFElem c = ctx.one();
            for (int i = 0; i < ring_->nsyms(); ++i) {
                if (!m[size_t(i)]) continue;
                if (!vals[size_t(i)])
                    throw std::invalid_argument("uncovered symbol: " + ring_->name(i));
                c = c * vals[size_t(i)]->pow(m[size_t(i)]);
            }
            acc = acc + UniPoly<FqCtx>::t_power(ctx, m.back(), c);
        }
        return acc;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (const auto& m : terms_) {
            if (!out.empty()) out += " + ";
            std::string term;
            for (int i = 0; i < ring_->nsyms(); ++i) {
                uint16_t e = m[size_t(i)];
                if (!e) continue;
                if (!term.empty()) term += "*";
                term += ring_->name(i);
                if (e > 1) term += "^" + std::to_string(e);
            }
            if (m.back()) {
                if (!term.empty()) term += "*";
                term += "t";
                if (m.back() > 1) term += "^" + std::to_string(m.back());
            }
            out += term.empty() ? "1" : term;
        }
        return out;
    }

  private:
    void flip(const ExpVec& m) {
        auto it = terms_.find(m);
        if (it == terms_.end()) terms_.insert(m);
        else terms_.erase(it);
    }

    const SymRing* ring_ = nullptr;
    std::set<ExpVec> terms_;
};

// ---------------------------------------------------------------------------
// the normalized characteristic-2 families

enum class SymFamily { case_ii, case_iii, general_char2 };

struct SymModel {
    std::shared_ptr<SymRing> ring;
    SymPoly a1, a2, a3, a4, a6;

    SymPoly discriminant_char2() const {
        SymPoly inner = a1 * a1 * a6 + a1 * a3 * a4 + a2 * a3 * a3 + a4 * a4;
        SymPoly a1sq = a1 * a1;
        SymPoly a3sq = a3 * a3;
        return a1sq * a1sq * inner + a1sq * a1 * a3 * a3sq + a3sq * a3sq;
    }
};

inline SymModel sym_family(SymFamily f) {
    auto coeff_names = [](const std::string& base, int d) {
        std::vector<std::string> out;
        for (int i = 0; i <= d; ++i) out.push_back(base + std::to_string(i));
        return out;
    };
    if (f == SymFamily::case_ii) {
        std::vector<std::string> names = {"a", "b", "c", "d"};
        for (auto& n : coeff_names("ta2_", 3)) names.push_back(n);
        for (auto& n : coeff_names("a6_", 12)) names.push_back(n);
        auto ring = std::make_shared<SymRing>(names);
        const SymRing& R = *ring;
        SymModel m{ring, SymPoly::zero(R), SymPoly::zero(R), SymPoly::zero(R),
                   SymPoly::zero(R), SymPoly::zero(R)};
        m.a1 = SymPoly::t(R, 2);
        m.a3 = SymPoly::sym(R, "a") * SymPoly::t(R) + SymPoly::sym(R, "b");
        m.a4 = SymPoly::sym(R, "c") * SymPoly::t(R) + SymPoly::sym(R, "d");
        SymPoly ta2 = SymPoly::zero(R);
        for (int i = 0; i <= 3; ++i)
            ta2 = ta2 + SymPoly::sym(R, "ta2_" + std::to_string(i)) * SymPoly::t(R, uint16_t(i));
        m.a2 = SymPoly::t(R) * ta2;
        for (int i = 0; i <= 12; ++i)
            m.a6 = m.a6 + SymPoly::sym(R, "a6_" + std::to_string(i)) * SymPoly::t(R, uint16_t(i));
        return m;
    }
    if (f == SymFamily::case_iii) {
        std::vector<std::string> names = {"a", "b", "c", "d"};
        for (auto& n : coeff_names("a2_", 4)) names.push_back(n);
        for (auto& n : coeff_names("a6_", 12)) names.push_back(n);
        auto ring = std::make_shared<SymRing>(names);
        const SymRing& R = *ring;
        SymModel m{ring, SymPoly::zero(R), SymPoly::zero(R), SymPoly::zero(R),
                   SymPoly::zero(R), SymPoly::zero(R)};
        m.a1 = SymPoly::t(R);
        m.a3 = SymPoly::sym(R, "a") * SymPoly::t(R, 6) + SymPoly::sym(R, "b");
        m.a4 = SymPoly::sym(R, "c") * SymPoly::t(R, 8) + SymPoly::sym(R, "d");
        for (int i = 0; i <= 4; ++i)
            m.a2 = m.a2 + SymPoly::sym(R, "a2_" + std::to_string(i)) * SymPoly::t(R, uint16_t(i));
        for (int i = 0; i <= 12; ++i)
            m.a6 = m.a6 + SymPoly::sym(R, "a6_" + std::to_string(i)) * SymPoly::t(R, uint16_t(i));
        return m;
    }
    // fully general coefficients within the K3 degree bounds
    std::vector<std::string> names;
    for (auto& n : coeff_names("a1_", 2)) names.push_back(n);
    for (auto& n : coeff_names("a2_", 4)) names.push_back(n);
    for (auto& n : coeff_names("a3_", 6)) names.push_back(n);
    for (auto& n : coeff_names("a4_", 8)) names.push_back(n);
    for (auto& n : coeff_names("a6_", 12)) names.push_back(n);
    auto ring = std::make_shared<SymRing>(names);
    const SymRing& R = *ring;
    SymModel m{ring, SymPoly::zero(R), SymPoly::zero(R), SymPoly::zero(R),
               SymPoly::zero(R), SymPoly::zero(R)};
    auto build = [&](const std::string& base, int d) {
        SymPoly p = SymPoly::zero(R);
        for (int i = 0; i <= d; ++i)
            p = p + SymPoly::sym(R, base + std::to_string(i)) * SymPoly::t(R, uint16_t(i));
        return p;
    };
    m.a1 = build("a1_", 2);
    m.a2 = build("a2_", 4);
    m.a3 = build("a3_", 6);
    m.a4 = build("a4_", 8);
    m.a6 = build("a6_", 12);
    return m;
}

inline SymPoly symbolic_discriminant(const SymModel& m) { return m.discriminant_char2(); }

// ---------------------------------------------------------------------------
// constraint systems and the elimination solver

struct SymEquation {
    std::string label;
    SymPoly poly;
};

struct ConstraintSystem {
    std::shared_ptr<SymRing> ring;
    std::vector<SymEquation> equations;
    std::set<int> nonvanishing;  // symbols asserted nonzero

    void substitute(const std::string& name, const SymPoly& value) {
        int idx = ring->index_of(name);
        for (auto& eq : equations) eq.poly = eq.poly.substitute(idx, value);
        std::erase_if(equations, [](const SymEquation& e) { return e.poly.is_zero(); });
    }
};

enum class SymbolicPlace { zero, one, infinity };

/// Gauss reduction of a GF(2)-linear system of coefficient equations in the
/// monomial space (reduced row echelon form, pivot on the greatest monomial).
/// The span is unchanged; the generators become the small combinations the
/// elimination rules can consume.
inline void linear_interreduce(std::vector<SymEquation>& eqs) {
    std::vector<SymEquation> basis;  // each with a distinct leading monomial
    auto leading = [](const SymPoly& p) { return *p.terms().rbegin(); };
    for (auto& incoming : eqs) {
        SymPoly cur = incoming.poly;
        bool changed = true;
        while (changed && !cur.is_zero()) {
            changed = false;
            for (const auto& b : basis) {
                if (cur.terms().count(leading(b.poly))) {
                    cur = cur + b.poly;
                    changed = true;
                    if (cur.is_zero()) break;
                }
            }
        }
        if (cur.is_zero()) continue;
        // back-substitute into the existing basis
        ExpVec lm = leading(cur);
        for (auto& b : basis)
            if (b.poly.terms().count(lm)) b.poly = b.poly + cur;
        basis.push_back({incoming.label, cur});
    }
    eqs = std::move(basis);
}

/// The coefficient equations forced by v_place(Delta) >= n for a family
/// discriminant of ambient degree 24.
///
/// At the place t = 1 the condition reads Delta = (t+1)^n g with deg g <=
/// 24 - n. Over GF(2) the window (t+1)^n is sparse (its support is the set
/// of binary submasks of n), so eliminating the g-coefficients row by row
/// turns the condition into GF(2)-linear relations among the coefficients of
/// Delta itself. These generators are the ones the reduction rules below can
/// consume; the equivalent system obtained by translating t -> t+1 carries
/// the same ideal but as dense degree-4 generators the rules cannot crack.
inline ConstraintSystem impose_valuation(const SymModel& fam, const SymPoly& delta,
                                         SymbolicPlace place, int n) {
    if (n > 24) throw std::invalid_argument("valuation demand exceeds the ambient degree 24");
    ConstraintSystem sys;
    sys.ring = fam.ring;
    auto add = [&](const std::string& label, const SymPoly& p) {
        if (p.is_zero()) return;
        sys.equations.push_back({label, p});
    };
    switch (place) {
        case SymbolicPlace::zero:
            for (int i = 0; i < n; ++i)
                add("d" + std::to_string(i), delta.coeff_of_t(i));
            break;
        case SymbolicPlace::infinity:
            for (int i = 24 - n + 1; i <= 24; ++i)
                add("d" + std::to_string(i), delta.coeff_of_t(i));
            break;
        case SymbolicPlace::one: {
            // support of (t+1)^n over GF(2): submasks of n
            std::vector<int> S;
            for (int j = 0; j <= n; ++j)
                if ((j & ~n) == 0) S.push_back(j);
            int gdeg = 24 - n;
            std::vector<SymPoly> g;  // g_j expressed in the coefficients of Delta
            for (int i = 0; i <= 24; ++i) {
                SymPoly acc = delta.coeff_of_t(i);
                for (int s : S) {
                    if (s == 0) continue;
                    int j = i - s;
                    if (j >= 0 && j <= gdeg) acc = acc + g[size_t(j)];
                }
                if (i <= gdeg) {
                    g.push_back(acc);  // defines g_i
                } else {
                    add("r" + std::to_string(i), acc);
                }
            }
            linear_interreduce(sys.equations);
            break;
        }
    }
    return sys;
}

struct ElimLeaf {
    bool contradiction = false;
    std::vector<std::pair<int, SymPoly>> assignments;  // resolved, in order
    std::vector<SymEquation> residual;
    std::set<int> survivors;  // free symbols (only meaningful without residual)
    std::string path;         // branch decisions that led here
};

enum class ElimVerdict { all_parameters_killed, residual, budget_exhausted };

struct ElimResult {
    ElimVerdict verdict = ElimVerdict::residual;
    std::vector<ElimLeaf> leaves;
    int branches_used = 0;
    std::string transcript;

    /// Survivors across all consistent leaves.
    std::set<int> survivors() const {
        std::set<int> out;
        for (const auto& l : leaves)
            if (!l.contradiction) out.insert(l.survivors.begin(), l.survivors.end());
        return out;
    }
};

namespace elim_detail {

struct State {
    std::vector<SymEquation> eqs;
    std::vector<std::pair<int, SymPoly>> assignments;
    std::string path;
};

inline void substitute_all(State& st, int idx, const SymPoly& value) {
    for (auto& eq : st.eqs) eq.poly = eq.poly.substitute(idx, value);
    std::erase_if(st.eqs, [](const SymEquation& e) { return e.poly.is_zero(); });
    // keep first occurrence of duplicated equations
    std::set<SymPoly> seen;
    std::vector<SymEquation> uniq;
    for (auto& e : st.eqs)
        if (seen.insert(e.poly).second) uniq.push_back(std::move(e));
    st.eqs = std::move(uniq);
}

// the single pure-power term of v in eq, if v occurs in exactly that term
inline std::optional<uint16_t> lone_pure_power(const SymPoly& eq, int v) {
    std::optional<uint16_t> e;
    for (const auto& m : eq.terms()) {
        if (!m[size_t(v)]) continue;
        bool pure = m.back() == 0;
        for (size_t i = 0; pure && i + 1 < m.size(); ++i)
            if (int(i) != v && m[i]) pure = false;
        if (!pure) return std::nullopt;
        if (e) return std::nullopt;  // two occurrences
        e = m[size_t(v)];
    }
    return e;
}

}  // namespace elim_detail

/// Reduction rules, applied to a fixpoint in equation order:
///   R1  x^m = 0            -> x := 0        (parameters take field values)
///   R2  v + q, v not in q  -> v := q
///   R3  v^(2^j) + q, q a perfect 2^j-th power -> v := q^(1/2^j)
///   R4  a single monomial in several symbols -> branch on each factor := 0
/// Branching is bounded by the budget; exhausting it yields a residual
/// verdict with the partial tree, never a wrong answer.
inline ElimResult eliminate(const ConstraintSystem& sys, int budget = 64) {
    if (budget < 1) throw std::invalid_argument("branch budget must be at least 1");
    const SymRing& R = *sys.ring;
    ElimResult out;
    std::ostringstream tr;
    std::deque<elim_detail::State> work;
    work.push_back({sys.equations, {}, ""});
    bool exhausted = false;

    while (!work.empty()) {
        elim_detail::State st = std::move(work.front());
        work.pop_front();
        bool leaf_done = false;
        while (!leaf_done) {
            // contradiction?
            bool contr = false;
            for (auto& e : st.eqs)
                if (e.poly.is_one()) { contr = true; break; }
            if (contr) {
                tr << st.path << "contradiction: 1 = 0\n";
                ElimLeaf leaf;
                leaf.contradiction = true;
                leaf.path = st.path;
                out.leaves.push_back(std::move(leaf));
                leaf_done = true;
                break;
            }
            bool applied = false;
            // R1
            for (size_t i = 0; i < st.eqs.size() && !applied; ++i) {
                const auto& eq = st.eqs[i];
                if (eq.poly.term_count() != 1) continue;
                auto used = eq.poly.symbols_used();
                if (used.size() != 1 || eq.poly.uses_t()) continue;
                int v = *used.begin();
                if (sys.nonvanishing.count(v)) {
                    tr << st.path << "[" << eq.label << "] " << eq.poly.str()
                       << " = 0 contradicts " << R.name(v) << " != 0\n";
                    ElimLeaf leaf;
                    leaf.contradiction = true;
                    leaf.path = st.path;
                    out.leaves.push_back(std::move(leaf));
                    leaf_done = true;
                    applied = true;
                    break;
                }
                tr << st.path << "[" << eq.label << "] " << eq.poly.str()
                   << " = 0   R1: " << R.name(v) << " := 0\n";
                st.assignments.emplace_back(v, SymPoly::zero(R));
                elim_detail::substitute_all(st, v, SymPoly::zero(R));
                applied = true;
            }
            if (leaf_done) break;
            // R2
            for (size_t i = 0; i < st.eqs.size() && !applied; ++i) {
                const auto& eq = st.eqs[i];
                for (int v : eq.poly.symbols_used()) {
                    auto e = elim_detail::lone_pure_power(eq.poly, v);
                    if (!e || *e != 1) continue;
                    SymPoly q = eq.poly + SymPoly::sym(R, R.name(v));  // removes the bare term
                    tr << st.path << "[" << eq.label << "] " << eq.poly.str()
                       << " = 0   R2: " << R.name(v) << " := " << q.str() << "\n";
                    st.assignments.emplace_back(v, q);
                    elim_detail::substitute_all(st, v, q);
                    applied = true;
                    break;
                }
            }
            // R3
            for (size_t i = 0; i < st.eqs.size() && !applied; ++i) {
                const auto& eq = st.eqs[i];
                for (int v : eq.poly.symbols_used()) {
                    auto e = elim_detail::lone_pure_power(eq.poly, v);
                    if (!e || *e < 2) continue;
                    uint16_t ee = *e;
                    if (ee & (ee - 1)) continue;  // not a power of two
                    int j = 0;
                    while ((1u << (j + 1)) <= ee) ++j;
                    SymPoly q = eq.poly + SymPoly::sym(R, R.name(v), ee);
                    if (!q.is_perfect_power2(j)) continue;
                    SymPoly root = q.root_power2(j);
                    tr << st.path << "[" << eq.label << "] " << eq.poly.str()
                       << " = 0   R3: " << R.name(v) << " := " << root.str() << "\n";
                    st.assignments.emplace_back(v, root);
                    elim_detail::substitute_all(st, v, root);
                    applied = true;
                    break;
                }
            }
            // R4
            if (!applied) {
                for (size_t i = 0; i < st.eqs.size(); ++i) {
                    const auto& eq = st.eqs[i];
                    if (eq.poly.term_count() != 1 || eq.poly.uses_t()) continue;
                    auto used = eq.poly.symbols_used();
                    if (used.size() < 2) continue;
                    std::vector<int> opts;
                    for (int v : used)
                        if (!sys.nonvanishing.count(v)) opts.push_back(v);
                    if (opts.empty()) {
                        tr << st.path << "[" << eq.label << "] " << eq.poly.str()
                           << " = 0 contradicts the nonvanishing assertions\n";
                        ElimLeaf leaf;
                        leaf.contradiction = true;
                        leaf.path = st.path;
                        out.leaves.push_back(std::move(leaf));
                        leaf_done = true;
                        applied = true;
                        break;
                    }
                    if (out.branches_used + int(opts.size()) > budget) {
                        exhausted = true;
                        tr << st.path << "[" << eq.label << "] " << eq.poly.str()
                           << " = 0   R4: branch budget exhausted\n";
                        ElimLeaf leaf;
                        leaf.path = st.path;
                        leaf.residual = st.eqs;
                        leaf.assignments = st.assignments;
                        out.leaves.push_back(std::move(leaf));
                        leaf_done = true;
                        applied = true;
                        break;
                    }
                    tr << st.path << "[" << eq.label << "] " << eq.poly.str()
                       << " = 0   R4: branching on each factor\n";
                    for (int v : opts) {
                        out.branches_used++;
                        elim_detail::State child = st;
                        child.path = st.path + "(" + R.name(v) + ":=0) ";
                        child.assignments.emplace_back(v, SymPoly::zero(R));
                        elim_detail::substitute_all(child, v, SymPoly::zero(R));
                        work.push_back(std::move(child));
                    }
                    leaf_done = true;
                    applied = true;
                    break;
                }
            }
            if (leaf_done) break;
            if (!applied) {
                // terminal leaf
                ElimLeaf leaf;
                leaf.path = st.path;
                leaf.residual = st.eqs;
                // resolve assignments to their final values
                auto resolved = st.assignments;
                for (auto& [idx, val] : resolved) {
                    bool changed = true;
                    while (changed) {
                        changed = false;
                        for (auto& [idx2, val2] : st.assignments) {
                            if (val.uses_symbol(idx2)) {
                                val = val.substitute(idx2, val2);
                                changed = true;
                            }
                        }
                    }
                    (void)idx;
                }
                leaf.assignments = resolved;
                std::set<int> assigned;
                for (auto& [idx, val] : resolved) assigned.insert(idx);
                for (int i = 0; i < R.nsyms(); ++i)
                    if (!assigned.count(i)) leaf.survivors.insert(i);
                if (st.eqs.empty()) {
                    tr << st.path << "complete: all equations consumed; free symbols {";
                    bool first = true;
                    for (int s : leaf.survivors) {
                        tr << (first ? "" : ", ") << R.name(s);
                        first = false;
                    }
                    tr << "}\n";
                } else {
                    tr << st.path << "stalled with " << st.eqs.size()
                       << " residual equation(s)\n";
                }
                out.leaves.push_back(std::move(leaf));
                leaf_done = true;
            }
        }
    }

    bool all_done = true;
    for (auto& l : out.leaves)
        if (!l.contradiction && !l.residual.empty()) all_done = false;
    if (exhausted) out.verdict = ElimVerdict::budget_exhausted;
    else out.verdict = all_done ? ElimVerdict::all_parameters_killed : ElimVerdict::residual;
    out.transcript = tr.str();
    return out;
}

/// Applies a leaf's assignments to a polynomial (typically the family
/// discriminant) to obtain its residual form on that branch.
inline SymPoly apply_assignments(const SymPoly& p,
                                 const std::vector<std::pair<int, SymPoly>>& assignments) {
    SymPoly cur = p;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [idx, val] : assignments) {
            if (cur.uses_symbol(idx)) {
                cur = cur.substitute(idx, val);
                changed = true;
            }
        }
    }
    return cur;
}

}  // namespace ellk3
