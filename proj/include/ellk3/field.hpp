// Exact arithmetic for the toolkit: prime fields GF(p), extension fields
// GF(p^k) with a fixed modulus table, and arbitrary-precision rationals.
//
// Fields are immutable after construction and safe to share between threads;
// every operation is pure.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ellk3 {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& r) { return numerator(r); }
inline BigInt rat_den(const Rational& r) { return denominator(r); }

class FiniteField;

/// Element of a finite field: coefficient vector over GF(p) of length k,
/// little-endian in the residue class of the generator.
struct FFElem {
    static constexpr int kMaxDeg = 16;

    const FiniteField* field = nullptr;
    std::array<uint16_t, kMaxDeg> c{};

    bool operator==(const FFElem& o) const;
    bool operator!=(const FFElem& o) const { return !(*this == o); }
    bool is_zero() const;
    bool is_one() const;

    FFElem operator+(const FFElem& o) const;
    FFElem operator-(const FFElem& o) const;
    FFElem operator*(const FFElem& o) const;
    FFElem operator-() const;
    FFElem inv() const;
    FFElem pow(uint64_t e) const;
    FFElem frobenius() const;  // x -> x^p
    FFElem pth_root() const;   // inverse of frobenius
    FFElem sqrt_char2() const; // unique square root, characteristic 2 only

    uint64_t index() const;    // position in enumeration order
    std::string str() const;
};

/// GF(p^k), p prime, defined by a monic irreducible modulus over GF(p).
/// Instances are interned: get() returns a reference valid for the whole run.
class FiniteField {
  public:
    static constexpr int kMaxDeg = FFElem::kMaxDeg;
    static constexpr uint64_t kMaxOrder = 1u << 16;  // enumeration bound

    static const FiniteField& get(uint32_t p, uint32_t k);
    // Custom modulus (little-endian, degree k, monic). Mostly for tests.
    static const FiniteField& get(uint32_t p, uint32_t k,
                                  const std::vector<uint16_t>& modulus);

    uint32_t p() const { return p_; }
    uint32_t k() const { return k_; }
    uint64_t order() const { return order_; }
    const std::vector<uint16_t>& modulus() const { return mod_; }

    FFElem zero() const { FFElem e; e.field = this; return e; }
    FFElem one() const { return from_int(1); }
    FFElem from_int(int64_t v) const {
        FFElem e = zero();
        int64_t m = v % int64_t(p_);
        if (m < 0) m += p_;
        e.c[0] = uint16_t(m);
        return e;
    }
    FFElem from_coeffs(const std::vector<uint16_t>& cs) const {
        if (cs.size() > k_) throw std::invalid_argument("coefficient vector too long");
        FFElem e = zero();
        for (size_t i = 0; i < cs.size(); ++i) {
            if (cs[i] >= p_) throw std::invalid_argument("coefficient out of range");
            e.c[i] = cs[i];
        }
        return e;
    }
    /// Generator of the residue-class representation (the class of x); equals
    /// 0 when k = 1 would be wrong, so it is only defined for k >= 2.
    FFElem gen() const {
        FFElem e = zero();
        if (k_ >= 2) e.c[1] = 1;
        else e.c[0] = 0;
        return e;
    }

    /// i-th element in the deterministic enumeration order: base-p digits of
    /// i, little-endian, as the coefficient vector.
    FFElem element(uint64_t i) const {
        if (i >= order_) throw std::invalid_argument("element index out of range");
        FFElem e = zero();
        for (uint32_t j = 0; j < k_; ++j) { e.c[j] = uint16_t(i % p_); i /= p_; }
        return e;
    }
    std::vector<FFElem> all_elements() const {
        if (order_ > kMaxOrder) throw std::invalid_argument("field too large to enumerate");
        std::vector<FFElem> v;
        v.reserve(size_t(order_));
        for (uint64_t i = 0; i < order_; ++i) v.push_back(element(i));
        return v;
    }

    // -- element arithmetic ------------------------------------------------
    FFElem add(const FFElem& a, const FFElem& b) const {
        check(a); check(b);
        FFElem r = zero();
        for (uint32_t i = 0; i < k_; ++i) {
            uint32_t s = uint32_t(a.c[i]) + b.c[i];
            if (s >= p_) s -= p_;
            r.c[i] = uint16_t(s);
        }
        return r;
    }
    FFElem sub(const FFElem& a, const FFElem& b) const {
        check(a); check(b);
        FFElem r = zero();
        for (uint32_t i = 0; i < k_; ++i) {
            uint32_t s = uint32_t(a.c[i]) + p_ - b.c[i];
            if (s >= p_) s -= p_;
            r.c[i] = uint16_t(s);
        }
        return r;
    }
    FFElem neg(const FFElem& a) const { return sub(zero(), a); }
    FFElem mul(const FFElem& a, const FFElem& b) const {
        check(a); check(b);
        // schoolbook product then reduction by the monic modulus
        std::array<uint32_t, 2 * kMaxDeg> prod{};
        for (uint32_t i = 0; i < k_; ++i) {
            if (!a.c[i]) continue;
            for (uint32_t j = 0; j < k_; ++j)
                prod[i + j] = uint32_t((prod[i + j] + uint64_t(a.c[i]) * b.c[j]) % p_);
        }
        for (int d = int(2 * k_) - 2; d >= int(k_); --d) {
            uint32_t cd = prod[d];
            if (!cd) continue;
            prod[d] = 0;
            for (uint32_t j = 0; j < k_; ++j) {
                uint64_t t = prod[d - k_ + j] + uint64_t(cd) * (p_ - mod_[j]);
                prod[d - k_ + j] = uint32_t(t % p_);
            }
        }
        FFElem r = zero();
        for (uint32_t i = 0; i < k_; ++i) r.c[i] = uint16_t(prod[i]);
        return r;
    }
    FFElem pow(const FFElem& a, uint64_t e) const {
        FFElem base = a, acc = one();
        while (e) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }
    FFElem inv(const FFElem& a) const {
        check(a);
        if (a.is_zero()) throw std::domain_error("division by zero in finite field");
        return pow(a, order_ - 2);
    }
    FFElem frobenius(const FFElem& a) const { return pow(a, p_); }
    FFElem pth_root(const FFElem& a) const {
        // x -> x^(p^(k-1)) inverts the Frobenius
        FFElem r = a;
        for (uint32_t i = 0; i + 1 < k_; ++i) r = frobenius(r);
        if (k_ == 1) return r;  // Frobenius is the identity on GF(p)
        return r;
    }

    void check(const FFElem& a) const {
        if (a.field != this) throw std::invalid_argument("mismatched parent fields");
    }

    std::string elem_str(const FFElem& a) const {
        check(a);
        bool prime_subfield = true;
        for (uint32_t i = 1; i < k_; ++i)
            if (a.c[i]) prime_subfield = false;
        if (prime_subfield) return std::to_string(a.c[0]);
        std::ostringstream os;
        os << p_ << "^" << k_ << ":";
        for (uint32_t i = 0; i < k_; ++i) os << (i ? "," : "") << a.c[i];
        return os.str();
    }
    /// Parses "c" (prime field / integer) or "p^k:c0,c1,..." literals.
    FFElem parse_elem(const std::string& s) const;

  private:
    FiniteField(uint32_t p, uint32_t k, std::vector<uint16_t> mod);

    uint32_t p_, k_;
    uint64_t order_;
    std::vector<uint16_t> mod_;  // length k+1, monic
};

inline bool FFElem::operator==(const FFElem& o) const {
    if (field != o.field) throw std::invalid_argument("mismatched parent fields");
    return c == o.c;
}
inline bool FFElem::is_zero() const {
    for (auto x : c) if (x) return false;
    return true;
}
inline bool FFElem::is_one() const {
    if (c[0] != 1) return false;
    for (size_t i = 1; i < c.size(); ++i) if (c[i]) return false;
    return true;
}
inline FFElem FFElem::operator+(const FFElem& o) const { return field->add(*this, o); }
inline FFElem FFElem::operator-(const FFElem& o) const { return field->sub(*this, o); }
inline FFElem FFElem::operator*(const FFElem& o) const { return field->mul(*this, o); }
inline FFElem FFElem::operator-() const { return field->neg(*this); }
inline FFElem FFElem::inv() const { return field->inv(*this); }
inline FFElem FFElem::pow(uint64_t e) const { return field->pow(*this, e); }
inline FFElem FFElem::frobenius() const { return field->frobenius(*this); }
inline FFElem FFElem::pth_root() const { return field->pth_root(*this); }
inline FFElem FFElem::sqrt_char2() const {
    if (field->p() != 2) throw std::invalid_argument("sqrt_char2 needs characteristic 2");
    return field->pth_root(*this);
}
inline uint64_t FFElem::index() const {
    uint64_t v = 0;
    for (int i = int(field->k()) - 1; i >= 0; --i) v = v * field->p() + c[size_t(i)];
    return v;
}
inline std::string FFElem::str() const { return field->elem_str(*this); }

namespace detail {

inline bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; uint64_t(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// polynomial helpers over GF(p) on raw little-endian vectors
inline void trim(std::vector<uint16_t>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
inline std::vector<uint16_t> polmod(std::vector<uint16_t> a,
                                    const std::vector<uint16_t>& m, uint32_t p) {
    // m monic
    while (a.size() >= m.size() && !a.empty()) {
        uint32_t c = a.back();
        if (c) {
            size_t sh = a.size() - m.size();
            for (size_t i = 0; i < m.size(); ++i) {
                uint64_t t = a[sh + i] + uint64_t(c) * (p - m[i]);
                a[sh + i] = uint16_t(t % p);
            }
        }
        a.pop_back();
        trim(a);
        if (a.size() < m.size()) break;
    }
    trim(a);
    return a;
}
inline bool poly_irreducible(const std::vector<uint16_t>& f, uint32_t p) {
    // trial division by every monic polynomial of degree 1..deg(f)/2
    size_t k = f.size() - 1;
    for (size_t d = 1; d <= k / 2; ++d) {
        uint64_t count = 1;
        for (size_t i = 0; i < d; ++i) count *= p;
        for (uint64_t idx = 0; idx < count; ++idx) {
            std::vector<uint16_t> g(d + 1, 0);
            uint64_t v = idx;
            for (size_t i = 0; i < d; ++i) { g[i] = uint16_t(v % p); v /= p; }
            g[d] = 1;
            if (polmod(f, g, p).empty()) return false;
        }
    }
    return true;
}

struct ModulusEntry { uint32_t p, k; std::array<uint16_t, 17> c; };

// Fixed modulus table: the lexicographically least monic irreducible of each
// degree (coefficient vector read little-endian, base p). Shipped as data so
// extension arithmetic is reproducible bit for bit; see also
// smallest_irreducible(), which recomputes the same entries.
inline const std::vector<ModulusEntry>& modulus_table() {
    static const std::vector<ModulusEntry> table = {
        {2, 2, {1, 1, 1}},
        {2, 3, {1, 1, 0, 1}},
        {2, 4, {1, 1, 0, 0, 1}},
        {2, 5, {1, 0, 1, 0, 0, 1}},
        {2, 6, {1, 1, 0, 0, 0, 0, 1}},
        {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
        {2, 8, {1, 1, 0, 1, 1, 0, 0, 0, 1}},
        {2, 9, {1, 1, 0, 0, 0, 0, 0, 0, 0, 1}},
        {2, 10, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1}},
        {2, 11, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
        {2, 12, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
        {2, 13, {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
        {2, 14, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
        {2, 15, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
        {2, 16, {1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
        {3, 2, {1, 0, 1}},
        {3, 3, {1, 2, 0, 1}},
        {3, 4, {2, 1, 0, 0, 1}},
        {3, 5, {1, 2, 0, 0, 0, 1}},
        {3, 6, {2, 1, 0, 0, 0, 0, 1}},
        {3, 7, {2, 0, 1, 0, 0, 0, 0, 1}},
        {3, 8, {2, 0, 1, 0, 0, 0, 0, 0, 1}},
        {3, 9, {1, 0, 1, 2, 0, 0, 0, 0, 0, 1}},
        {3, 10, {1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 1}},
        {5, 2, {2, 0, 1}},
        {5, 3, {1, 1, 0, 1}},
        {5, 4, {2, 0, 0, 0, 1}},
        {5, 5, {1, 4, 0, 0, 0, 1}},
        {5, 6, {2, 1, 0, 0, 0, 0, 1}},
        {7, 2, {1, 0, 1}},
        {7, 3, {2, 0, 0, 1}},
        {7, 4, {1, 1, 0, 0, 1}},
        {7, 5, {3, 1, 0, 0, 0, 1}},
        {11, 2, {1, 0, 1}},
        {11, 3, {4, 1, 0, 1}},
        {11, 4, {2, 1, 0, 0, 1}},
        {13, 2, {2, 0, 1}},
        {13, 3, {2, 0, 0, 1}},
        {13, 4, {2, 0, 0, 0, 1}},
    };
    return table;
}

inline std::vector<uint16_t> smallest_irreducible(uint32_t p, uint32_t k) {
    uint64_t count = 1;
    for (uint32_t i = 0; i < k; ++i) count *= p;
    for (uint64_t idx = 0; idx < count; ++idx) {
        std::vector<uint16_t> f(k + 1, 0);
        uint64_t v = idx;
        for (uint32_t i = 0; i < k; ++i) { f[i] = uint16_t(v % p); v /= p; }
        f[k] = 1;
        if (poly_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

inline std::vector<uint16_t> default_modulus(uint32_t p, uint32_t k) {
    if (k == 1) return {0, 1};  // the class of x in GF(p)[x]/(x)
    for (const auto& e : modulus_table())
        if (e.p == p && e.k == k)
            return std::vector<uint16_t>(e.c.begin(), e.c.begin() + k + 1);
    return smallest_irreducible(p, k);
}

}  // namespace detail

inline FiniteField::FiniteField(uint32_t p, uint32_t k, std::vector<uint16_t> mod)
    : p_(p), k_(k), mod_(std::move(mod)) {
    if (!detail::is_prime_u32(p)) throw std::invalid_argument("characteristic must be prime");
    if (k < 1 || k > uint32_t(kMaxDeg)) throw std::invalid_argument("extension degree out of range");
    order_ = 1;
    for (uint32_t i = 0; i < k; ++i) {
        order_ *= p;
        if (order_ > kMaxOrder) throw std::invalid_argument("field order exceeds 2^16");
    }
    if (mod_.size() != k + 1 || mod_.back() != 1)
        throw std::invalid_argument("modulus must be monic of degree k");
    for (auto c : mod_)
        if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
    if (k > 1 && !detail::poly_irreducible(mod_, p))
        throw std::invalid_argument("modulus is reducible");
}

inline const FiniteField& FiniteField::get(uint32_t p, uint32_t k,
                                           const std::vector<uint16_t>& modulus) {
    static std::mutex mu;
    static std::map<std::pair<uint64_t, std::vector<uint16_t>>,
                    std::unique_ptr<FiniteField>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair((uint64_t(p) << 8) | k, modulus);
    auto it = registry.find(key);
    if (it == registry.end()) {
        auto f = std::unique_ptr<FiniteField>(new FiniteField(p, k, modulus));
        it = registry.emplace(std::move(key), std::move(f)).first;
    }
    return *it->second;
}

inline const FiniteField& FiniteField::get(uint32_t p, uint32_t k) {
    return get(p, k, detail::default_modulus(p, k));
}

inline FFElem FiniteField::parse_elem(const std::string& s) const {
    auto colon = s.find(':');
    if (colon == std::string::npos) {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("bad field element literal: " + s);
        return from_int(v);
    }
    auto caret = s.find('^');
    if (caret == std::string::npos || caret > colon)
        throw std::invalid_argument("bad field element literal: " + s);
    uint32_t lp = uint32_t(std::stoul(s.substr(0, caret)));
    uint32_t lk = uint32_t(std::stoul(s.substr(caret + 1, colon - caret - 1)));
    if (lp != p_ || lk != k_)
        throw std::invalid_argument("field literal " + s + " does not match GF(" +
                                    std::to_string(p_) + "^" + std::to_string(k_) + ")");
    std::vector<uint16_t> cs;
    std::string rest = s.substr(colon + 1);
    std::istringstream is(rest);
    std::string tok;
    while (std::getline(is, tok, ','))
        cs.push_back(uint16_t(std::stoul(tok)));
    return from_coeffs(cs);
}

/// Field embedding GF(p^a) -> GF(p^b) for a | b, sending the generator to the
/// enumeration-least root of the small modulus. Cached per field pair.
class FieldEmbedding {
  public:
    static FFElem apply(const FFElem& x, const FiniteField& big) {
        const FiniteField& sml = *x.field;
        if (&sml == &big) return x;
        if (sml.p() != big.p() || big.k() % sml.k() != 0)
            throw std::invalid_argument("no embedding between these fields");
        FFElem g = generator_image(sml, big);
        // evaluate the coefficient vector at g (Horner)
        FFElem acc = big.zero();
        for (int i = int(sml.k()) - 1; i >= 0; --i)
            acc = acc * g + big.from_int(x.c[size_t(i)]);
        return acc;
    }

  private:
    static FFElem generator_image(const FiniteField& sml, const FiniteField& big) {
        static std::mutex mu;
        static std::map<std::pair<const FiniteField*, const FiniteField*>, FFElem> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(&sml, &big);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const auto& m = sml.modulus();
        for (uint64_t i = 0; i < big.order(); ++i) {
            FFElem r = big.element(i);
            FFElem acc = big.zero();
            for (int j = int(m.size()) - 1; j >= 0; --j)
                acc = acc * r + big.from_int(m[size_t(j)]);
            if (acc.is_zero()) {
                cache.emplace(key, r);
                return r;
            }
        }
        throw std::logic_error("modulus has no root in the extension");
    }
};

}  // namespace ellk3
