#pragma once

/*
 * Finite fields F_{p^k} in polynomial basis.
 *
 * An element is stored as its canonical index sum_i d_i p^i, where d_i is the
 * coefficient of x^i modulo the field's monic irreducible modulus. Fields are
 * immutable once built; build them once and share through shared_ptr.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace bentpart {

using Element = std::uint32_t;

inline constexpr std::uint64_t max_field_order = std::uint64_t{1} << 31;

struct FieldDescriptor {
    std::uint32_t p = 2;
    std::uint32_t degree = 1;
    std::vector<std::uint32_t> modulus;  // k+1 coefficients, constant term first, monic

    friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

namespace detail {

/* Dense polynomials over F_p, constant term first. */
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
    trim(a);
    Poly mm = m;
    trim(mm);
    const std::size_t dm = mm.size() - 1;
    // inverse of the leading coefficient of mm
    std::uint32_t lead_inv = 1;
    for (std::uint32_t t = 1; t < p; ++t)
        if ((std::uint64_t{t} * mm.back()) % p == 1) lead_inv = t;
    while (a.size() > dm && !a.empty()) {
        const std::size_t shift = a.size() - 1 - dm;
        const std::uint64_t factor = (std::uint64_t{a.back()} * lead_inv) % p;
        for (std::size_t i = 0; i <= dm; ++i) {
            const std::uint64_t sub = (factor * mm[i]) % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
    return poly_mod(std::move(r), m, p);
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
    Poly r{1};
    base = poly_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return poly_mod(std::move(r), m, p);
}

inline Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

inline Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace detail

/* Rabin's test: f of degree k is irreducible iff x^{p^k} = x mod f and gcd(x^{p^{k/q}} - x, f) = 1 for primes q | k. */
inline bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& modulus) {
    detail::Poly f = modulus;
    detail::trim(f);
    if (f.size() < 2) return false;
    const unsigned k = static_cast<unsigned>(f.size() - 1);
    if (k == 1) return true;
    if (f[0] == 0) return false;
    auto x_pow_p_iter = [&](unsigned times) {
        detail::Poly g{0, 1};
        for (unsigned i = 0; i < times; ++i) g = detail::poly_powmod(g, p, f, p);
        return g;
    };
    const detail::Poly x{0, 1};
    if (detail::poly_sub(x_pow_p_iter(k), x, p).size() != 0) return false;
    for (auto q : prime_factors(k)) {
        detail::Poly g = detail::poly_sub(x_pow_p_iter(static_cast<unsigned>(k / q)), x, p);
        detail::Poly d = detail::poly_gcd(f, g, p);
        if (d.size() != 1) return false;
    }
    return true;
}

/* Conway polynomials shipped as defaults; data/default_moduli.json mirrors this table. */
inline const std::vector<FieldDescriptor>& default_moduli() {
    static const std::vector<FieldDescriptor> table = {
        {2, 1, {1, 1}},
        {2, 2, {1, 1, 1}},
        {2, 3, {1, 1, 0, 1}},
        {2, 4, {1, 1, 0, 0, 1}},
        {2, 5, {1, 0, 1, 0, 0, 1}},
        {2, 6, {1, 1, 0, 1, 1, 0, 1}},
        {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
        {3, 1, {1, 1}},
        {3, 2, {2, 2, 1}},
        {3, 3, {1, 2, 0, 1}},
        {3, 4, {2, 0, 0, 2, 1}},
        {5, 1, {3, 1}},
        {5, 2, {2, 4, 1}},
        {7, 1, {4, 1}},
        {7, 2, {3, 6, 1}},
    };
    return table;
}

/* Lexicographically smallest monic irreducible of the given degree (constant term varies fastest). */
inline FieldDescriptor smallest_irreducible(std::uint32_t p, std::uint32_t degree) {
    if (!is_prime(p) || degree == 0) throw DomainError("smallest_irreducible: need prime p and degree >= 1");
    const std::uint64_t count = ipow(p, degree);
    for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<std::uint32_t> f(degree + 1, 0);
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < degree; ++i) {
            f[i] = static_cast<std::uint32_t>(c % p);
            c /= p;
        }
        f[degree] = 1;
        if (is_irreducible(p, f)) return {p, degree, f};
    }
    throw InvariantViolation("no irreducible polynomial found");
}

/*
 * Resolves (p, degree) to a modulus: user overrides first, then the shipped
 * defaults, then the smallest irreducible.
 */
class FieldRegistry {
   public:
    FieldRegistry() = default;
    explicit FieldRegistry(std::vector<FieldDescriptor> overrides) {
        for (auto& d : overrides) overrides_[{d.p, d.degree}] = std::move(d);
    }

    FieldDescriptor descriptor(std::uint32_t p, std::uint32_t degree) const {
        if (auto it = overrides_.find({p, degree}); it != overrides_.end()) return it->second;
        for (const auto& d : default_moduli())
            if (d.p == p && d.degree == degree) return d;
        return smallest_irreducible(p, degree);
    }

    const std::map<std::pair<std::uint32_t, std::uint32_t>, FieldDescriptor>& overrides() const { return overrides_; }

   private:
    std::map<std::pair<std::uint32_t, std::uint32_t>, FieldDescriptor> overrides_;
};

class Field {
   public:
    explicit Field(FieldDescriptor d) : desc_(std::move(d)) {
        const auto p = desc_.p;
        const auto k = desc_.degree;
        if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
        if (k == 0) throw DomainError("field degree must be positive");
        if (desc_.modulus.size() != k + 1 || desc_.modulus.back() != 1)
            throw DomainError("modulus must be monic with degree+1 coefficients");
        for (auto c : desc_.modulus)
            if (c >= p) throw DomainError("modulus coefficient out of range");
        const std::uint64_t q = ipow(p, k);
        if (q > max_field_order) throw DomainError("field order exceeds 2^31");
        if (!is_irreducible(p, desc_.modulus)) throw DomainError("modulus is not irreducible over F_p");
        order_ = static_cast<std::uint32_t>(q);

        // traces of basis elements x^i, which live in the prime field
        basis_trace_.resize(k);
        for (std::uint32_t i = 0; i < k; ++i) {
            const Element xi = static_cast<Element>(ipow(p, i));
            Element acc = 0, cur = xi;
            for (std::uint32_t j = 0; j < k; ++j) {
                acc = add_digits(acc, cur);
                cur = pow_poly(cur, p);
            }
            basis_trace_[i] = acc;  // constant polynomial
        }

        primitive_ = find_primitive();
        if (order_ <= table_limit) {
            exp_.resize(order_ - 1);
            log_.assign(order_, 0);
            Element cur = 1;
            for (std::uint32_t i = 0; i + 1 < order_; ++i) {
                exp_[i] = cur;
                log_[cur] = i;
                cur = mul_poly(cur, primitive_);
            }
            if (order_ <= add_table_limit) {
                add_.resize(std::size_t{order_} * order_);
                for (Element a = 0; a < order_; ++a)
                    for (Element b = 0; b < order_; ++b) add_[std::size_t{a} * order_ + b] = add_digits(a, b);
            }
        }
    }

    static std::shared_ptr<const Field> make(FieldDescriptor d) { return std::make_shared<const Field>(std::move(d)); }

    const FieldDescriptor& descriptor() const noexcept { return desc_; }
    std::uint32_t p() const noexcept { return desc_.p; }
    std::uint32_t degree() const noexcept { return desc_.degree; }
    std::uint32_t order() const noexcept { return order_; }
    Element primitive_element() const noexcept { return primitive_; }

    bool contains(Element a) const noexcept { return a < order_; }

    std::vector<std::uint32_t> digits(Element a) const {
        std::vector<std::uint32_t> d(desc_.degree);
        for (auto& v : d) {
            v = a % desc_.p;
            a /= desc_.p;
        }
        return d;
    }

    Element from_digits(const std::vector<std::uint32_t>& d) const {
        Element r = 0;
        for (std::size_t i = d.size(); i-- > 0;) r = r * desc_.p + (d[i] % desc_.p);
        return r;
    }

    Element add(Element a, Element b) const {
        if (!add_.empty()) return add_[std::size_t{a} * order_ + b];
        return add_digits(a, b);
    }

    Element neg(Element a) const {
        if (desc_.p == 2) return a;
        return scalar_mul(desc_.p - 1, a);
    }

    Element sub(Element a, Element b) const { return add(a, neg(b)); }

    /* Multiplication by an element of the prime field acts digit-wise. */
    Element scalar_mul(std::uint32_t c, Element a) const {
        c %= desc_.p;
        if (c == 0) return 0;
        if (c == 1) return a;
        Element r = 0, place = 1;
        while (a) {
            r += static_cast<Element>(((a % desc_.p) * c) % desc_.p) * place;
            a /= desc_.p;
            place *= desc_.p;
        }
        return r;
    }

    Element mul(Element a, Element b) const {
        if (a == 0 || b == 0) return 0;
        if (!exp_.empty()) {
            std::uint64_t s = std::uint64_t{log_[a]} + log_[b];
            if (s >= order_ - 1) s -= order_ - 1;
            return exp_[s];
        }
        return mul_poly(a, b);
    }

    /* 0^{-1} := 0, which keeps maps like y -> y^{-1} bijective. */
    Element inv(Element a) const {
        if (a == 0) return 0;
        if (!exp_.empty()) return exp_[(order_ - 1 - log_[a]) % (order_ - 1)];
        return pow_poly(a, order_ - 2);
    }

    /* a^e for any integer e; negative e inverts first, and 0^e = 0 for e != 0. */
    Element pow(Element a, std::int64_t e) const {
        if (e == 0) return 1;
        if (a == 0) return 0;
        const std::uint64_t n = order_ - 1;
        std::int64_t r = e % static_cast<std::int64_t>(n);
        if (r < 0) r += static_cast<std::int64_t>(n);
        if (!exp_.empty()) return exp_[(static_cast<std::uint64_t>(log_[a]) * static_cast<std::uint64_t>(r)) % n];
        return pow_poly(a, static_cast<std::uint64_t>(r));
    }

    Element frobenius(Element a, unsigned times = 1) const {
        for (unsigned i = 0; i < times; ++i) a = pow(a, desc_.p);
        return a;
    }

    /* Absolute trace Tr_1^k(a), returned as an element of F_p. */
    std::uint32_t trace_to_prime(Element a) const {
        std::uint64_t acc = 0;
        for (std::uint32_t i = 0; i < desc_.degree && a; ++i) {
            acc += std::uint64_t{a % desc_.p} * basis_trace_[i];
            a /= desc_.p;
        }
        return static_cast<std::uint32_t>(acc % desc_.p);
    }

    /* Discrete log base primitive_element(); requires a != 0 and a table-backed field. */
    std::uint32_t log(Element a) const {
        if (a == 0 || exp_.empty()) throw DomainError("log: zero or field too large for tables");
        return log_[a];
    }

   private:
    static constexpr std::uint32_t table_limit = 1u << 20;
    static constexpr std::uint32_t add_table_limit = 256;

    FieldDescriptor desc_;
    std::uint32_t order_ = 0;
    Element primitive_ = 1;
    std::vector<std::uint32_t> basis_trace_;
    std::vector<Element> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<Element> add_;

    Element add_digits(Element a, Element b) const {
        if (desc_.p == 2) return a ^ b;
        Element r = 0, place = 1;
        while (a || b) {
            r += ((a % desc_.p + b % desc_.p) % desc_.p) * place;
            a /= desc_.p;
            b /= desc_.p;
            place *= desc_.p;
        }
        return r;
    }

    Element mul_poly(Element a, Element b) const {
        const auto p = desc_.p;
        const auto k = desc_.degree;
        std::vector<std::uint64_t> prod(2 * k, 0);
        auto da = digits(a), db = digits(b);
        for (std::uint32_t i = 0; i < k; ++i) {
            if (!da[i]) continue;
            for (std::uint32_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p;
        }
        for (std::uint32_t t = 2 * k - 1; t >= k; --t) {
            const std::uint64_t c = prod[t];
            if (!c) continue;
            prod[t] = 0;
            // x^k = -(m_0 + ... + m_{k-1} x^{k-1})
            for (std::uint32_t i = 0; i < k; ++i)
                prod[t - k + i] = (prod[t - k + i] + (p - desc_.modulus[i]) % p * c) % p;
        }
        Element r = 0;
        for (std::uint32_t i = k; i-- > 0;) r = r * p + static_cast<Element>(prod[i]);
        return r;
    }

    Element pow_poly(Element a, std::uint64_t e) const {
        Element r = 1;
        while (e) {
            if (e & 1) r = mul_poly(r, a);
            a = mul_poly(a, a);
            e >>= 1;
        }
        return r;
    }

    Element find_primitive() const {
        if (order_ == 2) return 1;
        const std::uint64_t n = order_ - 1;
        const auto factors = prime_factors(n);
        for (Element g = 1; g < order_; ++g) {
            bool ok = true;
            for (auto r : factors)
                if (pow_poly(g, n / r) == 1) {
                    ok = false;
                    break;
                }
            if (ok) return g;
        }
        throw InvariantViolation("field has no primitive element");
    }
};

using FieldPtr = std::shared_ptr<const Field>;

/*
 * Fixed embedding of a standalone F_{p^m} into F_{p^n} (m | n), plus the
 * relative trace Tr_m^n landing in the standalone subfield.
 *
 * The image of the generator x of the small field is g^{(p^n-1)/(p^m-1)} for
 * the big field's primitive element g when that is a root of the small
 * modulus (this is the Conway-compatible choice); otherwise the smallest
 * root is used.
 */
class SubfieldEmbedding {
   public:
    SubfieldEmbedding(FieldPtr big, FieldPtr small) : big_(std::move(big)), small_(std::move(small)) {
        if (big_->p() != small_->p()) throw DomainError("subfield embedding: characteristics differ");
        if (big_->degree() % small_->degree() != 0)
            throw DomainError("subfield embedding: degree " + std::to_string(small_->degree()) + " does not divide " +
                              std::to_string(big_->degree()));
        const auto& mod = small_->descriptor().modulus;
        auto is_root = [&](Element r) {
            Element acc = 0;
            for (std::size_t i = mod.size(); i-- > 0;) acc = big_->add(big_->mul(acc, r), mod[i]);
            return acc == 0;
        };
        const std::uint64_t ratio = (std::uint64_t{big_->order()} - 1) / (std::uint64_t{small_->order()} - 1);
        Element root = big_->pow(big_->primitive_element(), static_cast<std::int64_t>(ratio));
        if (small_->degree() == 1) {
            // F_p sits inside as the constants; x is the root of the linear modulus
            root = static_cast<Element>((small_->p() - mod[0]) % small_->p());
        } else if (!is_root(root)) {
            root = 0;
            for (Element r = 0; r < big_->order(); ++r)
                if (is_root(r)) {
                    root = r;
                    break;
                }
            if (root == 0) throw InvariantViolation("small modulus has no root in the big field");
        }
        generator_image_ = root;

        to_big_.resize(small_->order());
        std::vector<Element> powers(small_->degree());
        Element cur = 1;
        for (auto& pw : powers) {
            pw = cur;
            cur = big_->mul(cur, root);
        }
        for (Element s = 0; s < small_->order(); ++s) {
            Element acc = 0, t = s;
            if (small_->degree() == 1) {
                acc = t;  // prime field elements are constants in both
            } else {
                for (std::uint32_t i = 0; i < small_->degree(); ++i) {
                    acc = big_->add(acc, big_->scalar_mul(t % small_->p(), powers[i]));
                    t /= small_->p();
                }
            }
            to_big_[s] = acc;
        }
        from_big_.assign(big_->order(), npos);
        for (Element s = 0; s < small_->order(); ++s) from_big_[to_big_[s]] = s;

        // Tr_m^n of the big field's basis elements, as big-field elements
        const unsigned m = small_->degree();
        const unsigned conj = big_->degree() / m;
        basis_trace_.resize(big_->degree());
        for (std::uint32_t i = 0; i < big_->degree(); ++i) {
            const Element xi = static_cast<Element>(ipow(big_->p(), i));
            Element acc = 0, c = xi;
            for (unsigned j = 0; j < conj; ++j) {
                acc = big_->add(acc, c);
                c = big_->frobenius(c, m);
            }
            basis_trace_[i] = acc;
        }
    }

    const Field& big() const noexcept { return *big_; }
    const Field& small() const noexcept { return *small_; }
    const FieldPtr& big_ptr() const noexcept { return big_; }
    const FieldPtr& small_ptr() const noexcept { return small_; }
    Element generator_image() const noexcept { return generator_image_; }

    Element embed(Element s) const { return to_big_.at(s); }

    bool in_subfield(Element b) const { return from_big_.at(b) != npos; }

    Element restrict(Element b) const {
        const auto s = from_big_.at(b);
        if (s == npos) throw DomainError("element is not in the embedded subfield");
        return s;
    }

    /* Tr_m^n(x) as a big-field element (lies in the embedded subfield). */
    Element trace_in_big(Element x) const {
        Element acc = 0;
        for (std::uint32_t i = 0; i < big_->degree() && x; ++i) {
            acc = big_->add(acc, big_->scalar_mul(x % big_->p(), basis_trace_[i]));
            x /= big_->p();
        }
        return acc;
    }

    /* Tr_m^n(x) as an element of the standalone subfield. */
    Element trace(Element x) const { return restrict(trace_in_big(x)); }

    /* c * x for c in the standalone subfield and x in the big field. */
    Element scale(Element c, Element x) const { return big_->mul(embed(c), x); }

   private:
    static constexpr Element npos = ~Element{0};
    FieldPtr big_, small_;
    Element generator_image_ = 0;
    std::vector<Element> to_big_;
    std::vector<Element> from_big_;
    std::vector<Element> basis_trace_;
};

}  // namespace bentpart
