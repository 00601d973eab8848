#pragma once

/*
 * Exact elements of Z[zeta_p] in the power basis {1, zeta, ..., zeta^{p-2}}.
 *
 * zeta^{p-1} is always rewritten as -(1 + zeta + ... + zeta^{p-2}); the power
 * basis is an integral basis, so two values are equal iff their coefficient
 * vectors are. Coefficients are checked 128-bit integers, or boost cpp_int
 * when BENTPART_ARBITRARY_PRECISION is defined.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

#ifdef BENTPART_ARBITRARY_PRECISION
#include <boost/multiprecision/cpp_int.hpp>
#endif

namespace bentpart {

#ifdef BENTPART_ARBITRARY_PRECISION
using Coefficient = boost::multiprecision::cpp_int;

namespace detail {
inline Coefficient checked_add(const Coefficient& a, const Coefficient& b) { return a + b; }
inline Coefficient checked_sub(const Coefficient& a, const Coefficient& b) { return a - b; }
inline Coefficient checked_mul(const Coefficient& a, const Coefficient& b) { return a * b; }
}  // namespace detail
#else
using Coefficient = __int128;

namespace detail {
inline Coefficient checked_add(Coefficient a, Coefficient b) {
    Coefficient r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("cyclotomic coefficient overflow in add");
    return r;
}
inline Coefficient checked_sub(Coefficient a, Coefficient b) {
    Coefficient r;
    if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticError("cyclotomic coefficient overflow in sub");
    return r;
}
inline Coefficient checked_mul(Coefficient a, Coefficient b) {
    Coefficient r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("cyclotomic coefficient overflow in mul");
    return r;
}
}  // namespace detail
#endif

inline std::string to_string(const Coefficient& v) {
#ifdef BENTPART_ARBITRARY_PRECISION
    return v.str();
#else
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    std::string s;
    while (u) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    return {s.rbegin(), s.rend()};
#endif
}

/* a = sign * scale * zeta^exponent */
struct SignedRoot {
    int sign = 1;
    std::uint32_t exponent = 0;
    friend bool operator==(const SignedRoot&, const SignedRoot&) = default;
};

class CycInt {
   public:
    CycInt() : p_(2), c_(1, 0) {}
    explicit CycInt(std::uint32_t p) : p_(p), c_(p - 1, 0) {
        if (p < 2) throw DomainError("CycInt needs a prime p >= 2");
    }

    static CycInt from_integer(std::uint32_t p, Coefficient k) {
        CycInt r(p);
        r.c_[0] = k;
        return r;
    }

    /* zeta^j, j taken mod p */
    static CycInt root(std::uint32_t p, std::uint64_t j) {
        std::vector<Coefficient> g(p, 0);
        g[j % p] = 1;
        return from_group_ring(p, g);
    }

    /* sum_j counts[j] zeta^j over j = 0..p-1 */
    static CycInt from_exponent_counts(std::uint32_t p, std::span<const std::int64_t> counts) {
        if (counts.size() != p) throw DomainError("from_exponent_counts: need p counts");
        std::vector<Coefficient> g(counts.begin(), counts.end());
        return from_group_ring(p, g);
    }

    /* Canonical coefficients (length p-1), or a length-p vector over 1..zeta^{p-1} that gets reduced. */
    static CycInt from_coefficients(std::uint32_t p, std::vector<Coefficient> coeffs) {
        if (coeffs.size() == p) return from_group_ring(p, coeffs);
        if (coeffs.size() != p - 1) throw DomainError("from_coefficients: need p-1 or p coefficients");
        CycInt r(p);
        r.c_ = std::move(coeffs);
        return r;
    }

    /* Reduce an element of Z[x]/(x^p - 1) given by p coefficients. */
    static CycInt from_group_ring(std::uint32_t p, const std::vector<Coefficient>& g) {
        CycInt r(p);
        for (std::uint32_t i = 0; i + 1 < p; ++i) r.c_[i] = detail::checked_sub(g[i], g[p - 1]);
        return r;
    }

    std::uint32_t p() const noexcept { return p_; }
    const std::vector<Coefficient>& coeffs() const noexcept { return c_; }

    friend bool operator==(const CycInt& a, const CycInt& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

    CycInt operator-() const {
        CycInt r(p_);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = detail::checked_sub(0, c_[i]);
        return r;
    }

    CycInt& operator+=(const CycInt& o) {
        same_p(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = detail::checked_add(c_[i], o.c_[i]);
        return *this;
    }
    CycInt& operator-=(const CycInt& o) {
        same_p(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = detail::checked_sub(c_[i], o.c_[i]);
        return *this;
    }
    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }

    friend CycInt operator*(const CycInt& a, const CycInt& b) {
        a.same_p(b);
        const std::uint32_t p = a.p_;
        if (p == 2) return from_integer(2, detail::checked_mul(a.c_[0], b.c_[0]));
        // cyclic convolution in Z[x]/(x^p - 1), then reduce
        std::vector<Coefficient> g(p, 0);
        for (std::uint32_t i = 0; i + 1 < p; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::uint32_t j = 0; j + 1 < p; ++j) {
                if (b.c_[j] == 0) continue;
                auto& slot = g[(i + j) % p];
                slot = detail::checked_add(slot, detail::checked_mul(a.c_[i], b.c_[j]));
            }
        }
        return from_group_ring(p, g);
    }
    CycInt& operator*=(const CycInt& o) { return *this = *this * o; }

    CycInt scaled(const Coefficient& k) const {
        CycInt r(p_);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = detail::checked_mul(c_[i], k);
        return r;
    }

    /* Multiplication by zeta^j is a rotation in the group ring. */
    CycInt times_root(std::uint64_t j) const {
        if (p_ == 2) return (j % 2) ? -*this : *this;
        std::vector<Coefficient> g(p_, 0);
        for (std::uint32_t i = 0; i + 1 < p_; ++i) g[(i + j) % p_] = c_[i];
        return from_group_ring(p_, g);
    }

    /* Complex conjugation zeta -> zeta^{-1}. */
    CycInt conj() const {
        if (p_ == 2) return *this;
        std::vector<Coefficient> g(p_, 0);
        for (std::uint32_t i = 0; i + 1 < p_; ++i) g[(p_ - i) % p_] = c_[i];
        return from_group_ring(p_, g);
    }

    /* |a|^2 = a * conj(a) */
    CycInt norm() const { return *this * conj(); }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }

    std::optional<Coefficient> as_rational_integer() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return std::nullopt;
        return c_[0];
    }

    /*
     * (sign, j) with *this == sign * scale * zeta^j, trying all 2p candidates.
     * Candidates with sign +1 come first, so for p = 2 the sign is always +1.
     */
    std::optional<SignedRoot> decompose_signed_root(const Coefficient& scale) const {
        if (scale <= 0) throw DomainError("decompose_signed_root: scale must be positive");
        for (int sign : {1, -1}) {
            const Coefficient s = sign > 0 ? scale : detail::checked_sub(0, scale);
            for (std::uint32_t j = 0; j < p_; ++j)
                if (matches_root(s, j)) return SignedRoot{sign, j};
        }
        return std::nullopt;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ", ";
            s += bentpart::to_string(c_[i]);
        }
        return s + ")";
    }

   private:
    std::uint32_t p_;
    std::vector<Coefficient> c_;

    void same_p(const CycInt& o) const {
        if (o.p_ != p_) throw DomainError("CycInt operands have different p");
    }

    /* does *this equal s * zeta^j in canonical form */
    bool matches_root(const Coefficient& s, std::uint32_t j) const {
        if (p_ == 2) return c_[0] == (j == 0 ? s : Coefficient(0) - s);
        if (j + 1 < p_) {
            for (std::uint32_t i = 0; i + 1 < p_; ++i)
                if (c_[i] != (i == j ? s : Coefficient(0))) return false;
            return true;
        }
        // zeta^{p-1} = -(1 + ... + zeta^{p-2})
        for (const auto& v : c_)
            if (v != Coefficient(0) - s) return false;
        return true;
    }
};

}  // namespace bentpart
