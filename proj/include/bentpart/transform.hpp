#pragma once

/*
 * Walsh transforms W_f(a) = sum_x zeta^{f(x) - <a,x>} of p-ary tables.
 *
 * The fast path runs a radix-p transform in digit coordinates,
 * T(b) = sum_x zeta^{f(x) - b.x}, and reads W(a) = T(Ma) where M is the Gram
 * map of the space's inner product. p = 2 uses an in-place int32 WHT; odd p
 * keeps p exponent counts per entry (the group ring Z[x]/(x^p - 1)), where a
 * twist by zeta^s is a rotation.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "function_table.hpp"
#include "parallel.hpp"
#include "space.hpp"

namespace bentpart {

namespace detail {

template <class Fn>
void scan_level(const std::vector<std::vector<std::uint8_t>>& rows, const Space& s, std::size_t level, Index base,
                std::uint32_t acc, Fn& fn) {
    const auto& row = rows[level];
    const std::uint32_t p = s.p();
    if (level == 0) {
        if (p == 2) {
            for (std::size_t j = 0; j < row.size(); ++j) fn(base + j, acc ^ row[j]);
        } else {
            for (std::size_t j = 0; j < row.size(); ++j) {
                std::uint32_t v = acc + row[j];
                if (v >= p) v -= p;
                fn(base + j, v);
            }
        }
        return;
    }
    const auto stride = s.component(level).stride;
    for (std::size_t j = 0; j < row.size(); ++j) {
        std::uint32_t v = acc + row[j];
        if (v >= p) v -= p;
        scan_level(rows, s, level - 1, base + j * stride, v, fn);
    }
}

}  // namespace detail

/* Calls fn(x, <a,x>) for every x in index order, streaming per-component rows. */
template <class Fn>
void for_each_inner_product(const Space& s, Index a, Fn&& fn) {
    s.check(a);
    const auto k = s.component_count();
    std::vector<std::vector<std::uint8_t>> rows(k);
    for (std::size_t i = 0; i < k; ++i) rows[i] = s.component_row(i, s.component_value(a, i));
    detail::scan_level(rows, s, k - 1, 0, 0, fn);
}

inline void require_pary(const FunctionTable& f, const char* what) {
    if (f.empty()) throw DomainError(std::string(what) + ": empty table");
    if (f.codomain().dimension() != 1) throw DomainError(std::string(what) + ": codomain must be F_p");
}

/* Direct summation over all p^n points. */
inline CycInt walsh_point(const FunctionTable& f, Index a) {
    require_pary(f, "walsh_point");
    const std::uint32_t p = f.p();
    std::vector<std::int64_t> counts(p, 0);
    const auto& v = f.values();
    for_each_inner_product(f.domain(), a, [&](Index x, std::uint32_t ip) {
        std::uint32_t e = v[x] + p - ip;
        if (e >= p) e -= p;
        ++counts[e];
    });
    return CycInt::from_exponent_counts(p, counts);
}

inline CycInt walsh_point(const FunctionTable& f, const Point& a) {
    if (!a.space || !a.space->same_as(f.domain())) throw DomainError("walsh_point: point from another space");
    return walsh_point(f, a.index);
}

/*
 * Full spectrum, stored flat as p - 1 canonical power-basis coefficients per
 * point. |coefficients| <= p^n <= 2^26, so int32 is exact.
 */
class WalshSpectrum {
   public:
    WalshSpectrum() = default;
    WalshSpectrum(std::uint32_t p, std::uint32_t n, std::vector<std::int32_t> data)
        : p_(p), n_(n), size_(ipow(p, n)), data_(std::move(data)) {
        if (data_.size() != size_ * (p_ - 1)) throw InvariantViolation("spectrum size mismatch");
    }

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t n() const noexcept { return n_; }
    std::uint64_t size() const noexcept { return size_; }

    std::span<const std::int32_t> coeffs(Index a) const {
        return {data_.data() + a * (p_ - 1), static_cast<std::size_t>(p_ - 1)};
    }

    CycInt at(Index a) const {
        if (a >= size_) throw DomainError("spectrum index out of range");
        auto c = coeffs(a);
        return CycInt::from_coefficients(p_, std::vector<Coefficient>(c.begin(), c.end()));
    }
    CycInt operator[](Index a) const { return at(a); }

    /* For p = 2 the value is a plain integer. */
    std::int32_t integer(Index a) const {
        if (p_ != 2) throw DomainError("integer spectrum value needs p = 2");
        return data_.at(a);
    }

    /* (sign, j) with W(a) = sign * scale * zeta^j, read off the coefficients without lifting. */
    std::optional<SignedRoot> signed_root(Index a, std::int64_t scale) const {
        auto c = coeffs(a);
        if (p_ == 2) {
            if (c[0] == scale) return SignedRoot{1, 0};
            if (c[0] == -scale) return SignedRoot{1, 1};
            return std::nullopt;
        }
        // single nonzero coefficient s at j < p-1, or all coefficients equal to -s (j = p-1)
        std::size_t nz = 0, pos = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) {
                ++nz;
                pos = i;
            }
        if (nz == 1) {
            if (c[pos] == scale) return SignedRoot{1, static_cast<std::uint32_t>(pos)};
            if (c[pos] == -scale) return SignedRoot{-1, static_cast<std::uint32_t>(pos)};
            return std::nullopt;
        }
        if (nz == c.size()) {
            bool all_neg = true, all_pos = true;
            for (auto v : c) {
                all_neg = all_neg && v == -scale;
                all_pos = all_pos && v == scale;
            }
            if (all_neg) return SignedRoot{1, p_ - 1};
            if (all_pos) return SignedRoot{-1, p_ - 1};
        }
        return std::nullopt;
    }

    /* |W(a)|^2 as a rational integer, or nullopt when it is irrational. */
    std::optional<Coefficient> squared_magnitude(Index a) const {
        if (p_ == 2) {
            const Coefficient v = data_[a];
            return v * v;
        }
        return at(a).norm().as_rational_integer();
    }

    /* sum_a |W(a)|^2 == p^{2n}, exactly; single terms need not be rational for p >= 5. */
    bool parseval_holds() const {
        if (p_ == 2) {
            Coefficient total = 0;
            for (auto v : data_) total = detail::checked_add(total, Coefficient(v) * Coefficient(v));
            return total == Coefficient(size_) * Coefficient(size_);
        }
        CycInt total(p_);
        for (Index a = 0; a < size_; ++a) total += at(a).norm();
        return total.as_rational_integer() == std::optional<Coefficient>(Coefficient(size_) * Coefficient(size_));
    }

    const std::vector<std::int32_t>& raw() const noexcept { return data_; }

   private:
    std::uint32_t p_ = 2;
    std::uint32_t n_ = 0;
    std::uint64_t size_ = 0;
    std::vector<std::int32_t> data_;
};

namespace detail {

/* Index of Ma given per-component Gram maps. */
inline Index apply_gram(const Space& s, const std::vector<std::vector<Index>>& maps, Index a) {
    Index b = 0;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const auto& c = s.component(i);
        b += maps[i][s.component_value(a, i)] * c.stride;
    }
    return b;
}

inline void wht_inplace(std::vector<std::int32_t>& t, unsigned threads) {
    const std::size_t n = t.size();
    for (std::size_t h = 1; h < n; h <<= 1) {
        const std::size_t blocks = n / (2 * h);
        parallel_for(
            blocks,
            [&](std::size_t blk) {
                std::int32_t* base = t.data() + blk * 2 * h;
                for (std::size_t j = 0; j < h; ++j) {
                    const std::int32_t u = base[j], v = base[j + h];
                    base[j] = u + v;
                    base[j + h] = u - v;
                }
            },
            blocks >= 64 ? threads : 1);
    }
}

/* Radix-p transform on p counts per entry: new[b] = sum_x zeta^{-bx} old[x] along each digit. */
inline void group_ring_transform(std::vector<std::int32_t>& g, std::uint32_t p, std::uint64_t size, unsigned threads) {
    std::vector<std::int32_t> scratch;
    for (std::uint64_t place = 1; place < size; place *= p) {
        const std::uint64_t groups = size / p;
        parallel_for(
            static_cast<std::size_t>(groups),
            [&](std::size_t gi) {
                const std::uint64_t lo = gi % place, hi = gi / place;
                const std::uint64_t first = hi * place * p + lo;
                std::int32_t buf[7 * 7];
                std::int32_t out[7 * 7];
                for (std::uint32_t x = 0; x < p; ++x)
                    for (std::uint32_t k = 0; k < p; ++k) buf[x * p + k] = g[(first + x * place) * p + k];
                for (std::uint32_t b = 0; b < p; ++b) {
                    std::int32_t* o = out + b * p;
                    for (std::uint32_t k = 0; k < p; ++k) o[k] = 0;
                    for (std::uint32_t x = 0; x < p; ++x) {
                        const std::uint32_t shift = (p - (b * x) % p) % p;  // zeta^{-bx}
                        const std::int32_t* in = buf + x * p;
                        for (std::uint32_t k = 0; k < p; ++k) o[(k + shift) % p] += in[k];
                    }
                }
                for (std::uint32_t b = 0; b < p; ++b)
                    for (std::uint32_t k = 0; k < p; ++k) g[(first + b * place) * p + k] = out[b * p + k];
            },
            groups >= 64 ? threads : 1);
    }
}

}  // namespace detail

/* Largest p handled by the fast odd-p transform's fixed-size buffers. */
inline constexpr std::uint32_t max_fast_transform_p = 7;

inline WalshSpectrum walsh_full(const FunctionTable& f, unsigned threads = 0) {
    require_pary(f, "walsh_full");
    const Space& s = f.domain();
    const std::uint32_t p = s.p();
    const std::uint64_t size = s.size();
    const auto maps = s.gram_maps();
    const auto& v = f.values();
    if (p == 2) {
        std::vector<std::int32_t> t(size);
        for (Index x = 0; x < size; ++x) t[x] = v[x] ? -1 : 1;
        detail::wht_inplace(t, threads);
        std::vector<std::int32_t> w(size);
        for (Index a = 0; a < size; ++a) w[a] = t[detail::apply_gram(s, maps, a)];
        return WalshSpectrum(2, s.dimension(), std::move(w));
    }
    if (p > max_fast_transform_p) {
        // direct summation fallback for large p
        std::vector<std::int32_t> w(size * (p - 1));
        parallel_for(
            static_cast<std::size_t>(size),
            [&](std::size_t a) {
                auto c = walsh_point(f, a);
                for (std::uint32_t k = 0; k + 1 < p; ++k) w[a * (p - 1) + k] = static_cast<std::int32_t>(c.coeffs()[k]);
            },
            threads);
        return WalshSpectrum(p, s.dimension(), std::move(w));
    }
    std::vector<std::int32_t> g(size * p, 0);
    for (Index x = 0; x < size; ++x) g[x * p + v[x]] = 1;
    detail::group_ring_transform(g, p, size, threads);
    // canonical coefficients c_k - c_{p-1}, then permute by the Gram map
    std::vector<std::int32_t> w(size * (p - 1));
    for (Index a = 0; a < size; ++a) {
        const Index b = detail::apply_gram(s, maps, a);
        const std::int32_t* src = g.data() + b * p;
        for (std::uint32_t k = 0; k + 1 < p; ++k) w[a * (p - 1) + k] = src[k] - src[p - 1];
    }
    return WalshSpectrum(p, s.dimension(), std::move(w));
}

}  // namespace bentpart
