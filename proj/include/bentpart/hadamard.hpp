#pragma once

/*
 * Generalized Hadamard matrices H = [zeta^{f(x-y)}] stored as exponent
 * tables. Products are exact: each entry of a product is accumulated as p
 * exponent counts and compared in canonical cyclotomic form.
 */

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bent_analysis.hpp"
#include "cyclotomic.hpp"
#include "errors.hpp"
#include "function_table.hpp"
#include "partition.hpp"
#include "parallel.hpp"
#include "transform.hpp"

namespace bentpart {

inline constexpr std::uint64_t max_dense_matrix_order = std::uint64_t{1} << 12;

class GHMatrix {
   public:
    GHMatrix() = default;
    GHMatrix(std::uint32_t p, std::uint64_t N, std::vector<std::uint8_t> exps) : p_(p), N_(N), e_(std::move(exps)) {
        if (e_.size() != N_ * N_) throw DomainError("GHMatrix: need N*N exponents");
        for (auto v : e_)
            if (v >= p_) throw DomainError("GHMatrix: exponent out of range");
    }

    std::uint32_t p() const noexcept { return p_; }
    std::uint64_t order() const noexcept { return N_; }
    std::uint8_t exponent(std::uint64_t i, std::uint64_t j) const { return e_[i * N_ + j]; }
    CycInt at(std::uint64_t i, std::uint64_t j) const { return CycInt::root(p_, exponent(i, j)); }
    const std::vector<std::uint8_t>& exponents() const noexcept { return e_; }

    friend bool operator==(const GHMatrix& a, const GHMatrix& b) {
        return a.p_ == b.p_ && a.N_ == b.N_ && a.e_ == b.e_;
    }

   private:
    std::uint32_t p_ = 2;
    std::uint64_t N_ = 0;
    std::vector<std::uint8_t> e_;
};

/* [zeta^{f(x-y)}]_{x,y}. */
inline GHMatrix ghm_from_function(const FunctionTable& f) {
    require_pary(f, "ghm_from_function");
    const Space& s = f.domain();
    const auto N = s.size();
    if (N > max_dense_matrix_order)
        throw RouteRefused("hadamard", "p^n = " + std::to_string(N) + " exceeds the dense limit 2^12; use eq29");
    std::vector<std::uint8_t> e(N * N);
    for (Index x = 0; x < N; ++x)
        for (Index y = 0; y < N; ++y) e[x * N + y] = f[s.sub(x, y)];
    return GHMatrix(f.p(), N, std::move(e));
}

namespace detail {

/* Canonical coefficients c_k - c_{p-1} of a count vector; p = 2 gives c_0 - c_1. */
inline void canonical_counts(const std::int64_t* c, std::uint32_t p, std::int64_t* out) {
    for (std::uint32_t k = 0; k + 1 < p; ++k) out[k] = c[k] - c[p - 1];
}

/* Exponent view of H, conj(H)^T, ... as a function (i, j) -> exponent. */
struct ExpView {
    const GHMatrix* m;
    bool conjugate;
    bool transpose;
    std::uint8_t operator()(std::uint64_t i, std::uint64_t j) const {
        const std::uint32_t p = m->p();
        const std::uint8_t e = transpose ? m->exponent(j, i) : m->exponent(i, j);
        return conjugate ? static_cast<std::uint8_t>((p - e) % p) : e;
    }
};

/*
 * A * B * C with all three given as exponent views; the result is N*N
 * canonical coefficient vectors of length p - 1.
 */
inline std::vector<std::int64_t> triple_product(const ExpView& A, const ExpView& B, const ExpView& C, std::uint32_t p,
                                                std::uint64_t N, unsigned threads) {
    std::vector<std::int64_t> out(N * N * (p - 1));
    parallel_for(
        static_cast<std::size_t>(N),
        [&](std::size_t i) {
            // row i of A*B as counts
            std::vector<std::int64_t> ab(N * p, 0);
            for (std::uint64_t v = 0; v < N; ++v) {
                const std::uint32_t a = A(i, v);
                for (std::uint64_t u = 0; u < N; ++u) ++ab[u * p + (a + B(v, u)) % p];
            }
            std::vector<std::int64_t> row(N * p, 0);
            for (std::uint64_t u = 0; u < N; ++u) {
                const std::int64_t* c = ab.data() + u * p;
                for (std::uint64_t j = 0; j < N; ++j) {
                    const std::uint32_t s = C(u, j);
                    std::int64_t* r = row.data() + j * p;
                    for (std::uint32_t k = 0; k < p; ++k) r[(k + s) % p] += c[k];
                }
            }
            for (std::uint64_t j = 0; j < N; ++j) canonical_counts(row.data() + j * p, p, out.data() + (i * N + j) * (p - 1));
        },
        threads);
    return out;
}

}  // namespace detail

/* H conj(H)^T = N I, exactly. */
inline bool is_generalized_hadamard(const GHMatrix& H, unsigned threads = 0) {
    const std::uint32_t p = H.p();
    const auto N = H.order();
    std::vector<char> bad(N, 0);
    parallel_for(
        static_cast<std::size_t>(N),
        [&](std::size_t i) {
            std::vector<std::int64_t> c(p), canon(p);
            for (std::uint64_t j = 0; j < N && !bad[i]; ++j) {
                std::fill(c.begin(), c.end(), 0);
                for (std::uint64_t u = 0; u < N; ++u) ++c[(H.exponent(i, u) + p - H.exponent(j, u)) % p];
                if (p == 2) {
                    const std::int64_t v = c[0] - c[1];
                    if (v != (i == j ? static_cast<std::int64_t>(N) : 0)) bad[i] = 1;
                    continue;
                }
                detail::canonical_counts(c.data(), p, canon.data());
                for (std::uint32_t k = 0; k + 1 < p; ++k) {
                    const std::int64_t want = (k == 0 && i == j) ? static_cast<std::int64_t>(N) : 0;
                    if (canon[k] != want) bad[i] = 1;
                }
            }
        },
        threads);
    for (auto b : bad)
        if (b) return false;
    return true;
}

/*
 * nu with p^{-n/2} s_z in nu * {zeta^j} for every row sum s_z of H_z,
 * computed pointwise. p = 2 gives 1 for any bent f.
 */
inline std::optional<int> weakly_regular_type(const FunctionTable& f) {
    require_pary(f, "weakly_regular_type");
    if (f.n() % 2) throw DomainError("weakly_regular_type needs even n");
    const std::uint32_t p = f.p();
    const auto scale = static_cast<std::int64_t>(ipow(p, f.n() / 2));
    std::optional<int> nu;
    for (Index z = 0; z < f.size(); ++z) {
        auto d = walsh_point(f, z).decompose_signed_root(scale);
        if (!d) return std::nullopt;
        if (p == 2) continue;
        if (!nu) nu = d->sign;
        if (*nu != d->sign) return std::nullopt;
    }
    return p == 2 ? 1 : nu.value_or(1);
}

struct TripleProductResult {
    bool all_hadamard = false;
    bool all_same = false;
    std::optional<int> nu;  // shared weakly-regular type when odd p
    std::size_t pairs = 0;
    std::string detail;
    bool holds() const { return all_hadamard && all_same && nu.has_value(); }
};

/*
 * Dense check: every H_c generalized Hadamard (of one weakly regular type for
 * odd p) and H_d H_e H_{d+e} (p = 2) or H_d conj(H_e)^T conj(H_{d-e})^T
 * (odd p) the same for all d != e.
 */
inline TripleProductResult triple_product_check(const FunctionTable& F, unsigned threads = 0) {
    const Space& cod = F.codomain();
    const std::uint32_t p = F.p();
    const auto q = cod.size();
    const auto N = F.size();
    if (N > max_dense_matrix_order)
        throw RouteRefused("hadamard", "p^n = " + std::to_string(N) + " exceeds the dense limit 2^12; use eq29");
    TripleProductResult r;
    std::vector<GHMatrix> H(q);
    for (Index c = 1; c < q; ++c) {
        auto fc = component(F, c);
        H[c] = ghm_from_function(fc);
        if (!is_generalized_hadamard(H[c], threads)) {
            r.detail = "H_" + std::to_string(c) + " is not generalized Hadamard";
            return r;
        }
        if (p == 2) {
            r.nu = 1;
        } else {
            auto nu = F.n() % 2 ? std::optional<int>() : weakly_regular_type(fc);
            if (!nu || (r.nu && *r.nu != *nu)) {
                r.all_hadamard = true;
                r.nu.reset();
                r.detail = "H_" + std::to_string(c) + " breaks the shared weakly regular type";
                return r;
            }
            r.nu = nu;
        }
    }
    r.all_hadamard = true;
    std::optional<std::vector<std::int64_t>> first;
    for (Index d = 1; d < q; ++d)
        for (Index e = 1; e < q; ++e) {
            if (d == e) continue;
            if (p == 2 && e < d) continue;
            const Index third = p == 2 ? cod.add(d, e) : cod.sub(d, e);
            detail::ExpView A{&H[d], false, false};
            detail::ExpView B{&H[e], p != 2, p != 2};
            detail::ExpView C{&H[third], p != 2, p != 2};
            auto prod = detail::triple_product(A, B, C, p, N, threads);
            ++r.pairs;
            if (!first) {
                first = std::move(prod);
            } else if (prod != *first) {
                r.detail = "triple products differ at pair (" + std::to_string(d) + ", " + std::to_string(e) + ")";
                return r;
            }
        }
    r.all_same = true;
    r.detail = "all " + std::to_string(r.pairs) + " triple products coincide";
    return r;
}

/*
 * Shortcut: the triple products coincide iff the Delta functions of the
 * duals do (the same pairs, reindexed).
 */
inline bool triple_product_shortcut(const FunctionTable& F, const VectorialReport& vr) {
    if (!vr.vectorial_bent || !vr.uniform_epsilon) return false;
    const Space& cod = F.codomain();
    const std::uint32_t p = F.p();
    const auto q = cod.size();
    std::optional<std::vector<std::uint8_t>> common;
    for (Index d = 1; d < q; ++d)
        for (Index e = d; e < q; ++e) {
            if (p == 2 && d == e) continue;
            const Index s = cod.add(d, e);
            if (s == 0) continue;
            auto delta = dual_delta(vr.at(d).dual->values(), vr.at(e).dual->values(), vr.at(s).dual->values(), p);
            if (!common) common = std::move(delta);
            else if (delta != *common) return false;
        }
    return true;
}

/* One row per line, exponents separated by spaces; p = 2 also reads + and -. */
inline void write_matrix(std::ostream& os, const GHMatrix& H) {
    os << "p " << H.p() << " N " << H.order() << "\n";
    for (std::uint64_t i = 0; i < H.order(); ++i) {
        for (std::uint64_t j = 0; j < H.order(); ++j) os << (j ? " " : "") << int(H.exponent(i, j));
        os << "\n";
    }
}

inline GHMatrix read_matrix(std::istream& is, std::uint32_t p) {
    std::vector<std::uint8_t> e;
    std::uint64_t N = 0, rows = 0;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("p ", 0) == 0) {
            std::istringstream hs(line);
            std::string tp, tn;
            std::uint32_t hp = 0;
            hs >> tp >> hp >> tn >> N;
            if (hp != p) throw ParseError("matrix header declares p = " + std::to_string(hp));
            continue;
        }
        std::istringstream ls(line);
        std::string tok;
        std::uint64_t cols = 0;
        while (ls >> tok) {
            // "+-+-" written without spaces is also accepted for p = 2
            for (std::size_t k = 0; k < tok.size();) {
                int v = -1;
                if (p == 2 && tok[k] == '+') v = 0, ++k;
                else if (p == 2 && tok[k] == '-') v = 1, ++k;
                else {
                    std::size_t used = 0;
                    try {
                        v = std::stoi(tok.substr(k), &used);
                    } catch (const std::exception&) {
                        throw ParseError("bad matrix entry '" + tok + "'");
                    }
                    k += used;
                }
                if (v < 0 || static_cast<std::uint32_t>(v) >= p) throw ParseError("matrix entry out of range: " + tok);
                e.push_back(static_cast<std::uint8_t>(v));
                ++cols;
            }
        }
        if (N == 0) N = cols;
        if (cols != N) throw ParseError("row " + std::to_string(rows) + " has " + std::to_string(cols) + " entries");
        ++rows;
    }
    if (rows != N || N == 0) throw ParseError("matrix is not square");
    return GHMatrix(p, N, std::move(e));
}

}  // namespace bentpart
