#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "function_table.hpp"
#include "parallel.hpp"
#include "transform.hpp"

namespace bentpart {

enum class Regularity { regular, weakly_regular_not_regular, not_weakly_regular, not_bent };

inline const char* to_string(Regularity r) {
    switch (r) {
        case Regularity::regular: return "regular";
        case Regularity::weakly_regular_not_regular: return "weakly_regular_not_regular";
        case Regularity::not_weakly_regular: return "not_weakly_regular";
        case Regularity::not_bent: return "not_bent";
    }
    return "?";
}

struct BentReport {
    bool is_bent = false;
    Regularity regularity = Regularity::not_bent;
    std::optional<int> epsilon;
    std::optional<FunctionTable> dual;
    std::string diagnostic;

    bool weakly_regular() const {
        return regularity == Regularity::regular || regularity == Regularity::weakly_regular_not_regular;
    }
};

/* Classification from a precomputed spectrum; the dual lives on `domain` with codomain F_p. */
inline BentReport analyze_spectrum(const WalshSpectrum& w, const SpacePtr& domain, bool keep_dual = true) {
    BentReport r;
    const std::uint32_t p = w.p(), n = w.n();
    const std::uint64_t N = w.size();
    const auto pn = Coefficient(N);
    if (n % 2 == 0) {
        const auto scale = static_cast<std::int64_t>(ipow(p, n / 2));
        std::vector<std::uint8_t> dual(keep_dual ? N : 0);
        int eps = 0;
        bool all_decompose = true, mixed = false;
        for (Index a = 0; a < N; ++a) {
            auto d = w.signed_root(a, scale);
            if (!d) {
                all_decompose = false;
                break;
            }
            if (eps == 0) eps = d->sign;
            mixed = mixed || d->sign != eps;
            if (keep_dual) dual[a] = static_cast<std::uint8_t>(d->exponent);
        }
        if (all_decompose) {
            r.is_bent = true;
            if (mixed) {
                r.regularity = Regularity::not_weakly_regular;
                r.diagnostic = "Walsh signs differ across points";
                return r;
            }
            r.epsilon = eps;
            r.regularity = eps == 1 ? Regularity::regular : Regularity::weakly_regular_not_regular;
            if (keep_dual) r.dual = FunctionTable(domain, Space::scalars(p), std::move(dual));
            return r;
        }
    }
    // general magnitude test; bent functions that are not weakly regular end up here
    for (Index a = 0; a < N; ++a) {
        auto m = w.squared_magnitude(a);
        if (!m || *m != pn) {
            r.is_bent = false;
            r.regularity = Regularity::not_bent;
            r.diagnostic = "|W(" + std::to_string(a) + ")|^2 != p^n";
            return r;
        }
    }
    r.is_bent = true;
    r.regularity = Regularity::not_weakly_regular;
    r.diagnostic = n % 2 ? "odd n: only bentness is decided" : "some W(a) is not +-p^{n/2} times a root of unity";
    return r;
}

inline BentReport analyze(const FunctionTable& f, unsigned threads = 0, bool keep_dual = true) {
    auto w = walsh_full(f, threads);
    return analyze_spectrum(w, f.domain_ptr(), keep_dual);
}

/* F_c(x) = <c, F(x)> in the codomain. */
inline FunctionTable component(const FunctionTable& F, Index c) {
    const Space& cod = F.codomain();
    cod.check(c);
    if (c == 0) throw DomainError("component: c must be nonzero");
    std::vector<std::uint8_t> row(cod.size());
    for (Index y = 0; y < cod.size(); ++y) row[y] = static_cast<std::uint8_t>(cod.inner_product(c, y));
    std::vector<std::uint8_t> v(F.size());
    const auto& src = F.values();
    for (Index x = 0; x < F.size(); ++x) v[x] = row[src[x]];
    return FunctionTable(F.domain_ptr(), Space::scalars(F.p()), std::move(v));
}

struct VectorialReport {
    std::vector<BentReport> components;  // indexed by c; entry 0 unused
    bool vectorial_bent = false;
    bool all_weakly_regular = false;
    std::optional<int> uniform_epsilon;

    const BentReport& at(Index c) const { return components.at(c); }
};

inline VectorialReport analyze_vectorial(const FunctionTable& F, unsigned threads = 0, bool keep_duals = true) {
    const auto q = F.codomain().size();
    VectorialReport r;
    r.components.resize(q);
    parallel_for(
        static_cast<std::size_t>(q - 1),
        [&](std::size_t i) { r.components[i + 1] = analyze(component(F, i + 1), 1, keep_duals); }, threads);
    r.vectorial_bent = q > 1;
    r.all_weakly_regular = q > 1;
    std::optional<int> eps;
    bool uniform = true;
    for (Index c = 1; c < q; ++c) {
        const auto& b = r.components[c];
        r.vectorial_bent = r.vectorial_bent && b.is_bent;
        r.all_weakly_regular = r.all_weakly_regular && b.weakly_regular();
        if (b.weakly_regular()) {
            if (!eps) eps = b.epsilon;
            uniform = uniform && *eps == *b.epsilon;
        }
    }
    if (r.all_weakly_regular && uniform) r.uniform_epsilon = eps;
    return r;
}

namespace detail {

inline std::size_t table_hash(const std::vector<std::uint8_t>& v) {
    return std::hash<std::string_view>{}(std::string_view(reinterpret_cast<const char*>(v.data()), v.size()));
}

/* a + s*b mod p, pointwise */
inline void axpy_mod(std::vector<std::uint8_t>& a, std::uint32_t s, const std::vector<std::uint8_t>& b, std::uint32_t p) {
    if (p == 2) {
        if (s & 1)
            for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
        return;
    }
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<std::uint8_t>((a[i] + s * b[i]) % p);
}

/* G with <e_i, G(x)> = basis[i](x) for the codomain's digit unit vectors e_i. */
inline FunctionTable assemble_from_components(const SpacePtr& domain, const SpacePtr& codomain,
                                              const std::vector<const std::vector<std::uint8_t>*>& basis) {
    const Space& cod = *codomain;
    const std::uint32_t p = cod.p(), m = cod.dimension();
    if (basis.size() != m) throw InvariantViolation("assemble: basis size differs from codomain dimension");
    std::vector<std::uint8_t> lookup(cod.size());
    for (Index y = 0; y < cod.size(); ++y) {
        Index key = 0, place = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            key += cod.inner_product(ipow(p, i), y) * place;
            place *= p;
        }
        lookup[key] = static_cast<std::uint8_t>(y);
    }
    std::vector<std::uint8_t> v(domain->size());
    for (Index x = 0; x < v.size(); ++x) {
        Index key = 0, place = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            key += (*basis[i])[x] * place;
            place *= p;
        }
        v[x] = lookup[key];
    }
    return FunctionTable(domain, codomain, std::move(v));
}

}  // namespace detail

struct DualBentResult {
    bool verdict = false;
    std::optional<FunctionTable> witness;  // G with {G_c} = {(F_c)*}; one choice among many
    std::string detail;
};

/*
 * F is vectorial dual-bent iff its p^m - 1 duals are distinct and, with 0,
 * form an F_p-subspace. Checked by growing a basis greedily and matching
 * every dual against the span (hash lookup, confirmed by full comparison).
 */
inline DualBentResult is_vectorial_dual_bent(const FunctionTable& F, const VectorialReport& r) {
    const auto q = F.codomain().size();
    const std::uint32_t p = F.p(), m = F.codomain().dimension();
    if (!r.vectorial_bent || !r.all_weakly_regular)
        throw DomainError("is_vectorial_dual_bent: every component must be weakly regular bent");
    std::vector<const std::vector<std::uint8_t>*> duals(q, nullptr);
    for (Index c = 1; c < q; ++c) {
        if (!r.at(c).dual) throw DomainError("is_vectorial_dual_bent: duals were not kept");
        duals[c] = &r.at(c).dual->values();
    }
    DualBentResult out;
    // span of the basis, keyed by hash; each entry records its coefficient vector
    std::vector<const std::vector<std::uint8_t>*> basis;
    std::unordered_multimap<std::size_t, std::vector<std::uint32_t>> span;
    const std::vector<std::uint8_t> zero(F.size(), 0);
    span.emplace(detail::table_hash(zero), std::vector<std::uint32_t>{});
    auto combination = [&](const std::vector<std::uint32_t>& coef) {
        std::vector<std::uint8_t> t(F.size(), 0);
        for (std::size_t i = 0; i < coef.size(); ++i) detail::axpy_mod(t, coef[i], *basis[i], p);
        return t;
    };
    auto in_span = [&](const std::vector<std::uint8_t>& t) {
        auto [lo, hi] = span.equal_range(detail::table_hash(t));
        for (auto it = lo; it != hi; ++it) {
            auto coef = it->second;
            coef.resize(basis.size(), 0);
            if (combination(coef) == t) return true;
        }
        return false;
    };
    for (Index c = 1; c < q; ++c) {
        const auto& d = *duals[c];
        if (in_span(d)) continue;
        if (basis.size() == m) {
            out.detail = "duals span more than an m-dimensional space";
            return out;
        }
        basis.push_back(&d);
        // extend the span by multiples of the new basis element
        std::vector<std::vector<std::uint32_t>> old;
        for (const auto& [h, coef] : span) old.push_back(coef);
        span.clear();
        for (auto coef : old) {
            coef.resize(basis.size(), 0);
            for (std::uint32_t s = 0; s < p; ++s) {
                coef.back() = s;
                span.emplace(detail::table_hash(combination(coef)), coef);
            }
        }
    }
    // p^m - 1 distinct duals inside a span of size <= p^m means they fill it
    std::unordered_multimap<std::size_t, Index> seen;
    for (Index c = 1; c < q; ++c) {
        const auto& d = *duals[c];
        auto [lo, hi] = seen.equal_range(detail::table_hash(d));
        for (auto it = lo; it != hi; ++it)
            if (*duals[it->second] == d) {
                out.detail = "components " + std::to_string(it->second) + " and " + std::to_string(c) + " share a dual";
                return out;
            }
        seen.emplace(detail::table_hash(d), c);
    }
    if (basis.size() != m) {
        out.detail = "duals span fewer than m dimensions";
        return out;
    }
    out.verdict = true;
    out.witness = detail::assemble_from_components(F.domain_ptr(), F.codomain_ptr(), basis);
    out.detail = "duals form an m-dimensional subspace";
    return out;
}

inline DualBentResult is_vectorial_dual_bent(const FunctionTable& F, unsigned threads = 0) {
    return is_vectorial_dual_bent(F, analyze_vectorial(F, threads));
}

/* f(cx) = c^l f(x) for all c in F_p^*, x. */
inline bool l_form_check(const FunctionTable& f, std::uint32_t l) {
    require_pary(f, "l_form_check");
    const std::uint32_t p = f.p();
    const Space& s = f.domain();
    for (std::uint32_t c = 2; c < p; ++c) {
        const auto cl = static_cast<std::uint32_t>(ipow(c, l) % p);
        for (Index x = 0; x < f.size(); ++x)
            if (f[s.scalar_mul(c, x)] != (cl * f[x]) % p) return false;
    }
    return true;
}

struct DualDecomposition {
    FunctionTable g;  // (f*(x) + f*(-x)) / 2
    FunctionTable h;  // (f*(x) - f*(-x)) / 2
    bool g_is_p_minus_1_form = false;
    bool h_is_1_form = false;
};

inline DualDecomposition decompose_dual(const FunctionTable& dual) {
    require_pary(dual, "decompose_dual");
    const std::uint32_t p = dual.p();
    if (p == 2) throw DomainError("decompose_dual needs odd p");
    const Space& s = dual.domain();
    const std::uint32_t half = (p + 1) / 2;  // 2^{-1} mod p
    std::vector<std::uint8_t> g(dual.size()), h(dual.size());
    for (Index x = 0; x < dual.size(); ++x) {
        const std::uint32_t a = dual[x], b = dual[s.neg(x)];
        g[x] = static_cast<std::uint8_t>(((a + b) * half) % p);
        h[x] = static_cast<std::uint8_t>(((a + p - b) * half) % p);
    }
    DualDecomposition d{FunctionTable(dual.domain_ptr(), dual.codomain_ptr(), std::move(g)),
                        FunctionTable(dual.domain_ptr(), dual.codomain_ptr(), std::move(h))};
    d.g_is_p_minus_1_form = l_form_check(d.g, p - 1);
    d.h_is_1_form = l_form_check(d.h, 1);
    return d;
}

inline DualDecomposition decompose_dual(const BentReport& r) {
    if (!r.weakly_regular() || !r.dual) throw DomainError("decompose_dual: function is not weakly regular bent");
    return decompose_dual(*r.dual);
}

}  // namespace bentpart
