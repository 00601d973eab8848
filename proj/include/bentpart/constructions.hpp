#pragma once

/*
 * Builders for bent partitions from vectorial bent functions: the
 * Maiorana-McFarland family Tr_m^n(x pi(y)) + G(y), the y1/y2 secondary
 * construction over an indexed family R^(i), the composition K(R(x), R'(y)),
 * and the three catalog examples. Every builder checks its preconditions
 * exhaustively and refuses with the name of the first one that fails.
 */

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bent_analysis.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "function_table.hpp"
#include "parallel.hpp"
#include "partition.hpp"
#include "space.hpp"

namespace bentpart {

/* x -> x^e with 0 -> 0; negative e uses inverses. */
struct MonomialPermutation {
    FieldPtr field;
    std::int64_t exponent = 1;

    Element operator()(Element x) const { return field->pow(x, exponent); }

    bool is_permutation() const {
        const std::int64_t n = field->order() - 1;
        std::int64_t e = exponent % n;
        if (e < 0) e += n;
        return std::gcd(e, n) == 1;
    }

    std::vector<Element> table() const {
        std::vector<Element> t(field->order());
        for (Element x = 0; x < t.size(); ++x) t[x] = (*this)(x);
        return t;
    }
};

/* A permutation of F_{p^m}^*, stored as table[c] for c = 1..p^m - 1 (table[0] = 0). */
struct ThetaMap {
    FieldPtr field;
    std::vector<Element> table;

    Element operator()(Element c) const { return table.at(c); }

    bool is_bijection() const {
        if (table.size() != field->order() || table[0] != 0) return false;
        std::vector<char> seen(table.size(), 0);
        for (Element c = 1; c < table.size(); ++c) {
            if (table[c] == 0 || seen[table[c]]) return false;
            seen[table[c]] = 1;
        }
        return true;
    }

    ThetaMap inverse() const {
        if (!is_bijection()) throw DomainError("theta is not a bijection of the multiplicative group");
        ThetaMap r{field, std::vector<Element>(table.size(), 0)};
        for (Element c = 1; c < table.size(); ++c) r.table[table[c]] = c;
        return r;
    }

    static ThetaMap power(FieldPtr f, std::int64_t e) {
        ThetaMap r{f, std::vector<Element>(f->order(), 0)};
        for (Element c = 1; c < f->order(); ++c) r.table[c] = f->pow(c, e);
        return r;
    }
};

/* theta^{-1}(d^{-1}) + theta^{-1}(e^{-1}) = theta^{-1}((d+e)^{-1}) for all d != -e. */
inline bool theta_condition_check(const ThetaMap& theta) {
    const Field& k = *theta.field;
    const auto ti = theta.inverse();
    for (Element d = 1; d < k.order(); ++d)
        for (Element e = 1; e < k.order(); ++e) {
            const Element s = k.add(d, e);
            if (s == 0) continue;
            if (k.add(ti(k.inv(d)), ti(k.inv(e))) != ti(k.inv(s))) return false;
        }
    return true;
}

/* Where a map on F_{p^n} lands: the same big field, or the standalone subfield. */
enum class MapTarget { big_field, subfield };

/* map(c x) = theta(c) map(x) for every c in F_{p^m}^* (acting through the embedding) and x. */
inline bool homogeneity_check(const SubfieldEmbedding& emb, const std::vector<Element>& map, MapTarget target,
                              const ThetaMap& theta) {
    const Field& big = emb.big();
    const Field& small = emb.small();
    if (map.size() != big.order()) throw DomainError("homogeneity_check: map must be tabulated on the big field");
    for (Element c = 1; c < small.order(); ++c) {
        const Element t = theta(c);
        for (Element x = 0; x < big.order(); ++x) {
            const Element lhs = map[emb.scale(c, x)];
            const Element rhs = target == MapTarget::big_field ? big.mul(emb.embed(t), map[x]) : small.mul(t, map[x]);
            if (lhs != rhs) return false;
        }
    }
    return true;
}

/* The theta forced by map(c x0) / map(x0) at the first x0 with map(x0) != 0, if it works everywhere. */
inline std::optional<ThetaMap> derive_theta(const SubfieldEmbedding& emb, const std::vector<Element>& map,
                                            MapTarget target) {
    const Field& big = emb.big();
    const Field& small = emb.small();
    Element x0 = 0;
    while (x0 < map.size() && map[x0] == 0) ++x0;
    if (x0 == map.size()) return std::nullopt;
    ThetaMap theta{emb.small_ptr(), std::vector<Element>(small.order(), 0)};
    for (Element c = 1; c < small.order(); ++c) {
        const Element num = map[emb.scale(c, x0)];
        if (target == MapTarget::big_field) {
            const Element q = big.mul(num, big.inv(map[x0]));
            if (!emb.in_subfield(q)) return std::nullopt;
            theta.table[c] = emb.restrict(q);
        } else {
            theta.table[c] = small.mul(num, small.inv(map[x0]));
        }
    }
    if (!theta.is_bijection() || !homogeneity_check(emb, map, target, theta)) return std::nullopt;
    return theta;
}

/* P and x -> P(x) + x both bijective. */
inline bool is_complete_permutation(const Field& k, const std::vector<Element>& P) {
    if (P.size() != k.order()) throw DomainError("is_complete_permutation: table size differs from field order");
    std::vector<char> seen(P.size(), 0), seen2(P.size(), 0);
    for (auto v : P) {
        if (v >= P.size() || seen[v]) throw DomainError("is_complete_permutation: P is not a bijection");
        seen[v] = 1;
    }
    for (Element x = 0; x < P.size(); ++x) {
        const Element s = k.add(P[x], x);
        if (seen2[s]) return false;
        seen2[s] = 1;
    }
    return true;
}

/* The function, its dual witnesses when known, and what the builder certified. */
struct Construction {
    std::string name;
    FunctionTable F;
    std::optional<FunctionTable> G;  // (F_c)* = G_c + h
    std::optional<FunctionTable> h;
    std::optional<int> epsilon;
    bool expect_bent_partition = true;
    bool expect_wbp = true;
    std::optional<bool> expect_dual_bent;
    std::vector<std::pair<std::string, bool>> preconditions;  // name, verified
    std::string detail;
};

namespace detail {

inline void require(std::vector<std::pair<std::string, bool>>& log, const std::string& name, bool ok,
                    const std::string& why = {}) {
    log.emplace_back(name, ok);
    if (!ok) throw PreconditionRefused(name, why.empty() ? name + " does not hold" : why);
}

}  // namespace detail

struct Prop3Params {
    std::vector<Element> pi;  // permutation of F_{p^n}
    std::vector<Element> G;   // F_{p^n} -> F_{p^m}
    std::optional<ThetaMap> theta;  // derived from pi when absent
    bool permuted_variable_first = false;  // domain order (y, x) instead of (x, y)
};

/*
 * F(x, y) = Tr_m^n(x pi(y)) + G(y) on F_{p^n} x F_{p^n} -> F_{p^m}.
 * Witnesses come from verify_eq29 when the domain has at most 2^16 points.
 */
inline Construction build_prop3(const SubfieldEmbedding& emb, const Prop3Params& prm) {
    const Field& big = emb.big();
    const Field& small = emb.small();
    const std::uint32_t p = big.p(), n = big.degree(), m = small.degree();
    Construction out;
    out.name = "prop3";
    auto& log = out.preconditions;
    detail::require(log, "m_proper_divisor_of_n", n % m == 0 && m != n);
    detail::require(log, "m_at_least_2_for_p2", p != 2 || m >= 2);
    detail::require(log, "pi_size", prm.pi.size() == big.order() && prm.G.size() == big.order(),
                    "pi and G must be tabulated on F_{p^n}");
    {
        std::vector<char> seen(big.order(), 0);
        bool ok = true;
        for (auto v : prm.pi) {
            if (v >= big.order() || seen[v]) ok = false;
            else seen[v] = 1;
        }
        detail::require(log, "pi_permutation", ok);
    }
    std::optional<ThetaMap> theta = prm.theta;
    if (!theta) theta = derive_theta(emb, prm.pi, MapTarget::big_field);
    detail::require(log, "pi_homogeneity", theta && homogeneity_check(emb, prm.pi, MapTarget::big_field, *theta),
                    "no theta with pi(cx) = theta(c) pi(x)");
    detail::require(log, "theta_bijection", theta->is_bijection());
    detail::require(log, "theta_condition", theta_condition_check(*theta));
    bool nonzero = false;
    for (auto v : prm.G) {
        if (v >= small.order()) throw DomainError("G value outside F_{p^m}");
        nonzero = nonzero || v != 0;
    }
    detail::require(log, "G_nonzero", nonzero);
    detail::require(log, "G_homogeneity", homogeneity_check(emb, prm.G, MapTarget::subfield, *theta));

    const Element q = big.order();
    auto dom = Space::of_fields({emb.big_ptr(), emb.big_ptr()});
    auto cod = Space::of_field(emb.small_ptr());
    out.F = FunctionTable::tabulate(dom, cod, [&](Index v) {
        Element a = static_cast<Element>(v % q), b = static_cast<Element>(v / q);
        const Element x = prm.permuted_variable_first ? b : a;
        const Element y = prm.permuted_variable_first ? a : b;
        return small.add(emb.trace(big.mul(x, prm.pi[y])), prm.G[y]);
    });
    out.expect_dual_bent = false;
    if (dom->size() <= (std::uint64_t{1} << 16)) {
        auto r = verify_eq29(out.F);
        if (!r.is_bent_partition || r.h->is_zero())
            throw InvariantViolation("prop3: construction passed its preconditions but eq29 disagrees: " + r.detail);
        out.G = std::move(r.G);
        out.h = std::move(r.h);
        out.epsilon = r.epsilon;
    }
    out.detail = "pi, G homogeneous for theta; theta condition holds";
    return out;
}

/* Tr_m^n(x pi(y)) + G(y) without the bent-partition preconditions (plain MM, or its G = 0 case). */
inline FunctionTable mm_function(const SubfieldEmbedding& emb, const std::vector<Element>& pi,
                                 const std::vector<Element>& G, bool permuted_variable_first = false) {
    const Field& big = emb.big();
    const Field& small = emb.small();
    const Element q = big.order();
    return FunctionTable::tabulate(Space::of_fields({emb.big_ptr(), emb.big_ptr()}), Space::of_field(emb.small_ptr()),
                                   [&](Index v) {
                                       Element a = static_cast<Element>(v % q), b = static_cast<Element>(v / q);
                                       const Element x = permuted_variable_first ? b : a;
                                       const Element y = permuted_variable_first ? a : b;
                                       return small.add(emb.trace(big.mul(x, pi[y])), G.empty() ? 0 : G[y]);
                                   });
}

/* A member R^(i) of the family, with witnesses from verify_eq29. */
struct WitnessedBent {
    FunctionTable R;
    FunctionTable G;
    FunctionTable h;
    int epsilon = 1;
};

inline WitnessedBent witness(const FunctionTable& R, unsigned threads = 0) {
    auto r = verify_eq29(R, threads);
    if (!r.is_bent_partition)
        throw PreconditionRefused("R_eq29", "component duals do not have the form G_c + h: " + r.detail);
    return WitnessedBent{R, std::move(*r.G), std::move(*r.h), *r.epsilon};
}

struct Prop4Params {
    std::vector<WitnessedBent> family;  // indexed by F_{p^m}
    Element alpha = 1;                  // in F_{p^n'}
    Element beta = 0;
    std::vector<Element> P;             // permutation of F_{p^n'} with P(0) = 0
};

/*
 * F(x, y1, y2) = R^(Tr(alpha P(y1/y2)))(x) + Tr(beta P(y1/y2)) on
 * V_n x F_{p^n'} x F_{p^n'}, with 0^{-1} = 0. The witnesses follow the
 * Walsh factorization: U = G^(Tr(alpha P(-y2/y1)))(x) + Tr(beta P(-y2/y1)),
 * v = h^(Tr(alpha P(-y2/y1)))(x).
 */
inline Construction build_prop4(const SubfieldEmbedding& emb, const Prop4Params& prm, unsigned threads = 0) {
    const Field& big = emb.big();  // F_{p^n'}
    const Field& small = emb.small();
    const std::uint32_t p = big.p(), np = big.degree(), m = small.degree();
    Construction out;
    out.name = "prop4";
    auto& log = out.preconditions;
    detail::require(log, "family_size", prm.family.size() == small.order(), "need one R^(i) per i in F_{p^m}");
    const auto& first = prm.family[0].R;
    const std::uint32_t n = first.n();
    detail::require(log, "n_even", n % 2 == 0);
    detail::require(log, "m_at_most_half_n", 2 * m <= n);
    detail::require(log, "m_proper_divisor_of_n_prime", np % m == 0 && np != m);
    detail::require(log, "m_at_least_2_for_p2", p != 2 || m >= 2);
    const auto cod = Space::of_field(emb.small_ptr());
    bool same_spaces = true, same_eps = true;
    for (const auto& w : prm.family) {
        same_spaces = same_spaces && w.R.domain().same_as(first.domain()) && w.R.codomain().same_as(*cod);
        same_eps = same_eps && w.epsilon == prm.family[0].epsilon;
    }
    detail::require(log, "family_spaces", same_spaces, "every R^(i) must map V_n to the standalone F_{p^m}");
    detail::require(log, "uniform_epsilon", same_eps);
    detail::require(log, "h0_nonzero", !prm.family[0].h.is_zero());
    // alpha, beta independent over F_{p^m}: beta not in F_{p^m} alpha
    bool independent = prm.alpha != 0 && prm.beta != 0;
    for (Element c = 0; c < small.order() && independent; ++c)
        if (big.mul(emb.embed(c), prm.alpha) == prm.beta) independent = false;
    detail::require(log, "alpha_beta_independent", independent);
    detail::require(log, "P_size", prm.P.size() == big.order());
    {
        std::vector<char> seen(big.order(), 0);
        bool ok = true;
        for (auto v : prm.P) {
            if (v >= big.order() || seen[v]) ok = false;
            else seen[v] = 1;
        }
        detail::require(log, "P_permutation", ok);
    }
    detail::require(log, "P_fixes_zero", prm.P[0] == 0);

    const Space& V = first.domain();
    auto ys = Space::of_fields({emb.big_ptr(), emb.big_ptr()});
    auto dom = Space::concat(V, *ys);
    const Element q = big.order();
    const std::uint64_t N = V.size();
    // per (y1, y2): selector i and additive term
    std::vector<std::uint8_t> sel(ys->size()), add(ys->size()), wsel(ys->size()), wadd(ys->size());
    for (Index y = 0; y < ys->size(); ++y) {
        const Element y1 = static_cast<Element>(y % q), y2 = static_cast<Element>(y / q);
        const Element t = prm.P[big.mul(y1, big.inv(y2))];
        sel[y] = static_cast<std::uint8_t>(emb.trace(big.mul(prm.alpha, t)));
        add[y] = static_cast<std::uint8_t>(emb.trace(big.mul(prm.beta, t)));
        const Element tw = prm.P[big.neg(big.mul(y2, big.inv(y1)))];
        wsel[y] = static_cast<std::uint8_t>(emb.trace(big.mul(prm.alpha, tw)));
        wadd[y] = static_cast<std::uint8_t>(emb.trace(big.mul(prm.beta, tw)));
    }
    std::vector<std::uint8_t> fv(dom->size()), gv(dom->size()), hv(dom->size());
    parallel_for(
        static_cast<std::size_t>(ys->size()),
        [&](std::size_t y) {
            const auto& R = prm.family[sel[y]].R.values();
            const auto& W = prm.family[wsel[y]];
            for (Index x = 0; x < N; ++x) {
                fv[y * N + x] = static_cast<std::uint8_t>(small.add(R[x], add[y]));
                gv[y * N + x] = static_cast<std::uint8_t>(small.add(W.G[x], wadd[y]));
                hv[y * N + x] = W.h[x];
            }
        },
        threads);
    out.F = FunctionTable(dom, cod, std::move(fv));
    out.G = FunctionTable(dom, cod, std::move(gv));
    out.h = FunctionTable(dom, Space::scalars(p), std::move(hv));
    out.epsilon = prm.family[0].epsilon;
    out.expect_dual_bent = false;
    out.detail = "family passes eq29 with a shared epsilon; h^(0) nonzero";
    return out;
}

/* Every section y -> K(x, y) and x -> K(x, y) balanced; returns the first failing section name. */
inline std::optional<std::string> first_unbalanced_section(const FunctionTable& K, const Space& A, const Space& B) {
    const auto r = K.codomain().size();
    const auto na = A.size(), nb = B.size();
    if (K.size() != na * nb) throw DomainError("K must be tabulated on V_m x V_m'");
    std::vector<std::uint64_t> counts(r);
    for (Index x = 0; x < na; ++x) {
        std::fill(counts.begin(), counts.end(), 0);
        for (Index y = 0; y < nb; ++y) ++counts[K[x + na * y]];
        for (auto c : counts)
            if (c * r != nb) return "S^(" + std::to_string(x) + ")";
    }
    for (Index y = 0; y < nb; ++y) {
        std::fill(counts.begin(), counts.end(), 0);
        for (Index x = 0; x < na; ++x) ++counts[K[x + na * y]];
        for (auto c : counts)
            if (c * r != na) return "T^(" + std::to_string(y) + ")";
    }
    return std::nullopt;
}

/*
 * F(x, y) = K(R(x), R'(y)), with (F_c)*(u, v) = <c, K(G(u), G'(v))> + h(u) + h'(v).
 * K is tabulated on concat(cod R, cod R').
 */
inline Construction build_thm6(const WitnessedBent& R, const WitnessedBent& Rp, const FunctionTable& K,
                               unsigned threads = 0) {
    const Space& A = R.R.codomain();
    const Space& B = Rp.R.codomain();
    const std::uint32_t p = R.R.p();
    Construction out;
    out.name = "thm6";
    auto& log = out.preconditions;
    detail::require(log, "n_even", R.R.n() % 2 == 0 && Rp.R.n() % 2 == 0);
    detail::require(log, "m_at_most_half_n", 2 * A.dimension() <= R.R.n() && 2 * B.dimension() <= Rp.R.n());
    detail::require(log, "r_at_most_m", K.codomain().dimension() <= A.dimension() &&
                                            K.codomain().dimension() <= B.dimension());
    detail::require(log, "m_at_least_2_for_p2", p != 2 || (A.dimension() >= 2 && B.dimension() >= 2));
    detail::require(log, "K_domain", K.domain().same_as(*Space::concat(A, B)), "K must be tabulated on cod R x cod R'");
    auto bad = first_unbalanced_section(K, A, B);
    detail::require(log, "K_sections_balanced", !bad, bad ? "section " + *bad + " of K is not balanced" : "");
    if (R.R.size() * Rp.R.size() > max_table_size) throw DomainError("thm6: product domain exceeds the table cap");

    auto dom = Space::concat(R.R.domain(), Rp.R.domain());
    const auto N = R.R.size(), Np = Rp.R.size();
    const auto na = A.size();
    std::vector<std::uint8_t> fv(dom->size()), gv(dom->size()), hv(dom->size());
    const auto& kv = K.values();
    parallel_for(
        static_cast<std::size_t>(Np),
        [&](std::size_t y) {
            const std::uint32_t ry = Rp.R[y], gy = Rp.G[y], hy = Rp.h[y];
            for (Index x = 0; x < N; ++x) {
                fv[y * N + x] = kv[R.R[x] + na * ry];
                gv[y * N + x] = kv[R.G[x] + na * gy];
                hv[y * N + x] = static_cast<std::uint8_t>((R.h[x] + hy) % p);
            }
        },
        threads);
    out.F = FunctionTable(dom, K.codomain_ptr(), std::move(fv));
    out.G = FunctionTable(dom, K.codomain_ptr(), std::move(gv));
    out.h = FunctionTable(dom, Space::scalars(p), std::move(hv));
    out.epsilon = R.epsilon * Rp.epsilon;
    // dual-bent iff h and h' are constants summing to zero
    out.expect_dual_bent = R.h.is_constant() && Rp.h.is_constant() && (R.h[0] + Rp.h[0]) % p == 0;
    out.detail = "sections of K balanced; R, R' pass eq29";
    return out;
}

/* K(x, y) = x + y on one codomain. */
inline FunctionTable sum_kernel(const SpacePtr& V) {
    auto dom = Space::concat(*V, *V);
    const auto q = V->size();
    return FunctionTable::tabulate(dom, V, [&](Index v) { return V->add(v % q, v / q); });
}

/* K(x, y) = P(x + y) + x on F_{p^r}. */
inline FunctionTable complete_permutation_kernel(const FieldPtr& k, const std::vector<Element>& P) {
    auto V = Space::of_field(k);
    auto dom = Space::concat(*V, *V);
    const Element q = k->order();
    return FunctionTable::tabulate(dom, V, [&](Index v) {
        const Element x = static_cast<Element>(v % q), y = static_cast<Element>(v / q);
        return k->add(P[k->add(x, y)], x);
    });
}

/* Pieces shared by the catalog builders and the acceptance checks. */
struct CatalogFields {
    FieldPtr big;    // F_{3^4} or F_{2^6}
    FieldPtr small;  // F_9 or F_{2^6}
};

inline CatalogFields ex12_fields(const FieldRegistry& reg = {}) {
    return {Field::make(reg.descriptor(3, 4)), Field::make(reg.descriptor(3, 2))};
}

/* Tr_2^4(x1^a x2 + x1^b) on F_81 x F_81 (x1 first); b = 0 drops the second term. */
inline FunctionTable ex_R(const SubfieldEmbedding& emb, std::int64_t a, std::int64_t b) {
    MonomialPermutation pi{emb.big_ptr(), a};
    std::vector<Element> G;
    if (b) {
        G.resize(emb.big().order());
        for (Element y = 0; y < G.size(); ++y) G[y] = emb.trace(emb.big().pow(y, b));
    }
    return mm_function(emb, pi.table(), G, true);
}

inline Prop3Params ex_prop3_params(const SubfieldEmbedding& emb, std::int64_t a, std::int64_t b) {
    Prop3Params prm;
    prm.pi = MonomialPermutation{emb.big_ptr(), a}.table();
    prm.G.resize(emb.big().order(), 0);
    if (b)
        for (Element y = 0; y < prm.G.size(); ++y) prm.G[y] = emb.trace(emb.big().pow(y, b));
    prm.permuted_variable_first = true;
    return prm;
}

/* Tr_2^4(x1^a x2 + x1^b) with witnesses from eq29. */
inline WitnessedBent ex_member(const SubfieldEmbedding& emb, std::int64_t a, std::int64_t b, unsigned threads = 0) {
    return witness(ex_R(emb, a, b), threads);
}

/*
 * Example 1: alpha = 1, P = identity, beta = the primitive element of F_81
 * (outside F_9); R^(0) = Tr(x1^69 x2 + x1^29), R^(i) = Tr(x1^79 x2) for i != 0.
 */
inline Construction example_ex1(const FieldRegistry& reg = {}, unsigned threads = 0) {
    auto f = ex12_fields(reg);
    SubfieldEmbedding emb(f.big, f.small);
    Prop4Params prm;
    auto r0 = ex_member(emb, 69, 29, threads);
    auto ri = ex_member(emb, 79, 0, threads);
    prm.family.push_back(r0);
    for (Element i = 1; i < f.small->order(); ++i) prm.family.push_back(ri);
    prm.alpha = 1;
    prm.beta = f.big->primitive_element();
    prm.P.resize(f.big->order());
    std::iota(prm.P.begin(), prm.P.end(), 0);
    auto c = build_prop4(emb, prm, threads);
    c.name = "ex1";
    return c;
}

/* Example 2: Tr(x1^69 x2 + x1^29) + Tr(y1^79 y2) through K(x, y) = x + y. */
inline Construction example_ex2(const FieldRegistry& reg = {}, unsigned threads = 0) {
    auto f = ex12_fields(reg);
    SubfieldEmbedding emb(f.big, f.small);
    auto R = ex_member(emb, 69, 29, threads);
    auto Rp = ex_member(emb, 79, 0, threads);
    auto c = build_thm6(R, Rp, sum_kernel(Space::of_field(f.small)), threads);
    c.name = "ex2";
    return c;
}

/* x^17 + x^5 + alpha x on F_64 with alpha the embedded generator of F_4. */
inline std::vector<Element> ex3_P(const FieldPtr& k64, const FieldPtr& k4) {
    SubfieldEmbedding e(k64, k4);
    const Element alpha = e.generator_image();
    std::vector<Element> P(k64->order());
    for (Element x = 0; x < P.size(); ++x) P[x] = k64->add(k64->add(k64->pow(x, 17), k64->pow(x, 5)), k64->mul(alpha, x));
    return P;
}

/* x1^{-1} x2 (invert_first) or y1 y2^{-1} on F_64 x F_64 -> F_64. */
inline FunctionTable ex3_R(const FieldPtr& k, bool invert_first) {
    const Element q = k->order();
    return FunctionTable::tabulate(Space::of_fields({k, k}), Space::of_field(k), [&](Index v) {
        const Element a = static_cast<Element>(v % q), b = static_cast<Element>(v / q);
        return invert_first ? k->mul(k->inv(a), b) : k->mul(a, k->inv(b));
    });
}

/* Example 3: P(R(x) + R'(y)) + R(x) with R = x1^{-1} x2, R' = y1 y2^{-1}. */
inline Construction example_ex3(const FieldRegistry& reg = {}, unsigned threads = 0) {
    auto k64 = Field::make(reg.descriptor(2, 6));
    auto k4 = Field::make(reg.descriptor(2, 2));
    auto P = ex3_P(k64, k4);
    if (!is_complete_permutation(*k64, P)) throw InvariantViolation("ex3: P is not a complete permutation");
    auto R = witness(ex3_R(k64, true), threads);
    auto Rp = witness(ex3_R(k64, false), threads);
    auto c = build_thm6(R, Rp, complete_permutation_kernel(k64, P), threads);
    c.name = "ex3";
    return c;
}

inline Construction example_catalog(const std::string& id, const FieldRegistry& reg = {}, unsigned threads = 0) {
    if (id == "ex1") return example_ex1(reg, threads);
    if (id == "ex2") return example_ex2(reg, threads);
    if (id == "ex3") return example_ex3(reg, threads);
    throw DomainError("unknown catalog example '" + id + "' (expected ex1, ex2 or ex3)");
}

}  // namespace bentpart
