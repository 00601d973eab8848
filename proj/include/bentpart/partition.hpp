#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bent_analysis.hpp"
#include "errors.hpp"
#include "function_table.hpp"
#include "parallel.hpp"
#include "transform.hpp"

namespace bentpart {

/* Ordered, disjoint cells covering the space. */
class Partition {
   public:
    Partition() = default;
    Partition(SpacePtr space, std::vector<std::vector<Index>> cells) : space_(std::move(space)), cells_(std::move(cells)) {
        if (!space_) throw DomainError("partition needs a space");
        labels_.assign(space_->size(), npos);
        for (std::size_t i = 0; i < cells_.size(); ++i) {
            if (cells_[i].empty()) throw DomainError("partition cell " + std::to_string(i) + " is empty");
            for (Index x : cells_[i]) {
                space_->check(x);
                if (labels_[x] != npos) throw DomainError("point " + std::to_string(x) + " lies in two cells");
                labels_[x] = static_cast<std::uint32_t>(i);
            }
        }
        for (Index x = 0; x < labels_.size(); ++x)
            if (labels_[x] == npos) throw DomainError("point " + std::to_string(x) + " is in no cell");
    }

    /* Cells from a label per point; labels must be 0..K-1 with every label used. */
    static Partition from_labels(SpacePtr space, const std::vector<std::uint32_t>& labels) {
        if (labels.size() != space->size()) throw DomainError("from_labels: one label per point needed");
        std::uint32_t K = 0;
        for (auto l : labels) K = std::max(K, l + 1);
        std::vector<std::vector<Index>> cells(K);
        for (Index x = 0; x < labels.size(); ++x) cells[labels[x]].push_back(x);
        return Partition(std::move(space), std::move(cells));
    }

    const Space& space() const { return *space_; }
    const SpacePtr& space_ptr() const noexcept { return space_; }
    std::size_t depth() const noexcept { return cells_.size(); }
    const std::vector<std::vector<Index>>& cells() const noexcept { return cells_; }
    const std::vector<Index>& cell(std::size_t i) const { return cells_.at(i); }
    std::uint32_t label(Index x) const { return labels_.at(x); }
    const std::vector<std::uint32_t>& labels() const noexcept { return labels_; }

    /* Cells sorted by (size, smallest element), each cell sorted. */
    Partition canonical() const {
        auto cells = cells_;
        for (auto& c : cells) std::sort(c.begin(), c.end());
        std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
            return a.size() != b.size() ? a.size() < b.size() : a.front() < b.front();
        });
        return Partition(space_, std::move(cells));
    }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.space_->same_as(*b.space_) && a.cells_ == b.cells_;
    }

   private:
    static constexpr std::uint32_t npos = ~std::uint32_t{0};
    SpacePtr space_;
    std::vector<std::vector<Index>> cells_;
    std::vector<std::uint32_t> labels_;
};

struct PreimagePartition {
    Partition partition;
    std::vector<Index> cell_values;  // codomain value of each cell
    std::size_t empty_cells_dropped = 0;
};

/* Cell i = D_{F,i}, in codomain index order; empty preimages are dropped and counted. */
inline PreimagePartition preimage_partition(const FunctionTable& F) {
    std::vector<std::vector<Index>> by_value(F.codomain().size());
    for (Index x = 0; x < F.size(); ++x) by_value[F[x]].push_back(x);
    PreimagePartition out;
    std::vector<std::vector<Index>> cells;
    for (Index v = 0; v < by_value.size(); ++v) {
        if (by_value[v].empty()) {
            ++out.empty_cells_dropped;
            continue;
        }
        cells.push_back(std::move(by_value[v]));
        out.cell_values.push_back(v);
    }
    out.partition = Partition(F.domain_ptr(), std::move(cells));
    return out;
}

/* K! / ((K/p)!)^p, saturating at UINT64_MAX. */
inline std::uint64_t balanced_assignment_count(std::uint64_t K, std::uint32_t p) {
    if (K % p) throw DomainError("depth " + std::to_string(K) + " is not divisible by p");
    // product of binomials C(K - j*K/p, K/p)
    const std::uint64_t part = K / p;
    unsigned __int128 total = 1;
    const unsigned __int128 cap = ~std::uint64_t{0};
    std::uint64_t left = K;
    for (std::uint32_t j = 0; j + 1 < p; ++j) {
        unsigned __int128 b = 1;
        for (std::uint64_t i = 1; i <= part; ++i) {
            b = b * (left - part + i) / i;
            if (b > cap) return ~std::uint64_t{0};
        }
        total *= b;
        if (total > cap) return ~std::uint64_t{0};
        left -= part;
    }
    return static_cast<std::uint64_t>(total);
}

/* Balanced assignments cell -> F_p in lexicographic order (each value used K/p times). */
class BalancedAssignments {
   public:
    BalancedAssignments(std::size_t K, std::uint32_t p) : p_(p) {
        if (p == 0 || K % p) throw DomainError("depth " + std::to_string(K) + " is not divisible by p");
        current_.resize(K);
        for (std::size_t i = 0; i < K; ++i) current_[i] = static_cast<std::uint8_t>(i / (K / p));
    }
    std::uint64_t count() const { return balanced_assignment_count(current_.size(), p_); }
    const std::vector<std::uint8_t>& current() const noexcept { return current_; }
    bool next() { return std::next_permutation(current_.begin(), current_.end()); }

    std::vector<std::vector<std::uint8_t>> all() {
        std::vector<std::vector<std::uint8_t>> out;
        do out.push_back(current_);
        while (next());
        return out;
    }

   private:
    std::uint32_t p_;
    std::vector<std::uint8_t> current_;
};

inline FunctionTable generated_function(const Partition& g, const std::vector<std::uint8_t>& assignment) {
    if (assignment.size() != g.depth()) throw DomainError("assignment length differs from depth");
    const auto& labels = g.labels();
    std::vector<std::uint8_t> v(labels.size());
    for (Index x = 0; x < v.size(); ++x) v[x] = assignment[labels[x]];
    return FunctionTable(g.space_ptr(), Space::scalars(g.space().p()), std::move(v));
}

enum class Route { definitional, eq1, eq29, hadamard, thm1perm };

inline const char* to_string(Route r) {
    switch (r) {
        case Route::definitional: return "definitional";
        case Route::eq1: return "eq1";
        case Route::eq29: return "eq29";
        case Route::hadamard: return "hadamard";
        case Route::thm1perm: return "thm1perm";
    }
    return "?";
}

enum class Verdict { bent_partition, not_bent_partition, not_wbp_bent_partition, sufficient_condition_fails };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::bent_partition: return "bent_partition";
        case Verdict::not_bent_partition: return "not_bent_partition";
        case Verdict::not_wbp_bent_partition: return "not_wbp_bent_partition";
        case Verdict::sufficient_condition_fails: return "sufficient_condition_fails";
    }
    return "?";
}

struct Counterexample {
    std::vector<std::uint8_t> assignment;  // empty for function-level routes
    std::optional<Index> walsh_point;
    std::string reason;
};

struct PartitionReport {
    Route route = Route::definitional;
    Verdict verdict = Verdict::not_bent_partition;
    bool is_bent_partition = false;
    std::optional<bool> class_wbp;
    std::optional<int> epsilon;
    std::optional<Counterexample> counterexample;
    std::uint64_t depth = 0;
    std::optional<bool> depth_power_of_p;  // set when the partition is certified
    std::uint64_t functions_checked = 0;
    std::optional<FunctionTable> G;
    std::optional<FunctionTable> h;
    std::optional<bool> dual_bent;
    std::string detail;
};

inline bool is_power_of(std::uint64_t K, std::uint32_t p) {
    if (K == 0) return false;
    while (K % p == 0) K /= p;
    return K == 1;
}

inline void audit_depth(PartitionReport& r, std::uint32_t p) {
    if (r.is_bent_partition && (p == 2 || r.class_wbp.value_or(false))) {
        r.depth_power_of_p = is_power_of(r.depth, p);
        if (!*r.depth_power_of_p)
            throw InvariantViolation("certified bent partition of depth " + std::to_string(r.depth) +
                                     " is not a power of p");
    }
}

inline constexpr std::uint64_t default_enumeration_budget = 100000;

/* Runs analyze on every generated function. */
inline PartitionReport verify_definitional(const Partition& g, std::uint64_t budget = default_enumeration_budget,
                                           unsigned threads = 0) {
    const std::uint32_t p = g.space().p();
    const std::uint64_t K = g.depth();
    if (K % p) throw DomainError("definitional: depth " + std::to_string(K) + " not divisible by p");
    const auto count = balanced_assignment_count(K, p);
    if (count > budget)
        throw RouteRefused("definitional", std::to_string(count == ~std::uint64_t{0} ? 0 : count) +
                                               " balanced assignments exceed budget " + std::to_string(budget) +
                                               (count == ~std::uint64_t{0} ? " (count overflows 64 bits)" : "") +
                                               "; use eq29 or hadamard");
    PartitionReport r;
    r.route = Route::definitional;
    r.depth = K;
    struct Outcome {
        bool bent = false;
        bool weakly_regular = false;
        int eps = 0;
        std::optional<Index> bad_point;
    };
    BalancedAssignments en(K, p);
    const std::size_t batch = std::max<std::size_t>(64, 16 * thread_count());
    bool all_bent = true, all_wr = true, shared_eps = true;
    int eps = 0;
    std::vector<std::vector<std::uint8_t>> pending;
    bool more = true;
    while (more && all_bent) {
        pending.clear();
        while (more && pending.size() < batch) {
            pending.push_back(en.current());
            more = en.next();
        }
        std::vector<Outcome> out(pending.size());
        parallel_for(
            pending.size(),
            [&](std::size_t i) {
                auto f = generated_function(g, pending[i]);
                auto w = walsh_full(f, 1);
                auto rep = analyze_spectrum(w, f.domain_ptr(), false);
                out[i].bent = rep.is_bent;
                out[i].weakly_regular = rep.weakly_regular();
                out[i].eps = rep.epsilon.value_or(0);
                if (!rep.is_bent) {
                    const Coefficient pn = Coefficient(f.size());
                    for (Index a = 0; a < w.size(); ++a) {
                        auto m = w.squared_magnitude(a);
                        if (!m || *m != pn) {
                            out[i].bad_point = a;
                            break;
                        }
                    }
                }
            },
            threads);
        for (std::size_t i = 0; i < out.size(); ++i) {
            ++r.functions_checked;
            if (!out[i].bent) {
                all_bent = false;
                r.counterexample = Counterexample{pending[i], out[i].bad_point, "generated function is not bent"};
                break;
            }
            all_wr = all_wr && out[i].weakly_regular;
            if (out[i].weakly_regular) {
                if (eps == 0) eps = out[i].eps;
                shared_eps = shared_eps && out[i].eps == eps;
            }
            if (!(out[i].weakly_regular && shared_eps) && !r.counterexample)
                r.counterexample = Counterexample{pending[i], std::nullopt, "generated functions break class WBP"};
        }
    }
    r.is_bent_partition = all_bent;
    if (all_bent) {
        r.class_wbp = all_wr && shared_eps;
        if (*r.class_wbp) r.epsilon = eps;
        r.verdict = Verdict::bent_partition;
    } else {
        r.verdict = Verdict::not_bent_partition;
    }
    r.detail = std::to_string(r.functions_checked) + " of " + std::to_string(count) + " generated functions analyzed";
    audit_depth(r, p);
    return r;
}

/* m = 1, odd p: checks c f*(c^{-1}x) = ((c+1) f*(x) + (c-1) f*(-x)) / 2 on the dual. */
inline PartitionReport verify_eq1(const FunctionTable& f, const BentReport& rep) {
    require_pary(f, "verify_eq1");
    const std::uint32_t p = f.p();
    if (p == 2) throw DomainError("verify_eq1 needs odd p");
    if (f.n() % 2) throw DomainError("verify_eq1 needs even n");
    if (!rep.weakly_regular() || !rep.dual) throw DomainError("verify_eq1 needs a weakly regular bent function");
    const auto& d = *rep.dual;
    const Space& s = f.domain();
    const std::uint32_t half = (p + 1) / 2;
    PartitionReport r;
    r.route = Route::eq1;
    r.depth = preimage_partition(f).partition.depth();
    bool ok = true;
    for (std::uint32_t c = 2; c < p && ok; ++c) {
        std::uint32_t cinv = 1;
        while ((cinv * c) % p != 1) ++cinv;
        for (Index x = 0; x < f.size(); ++x) {
            const std::uint32_t lhs = (c * d[s.scalar_mul(cinv, x)]) % p;
            const std::uint32_t rhs = (((c + 1) * d[x] + (c + p - 1) * d[s.neg(x)]) * half) % p;
            if (lhs != rhs) {
                ok = false;
                r.counterexample = Counterexample{{}, x, "dual identity fails at c = " + std::to_string(c)};
                break;
            }
        }
    }
    r.is_bent_partition = ok;
    r.class_wbp = ok ? std::optional<bool>(true) : std::nullopt;
    if (ok) r.epsilon = rep.epsilon;
    r.verdict = ok ? Verdict::bent_partition : Verdict::not_wbp_bent_partition;
    r.detail = ok ? "dual satisfies the eq1 identity for every c" : "dual violates the eq1 identity";
    audit_depth(r, p);
    return r;
}

inline PartitionReport verify_eq1(const FunctionTable& f, unsigned threads = 0) {
    return verify_eq1(f, analyze(f, threads));
}

/* Pointwise (D_d + D_e - D_{d+e}) mod p. */
inline std::vector<std::uint8_t> dual_delta(const std::vector<std::uint8_t>& dd, const std::vector<std::uint8_t>& de,
                                            const std::vector<std::uint8_t>& dsum, std::uint32_t p) {
    std::vector<std::uint8_t> out(dd.size());
    if (p == 2) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = dd[i] ^ de[i] ^ dsum[i];
    } else {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>((dd[i] + de[i] + p - dsum[i]) % p);
    }
    return out;
}

/*
 * Every Delta_{d,e} = D_d + D_e - D_{d+e} (d != -e, both
 * nonzero) must coincide; the common value is h, and G is solved from
 * <e_i, G(x)> = D_{e_i}(x) - h(x) on the codomain's unit vectors.
 */
inline PartitionReport verify_eq29(const FunctionTable& F, const VectorialReport& vr) {
    const std::uint32_t p = F.p(), n = F.n(), m = F.m();
    if (n % 2) throw DomainError("verify_eq29 needs even n");
    if (m > n / 2) throw DomainError("verify_eq29 needs m <= n/2");
    if (p == 2 && m < 2) throw DomainError("verify_eq29 needs m >= 2 when p = 2");
    if (!vr.vectorial_bent) throw DomainError("verify_eq29: F is not vectorial bent");
    if (!vr.uniform_epsilon) throw DomainError("verify_eq29: components are not weakly regular with one epsilon");
    const Space& cod = F.codomain();
    const auto q = cod.size();
    std::vector<const std::vector<std::uint8_t>*> D(q, nullptr);
    for (Index c = 1; c < q; ++c) {
        if (!vr.at(c).dual) throw DomainError("verify_eq29: duals were not kept");
        D[c] = &vr.at(c).dual->values();
    }
    PartitionReport r;
    r.route = Route::eq29;
    r.depth = preimage_partition(F).partition.depth();
    std::optional<std::vector<std::uint8_t>> common;
    std::size_t pairs = 0;
    for (Index d = 1; d < q; ++d)
        for (Index e = d; e < q; ++e) {
            if (p == 2 && d == e) continue;
            const Index s = cod.add(d, e);
            if (s == 0) continue;
            auto delta = dual_delta(*D[d], *D[e], *D[s], p);
            ++pairs;
            if (!common) {
                common = std::move(delta);
            } else if (delta != *common) {
                r.is_bent_partition = false;
                const bool conclusive = p == 2 || m == 1;
                r.verdict = !conclusive ? Verdict::sufficient_condition_fails
                                        : (p == 2 ? Verdict::not_bent_partition : Verdict::not_wbp_bent_partition);
                r.counterexample = Counterexample{{}, std::nullopt,
                                                  "Delta differs at pair (" + std::to_string(d) + ", " +
                                                      std::to_string(e) + ")"};
                r.detail = conclusive ? "Delta functions differ; the condition is necessary here, so the partition is not certified"
                                      : "Delta functions differ; necessity is open for odd p with m >= 2";
                return r;
            }
        }
    if (!common) throw InvariantViolation("verify_eq29: no admissible pairs");
    FunctionTable h(F.domain_ptr(), Space::scalars(p), std::move(*common));
    // G from the basis system
    std::vector<std::vector<std::uint8_t>> rows(m);
    std::vector<const std::vector<std::uint8_t>*> basis(m);
    for (std::uint32_t i = 0; i < m; ++i) {
        const auto& Di = *D[ipow(p, i)];
        rows[i].resize(F.size());
        for (Index x = 0; x < F.size(); ++x) rows[i][x] = static_cast<std::uint8_t>((Di[x] + p - h[x]) % p);
        basis[i] = &rows[i];
    }
    auto G = detail::assemble_from_components(F.domain_ptr(), F.codomain_ptr(), basis);
    for (Index c = 1; c < q; ++c) {
        auto Gc = component(G, c);
        for (Index x = 0; x < F.size(); ++x)
            if ((*D[c])[x] != (Gc[x] + h[x]) % p)
                throw InvariantViolation("verify_eq29: reconstructed (G, h) does not reproduce dual " + std::to_string(c));
    }
    r.is_bent_partition = true;
    r.class_wbp = true;
    r.epsilon = vr.uniform_epsilon;
    r.verdict = Verdict::bent_partition;
    r.dual_bent = h.is_zero();
    r.G = std::move(G);
    r.h = std::move(h);
    r.detail = "all " + std::to_string(pairs) + " Delta functions coincide";
    audit_depth(r, p);
    return r;
}

inline PartitionReport verify_eq29(const FunctionTable& F, unsigned threads = 0) {
    return verify_eq29(F, analyze_vectorial(F, threads));
}

/*
 * P o F vectorial bent for every permutation P of the
 * codomain. Each component <c, P(F(x))> equals B(F(x)) for a balanced B, so
 * analyses are cached by B.
 */
struct PermutationRouteResult {
    bool all_vectorial_bent = false;
    std::optional<bool> class_wbp;
    std::optional<int> epsilon;
    std::uint64_t permutations = 0;
    std::optional<std::vector<Index>> failing_permutation;
};

inline PermutationRouteResult verify_thm1_permutation_route(const FunctionTable& F, unsigned threads = 0) {
    const Space& cod = F.codomain();
    const auto q = cod.size();
    if (q > 8) throw RouteRefused("thm1perm", std::to_string(q) + "! permutations exceed the p^m <= 8 limit");
    const std::uint32_t p = F.p();
    std::map<std::vector<std::uint8_t>, std::pair<bool, int>> cache;  // B -> (bent, eps or 0 if not weakly regular)
    auto analyze_B = [&](const std::vector<std::uint8_t>& B) {
        auto it = cache.find(B);
        if (it != cache.end()) return it->second;
        std::vector<std::uint8_t> v(F.size());
        for (Index x = 0; x < F.size(); ++x) v[x] = B[F[x]];
        auto rep = analyze(FunctionTable(F.domain_ptr(), Space::scalars(p), std::move(v)), threads, false);
        auto res = std::pair{rep.is_bent, rep.weakly_regular() ? *rep.epsilon : 0};
        cache.emplace(B, res);
        return res;
    };
    PermutationRouteResult out;
    std::vector<Index> P(q);
    for (Index i = 0; i < q; ++i) P[i] = i;
    bool wbp = true;
    int eps = 0;
    do {
        ++out.permutations;
        for (Index c = 1; c < q; ++c) {
            std::vector<std::uint8_t> B(q);
            for (Index y = 0; y < q; ++y) B[y] = static_cast<std::uint8_t>(cod.inner_product(c, P[y]));
            auto [bent, e] = analyze_B(B);
            if (!bent) {
                out.failing_permutation = P;
                return out;
            }
            if (e == 0) wbp = false;
            else if (eps == 0) eps = e;
            else if (e != eps) wbp = false;
        }
    } while (std::next_permutation(P.begin(), P.end()));
    out.all_vectorial_bent = true;
    out.class_wbp = wbp;
    if (wbp) out.epsilon = eps;
    return out;
}

/*
 * chi_a(D_{F,i}) = p^{n-m} delta_0(a)
 *   + eps p^{n/2-m} zeta^{h(-a)} (p^m delta_{G(-a)}(i) - 1),
 * checked exactly. All a when p^n <= 2^16, else ceil(sample / p^m) random a
 * (every i is checked for each a).
 */
struct IdentityCheckResult {
    bool holds = true;
    std::uint64_t pairs_checked = 0;
    std::optional<std::pair<Index, Index>> mismatch;  // (a, i)
};

inline IdentityCheckResult character_sum_identity_check(const FunctionTable& F, const FunctionTable& G,
                                                         const FunctionTable& h, int epsilon,
                                                         std::uint64_t sample = 1000, std::uint64_t seed = 1,
                                                         unsigned threads = 0) {
    const Space& dom = F.domain();
    const Space& cod = F.codomain();
    const std::uint32_t p = F.p(), n = F.n(), m = F.m();
    if (!G.domain().same_as(dom) || !G.codomain().same_as(cod) || !h.domain().same_as(dom))
        throw DomainError("character_sum_identity_check: witness spaces do not match F");
    if (n % 2 || 2 * m > n) throw DomainError("character_sum_identity_check needs even n and m <= n/2");
    const auto q = cod.size();
    std::vector<Index> as;
    if (dom.size() <= (std::uint64_t{1} << 16)) {
        for (Index a = 0; a < dom.size(); ++a) as.push_back(a);
    } else {
        std::mt19937_64 gen(seed);
        std::uniform_int_distribution<Index> pick(0, dom.size() - 1);
        const std::uint64_t count = (sample + q - 1) / q;
        as.push_back(0);
        while (as.size() < count) as.push_back(pick(gen));
    }
    const Coefficient big = Coefficient(ipow(p, n - m));
    const Coefficient small = Coefficient(ipow(p, n / 2 - m));
    const Coefficient pm = Coefficient(q);
    std::vector<std::optional<Index>> bad(as.size());
    parallel_for(
        as.size(),
        [&](std::size_t k) {
            const Index a = as[k];
            std::vector<std::int64_t> counts(q * p, 0);
            const auto& fv = F.values();
            for_each_inner_product(dom, a, [&](Index x, std::uint32_t ip) { ++counts[fv[x] * p + ip]; });
            const Index na = dom.neg(a);
            const CycInt base = CycInt::root(p, h[na]).scaled(Coefficient(epsilon) * small);
            for (Index i = 0; i < q; ++i) {
                auto lhs = CycInt::from_exponent_counts(p, std::span<const std::int64_t>(counts.data() + i * p, p));
                CycInt rhs = base.scaled((G[na] == i ? pm : Coefficient(0)) - 1);
                if (a == 0) rhs += CycInt::from_integer(p, big);
                if (!(lhs == rhs)) {
                    bad[k] = i;
                    return;
                }
            }
        },
        threads);
    IdentityCheckResult out;
    for (std::size_t k = 0; k < as.size(); ++k) {
        if (bad[k]) {
            out.holds = false;
            out.mismatch = std::pair{as[k], *bad[k]};
            break;
        }
        out.pairs_checked += q;
    }
    return out;
}

/* sum_{x in A} zeta^{<a,x>} */
inline CycInt character_sum(const Space& s, const std::vector<Index>& cell, Index a) {
    std::vector<std::int64_t> counts(s.p(), 0);
    for (Index x : cell) ++counts[s.inner_product(a, x)];
    return CycInt::from_exponent_counts(s.p(), counts);
}

/* sum_{c in F_p^*} chi_{ca}(A), which must be a rational integer. */
inline CycInt galois_orbit_sum(const Space& s, const std::vector<Index>& cell, Index a) {
    CycInt total(s.p());
    for (std::uint32_t c = 1; c < s.p(); ++c) total += character_sum(s, cell, s.scalar_mul(c, a));
    return total;
}

/* Coarsening: consecutive runs of K/K' cells, or an explicit grouping. */
inline Partition coarsen(const Partition& g, std::size_t K2) {
    const std::uint32_t p = g.space().p();
    const std::size_t K = g.depth();
    if (K2 == 0 || K2 % p || K % K2) throw DomainError("coarsen needs p | K' and K' | K");
    const std::size_t k = K / K2;
    std::vector<std::vector<Index>> cells(K2);
    for (std::size_t i = 0; i < K; ++i) {
        auto& dst = cells[i / k];
        dst.insert(dst.end(), g.cell(i).begin(), g.cell(i).end());
    }
    return Partition(g.space_ptr(), std::move(cells));
}

inline Partition coarsen(const Partition& g, const std::vector<std::vector<std::size_t>>& grouping) {
    const std::uint32_t p = g.space().p();
    if (grouping.empty() || grouping.size() % p) throw DomainError("coarsen: number of groups must be divisible by p");
    std::vector<int> used(g.depth(), 0);
    std::vector<std::vector<Index>> cells;
    for (const auto& grp : grouping) {
        if (grp.empty()) throw DomainError("coarsen: empty group");
        std::vector<Index> c;
        for (auto i : grp) {
            if (i >= g.depth() || used[i]++) throw DomainError("coarsen: grouping is not a partition of the cells");
            c.insert(c.end(), g.cell(i).begin(), g.cell(i).end());
        }
        cells.push_back(std::move(c));
    }
    for (auto u : used)
        if (!u) throw DomainError("coarsen: grouping misses a cell");
    return Partition(g.space_ptr(), std::move(cells));
}

}  // namespace bentpart
