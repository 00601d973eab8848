#pragma once

/*
 * Exhaustive search for bent partitions of V_n^(2) with a prescribed number
 * of cells. Cells are bitmasks over the 2^n points (n <= 6). The cell holding
 * point 0 is chosen first; the others follow in (size, smallest element)
 * order, so every partition is produced once up to relabeling.
 */

#include <algorithm>
#include <bit>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"
#include "partition.hpp"
#include "space.hpp"

namespace bentpart {

using SizeVector = std::vector<std::uint32_t>;

namespace detail {

inline void check_search_args(std::uint32_t n, std::uint32_t K, std::uint32_t max_n) {
    if (n == 0 || n % 2) throw DomainError("depth search needs even n >= 2");
    if (n > max_n) throw DomainError("depth search supports n <= " + std::to_string(max_n));
    if (K == 0 || K % 2) throw DomainError("depth search needs an even number of cells");
    if (K > 12) throw DomainError("depth search supports K <= 12");
    if (K > (1u << n)) throw DomainError("more cells than points");
}

/* All K/2-subset sums of sorted s lie in the bent level sizes. */
inline bool sizes_admissible(const SizeVector& s, std::uint32_t n) {
    const std::uint64_t lo = (std::uint64_t{1} << (n - 1)) - (std::uint64_t{1} << (n / 2 - 1));
    const std::uint64_t hi = (std::uint64_t{1} << (n - 1)) + (std::uint64_t{1} << (n / 2 - 1));
    const std::size_t K = s.size(), half = K / 2;
    std::vector<char> pick(K, 0);
    std::fill(pick.end() - static_cast<std::ptrdiff_t>(half), pick.end(), 1);
    do {
        std::uint64_t t = 0;
        for (std::size_t i = 0; i < K; ++i)
            if (pick[i]) t += s[i];
        if (t != lo && t != hi) return false;
    } while (std::next_permutation(pick.begin(), pick.end()));
    return true;
}

/* Nondecreasing K-part compositions of total. */
inline void sorted_compositions(std::uint64_t total, std::uint32_t K, std::uint64_t min_part, SizeVector& cur,
                                std::vector<SizeVector>& out) {
    if (K == 1) {
        if (total >= min_part) {
            cur.push_back(static_cast<std::uint32_t>(total));
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (std::uint64_t a = min_part; a * K <= total; ++a) {
        cur.push_back(static_cast<std::uint32_t>(a));
        sorted_compositions(total - a, K - 1, a, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

/*
 * Sorted K-part compositions of 2^n whose K/2-subsets all sum to
 * 2^{n-1} +- 2^{n/2-1}. Swapping one part in and one out of a subset moves
 * the sum by their difference, so any two parts differ by 0 or 2^{n/2} and
 * only two-valued vectors need testing.
 */
inline std::vector<SizeVector> admissible_size_vectors(std::uint32_t n, std::uint32_t K) {
    detail::check_search_args(n, K, 16);
    const std::uint64_t N = std::uint64_t{1} << n, D = std::uint64_t{1} << (n / 2);
    std::vector<SizeVector> out;
    for (std::uint64_t s0 = 1; s0 * K <= N; ++s0)
        for (std::uint32_t k = K; k >= 1; --k) {  // k parts equal s0, the rest s0 + D
            if (s0 * K + (K - k) * D != N) continue;
            SizeVector s(K, static_cast<std::uint32_t>(s0));
            for (std::uint32_t i = k; i < K; ++i) s[i] = static_cast<std::uint32_t>(s0 + D);
            if (detail::sizes_admissible(s, n)) out.push_back(std::move(s));
        }
    std::sort(out.begin(), out.end());
    return out;
}

/* Every sorted K-part composition of 2^n (the unfiltered search space). */
inline std::vector<SizeVector> all_size_vectors(std::uint32_t n, std::uint32_t K) {
    detail::check_search_args(n, K, 6);
    std::vector<SizeVector> out;
    SizeVector cur;
    detail::sorted_compositions(std::uint64_t{1} << n, K, 1, cur, out);
    return out;
}

struct SearchOptions {
    std::uint64_t node_budget = std::numeric_limits<std::uint64_t>::max();
    bool size_filter = true;
    std::string resume_token;  // empty: start from the beginning
    unsigned threads = 0;      // used only when the budget is unlimited
};

struct SearchResult {
    std::vector<Partition> partitions;  // canonical, sorted
    std::uint64_t nodes = 0;            // candidate cells tried
    std::uint64_t candidates_verified = 0;
    std::size_t size_vectors = 0;
};

/* Budget ran out; holds what was found so far and a token to continue. */
class SearchBudgetExhausted : public Error {
   public:
    SearchBudgetExhausted(SearchResult partial, std::string token)
        : Error("search node budget exhausted after " + std::to_string(partial.nodes) + " nodes"),
          partial_(std::move(partial)),
          token_(std::move(token)) {}
    const SearchResult& partial() const noexcept { return partial_; }
    const std::string& resume_token() const noexcept { return token_; }

   private:
    SearchResult partial_;
    std::string token_;
};

namespace detail {

inline constexpr std::uint32_t search_token_version = 1;

/* version, n, K, filter, size-vector index, path masks, found masks; u64 little-endian, hex. */
struct SearchFrontier {
    std::uint32_t n = 0, K = 0;
    bool filter = true;
    std::uint64_t vector_index = 0;
    std::vector<std::uint64_t> path;
    std::vector<std::vector<std::uint64_t>> found;
};

inline std::string encode_frontier(const SearchFrontier& f) {
    std::vector<std::uint64_t> w{search_token_version, f.n, f.K, f.filter ? 1u : 0u, f.vector_index, f.path.size()};
    w.insert(w.end(), f.path.begin(), f.path.end());
    w.push_back(f.found.size());
    for (const auto& p : f.found) w.insert(w.end(), p.begin(), p.end());
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (auto x : w)
        for (int b = 0; b < 8; ++b) os << std::setw(2) << ((x >> (8 * b)) & 0xff);
    return os.str();
}

inline SearchFrontier decode_frontier(const std::string& s) {
    if (s.size() % 16) throw ParseError("resume token has a bad length");
    std::vector<std::uint64_t> w(s.size() / 16, 0);
    for (std::size_t i = 0; i < w.size(); ++i)
        for (int b = 0; b < 8; ++b) {
            const std::string byte = s.substr(i * 16 + 2 * b, 2);
            if (byte.find_first_not_of("0123456789abcdef") != std::string::npos)
                throw ParseError("resume token is not lowercase hex");
            w[i] |= std::stoull(byte, nullptr, 16) << (8 * b);
        }
    std::size_t at = 0;
    auto next = [&]() {
        if (at >= w.size()) throw ParseError("resume token is truncated");
        return w[at++];
    };
    if (next() != search_token_version) throw ParseError("resume token has an unknown version");
    SearchFrontier f;
    f.n = static_cast<std::uint32_t>(next());
    f.K = static_cast<std::uint32_t>(next());
    f.filter = next() != 0;
    f.vector_index = next();
    const auto plen = next();
    if (plen > f.K) throw ParseError("resume token path is longer than K");
    for (std::uint64_t i = 0; i < plen; ++i) f.path.push_back(next());
    const auto nfound = next();
    if (nfound > w.size()) throw ParseError("resume token is truncated");
    for (std::uint64_t i = 0; i < nfound; ++i) {
        std::vector<std::uint64_t> p;
        for (std::uint32_t j = 0; j < f.K; ++j) p.push_back(next());
        f.found.push_back(std::move(p));
    }
    if (at != w.size()) throw ParseError("resume token has trailing data");
    return f;
}

struct BudgetHit {
    std::vector<std::uint64_t> path;
};

/* Size-s subsets of the bits of avail, in lexicographic order of their sorted elements. */
inline void subsets_of(std::uint64_t avail, std::uint32_t s, std::uint32_t min_bit, std::vector<std::uint64_t>& out) {
    std::vector<std::uint32_t> pts;
    for (std::uint64_t a = avail; a; a &= a - 1) {
        const auto b = static_cast<std::uint32_t>(std::countr_zero(a));
        if (b >= min_bit) pts.push_back(b);
    }
    if (s == 0) {
        out.push_back(0);
        return;
    }
    if (s > pts.size()) return;
    std::vector<std::uint32_t> idx(s);
    for (std::uint32_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
        std::uint64_t m = 0;
        for (auto i : idx) m |= std::uint64_t{1} << pts[i];
        out.push_back(m);
        int i = static_cast<int>(s) - 1;
        while (i >= 0 && idx[i] == pts.size() - s + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (std::uint32_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline Partition partition_from_masks(const SpacePtr& V, const std::vector<std::uint64_t>& masks) {
    std::vector<std::vector<Index>> cells;
    for (auto m : masks) {
        std::vector<Index> c;
        for (; m; m &= m - 1) c.push_back(static_cast<Index>(std::countr_zero(m)));
        cells.push_back(std::move(c));
    }
    return Partition(V, std::move(cells)).canonical();
}

class DepthSearch {
   public:
    DepthSearch(std::uint32_t n, SizeVector sizes)
        : V_(Space::coordinates(2, n)), n_(n), N_(1u << n), K_(static_cast<std::uint32_t>(sizes.size())), sizes_(std::move(sizes)),
          target_(std::int64_t{1} << (n / 2 - 1)) {}

    /* Cells containing point 0, one per distinct size, in (size, mask) order. */
    std::vector<std::uint64_t> first_cells() const {
        std::vector<std::uint64_t> out;
        const std::uint64_t all = N_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << N_) - 1;
        for (std::size_t i = 0; i < K_; ++i) {
            if (i && sizes_[i] == sizes_[i - 1]) continue;
            std::vector<std::uint64_t> rest;
            subsets_of(all & ~std::uint64_t{1}, sizes_[i] - 1, 0, rest);
            for (auto m : rest) out.push_back(m | 1);
        }
        return out;
    }

    /*
     * Explores the subtree under first cell c0. resume (if nonempty) is the
     * path to restart at, inclusive. Throws BudgetHit when nodes reaches budget.
     */
    void run(std::uint64_t c0, const std::vector<std::uint64_t>& resume, std::uint64_t& nodes, std::uint64_t budget,
             std::vector<std::vector<std::uint64_t>>& found) {
        path_.assign(1, c0);
        chars_.assign(1, characters(c0));
        const auto s0 = static_cast<std::uint32_t>(std::popcount(c0));
        rest_ = sizes_;
        rest_.erase(std::find(rest_.begin(), rest_.end(), s0));
        if (!unions_ok()) return;
        descend(1, resume, nodes, budget, found);
    }

    std::uint64_t verified() const noexcept { return verified_; }

   private:
    std::vector<std::int32_t> characters(std::uint64_t cell) const {
        std::vector<std::int32_t> c(N_, 0);
        for (std::uint64_t m = cell; m; m &= m - 1) {
            const auto x = static_cast<std::uint32_t>(std::countr_zero(m));
            for (std::uint32_t a = 1; a < N_; ++a) c[a] += std::popcount(a & x) & 1 ? -1 : 1;
        }
        return c;
    }

    /* Every K/2-union containing the newest cell has |chi_a| = 2^{n/2-1} at every a != 0. */
    bool unions_ok() const {
        const std::size_t j = path_.size() - 1, half = K_ / 2;
        if (j + 1 < half) return true;
        std::vector<char> pick(j, 0);
        std::fill(pick.end() - static_cast<std::ptrdiff_t>(half - 1), pick.end(), 1);
        std::vector<std::int32_t> acc(N_);
        do {
            acc = chars_[j];
            for (std::size_t i = 0; i < j; ++i)
                if (pick[i])
                    for (std::uint32_t a = 1; a < N_; ++a) acc[a] += chars_[i][a];
            for (std::uint32_t a = 1; a < N_; ++a)
                if (acc[a] != target_ && acc[a] != -target_) return false;
        } while (std::next_permutation(pick.begin(), pick.end()));
        return true;
    }

    void descend(std::size_t level, std::vector<std::uint64_t> resume, std::uint64_t& nodes, std::uint64_t budget,
                 std::vector<std::vector<std::uint64_t>>& found) {
        std::uint64_t used = 0;
        for (auto c : path_) used |= c;
        if (level == K_) {
            ++verified_;
            if (verify_definitional(partition_from_masks(V_, path_), default_enumeration_budget, 1).is_bent_partition)
                found.push_back(path_);
            return;
        }
        const std::size_t r = level - 1;  // index into rest_
        const std::uint32_t s = rest_[r];
        std::uint32_t min_bit = 0;
        if (r > 0 && rest_[r - 1] == s) min_bit = static_cast<std::uint32_t>(std::countr_zero(path_[level - 1])) + 1;
        const std::uint64_t all = N_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << N_) - 1;
        const std::uint64_t avail = all & ~used;
        std::vector<std::uint64_t> cands;
        // the smallest element of a cell is its smallest free point at or above min_bit
        subsets_of(avail, s, min_bit, cands);
        const bool resuming = resume.size() > level;
        std::size_t start = 0;
        if (resuming) {
            start = static_cast<std::size_t>(std::find(cands.begin(), cands.end(), resume[level]) - cands.begin());
            if (start == cands.size()) throw ParseError("resume token does not match the search frontier");
        }
        for (std::size_t i = start; i < cands.size(); ++i) {
            const std::uint64_t c = cands[i];
            const bool inner_resume = resuming && i == start && resume.size() > level + 1;
            if (!inner_resume) {
                if (nodes >= budget) {
                    auto p = path_;
                    p.push_back(c);
                    throw BudgetHit{std::move(p)};
                }
                ++nodes;
            }
            path_.push_back(c);
            chars_.push_back(characters(c));
            if (inner_resume || unions_ok())
                descend(level + 1, inner_resume ? resume : std::vector<std::uint64_t>{}, nodes, budget, found);
            path_.pop_back();
            chars_.pop_back();
        }
    }

    SpacePtr V_;
    std::uint32_t n_, N_, K_;
    SizeVector sizes_, rest_;
    std::int32_t target_;
    std::vector<std::uint64_t> path_;
    std::vector<std::vector<std::int32_t>> chars_;
    std::uint64_t verified_ = 0;
};

inline bool canonical_less(const Partition& a, const Partition& b) { return a.cells() < b.cells(); }

}  // namespace detail

/*
 * All bent partitions of V_n^(2) into K cells, canonical and sorted. Each
 * candidate passes the probe-point union test during the search and
 * verify_definitional at the leaves.
 */
inline SearchResult search(std::uint32_t n, std::uint32_t K, const SearchOptions& opt = {}) {
    detail::check_search_args(n, K, 6);
    auto V = Space::coordinates(2, n);
    const auto vectors = opt.size_filter ? admissible_size_vectors(n, K) : all_size_vectors(n, K);
    SearchResult res;
    res.size_vectors = vectors.size();

    detail::SearchFrontier front{n, K, opt.size_filter, 0, {}, {}};
    if (!opt.resume_token.empty()) {
        front = detail::decode_frontier(opt.resume_token);
        if (front.n != n || front.K != K || front.filter != opt.size_filter)
            throw ParseError("resume token belongs to a different search");
        if (front.vector_index > vectors.size()) throw ParseError("resume token size-vector index out of range");
    }
    std::vector<std::vector<std::uint64_t>> found = front.found;
    const bool parallel = opt.node_budget == std::numeric_limits<std::uint64_t>::max() && opt.resume_token.empty();

    for (std::size_t vi = front.vector_index; vi < vectors.size(); ++vi) {
        detail::DepthSearch ds(n, vectors[vi]);
        const auto tops = ds.first_cells();
        const std::vector<std::uint64_t> resume = vi == front.vector_index ? front.path : std::vector<std::uint64_t>{};
        if (parallel) {
            std::vector<std::vector<std::vector<std::uint64_t>>> per(tops.size());
            std::vector<std::uint64_t> counts(tops.size(), 0), verified(tops.size(), 0);
            parallel_for(
                tops.size(),
                [&](std::size_t t) {
                    detail::DepthSearch local(n, vectors[vi]);
                    ++counts[t];
                    local.run(tops[t], {}, counts[t], opt.node_budget, per[t]);
                    verified[t] = local.verified();
                },
                opt.threads);
            for (std::size_t t = 0; t < tops.size(); ++t) {
                res.nodes += counts[t];
                res.candidates_verified += verified[t];
                found.insert(found.end(), per[t].begin(), per[t].end());
            }
            continue;
        }
        std::size_t start = 0;
        if (!resume.empty()) {
            start = static_cast<std::size_t>(std::find(tops.begin(), tops.end(), resume[0]) - tops.begin());
            if (start == tops.size()) throw ParseError("resume token does not match the search frontier");
        }
        for (std::size_t t = start; t < tops.size(); ++t) {
            const bool resume_here = t == start && resume.size() > 1;
            try {
                if (!resume_here) {
                    if (res.nodes >= opt.node_budget) throw detail::BudgetHit{{tops[t]}};
                    ++res.nodes;
                }
                ds.run(tops[t], resume_here ? resume : std::vector<std::uint64_t>{}, res.nodes, opt.node_budget, found);
            } catch (detail::BudgetHit& hit) {
                detail::SearchFrontier f{n, K, opt.size_filter, vi, std::move(hit.path), found};
                SearchResult partial = res;
                partial.candidates_verified += ds.verified();
                for (const auto& m : found) partial.partitions.push_back(detail::partition_from_masks(V, m));
                std::sort(partial.partitions.begin(), partial.partitions.end(), detail::canonical_less);
                throw SearchBudgetExhausted(std::move(partial), detail::encode_frontier(f));
            }
        }
    }

    for (const auto& m : found) res.partitions.push_back(detail::partition_from_masks(V, m));
    std::sort(res.partitions.begin(), res.partitions.end(), detail::canonical_less);
    return res;
}

}  // namespace bentpart
