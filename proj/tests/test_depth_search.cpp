#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "bentpart/depth_search.hpp"
#include "support.hpp"

using namespace bentpart;
using testing_support::field;

namespace {

using CellSet = std::vector<std::vector<Index>>;

/* Canonical two-cell partitions from every bent Boolean function on n variables. */
std::set<CellSet> bent_level_partitions(std::uint32_t n) {
    auto V = Space::coordinates(2, n);
    const std::uint64_t N = V->size();
    std::set<CellSet> out;
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << N); ++t) {
        std::vector<std::uint8_t> v(N);
        for (std::uint64_t x = 0; x < N; ++x) v[x] = (t >> x) & 1;
        FunctionTable f(V, Space::scalars(2), v);
        if (!analyze(f, 1, false).is_bent) continue;
        out.insert(preimage_partition(f).partition.canonical().cells());
    }
    return out;
}

std::set<CellSet> cell_sets(const SearchResult& r) {
    std::set<CellSet> s;
    for (const auto& g : r.partitions) s.insert(g.cells());
    return s;
}

}  // namespace

TEST(SizeVectors, MatchBruteForceFilter) {
    for (std::uint32_t n : {2u, 4u, 6u})
        for (std::uint32_t K = 2; K <= 12 && K <= (1u << n); K += 2) {
            if (n == 6 && K > 8) continue;
            std::vector<SizeVector> brute;
            for (auto& s : all_size_vectors(n, K))
                if (detail::sizes_admissible(s, n)) brute.push_back(s);
            EXPECT_EQ(admissible_size_vectors(n, K), brute) << n << " " << K;
        }
}

TEST(SizeVectors, KnownLists) {
    EXPECT_EQ(admissible_size_vectors(4, 2), (std::vector<SizeVector>{{6, 10}}));
    EXPECT_EQ(admissible_size_vectors(4, 4), (std::vector<SizeVector>{{1, 5, 5, 5}, {3, 3, 3, 7}}));
    EXPECT_EQ(admissible_size_vectors(4, 6), (std::vector<SizeVector>{{2, 2, 2, 2, 2, 6}}));
    EXPECT_TRUE(admissible_size_vectors(4, 8).empty());
    // pair sums of 8 are not bent weights
    auto v = admissible_size_vectors(4, 4);
    EXPECT_EQ(std::count(v.begin(), v.end(), SizeVector{4, 4, 4, 4}), 0);
    EXPECT_EQ(admissible_size_vectors(16, 2), (std::vector<SizeVector>{{32640, 32896}}));
}

TEST(SizeVectors, RejectsBadArguments) {
    EXPECT_THROW(admissible_size_vectors(4, 3), DomainError);
    EXPECT_THROW(admissible_size_vectors(3, 2), DomainError);
    EXPECT_THROW(admissible_size_vectors(4, 14), DomainError);
    EXPECT_THROW(search(8, 4), DomainError);
}

TEST(Search, TwoVariablesMatchesBentOracle) {
    auto r = search(2, 2);
    EXPECT_EQ(r.partitions.size(), 4u);
    EXPECT_EQ(cell_sets(r), bent_level_partitions(2));
}

TEST(Search, FourVariablesTwoCellsMatchesBentOracle) {
    auto r = search(4, 2);
    EXPECT_EQ(r.partitions.size(), 448u);
    EXPECT_EQ(cell_sets(r), bent_level_partitions(4));
}

TEST(Search, DepthFourContainsMaioranaMcFarland) {
    auto r = search(4, 4);
    ASSERT_FALSE(r.partitions.empty());
    auto k = field(2, 2);
    const Element q = 4;
    auto F = FunctionTable::tabulate(Space::of_fields({k, k}), Space::of_field(k), [&](Index v) {
        return k->mul(static_cast<Element>(v % q), static_cast<Element>(v / q));
    });
    auto mm = preimage_partition(F).partition.canonical();
    EXPECT_TRUE(cell_sets(r).count(mm.cells()));
    for (const auto& g : r.partitions) {
        EXPECT_EQ(g.depth(), 4u);
        EXPECT_TRUE(verify_definitional(g).is_bent_partition);
        EXPECT_TRUE(g == g.canonical());
    }
    EXPECT_TRUE(std::is_sorted(r.partitions.begin(), r.partitions.end(),
                               [](const auto& a, const auto& b) { return a.cells() < b.cells(); }));
}

TEST(Search, FilterIsPureOptimization) {
    for (std::uint32_t K : {2u, 4u}) {
        SearchOptions off;
        off.size_filter = false;
        auto a = search(4, K);
        auto b = search(4, K, off);
        EXPECT_EQ(cell_sets(a), cell_sets(b)) << K;
        EXPECT_GT(b.size_vectors, a.size_vectors);
    }
}

TEST(Search, SixCellsFindsNothing) {
    auto r = search(4, 6);
    EXPECT_TRUE(r.partitions.empty());
    EXPECT_EQ(r.size_vectors, 1u);
    EXPECT_TRUE(search(4, 8).partitions.empty());
}

TEST(Search, ThreadCountDoesNotChangeResult) {
    SearchOptions one;
    one.threads = 1;
    SearchOptions four;
    four.threads = 4;
    auto a = search(4, 4, one), b = search(4, 4, four);
    EXPECT_EQ(cell_sets(a), cell_sets(b));
    EXPECT_EQ(a.nodes, b.nodes);
}

TEST(Search, BudgetAndResumeReproduceFullRun) {
    const auto full = search(4, 4);
    SearchOptions opt;
    opt.node_budget = 20000;
    int rounds = 0;
    SearchResult last;
    while (true) {
        try {
            last = search(4, 4, opt);
            break;
        } catch (const SearchBudgetExhausted& e) {
            ASSERT_FALSE(e.resume_token().empty());
            EXPECT_LE(e.partial().partitions.size(), full.partitions.size());
            opt.resume_token = e.resume_token();
            ++rounds;
        }
        ASSERT_LT(rounds, 100000);
    }
    EXPECT_GT(rounds, 1);
    EXPECT_EQ(cell_sets(last), cell_sets(full));
}

TEST(Search, BadResumeTokens) {
    SearchOptions opt;
    opt.resume_token = "zz";
    EXPECT_THROW(search(4, 4, opt), ParseError);
    opt.resume_token = std::string(16, 'g');
    EXPECT_THROW(search(4, 4, opt), ParseError);
    opt.node_budget = 10;
    opt.resume_token.clear();
    std::string token;
    try {
        search(4, 4, opt);
    } catch (const SearchBudgetExhausted& e) {
        token = e.resume_token();
    }
    ASSERT_FALSE(token.empty());
    opt.resume_token = token;
    EXPECT_THROW(search(4, 2, opt), ParseError);
    opt.resume_token = token + "00";
    EXPECT_THROW(search(4, 4, opt), ParseError);
}
