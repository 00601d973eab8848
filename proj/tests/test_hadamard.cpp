#include <gtest/gtest.h>

#include <sstream>

#include "bentpart/hadamard.hpp"
#include "support.hpp"

using namespace bentpart;
using testing_support::field;
using testing_support::uniform;

namespace {

FunctionTable from_counter(const SpacePtr& s, std::uint32_t p, std::uint64_t t) {
    std::vector<std::uint8_t> v(s->size());
    for (auto& x : v) {
        x = static_cast<std::uint8_t>(t % p);
        t /= p;
    }
    return FunctionTable(s, Space::scalars(p), std::move(v));
}

FunctionTable mm_vectorial(const FieldPtr& k, const std::vector<Element>& pi, const std::vector<Element>& g) {
    const Element q = k->order();
    return FunctionTable::tabulate(Space::of_fields({k, k}), Space::of_field(k), [&](Index v) {
        const Element x = static_cast<Element>(v % q), y = static_cast<Element>(v / q);
        return k->add(k->mul(x, pi[y]), g[y]);
    });
}

FunctionTable mm_power(const FieldPtr& k, std::int64_t e) {
    std::vector<Element> pi(k->order());
    for (Element y = 0; y < pi.size(); ++y) pi[y] = k->pow(y, e);
    return mm_vectorial(k, pi, std::vector<Element>(k->order(), 0));
}

/* Tr(xi^7 x^98) on F_{3^6}: bent but not weakly regular */
FunctionTable mixed_sign_bent() {
    auto k = field(3, 6);
    const Element xi = k->pow(k->primitive_element(), 7);
    return FunctionTable::tabulate(Space::of_field(k), Space::scalars(3),
                                   [&](Index x) { return k->trace_to_prime(k->mul(xi, k->pow(static_cast<Element>(x), 98))); });
}

}  // namespace

TEST(GHMatrix, ZeroFunctionIsAllOnes) {
    auto f = FunctionTable(Space::coordinates(2, 2), Space::scalars(2));
    auto H = ghm_from_function(f);
    for (auto e : H.exponents()) EXPECT_EQ(e, 0);
    EXPECT_FALSE(is_generalized_hadamard(H));
}

TEST(GHMatrix, ProductOfTwoBitsIsHadamard) {
    auto s = Space::coordinates(2, 2);
    auto f = FunctionTable::tabulate(s, Space::scalars(2), [&](Index x) { return (x & 1) & (x >> 1); });
    auto H = ghm_from_function(f);
    // plain integer H H^T
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            int sum = 0;
            for (int u = 0; u < 4; ++u) sum += (H.exponent(i, u) ? -1 : 1) * (H.exponent(j, u) ? -1 : 1);
            EXPECT_EQ(sum, i == j ? 4 : 0);
        }
    EXPECT_TRUE(is_generalized_hadamard(H));
    for (Index x = 0; x < 4; ++x)
        for (Index y = 0; y < 4; ++y) EXPECT_EQ(H.exponent(x, y), H.exponent(s->sub(x, y), 0));
}

TEST(GHMatrix, OrderOneIsHadamard) { EXPECT_TRUE(is_generalized_hadamard(GHMatrix(3, 1, {2}))); }

TEST(GHMatrix, LinearIsNotHadamard) {
    auto s = Space::coordinates(3, 2);
    auto f = FunctionTable::tabulate(s, Space::scalars(3), [&](Index x) { return s->digits(x)[0]; });
    EXPECT_FALSE(is_generalized_hadamard(ghm_from_function(f)));
}

TEST(GHMatrix, SizeCapRefuses) {
    FunctionTable f(Space::coordinates(2, 13), Space::scalars(2));
    EXPECT_THROW(ghm_from_function(f), RouteRefused);
}

TEST(GHMatrix, AgreesWithBentnessOnAllBinaryFunctionsOfFourVariables) {
    auto s = Space::coordinates(2, 4);
    int bent = 0;
    for (std::uint64_t t = 0; t < 65536; ++t) {
        auto f = from_counter(s, 2, t);
        const bool h = is_generalized_hadamard(ghm_from_function(f), 1);
        ASSERT_EQ(h, analyze(f, 1, false).is_bent) << t;
        bent += h;
    }
    EXPECT_EQ(bent, 896);
}

TEST(GHMatrix, AgreesWithBentnessOnAllTernaryFunctionsOfTwoVariables) {
    auto s = Space::coordinates(3, 2);
    for (std::uint64_t t = 0; t < 19683; ++t) {
        auto f = from_counter(s, 3, t);
        ASSERT_EQ(is_generalized_hadamard(ghm_from_function(f), 1), analyze(f, 1, false).is_bent) << t;
    }
}

TEST(WeaklyRegularType, MatchesRegularityExhaustively) {
    auto s = Space::coordinates(3, 2);
    for (std::uint64_t t = 0; t < 19683; ++t) {
        auto f = from_counter(s, 3, t);
        auto r = analyze(f, 1, false);
        if (!r.is_bent) continue;
        auto nu = weakly_regular_type(f);
        ASSERT_EQ(nu.has_value(), r.weakly_regular());
        if (nu) {
            ASSERT_EQ(*nu, *r.epsilon);
        }
    }
}

TEST(WeaklyRegularType, BinaryIsAlwaysOne) {
    auto s = Space::coordinates(2, 4);
    auto f = FunctionTable::tabulate(s, Space::scalars(2), [&](Index x) { return ((x & 1) & (x >> 1)) ^ ((x >> 2) & (x >> 3) & 1); });
    EXPECT_EQ(weakly_regular_type(f), 1);
}

TEST(WeaklyRegularType, MixedSignsGiveNothing) {
    auto f = mixed_sign_bent();
    auto r = analyze(f);
    ASSERT_TRUE(r.is_bent);
    EXPECT_EQ(r.regularity, Regularity::not_weakly_regular);
    EXPECT_FALSE(weakly_regular_type(f).has_value());
}

TEST(TripleProduct, DualBentOverF4) {
    auto F = mm_power(field(2, 2), 2);
    auto r = triple_product_check(F);
    EXPECT_TRUE(r.holds());
    EXPECT_EQ(r.pairs, 3u);
    EXPECT_TRUE(triple_product_shortcut(F, analyze_vectorial(F)));
    EXPECT_TRUE(verify_definitional(preimage_partition(F).partition).is_bent_partition);
}

TEST(TripleProduct, DenseAgreesWithShortcutAndEq29) {
    auto k = field(2, 3);
    for (int t = 0; t < 6; ++t) {
        std::vector<Element> pi(8), g(8);
        for (Element i = 0; i < 8; ++i) pi[i] = i;
        for (Element i = 7; i > 0; --i) std::swap(pi[i], pi[uniform(i + 1)]);
        for (auto& v : g) v = static_cast<Element>(t % 2 ? uniform(8) : 0);
        auto F = t == 0 ? mm_power(k, 6) : mm_vectorial(k, pi, g);
        auto vr = analyze_vectorial(F);
        const bool dense = triple_product_check(F).holds();
        EXPECT_EQ(dense, triple_product_shortcut(F, vr)) << t;
        EXPECT_EQ(dense, verify_eq29(F, vr).is_bent_partition) << t;
        EXPECT_EQ(dense, verify_definitional(preimage_partition(F).partition).is_bent_partition) << t;
        if (t == 0) {
            EXPECT_TRUE(dense);
        }
    }
}

TEST(TripleProduct, TernaryDenseAgreesWithShortcut) {
    auto k = field(3, 2);
    for (std::int64_t e : {7, 1}) {
        auto F = mm_power(k, e);
        auto vr = analyze_vectorial(F);
        auto r = triple_product_check(F);
        EXPECT_EQ(r.holds(), triple_product_shortcut(F, vr)) << e;
        EXPECT_EQ(r.holds(), e == 7) << e;
        if (r.holds()) {
            EXPECT_EQ(r.nu, vr.uniform_epsilon);
        }
    }
}

TEST(TripleProduct, BrokenComponentIsRejected) {
    auto F = mm_power(field(2, 2), 2);
    auto v = F.values();
    v[5] ^= 1;
    FunctionTable G(F.domain_ptr(), F.codomain_ptr(), v);
    auto r = triple_product_check(G);
    EXPECT_FALSE(r.holds());
    EXPECT_FALSE(r.all_hadamard);
}

TEST(MatrixText, RoundTripAndSigns) {
    auto s = Space::coordinates(2, 2);
    auto f = FunctionTable::tabulate(s, Space::scalars(2), [&](Index x) { return (x & 1) & (x >> 1); });
    auto H = ghm_from_function(f);
    std::stringstream ss;
    write_matrix(ss, H);
    EXPECT_EQ(read_matrix(ss, 2), H);
    std::istringstream signs("++++\n+-+-\n++--\n+--+\n");
    auto S = read_matrix(signs, 2);
    EXPECT_TRUE(is_generalized_hadamard(S));
    std::istringstream bad("0 1\n1\n");
    EXPECT_THROW(read_matrix(bad, 2), ParseError);
    std::istringstream range("0 3\n1 0\n");
    EXPECT_THROW(read_matrix(range, 3), ParseError);
}
