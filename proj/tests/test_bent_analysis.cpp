#include <gtest/gtest.h>

#include <set>

#include "bentpart/bent_analysis.hpp"
#include "support.hpp"

using namespace bentpart;
using testing_support::field;
using testing_support::naive_walsh_counts;
using testing_support::random_table;
using testing_support::uniform;

namespace {

SpacePtr F3() { return Space::scalars(3); }

FunctionTable coords_fn(std::uint32_t p, std::uint32_t n, std::function<std::uint64_t(std::vector<std::uint32_t>)> fn) {
    auto s = Space::coordinates(p, n);
    return FunctionTable::tabulate(s, Space::scalars(p), [&](Index x) { return fn(s->digits(x)) % p; });
}

/* brute-force bentness: |W(a)|^2 = p^n at every a, from independent exponent counts */
bool brute_bent(const FunctionTable& f) {
    for (Index a = 0; a < f.size(); ++a) {
        auto w = CycInt::from_exponent_counts(f.p(), naive_walsh_counts(f, a));
        if (w.norm().as_rational_integer() != std::optional<Coefficient>(Coefficient(f.size()))) return false;
    }
    return true;
}

/* MM function Tr(x pi(y)) + g(y) over F_q x F_q with random permutation pi and random g */
FunctionTable random_mm(const FieldPtr& k) {
    const Element q = k->order();
    std::vector<Element> pi(q);
    for (Element i = 0; i < q; ++i) pi[i] = i;
    for (Element i = q - 1; i > 0; --i) std::swap(pi[i], pi[uniform(i + 1)]);
    std::vector<std::uint32_t> g(q);
    for (auto& v : g) v = static_cast<std::uint32_t>(uniform(k->p()));
    auto s = Space::of_fields({k, k});
    return FunctionTable::tabulate(s, Space::scalars(k->p()), [&](Index v) {
        const Element x = static_cast<Element>(v % q), y = static_cast<Element>(v / q);
        return (k->trace_to_prime(k->mul(x, pi[y])) + g[y]) % k->p();
    });
}

}  // namespace

TEST(Analyze, ProductOfTwoBits) {
    auto f = coords_fn(2, 2, [](auto d) { return d[0] * d[1]; });
    auto r = analyze(f);
    EXPECT_TRUE(r.is_bent);
    EXPECT_EQ(r.regularity, Regularity::regular);
    EXPECT_EQ(r.epsilon, 1);
    ASSERT_TRUE(r.dual);
    EXPECT_EQ(r.dual->values(), f.values());
}

TEST(Analyze, LinearIsNotBent) {
    auto f = coords_fn(3, 2, [](auto d) { return d[0] + 2 * d[1]; });
    auto r = analyze(f);
    EXPECT_FALSE(r.is_bent);
    EXPECT_EQ(r.regularity, Regularity::not_bent);
    EXPECT_FALSE(analyze(coords_fn(2, 4, [](auto d) { return d[2]; })).is_bent);
}

TEST(Analyze, TernaryProduct) {
    auto f = coords_fn(3, 2, [](auto d) { return d[0] * d[1]; });
    auto r = analyze(f);
    EXPECT_TRUE(r.is_bent);
    EXPECT_EQ(r.epsilon, 1);
    EXPECT_EQ((*r.dual)[0], 0);
    EXPECT_EQ(walsh_point(f, 0).as_rational_integer(), Coefficient(3));
}

TEST(Analyze, SumOfSquaresIsWeaklyRegularNotRegular) {
    // Gauss sum squared is -3 at p = 3
    auto f = coords_fn(3, 2, [](auto d) { return d[0] * d[0] + d[1] * d[1]; });
    auto r = analyze(f);
    EXPECT_TRUE(r.is_bent);
    EXPECT_EQ(r.regularity, Regularity::weakly_regular_not_regular);
    EXPECT_EQ(r.epsilon, -1);
}

TEST(Analyze, OddDimensionOnlyDecidesBentness) {
    auto f = coords_fn(3, 1, [](auto d) { return d[0] * d[0]; });
    auto r = analyze(f);
    EXPECT_TRUE(r.is_bent);
    EXPECT_EQ(r.regularity, Regularity::not_weakly_regular);
    EXPECT_FALSE(r.diagnostic.empty());
}

TEST(Analyze, AgreesWithBruteForceOnAllTwoVariableFunctions) {
    auto s2 = Space::coordinates(2, 2);
    for (std::uint32_t code = 0; code < 16; ++code) {
        FunctionTable f = FunctionTable::tabulate(s2, Space::scalars(2), [&](Index x) { return (code >> x) & 1; });
        EXPECT_EQ(analyze(f).is_bent, brute_bent(f)) << code;
    }
    auto s3 = Space::coordinates(3, 2);
    int bent = 0;
    for (std::uint32_t code = 0; code < 19683; ++code) {
        std::vector<std::uint8_t> v(9);
        std::uint32_t c = code;
        for (auto& x : v) {
            x = static_cast<std::uint8_t>(c % 3);
            c /= 3;
        }
        FunctionTable f(s3, Space::scalars(3), v);
        const bool b = analyze(f).is_bent;
        ASSERT_EQ(b, brute_bent(f)) << code;
        bent += b;
    }
    EXPECT_GT(bent, 0);
}

TEST(Analyze, DualInvolutionExhaustive) {
    std::vector<FunctionTable> fs;
    for (int t = 0; t < 4; ++t) fs.push_back(random_mm(field(3, 2)));
    for (int t = 0; t < 2; ++t) fs.push_back(random_mm(field(3, 3)));
    for (int t = 0; t < 3; ++t) fs.push_back(random_mm(field(2, 3)));
    fs.push_back(coords_fn(3, 2, [](auto d) { return d[0] * d[0] + d[1] * d[1]; }));
    fs.push_back(coords_fn(3, 4, [](auto d) { return 2 * d[0] * d[0] + d[1] * d[1] + d[2] * d[3]; }));
    for (const auto& f : fs) {
        auto r = analyze(f);
        ASSERT_TRUE(r.weakly_regular());
        auto rd = analyze(*r.dual);
        ASSERT_TRUE(rd.weakly_regular());
        EXPECT_EQ(*rd.epsilon, *r.epsilon);  // eps^{-1} = eps for eps = +-1
        const Space& s = f.domain();
        for (Index x = 0; x < f.size(); ++x) ASSERT_EQ((*rd.dual)[x], f[s.neg(x)]);
    }
}

TEST(Analyze, ModulusChangeTransportsDual) {
    auto A = Field::make({3, 2, {2, 2, 1}});
    auto B = Field::make({3, 2, {1, 0, 1}});
    // phi: A -> B sends x to a root of A's modulus in B
    Element root = 0;
    for (Element r = 1; r < 9; ++r)
        if (B->add(B->add(B->mul(r, r), B->scalar_mul(2, r)), 2) == 0) root = r;
    ASSERT_NE(root, 0u);
    auto phi = [&](Element a) { return B->add(a % 3, B->scalar_mul(a / 3, root)); };
    auto sa = Space::of_fields({A, A}), sb = Space::of_fields({B, B});
    for (int t = 0; t < 5; ++t) {
        std::vector<std::uint8_t> g(9);
        for (auto& v : g) v = static_cast<std::uint8_t>(uniform(3));
        auto fa = FunctionTable::tabulate(sa, F3(), [&](Index v) {
            Element x = v % 9, y = static_cast<Element>(v / 9);
            return (A->trace_to_prime(A->mul(x, A->pow(y, 5))) + g[y]) % 3;
        });
        std::vector<std::uint8_t> vb(81);
        for (Index v = 0; v < 81; ++v) vb[phi(v % 9) + 9 * phi(static_cast<Element>(v / 9))] = fa[v];
        FunctionTable fb(sb, F3(), vb);
        auto ra = analyze(fa), rb = analyze(fb);
        ASSERT_EQ(ra.is_bent, rb.is_bent);
        ASSERT_EQ(ra.epsilon, rb.epsilon);
        for (Index v = 0; v < 81; ++v) ASSERT_EQ((*rb.dual)[phi(v % 9) + 9 * phi(static_cast<Element>(v / 9))], (*ra.dual)[v]);
    }
}

TEST(Component, IdentityOnF4IsTrace) {
    auto k = field(2, 2);
    auto s = Space::of_field(k);
    auto F = FunctionTable::tabulate(s, s, [](Index x) { return x; });
    auto f1 = component(F, 1);
    int ones = 0;
    for (Element x = 0; x < 4; ++x) {
        EXPECT_EQ(f1[x], k->add(x, k->mul(x, x)));
        ones += f1[x];
    }
    EXPECT_EQ(ones, 2);
    EXPECT_THROW(component(F, 0), DomainError);
}

TEST(Component, AdditiveInF) {
    auto dom = Space::of_fields({field(3, 2), field(3, 2)});
    auto cod = Space::of_field(field(3, 2));
    for (int t = 0; t < 10; ++t) {
        auto F = random_table(dom, cod), G = random_table(dom, cod);
        Index c = 1 + uniform(8);
        auto lhs = component(F + G, c), a = component(F, c), b = component(G, c);
        for (Index x = 0; x < F.size(); ++x) ASSERT_EQ(lhs[x], (a[x] + b[x]) % 3);
    }
}

TEST(Vectorial, MaioranaMcFarlandOverF4) {
    auto k = field(2, 2);
    auto dom = Space::of_fields({k, k});
    auto cod = Space::of_field(k);
    auto F = FunctionTable::tabulate(dom, cod, [&](Index v) { return k->mul(v % 4, static_cast<Element>(v / 4)); });
    auto r = analyze_vectorial(F);
    EXPECT_TRUE(r.vectorial_bent);
    EXPECT_EQ(r.uniform_epsilon, 1);
    for (Index c = 1; c < 4; ++c) EXPECT_EQ(r.at(c).regularity, Regularity::regular);
    auto d = is_vectorial_dual_bent(F, r);
    ASSERT_TRUE(d.verdict);
    // witness components are exactly the duals
    std::set<std::vector<std::uint8_t>> duals, comps;
    for (Index c = 1; c < 4; ++c) {
        duals.insert(r.at(c).dual->values());
        comps.insert(component(*d.witness, c).values());
    }
    EXPECT_EQ(duals, comps);
}

TEST(Vectorial, ConstantIsNotBent) {
    auto dom = Space::of_fields({field(2, 2), field(2, 2)});
    FunctionTable F(dom, Space::of_field(field(2, 2)));
    auto r = analyze_vectorial(F);
    EXPECT_FALSE(r.vectorial_bent);
    EXPECT_THROW(is_vectorial_dual_bent(F, r), DomainError);
}

TEST(Vectorial, TernaryScalarDualBentIffDualIsEven) {
    // (2f)* = 2 f*(-x) at p = 3, so {0, f*, (2f)*} is closed iff f* is even
    auto even = coords_fn(3, 2, [](auto d) { return d[0] * d[1]; });
    auto odd = coords_fn(3, 2, [](auto d) { return d[0] * d[1] + d[0]; });
    for (const auto& [f, expect] : {std::pair{even, true}, std::pair{odd, false}}) {
        auto r = analyze(f);
        const Space& s = f.domain();
        bool is_even = true;
        for (Index x = 0; x < f.size(); ++x) is_even = is_even && (*r.dual)[x] == (*r.dual)[s.neg(x)];
        EXPECT_EQ(is_even, expect);
        EXPECT_EQ(is_vectorial_dual_bent(f).verdict, expect);
    }
}

TEST(Vectorial, NonClosedDualsDetected) {
    // MM with y^3 on F8: components are bent but duals are not a subspace
    auto k = field(2, 3);
    auto dom = Space::of_fields({k, k});
    auto cod = Space::of_field(k);
    auto F = FunctionTable::tabulate(dom, cod, [&](Index v) {
        const Element x = v % 8, y = static_cast<Element>(v / 8);
        return k->add(k->mul(x, k->inv(y)), k->pow(y, 3));
    });
    auto r = analyze_vectorial(F);
    ASSERT_TRUE(r.vectorial_bent);
    auto d = is_vectorial_dual_bent(F, r);
    // oracle: pairwise closure of the dual set
    std::set<std::vector<std::uint8_t>> S;
    for (Index c = 1; c < 8; ++c) S.insert(r.at(c).dual->values());
    bool closed = S.size() == 7;
    for (const auto& a : S)
        for (const auto& b : S) {
            if (a == b) continue;
            std::vector<std::uint8_t> s(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] ^ b[i];
            closed = closed && S.count(s);
        }
    EXPECT_EQ(d.verdict, closed);
}

TEST(DecomposeDual, EvenFunctionHasZeroOddPart) {
    auto f = coords_fn(3, 4, [](auto d) { return d[0] * d[1] + 2 * d[2] * d[3] + d[0] * d[0]; });
    auto r = analyze(f);
    ASSERT_TRUE(r.weakly_regular());
    auto d = decompose_dual(r);
    EXPECT_TRUE(d.h.is_zero());
    EXPECT_EQ(d.g.values(), r.dual->values());
    EXPECT_TRUE(d.g_is_p_minus_1_form);
    EXPECT_TRUE(d.h_is_1_form);
}

TEST(DecomposeDual, SumRecoversDual) {
    for (int t = 0; t < 5; ++t) {
        auto f = random_mm(field(3, 2));
        auto r = analyze(f);
        auto d = decompose_dual(r);
        for (Index x = 0; x < f.size(); ++x) ASSERT_EQ((d.g[x] + d.h[x]) % 3, (*r.dual)[x]);
        EXPECT_TRUE(d.h_is_1_form);
        EXPECT_TRUE(d.g_is_p_minus_1_form);
    }
    EXPECT_THROW(decompose_dual(*analyze(coords_fn(2, 2, [](auto d) { return d[0] * d[1]; })).dual), DomainError);
}

TEST(LForm, Examples) {
    auto k = field(3, 2);
    auto s = Space::of_field(k);
    FunctionTable zero(s, F3());
    for (std::uint32_t l = 1; l < 3; ++l) EXPECT_TRUE(l_form_check(zero, l));
    auto tr = FunctionTable::tabulate(s, F3(), [&](Index x) { return k->trace_to_prime(static_cast<Element>(x)); });
    EXPECT_TRUE(l_form_check(tr, 1));
    auto tr2 = FunctionTable::tabulate(s, F3(), [&](Index x) {
        return k->trace_to_prime(k->mul(static_cast<Element>(x), static_cast<Element>(x)));
    });
    EXPECT_TRUE(l_form_check(tr2, 2));
    EXPECT_FALSE(l_form_check(tr2, 1));
}
