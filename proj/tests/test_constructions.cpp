#include <gtest/gtest.h>

#include <set>

#include "bentpart/constructions.hpp"
#include "bentpart/hadamard.hpp"
#include "support.hpp"

using namespace bentpart;
using testing_support::field;
using testing_support::uniform;

namespace {

std::vector<Element> odd_power_trace(const SubfieldEmbedding& emb, std::int64_t e) {
    std::vector<Element> G(emb.big().order());
    for (Element y = 0; y < G.size(); ++y) G[y] = emb.trace(emb.big().pow(y, e));
    return G;
}

/* Tr_1^2(x y^5) + Tr_1^2(y^5) on F_9 x F_9 -> F_3 */
Construction ternary_prop3() {
    SubfieldEmbedding emb(field(3, 2), field(3, 1));
    Prop3Params prm;
    prm.pi = MonomialPermutation{emb.big_ptr(), 5}.table();
    prm.G = odd_power_trace(emb, 5);
    return build_prop3(emb, prm);
}

void expect_identity(const Construction& c) {
    ASSERT_TRUE(c.G && c.h && c.epsilon);
    auto r = character_sum_identity_check(c.F, *c.G, *c.h, *c.epsilon);
    EXPECT_TRUE(r.holds) << (r.mismatch ? r.mismatch->first : 0);
}

}  // namespace

TEST(Theta, FrobeniusPassesIdentityFails) {
    auto k9 = field(3, 2);
    EXPECT_TRUE(theta_condition_check(ThetaMap::power(k9, 5)));   // inverse is d -> d^3 on inverses
    EXPECT_TRUE(theta_condition_check(ThetaMap::power(k9, -1)));  // d^{-1} -> d
    EXPECT_FALSE(theta_condition_check(ThetaMap::power(k9, 1)));
    EXPECT_TRUE(theta_condition_check(ThetaMap::power(field(3, 1), 1)));
    EXPECT_THROW(theta_condition_check(ThetaMap::power(k9, 2)), DomainError);
}

TEST(Theta, HomogeneityExponentsOnF81) {
    SubfieldEmbedding emb(field(3, 4), field(3, 2));
    const auto k9 = emb.small_ptr();
    for (std::int64_t e : {69, 79, 29, 7}) {
        auto pi = MonomialPermutation{emb.big_ptr(), e}.table();
        auto th = derive_theta(emb, pi, MapTarget::big_field);
        ASSERT_TRUE(th) << e;
        // c^e for c in F_9^*
        for (Element c = 1; c < k9->order(); ++c) EXPECT_EQ((*th)(c), k9->pow(c, e)) << e;
        EXPECT_TRUE(homogeneity_check(emb, pi, MapTarget::big_field, ThetaMap::power(k9, e % 8)));
        EXPECT_FALSE(homogeneity_check(emb, pi, MapTarget::big_field, ThetaMap::power(k9, e % 8 + 2)));
    }
    auto G = odd_power_trace(emb, 29);
    auto th = derive_theta(emb, G, MapTarget::subfield);
    ASSERT_TRUE(th);
    EXPECT_EQ(th->table, ThetaMap::power(k9, 5).table);
    // x + x^3 is not homogeneous of any kind
    std::vector<Element> mixed(emb.big().order());
    for (Element x = 0; x < mixed.size(); ++x) mixed[x] = emb.big().add(x, emb.big().pow(x, 3));
    EXPECT_FALSE(derive_theta(emb, mixed, MapTarget::big_field));
}

TEST(CompletePermutation, Examples) {
    auto k64 = field(2, 6);
    EXPECT_TRUE(is_complete_permutation(*k64, ex3_P(k64, field(2, 2))));
    std::vector<Element> id(64);
    for (Element x = 0; x < 64; ++x) id[x] = x;
    EXPECT_FALSE(is_complete_permutation(*k64, id));
    auto k5 = field(5, 1);
    std::vector<Element> two(5);
    for (Element x = 0; x < 5; ++x) two[x] = k5->mul(2, x);
    EXPECT_TRUE(is_complete_permutation(*k5, two));
    std::vector<Element> notperm(5, 0);
    EXPECT_THROW(is_complete_permutation(*k5, notperm), DomainError);
}

TEST(Prop3, ZeroGIsRefused) {
    SubfieldEmbedding emb(field(3, 2), field(3, 1));
    Prop3Params prm;
    prm.pi = MonomialPermutation{emb.big_ptr(), 5}.table();
    prm.G.assign(9, 0);
    try {
        build_prop3(emb, prm);
        FAIL() << "expected refusal";
    } catch (const PreconditionRefused& e) {
        EXPECT_EQ(e.condition(), "G_nonzero");
    }
}

TEST(Prop3, BadThetaAndNonPermutationAreRefused) {
    SubfieldEmbedding emb(field(3, 4), field(3, 2));
    Prop3Params prm;
    prm.pi = MonomialPermutation{emb.big_ptr(), 7}.table();  // theta = c^7 = c^{-1}: condition holds
    prm.G = odd_power_trace(emb, 29);                        // theta = c^5
    try {
        build_prop3(emb, prm);
        FAIL();
    } catch (const PreconditionRefused& e) {
        EXPECT_EQ(e.condition(), "G_homogeneity");
    }
    prm.pi = MonomialPermutation{emb.big_ptr(), 1}.table();  // theta = id fails the condition
    try {
        build_prop3(emb, prm);
        FAIL();
    } catch (const PreconditionRefused& e) {
        EXPECT_EQ(e.condition(), "theta_condition");
    }
    prm.pi = MonomialPermutation{emb.big_ptr(), 2}.table();
    try {
        build_prop3(emb, prm);
        FAIL();
    } catch (const PreconditionRefused& e) {
        EXPECT_EQ(e.condition(), "pi_permutation");
    }
}

TEST(Prop3, TernaryInstanceIsBentPartitionButNotDualBent) {
    auto c = ternary_prop3();
    ASSERT_TRUE(c.h);
    EXPECT_FALSE(c.h->is_zero());
    expect_identity(c);
    auto g = preimage_partition(c.F).partition;
    auto d = verify_definitional(g);
    EXPECT_TRUE(d.is_bent_partition);
    EXPECT_EQ(d.epsilon, c.epsilon);
    EXPECT_TRUE(triple_product_check(c.F).holds());
    auto e = verify_eq29(c.F);
    EXPECT_EQ(e.dual_bent, false);
    std::set<std::uint8_t> seen;
    for (Index v = 0; v < 81; ++v) seen.insert((*c.h)[v]);
    EXPECT_GT(seen.size(), 1u);
}

TEST(Prop3, CatalogMemberOverF81) {
    auto f = ex12_fields();
    SubfieldEmbedding emb(f.big, f.small);
    auto c = build_prop3(emb, ex_prop3_params(emb, 69, 29));
    ASSERT_TRUE(c.h && c.G);
    EXPECT_FALSE(c.h->is_zero());
    EXPECT_EQ(c.F, ex_R(emb, 69, 29));
    auto r = character_sum_identity_check(c.F, *c.G, *c.h, *c.epsilon, 300, 7);
    EXPECT_TRUE(r.holds);
    // the G = 0 member is refused by the builder but is still a dual-bent witness pair
    auto w = ex_member(emb, 79, 0);
    EXPECT_TRUE(w.h.is_zero());
}

TEST(Thm6, NonBalancedKernelIsRefused) {
    auto k = field(3, 1);
    auto V = Space::of_field(k);
    auto K = FunctionTable::tabulate(Space::concat(*V, *V), V, [](Index v) { return v % 3; });
    auto c = ternary_prop3();
    WitnessedBent R{c.F, *c.G, *c.h, *c.epsilon};
    try {
        build_thm6(R, R, K);
        FAIL();
    } catch (const PreconditionRefused& e) {
        EXPECT_EQ(e.condition(), "K_sections_balanced");
    }
}

TEST(Thm6, SumOfTernaryMembers) {
    auto c = ternary_prop3();
    WitnessedBent R{c.F, *c.G, *c.h, *c.epsilon};
    auto t = build_thm6(R, R, sum_kernel(c.F.codomain_ptr()));
    EXPECT_EQ(t.F.n(), 8u);
    EXPECT_EQ(*t.epsilon, 1);  // eps * eps
    expect_identity(t);
    auto vr = analyze_vectorial(t.F);
    EXPECT_TRUE(vr.vectorial_bent);
    auto e = verify_eq29(t.F, vr);
    EXPECT_TRUE(e.is_bent_partition);
    EXPECT_EQ(e.dual_bent, t.expect_dual_bent);
}

TEST(Thm6, CompletePermutationKernelOverF4) {
    auto k4 = field(2, 2);
    std::vector<Element> pi(4);
    for (Element y = 0; y < 4; ++y) pi[y] = k4->inv(y);
    const Element q = 4;
    auto R0 = FunctionTable::tabulate(Space::of_fields({k4, k4}), Space::of_field(k4), [&](Index v) {
        return k4->mul(static_cast<Element>(v % q), pi[v / q]);
    });
    auto R = witness(R0);
    EXPECT_TRUE(R.h.is_zero());
    // P(x) = w x with w a generator: P + id = w^2 x is bijective
    const Element w = k4->primitive_element();
    std::vector<Element> P(4);
    for (Element x = 0; x < 4; ++x) P[x] = k4->mul(w, x);
    ASSERT_TRUE(is_complete_permutation(*k4, P));
    auto t = build_thm6(R, R, complete_permutation_kernel(k4, P));
    expect_identity(t);
    EXPECT_EQ(t.expect_dual_bent, true);
    auto e = verify_eq29(t.F);
    EXPECT_TRUE(e.is_bent_partition);
    EXPECT_EQ(e.dual_bent, true);
    EXPECT_TRUE(verify_definitional(preimage_partition(t.F).partition).is_bent_partition);
}

TEST(Prop4, TernaryFamily) {
    SubfieldEmbedding xf(field(3, 2), field(3, 1));
    // family over F_3 on V = F_9 x F_9
    Prop3Params a;
    a.pi = MonomialPermutation{xf.big_ptr(), 5}.table();
    a.G = odd_power_trace(xf, 5);
    Prop3Params b = a;
    b.pi = MonomialPermutation{xf.big_ptr(), 7}.table();
    b.G = odd_power_trace(xf, 7);
    auto r0 = build_prop3(xf, a);
    auto r1 = build_prop3(xf, b);
    Prop4Params prm;
    prm.family = {WitnessedBent{r0.F, *r0.G, *r0.h, *r0.epsilon}, WitnessedBent{r1.F, *r1.G, *r1.h, *r1.epsilon},
                  WitnessedBent{r0.F, *r0.G, *r0.h, *r0.epsilon}};
    if (*r0.epsilon != *r1.epsilon) prm.family[1] = prm.family[0];
    SubfieldEmbedding yf(field(3, 2), field(3, 1));
    prm.alpha = 1;
    prm.beta = yf.big().primitive_element();
    prm.P = MonomialPermutation{yf.big_ptr(), 3}.table();
    auto c = build_prop4(yf, prm);
    EXPECT_EQ(c.F.n(), 8u);
    expect_identity(c);
    auto e = verify_eq29(c.F);
    EXPECT_TRUE(e.is_bent_partition);
    EXPECT_EQ(e.dual_bent, false);
    EXPECT_EQ(e.epsilon, c.epsilon);

    prm.beta = 2;  // in F_3 alpha
    try {
        build_prop4(yf, prm);
        FAIL();
    } catch (const PreconditionRefused& err) {
        EXPECT_EQ(err.condition(), "alpha_beta_independent");
    }
}

TEST(Catalog, UnknownIdIsRejected) { EXPECT_THROW(example_catalog("ex4"), DomainError); }
