#include <iostream>

#include "bentpart/constructions.hpp"
#include "bentpart/depth_search.hpp"
#include "bentpart/hadamard.hpp"
#include "bentpart/partition.hpp"

using namespace bentpart;

namespace {

void report(const char* route, const PartitionReport& r) {
    std::cout << "  " << route << ": " << to_string(r.verdict);
    if (r.epsilon) std::cout << " (epsilon " << *r.epsilon << ")";
    std::cout << "\n";
}

}  // namespace

int main() {
    // F_9 x F_9 -> F_3 from a homogeneous permutation and a trace map
    SubfieldEmbedding emb(Field::make(FieldRegistry{}.descriptor(3, 2)), Field::make(FieldRegistry{}.descriptor(3, 1)));
    Prop3Params prm;
    prm.pi = MonomialPermutation{emb.big_ptr(), 5}.table();
    prm.G.resize(emb.big().order());
    for (Element y = 0; y < prm.G.size(); ++y) prm.G[y] = emb.trace(emb.big().pow(y, 5));
    auto c = build_prop3(emb, prm);
    for (const auto& [name, ok] : c.preconditions) std::cout << "precondition " << name << ": " << ok << "\n";

    auto g = preimage_partition(c.F).partition;
    std::cout << "partition of depth " << g.depth() << "\n";
    report("definitional", verify_definitional(g));
    report("eq29", verify_eq29(c.F));
    auto perm = verify_thm1_permutation_route(c.F);
    std::cout << "  thm1perm: all " << perm.permutations << " relabelings vectorial bent: " << perm.all_vectorial_bent << "\n";
    std::cout << "  hadamard triple product: " << triple_product_check(c.F).holds() << "\n";

    // a corrupted table fails every route
    auto v = c.F.values();
    v[7] = static_cast<std::uint8_t>((v[7] + 1) % 3);
    FunctionTable bad(c.F.domain_ptr(), c.F.codomain_ptr(), v);
    report("definitional, corrupted", verify_definitional(preimage_partition(bad).partition));

    auto s = search(4, 4);
    std::cout << "depth 4 bent partitions of F_2^4: " << s.partitions.size() << " (" << s.nodes << " nodes)\n";
}
