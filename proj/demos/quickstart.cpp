#include <iostream>

#include "bentpart/bent_analysis.hpp"
#include "bentpart/partition.hpp"

using namespace bentpart;

int main() {
    // x * y^{-1} over F_9 x F_9 -> F_9
    auto k = Field::make(FieldRegistry{}.descriptor(3, 2));
    const Element q = k->order();
    auto F = FunctionTable::tabulate(Space::of_fields({k, k}), Space::of_field(k), [&](Index v) {
        return k->mul(static_cast<Element>(v % q), k->inv(static_cast<Element>(v / q)));
    });

    auto vr = analyze_vectorial(F);
    std::cout << "vectorial bent: " << vr.vectorial_bent << "\n";
    for (Index c = 1; c < 3; ++c)
        std::cout << "component " << c << ": " << to_string(vr.at(c).regularity) << ", epsilon " << *vr.at(c).epsilon
                  << "\n";

    auto g = preimage_partition(F).partition;
    auto def = verify_definitional(g);
    std::cout << "depth " << def.depth << ", definitional route: " << to_string(def.verdict) << " over "
              << def.functions_checked << " functions\n";

    auto eq = verify_eq29(F, vr);
    std::cout << "eq29 route: " << to_string(eq.verdict) << ", h zero: " << eq.h->is_zero() << "\n";
}
