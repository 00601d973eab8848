#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bentpart/function_table.hpp"
#include "bentpart/space.hpp"

namespace testing_support {

using namespace bentpart;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed1234u);
    return gen;
}

inline std::uint64_t uniform(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng()); }

inline FieldPtr field(std::uint32_t p, std::uint32_t k) { return Field::make(FieldRegistry{}.descriptor(p, k)); }

inline FunctionTable random_table(const SpacePtr& dom, const SpacePtr& cod) {
    std::vector<std::uint8_t> v(dom->size());
    for (auto& x : v) x = static_cast<std::uint8_t>(uniform(cod->size()));
    return FunctionTable(dom, cod, std::move(v));
}

/* Brute-force sum_x zeta^{f(x) - <a,x>} as exponent counts, independent of the streaming helper. */
inline std::vector<std::int64_t> naive_walsh_counts(const FunctionTable& f, Index a) {
    const auto p = f.p();
    std::vector<std::int64_t> c(p, 0);
    for (Index x = 0; x < f.size(); ++x) ++c[(f[x] + p - f.domain().inner_product(a, x)) % p];
    return c;
}

}  // namespace testing_support
