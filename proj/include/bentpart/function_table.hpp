#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "space.hpp"

namespace bentpart {

/* Dense tables are capped at 2^26 points; codomains at 256 values (one byte per entry). */
inline constexpr std::uint64_t max_table_size = std::uint64_t{1} << 26;
inline constexpr std::uint64_t max_codomain_size = 256;

/*
 * A function V_n^(p) -> V_m^(p) as a dense array of codomain indices, in
 * domain index order. m = 1 (codomain F_p) gives a p-ary function.
 */
class FunctionTable {
   public:
    FunctionTable() = default;

    FunctionTable(SpacePtr domain, SpacePtr codomain) : domain_(std::move(domain)), codomain_(std::move(codomain)) {
        validate_spaces();
        values_.assign(domain_->size(), 0);
    }

    FunctionTable(SpacePtr domain, SpacePtr codomain, std::vector<std::uint8_t> values)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), values_(std::move(values)) {
        validate_spaces();
        if (values_.size() != domain_->size())
            throw DomainError("table has " + std::to_string(values_.size()) + " values, domain has " +
                              std::to_string(domain_->size()) + " points");
        const auto m = codomain_->size();
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (values_[i] >= m) throw DomainError("value at " + std::to_string(i) + " outside codomain");
    }

    template <class Fn>
    static FunctionTable tabulate(SpacePtr domain, SpacePtr codomain, Fn&& fn) {
        FunctionTable t(std::move(domain), std::move(codomain));
        const auto m = t.codomain_->size();
        for (Index x = 0; x < t.values_.size(); ++x) {
            const auto v = static_cast<std::uint64_t>(fn(x));
            if (v >= m) throw DomainError("tabulated value outside codomain");
            t.values_[x] = static_cast<std::uint8_t>(v);
        }
        return t;
    }

    const Space& domain() const { return *domain_; }
    const Space& codomain() const { return *codomain_; }
    const SpacePtr& domain_ptr() const noexcept { return domain_; }
    const SpacePtr& codomain_ptr() const noexcept { return codomain_; }

    std::uint32_t p() const { return domain_->p(); }
    std::uint32_t n() const { return domain_->dimension(); }
    std::uint32_t m() const { return codomain_->dimension(); }
    std::uint64_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return !domain_; }

    std::uint8_t operator[](Index x) const { return values_[x]; }
    std::uint8_t at(Index x) const {
        domain_->check(x);
        return values_[x];
    }
    void set(Index x, std::uint64_t v) {
        if (v >= codomain_->size()) throw DomainError("set: value outside codomain");
        values_.at(x) = static_cast<std::uint8_t>(v);
    }

    const std::vector<std::uint8_t>& values() const noexcept { return values_; }
    std::vector<std::uint8_t>& mutable_values() noexcept { return values_; }

    bool is_zero() const {
        for (auto v : values_)
            if (v) return false;
        return true;
    }

    bool is_constant() const {
        for (auto v : values_)
            if (v != values_.front()) return false;
        return true;
    }

    friend bool operator==(const FunctionTable& a, const FunctionTable& b) {
        if (a.empty() || b.empty()) return a.empty() == b.empty();
        return a.domain_->same_as(*b.domain_) && a.codomain_->same_as(*b.codomain_) && a.values_ == b.values_;
    }

   private:
    SpacePtr domain_;
    SpacePtr codomain_;
    std::vector<std::uint8_t> values_;

    void validate_spaces() const {
        if (!domain_ || !codomain_) throw DomainError("function table needs domain and codomain");
        if (domain_->p() != codomain_->p()) throw DomainError("domain and codomain characteristics differ");
        if (domain_->size() > max_table_size) throw DomainError("domain exceeds the 2^26-point table cap");
        if (codomain_->size() > max_codomain_size) throw DomainError("codomain exceeds 256 values");
    }
};

/* Pointwise sum in the codomain. */
inline FunctionTable operator+(const FunctionTable& a, const FunctionTable& b) {
    if (!a.domain().same_as(b.domain()) || !a.codomain().same_as(b.codomain()))
        throw DomainError("sum of tables over different spaces");
    FunctionTable r(a.domain_ptr(), a.codomain_ptr());
    const auto& cod = a.codomain();
    for (Index x = 0; x < a.size(); ++x) r.mutable_values()[x] = static_cast<std::uint8_t>(cod.add(a[x], b[x]));
    return r;
}

/* Composition P o F for a map P on the codomain, given as a lookup table. */
inline FunctionTable compose(const std::vector<std::uint8_t>& outer, SpacePtr outer_codomain, const FunctionTable& f) {
    if (outer.size() != f.codomain().size()) throw DomainError("compose: outer table size mismatch");
    std::vector<std::uint8_t> v(f.size());
    for (Index x = 0; x < f.size(); ++x) v[x] = outer[f[x]];
    return FunctionTable(f.domain_ptr(), std::move(outer_codomain), std::move(v));
}

}  // namespace bentpart
