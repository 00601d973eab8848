#pragma once

/*
 * V_n^(p) as an ordered product of components, each a finite field F_{p^k}
 * (inner product Tr_1^k(ab)) or a coordinate space F_p^k (dot product).
 *
 * Points are mixed-radix indices: component 0 is least significant, and
 * inside a component the polynomial/coordinate digit 0 is least significant,
 * so the index is sum_j d_j p^j over all n digits.
 */

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace bentpart {

using Index = std::uint64_t;

inline constexpr std::uint64_t max_space_size = std::uint64_t{1} << 32;

struct ComponentDescriptor {
    enum class Kind { field, vector };
    Kind kind = Kind::vector;
    FieldDescriptor field;    // when kind == field
    std::uint32_t length = 1;  // when kind == vector

    static ComponentDescriptor of_field(FieldDescriptor d) { return {Kind::field, std::move(d), 0}; }
    static ComponentDescriptor of_vector(std::uint32_t k) { return {Kind::vector, {}, k}; }

    std::uint32_t dimension() const { return kind == Kind::field ? field.degree : length; }

    friend bool operator==(const ComponentDescriptor&, const ComponentDescriptor&) = default;
};

struct SpaceDescriptor {
    std::uint32_t p = 2;
    std::vector<ComponentDescriptor> components;

    friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;
};

class Space;
using SpacePtr = std::shared_ptr<const Space>;

struct Point {
    const Space* space = nullptr;
    Index index = 0;
};

class Space {
   public:
    struct Component {
        FieldPtr field;  // null for a coordinate component
        std::uint32_t dimension = 0;
        std::uint64_t order = 0;
        std::uint64_t stride = 0;
        std::uint32_t first_digit = 0;
    };

    Space(std::uint32_t p, std::vector<std::pair<FieldPtr, std::uint32_t>> parts) : p_(p) {
        if (!is_prime(p)) throw DomainError("space characteristic " + std::to_string(p) + " is not prime");
        if (parts.empty()) throw DomainError("space needs at least one component");
        std::uint64_t stride = 1;
        std::uint32_t digit = 0;
        for (auto& [field, len] : parts) {
            Component c;
            if (field) {
                if (field->p() != p) throw DomainError("component field characteristic differs from space");
                c.dimension = field->degree();
                desc_.components.push_back(ComponentDescriptor::of_field(field->descriptor()));
            } else {
                if (len == 0) throw DomainError("coordinate component must have positive length");
                c.dimension = len;
                desc_.components.push_back(ComponentDescriptor::of_vector(len));
            }
            c.field = std::move(field);
            c.order = ipow(p, c.dimension);
            c.stride = stride;
            c.first_digit = digit;
            stride *= c.order;
            digit += c.dimension;
            if (stride > max_space_size) throw DomainError("space exceeds 2^32 points");
            components_.push_back(std::move(c));
        }
        desc_.p = p;
        n_ = digit;
        size_ = stride;
        digit_place_.resize(n_);
        for (std::uint32_t j = 0; j < n_; ++j) digit_place_[j] = ipow(p, j);
    }

    explicit Space(const SpaceDescriptor& d) : Space(d.p, build_parts(d)) {}

    static SpacePtr make(std::uint32_t p, std::vector<std::pair<FieldPtr, std::uint32_t>> parts) {
        return std::make_shared<const Space>(p, std::move(parts));
    }
    static SpacePtr make(const SpaceDescriptor& d) { return std::make_shared<const Space>(d); }

    /* Single field component F_{p^k}. */
    static SpacePtr of_field(FieldPtr f) {
        const auto p = f->p();
        return make(p, {{std::move(f), 0}});
    }
    /* F_p^k with the dot product; k = 1 is the scalar codomain of p-ary functions. */
    static SpacePtr coordinates(std::uint32_t p, std::uint32_t k) { return make(p, {{nullptr, k}}); }
    static SpacePtr scalars(std::uint32_t p) { return coordinates(p, 1); }

    /* Product of fields, in order. */
    static SpacePtr of_fields(const std::vector<FieldPtr>& fs) {
        std::vector<std::pair<FieldPtr, std::uint32_t>> parts;
        for (const auto& f : fs) parts.emplace_back(f, 0);
        return make(fs.at(0)->p(), std::move(parts));
    }

    /* Components of a followed by components of b. */
    static SpacePtr concat(const Space& a, const Space& b) {
        if (a.p() != b.p()) throw DomainError("concat: characteristics differ");
        std::vector<std::pair<FieldPtr, std::uint32_t>> parts;
        for (const auto* s : {&a, &b})
            for (const auto& c : s->components_) parts.emplace_back(c.field, c.field ? 0 : c.dimension);
        return make(a.p(), std::move(parts));
    }

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t dimension() const noexcept { return n_; }
    std::uint64_t size() const noexcept { return size_; }
    const SpaceDescriptor& descriptor() const noexcept { return desc_; }
    std::size_t component_count() const noexcept { return components_.size(); }
    const Component& component(std::size_t i) const { return components_.at(i); }

    bool same_as(const Space& o) const { return desc_ == o.desc_; }
    friend bool operator==(const Space& a, const Space& b) { return a.same_as(b); }

    Point point(Index x) const {
        check(x);
        return {this, x};
    }

    void check(Index x) const {
        if (x >= size_) throw DomainError("point index " + std::to_string(x) + " outside space of size " + std::to_string(size_));
    }

    std::uint64_t component_value(Index x, std::size_t i) const {
        const auto& c = components_[i];
        return (x / c.stride) % c.order;
    }

    std::vector<std::uint32_t> digits(Index x) const {
        std::vector<std::uint32_t> d(n_);
        for (auto& v : d) {
            v = static_cast<std::uint32_t>(x % p_);
            x /= p_;
        }
        return d;
    }

    Index from_digits(const std::vector<std::uint32_t>& d) const {
        Index r = 0;
        for (std::size_t i = d.size(); i-- > 0;) r = r * p_ + (d[i] % p_);
        return r;
    }

    Index from_components(const std::vector<std::uint64_t>& vals) const {
        if (vals.size() != components_.size()) throw DomainError("from_components: wrong component count");
        Index r = 0;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (vals[i] >= components_[i].order) throw DomainError("from_components: value out of range");
            r += vals[i] * components_[i].stride;
        }
        return r;
    }

    Index add(Index a, Index b) const {
        if (p_ == 2) return a ^ b;
        Index r = 0, place = 1;
        while (a || b) {
            r += ((a % p_ + b % p_) % p_) * place;
            a /= p_;
            b /= p_;
            place *= p_;
        }
        return r;
    }

    Index scalar_mul(std::uint32_t c, Index a) const {
        c %= p_;
        if (c == 0) return 0;
        if (c == 1) return a;
        Index r = 0, place = 1;
        while (a) {
            r += ((a % p_) * c % p_) * place;
            a /= p_;
            place *= p_;
        }
        return r;
    }

    Index neg(Index a) const { return p_ == 2 ? a : scalar_mul(p_ - 1, a); }
    Index sub(Index a, Index b) const { return add(a, neg(b)); }

    /* <a_i, b_i> on component i, for component values (not full indices). */
    std::uint32_t component_inner_product(std::size_t i, std::uint64_t a, std::uint64_t b) const {
        const auto& c = components_[i];
        if (c.field) return c.field->trace_to_prime(c.field->mul(static_cast<Element>(a), static_cast<Element>(b)));
        std::uint64_t acc = 0;
        while (a && b) {
            acc += (a % p_) * (b % p_);
            a /= p_;
            b /= p_;
        }
        return static_cast<std::uint32_t>(acc % p_);
    }

    /* Sum over components of the componentwise inner products. */
    std::uint32_t inner_product(Index a, Index b) const {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < components_.size(); ++i)
            acc += component_inner_product(i, component_value(a, i), component_value(b, i));
        return static_cast<std::uint32_t>(acc % p_);
    }

    std::uint32_t inner_product(const Point& a, const Point& b) const {
        if (a.space != this || b.space != this)
            if (!a.space || !b.space || !a.space->same_as(*this) || !b.space->same_as(*this))
                throw DomainError("inner_product: points belong to a different space");
        check(a.index);
        check(b.index);
        return inner_product(a.index, b.index);
    }

    /* Row x_i -> <a_i, x_i> on component i, used to stream inner products. */
    std::vector<std::uint8_t> component_row(std::size_t i, std::uint64_t a) const {
        const auto& c = components_[i];
        std::vector<std::uint8_t> row(c.order);
        for (std::uint64_t x = 0; x < c.order; ++x) row[x] = static_cast<std::uint8_t>(component_inner_product(i, a, x));
        return row;
    }

    /*
     * Maps a to the digit vector b with <a, x> = b . x (digit dot product),
     * i.e. applies the Gram matrix of the inner product in the digit basis.
     * Block diagonal over components, so it is returned per component.
     */
    std::vector<std::vector<Index>> gram_maps() const {
        std::vector<std::vector<Index>> maps(components_.size());
        for (std::size_t i = 0; i < components_.size(); ++i) {
            const auto& c = components_[i];
            auto& m = maps[i];
            m.resize(c.order);
            for (std::uint64_t a = 0; a < c.order; ++a) {
                if (!c.field) {
                    m[a] = a;
                    continue;
                }
                Index b = 0, place = 1;
                for (std::uint32_t j = 0; j < c.dimension; ++j) {
                    b += component_inner_product(i, a, ipow(p_, j)) * place;
                    place *= p_;
                }
                m[a] = b;
            }
        }
        return maps;
    }

    /* n x n Gram matrix G[i][j] = <e_i, e_j> over F_p in the digit basis. */
    std::vector<std::vector<std::uint32_t>> gram_matrix() const {
        std::vector<std::vector<std::uint32_t>> g(n_, std::vector<std::uint32_t>(n_));
        for (std::uint32_t i = 0; i < n_; ++i)
            for (std::uint32_t j = 0; j < n_; ++j) g[i][j] = inner_product(digit_place_[i], digit_place_[j]);
        return g;
    }

   private:
    std::uint32_t p_;
    std::uint32_t n_ = 0;
    std::uint64_t size_ = 1;
    SpaceDescriptor desc_;
    std::vector<Component> components_;
    std::vector<std::uint64_t> digit_place_;

    static std::vector<std::pair<FieldPtr, std::uint32_t>> build_parts(const SpaceDescriptor& d) {
        std::vector<std::pair<FieldPtr, std::uint32_t>> parts;
        for (const auto& c : d.components) {
            if (c.kind == ComponentDescriptor::Kind::field) {
                if (c.field.p != d.p) throw DomainError("component field characteristic differs from space");
                parts.emplace_back(Field::make(c.field), 0);
            } else {
                parts.emplace_back(nullptr, c.length);
            }
        }
        return parts;
    }
};

}  // namespace bentpart
