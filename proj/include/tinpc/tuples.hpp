#pragma once

#include "tinpc/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tinpc {

namespace detail {

template <class Tag>
class RationalTuple {
public:
    RationalTuple() = default;
    explicit RationalTuple(std::vector<Rational> values) : values_(std::move(values)) {
        for (std::size_t k = 0; k < values_.size(); ++k) Tag::check(k, values_[k]);
    }
    RationalTuple(std::initializer_list<Rational> values) : RationalTuple(std::vector<Rational>(values)) {}

    std::size_t size() const noexcept { return values_.size(); }
    const Rational& operator[](std::size_t k) const { return values_[k]; }
    const std::vector<Rational>& values() const noexcept { return values_; }
    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    friend bool operator==(const RationalTuple&, const RationalTuple&) = default;

private:
    std::vector<Rational> values_;
};

struct GdofTag {
    static void check(std::size_t k, const Rational& v) {
        if (v < 0) throw std::invalid_argument("GDoF of user " + std::to_string(k + 1) + " is negative");
    }
};

struct ExponentTag {
    static void check(std::size_t k, const Rational& v) {
        if (v > 0) {
            throw std::invalid_argument("power exponent of user " + std::to_string(k + 1) +
                                        " exceeds the unit power constraint");
        }
    }
};

}  // namespace detail

/// Per-user GDoF values d_k >= 0.
using GdofTuple = detail::RationalTuple<detail::GdofTag>;

/// Per-user transmit power exponents r_k <= 0 (transmit power P^{r_k}).
using PowerExponents = detail::RationalTuple<detail::ExponentTag>;

/// Exponents for every user of a channel; an empty entry is a switched-off
/// user (power P^{-inf} = 0).
using Allocation = std::vector<std::optional<Rational>>;

inline Allocation to_allocation(const PowerExponents& r) { return Allocation(r.begin(), r.end()); }

/// a >= b componentwise (same size assumed).
inline bool dominates(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] < b[k]) return false;
    return true;
}

}  // namespace tinpc
