#pragma once

#include <concepts>
#include <cstddef>
#include <string>

#include "pcurv/arith/rational.hpp"

namespace pcurv {

/// Exact commutative field with a runtime context (modulus, parent number
/// field, ...). Every generic container in the library is written against this.
template <class K>
concept Field = std::regular<K> && requires(const K a, const K b, const typename K::Context c,
                                            const BigInt n) {
  { K::zero(c) } -> std::same_as<K>;
  { K::one(c) } -> std::same_as<K>;
  { K::from_integer(c, n) } -> std::same_as<K>;
  { a.context() } -> std::convertible_to<typename K::Context>;
  { a + b } -> std::same_as<K>;
  { a - b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { a / b } -> std::same_as<K>;
  { -a } -> std::same_as<K>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.inverse() } -> std::same_as<K>;
  { a.hash() } -> std::convertible_to<std::size_t>;
};

template <class K>
K field_pow(K base, unsigned long exp) {
  K result = K::one(base.context());
  while (exp) {
    if (exp & 1) result = result * base;
    exp >>= 1;
    if (exp) base = base * base;
  }
  return result;
}

inline void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9E3779B97F4A7C15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace pcurv

#include <span>

namespace pcurv {

/// Renders an element; nested containers consume one variable name per level.
template <class K>
std::string format_element(const K& value, std::span<const std::string> vars) {
  if constexpr (requires { value.to_string(vars); }) {
    return value.to_string(vars);
  } else {
    return value.to_string();
  }
}

}  // namespace pcurv
