#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "chainmodel/integer.hpp"
#include "chainmodel/prime_field.hpp"

namespace chainmodel {

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Runtime description of a coefficient ring: Z or F_p.
struct RingDesc {
  enum class Kind { integers, prime_field };

  Kind kind = Kind::integers;
  std::int64_t p = 0;

  static RingDesc integers() { return {Kind::integers, 0}; }
  static RingDesc prime_field(std::int64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("prime_field: " + std::to_string(p) + " is not prime");
    return {Kind::prime_field, p};
  }

  bool is_field() const { return kind == Kind::prime_field; }
  std::string str() const {
    return kind == Kind::integers ? std::string("Z") : "F_" + std::to_string(p);
  }

  friend bool operator==(const RingDesc&, const RingDesc&) = default;
};

/// Compile-time ring handle for a scalar type; carries the modulus for F_p.
template <class Scalar>
struct Ring;

template <>
struct Ring<Integer> {
  using Scalar = Integer;

  RingDesc desc() const { return RingDesc::integers(); }
  Integer from_long(long long v) const { return Integer(v); }
  Integer parse(const std::string& decimal) const { return Integer(decimal); }

  friend bool operator==(const Ring&, const Ring&) = default;
};

template <>
struct Ring<Fp> {
  using Scalar = Fp;

  std::int64_t p = 2;

  Ring() = default;
  explicit Ring(std::int64_t modulus) : p(modulus) {
    if (!is_prime(p)) throw std::invalid_argument("Ring<Fp>: " + std::to_string(p) + " is not prime");
  }

  RingDesc desc() const { return RingDesc::prime_field(p); }
  Fp from_long(long long v) const { return Fp(v, p); }
  Fp parse(const std::string& decimal) const { return Fp(std::stoll(decimal), p); }

  friend bool operator==(const Ring&, const Ring&) = default;
};

}  // namespace chainmodel
