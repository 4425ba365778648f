#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <utility>

namespace chainmodel {

/// Element of a prime field F_p with runtime modulus.
///
/// Elements carry their modulus so matrix arithmetic stays self-contained.
/// A default or literal-constructed value has modulus 0 ("unset"); it acts
/// as an integer literal and picks up the modulus of the first tagged value
/// it meets. Eigen only ever makes such literals for 0 and +/-1.
class Fp {
 public:
  Fp() = default;
  Fp(long long literal) : value_(literal) {}  // implicit: modulus-unset literal
  Fp(long long value, std::int64_t p) : value_(reduce(value, p)), p_(p) {}

  std::int64_t value() const { return value_; }
  std::int64_t modulus() const { return p_; }
  bool is_zero() const { return value_ == 0; }

  Fp operator-() const { return p_ ? Fp(-value_, p_) : Fp(-value_); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    std::int64_t p = unify(a, b);
    if (!p) return Fp(a.value_ + b.value_);
    return Fp(reduce(a.value_, p) + reduce(b.value_, p), p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    std::int64_t p = unify(a, b);
    if (!p) return Fp(a.value_ - b.value_);
    return Fp(reduce(a.value_, p) - reduce(b.value_, p), p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::int64_t p = unify(a, b);
    if (!p) return Fp(a.value_ * b.value_);
    return Fp(reduce(a.value_, p) * reduce(b.value_, p), p);
  }

  friend bool operator==(const Fp& a, const Fp& b) {
    std::int64_t p = unify(a, b);
    if (!p) return a.value_ == b.value_;
    return reduce(a.value_, p) == reduce(b.value_, p);
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  /// Multiplicative inverse; the element must be nonzero with a set modulus
  /// (or a unit literal).
  Fp inverse() const {
    if (!p_) {
      if (value_ == 1 || value_ == -1) return *this;
      throw std::domain_error("Fp::inverse: literal without modulus");
    }
    if (value_ == 0) throw std::domain_error("Fp::inverse: zero element");
    // extended Euclid
    std::int64_t a = value_, b = p_, x0 = 1, x1 = 0;
    while (b) {
      std::int64_t q = a / b;
      std::int64_t t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    return Fp(x0, p_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.value_; }

 private:
  static std::int64_t reduce(std::int64_t v, std::int64_t p) {
    std::int64_t r = v % p;
    return r < 0 ? r + p : r;
  }
  static std::int64_t unify(const Fp& a, const Fp& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_)
      throw std::invalid_argument("Fp: mixed moduli " + std::to_string(a.p_) + " and " +
                                  std::to_string(b.p_));
    return a.p_ ? a.p_ : b.p_;
  }

  std::int64_t value_ = 0;
  std::int64_t p_ = 0;
};

inline Fp abs(const Fp& a) { return a; }

inline std::pair<Fp, Fp> div_mod(const Fp& a, const Fp& b) { return {a * b.inverse(), Fp(0)}; }

inline bool divides(const Fp& d, const Fp& a) { return !d.is_zero() || a.is_zero(); }

inline bool is_unit(const Fp& a) { return !a.is_zero(); }
inline bool is_zero(const Fp& a) { return a.is_zero(); }

inline Fp unit_normalizer(const Fp& a) { return a.inverse(); }

/// All nonzero field elements are equally good pivots.
inline bool better_pivot(const Fp&, const Fp&) { return false; }

}  // namespace chainmodel

namespace Eigen {
template <>
struct NumTraits<chainmodel::Fp> : GenericNumTraits<chainmodel::Fp> {
  typedef chainmodel::Fp Real;
  typedef chainmodel::Fp NonInteger;
  typedef chainmodel::Fp Nested;
  typedef chainmodel::Fp Literal;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 4,
    MulCost = 8
  };
  static inline Real epsilon() { return chainmodel::Fp(0); }
  static inline Real dummy_precision() { return chainmodel::Fp(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
