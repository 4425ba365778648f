#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <iostream>
#include <string>
#include <utility>

namespace chainmodel {

/// Arbitrary-precision integer scalar.
///
/// A thin wrapper around boost::multiprecision::cpp_int that keeps the
/// operator surface small enough to behave as an Eigen scalar.
class Integer {
 public:
  using Rep = boost::multiprecision::cpp_int;

  Integer() = default;
  Integer(long long value) : rep_(value) {}  // implicit: Eigen builds Scalar(0), Scalar(1)
  explicit Integer(Rep rep) : rep_(std::move(rep)) {}
  explicit Integer(const std::string& decimal) : rep_(decimal) {}

  const Rep& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }
  int sign() const { return rep_.sign(); }
  long long to_long() const { return rep_.convert_to<long long>(); }
  std::string str() const { return rep_.str(); }

  Integer operator-() const { return Integer(Rep(-rep_)); }
  Integer& operator+=(const Integer& o) { rep_ += o.rep_; return *this; }
  Integer& operator-=(const Integer& o) { rep_ -= o.rep_; return *this; }
  Integer& operator*=(const Integer& o) { rep_ *= o.rep_; return *this; }

  friend Integer operator+(const Integer& a, const Integer& b) { return Integer(Rep(a.rep_ + b.rep_)); }
  friend Integer operator-(const Integer& a, const Integer& b) { return Integer(Rep(a.rep_ - b.rep_)); }
  friend Integer operator*(const Integer& a, const Integer& b) { return Integer(Rep(a.rep_ * b.rep_)); }
  /// Truncated quotient, like built-in integer division.
  friend Integer operator/(const Integer& a, const Integer& b) { return Integer(Rep(a.rep_ / b.rep_)); }
  friend Integer operator%(const Integer& a, const Integer& b) { return Integer(Rep(a.rep_ % b.rep_)); }

  friend bool operator==(const Integer& a, const Integer& b) { return a.rep_ == b.rep_; }
  friend bool operator!=(const Integer& a, const Integer& b) { return a.rep_ != b.rep_; }
  friend bool operator<(const Integer& a, const Integer& b) { return a.rep_ < b.rep_; }
  friend bool operator<=(const Integer& a, const Integer& b) { return a.rep_ <= b.rep_; }
  friend bool operator>(const Integer& a, const Integer& b) { return a.rep_ > b.rep_; }
  friend bool operator>=(const Integer& a, const Integer& b) { return a.rep_ >= b.rep_; }

  friend std::ostream& operator<<(std::ostream& os, const Integer& a) { return os << a.rep_; }

 private:
  Rep rep_;
};

inline Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

/// Quotient/remainder with |r| minimal (round-to-nearest division).
/// Keeps coefficient growth down during Smith elimination.
inline std::pair<Integer, Integer> div_mod(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer r = a - q * b;
  Integer b2 = abs(b);
  if (abs(r) + abs(r) > b2) {
    if ((r.sign() > 0) == (b.sign() > 0)) {
      q += 1;
      r -= b;
    } else {
      q -= 1;
      r += b;
    }
  }
  return {q, r};
}

inline bool divides(const Integer& d, const Integer& a) {
  if (d.is_zero()) return a.is_zero();
  return (a % d).is_zero();
}

inline bool is_unit(const Integer& a) { return a == Integer(1) || a == Integer(-1); }
inline bool is_zero(const Integer& a) { return a.is_zero(); }

/// A unit u with u*a in canonical form (non-negative).
inline Integer unit_normalizer(const Integer& a) { return a.sign() < 0 ? Integer(-1) : Integer(1); }

/// Pivot preference during elimination: smaller magnitude wins.
inline bool better_pivot(const Integer& a, const Integer& b) { return abs(a) < abs(b); }

}  // namespace chainmodel

namespace Eigen {
template <>
struct NumTraits<chainmodel::Integer> : GenericNumTraits<chainmodel::Integer> {
  typedef chainmodel::Integer Real;
  typedef chainmodel::Integer NonInteger;
  typedef chainmodel::Integer Nested;
  typedef chainmodel::Integer Literal;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 60,
    MulCost = 120
  };
  static inline Real epsilon() { return chainmodel::Integer(0); }
  static inline Real dummy_precision() { return chainmodel::Integer(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
