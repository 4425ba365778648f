#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chainmodel/abelian_group.hpp"

namespace chainmodel {

/// Bounded chain complex of finitely generated free modules. Degrees outside
/// [min_degree, max_degree] have rank 0; construction trims zero-rank ends so
/// equality of complexes is well defined. The zero complex has an empty range.
template <class S>
class ChainComplex {
 public:
  explicit ChainComplex(Ring<S> ring) : ring_(std::move(ring)) {}

  /// ranks[i] is the rank in degree min_degree + i; differentials[i] is
  /// d_{min_degree + i + 1} mapping degree min_degree+i+1 to min_degree+i.
  ChainComplex(Ring<S> ring, int min_degree, std::vector<Index> ranks, std::vector<Mat<S>> differentials)
      : ring_(std::move(ring)), lo_(min_degree), ranks_(std::move(ranks)), diffs_(std::move(differentials)) {
    if (!ranks_.empty() && diffs_.size() + 1 != ranks_.size())
      throw std::invalid_argument("ChainComplex: need one differential per adjacent degree pair");
    for (size_t i = 0; i < diffs_.size(); ++i) {
      if (diffs_[i].rows() != ranks_[i] || diffs_[i].cols() != ranks_[i + 1]) {
        std::ostringstream os;
        os << "ChainComplex: differential at degree " << lo_ + static_cast<int>(i) + 1 << " has shape "
           << diffs_[i].rows() << "x" << diffs_[i].cols() << ", expected " << ranks_[i] << "x"
           << ranks_[i + 1];
        throw std::invalid_argument(os.str());
      }
    }
    trim();
  }

  const Ring<S>& ring() const { return ring_; }
  bool empty() const { return ranks_.empty(); }
  int min_degree() const { return lo_; }
  int max_degree() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }

  Index rank(int n) const {
    if (empty() || n < lo_ || n > max_degree()) return 0;
    return ranks_[static_cast<size_t>(n - lo_)];
  }

  /// d_n : X_n -> X_{n-1}; a zero matrix of the right shape outside the range.
  Mat<S> diff(int n) const {
    if (!empty() && n > lo_ && n <= max_degree()) return diffs_[static_cast<size_t>(n - lo_ - 1)];
    return Mat<S>::Zero(rank(n - 1), rank(n));
  }

  Index total_rank() const {
    Index t = 0;
    for (Index r : ranks_) t += r;
    return t;
  }

  friend bool operator==(const ChainComplex& a, const ChainComplex& b) {
    if (!(a.ring_ == b.ring_) || a.lo_ != b.lo_ || a.ranks_ != b.ranks_) return false;
    for (size_t i = 0; i < a.diffs_.size(); ++i)
      if (!matrix_equal<S>(a.diffs_[i], b.diffs_[i])) return false;
    return true;
  }

 private:
  void trim() {
    while (!ranks_.empty() && ranks_.back() == 0) {
      ranks_.pop_back();
      if (!diffs_.empty()) diffs_.pop_back();
    }
    while (!ranks_.empty() && ranks_.front() == 0) {
      ranks_.erase(ranks_.begin());
      if (!diffs_.empty()) diffs_.erase(diffs_.begin());
      ++lo_;
    }
    if (ranks_.empty()) {
      lo_ = 0;
      diffs_.clear();
    }
  }

  Ring<S> ring_;
  int lo_ = 0;
  std::vector<Index> ranks_;
  std::vector<Mat<S>> diffs_;
};

struct Verdict;

/// Outcome of a structural validity check; when invalid, names the first
/// offending degree.
struct ValidationResult {
  bool ok = true;
  int degree = 0;
  std::string message;

  explicit operator bool() const { return ok; }

  static ValidationResult valid() { return {}; }
  static ValidationResult invalid(int degree, std::string message) {
    return {false, degree, std::move(message)};
  }
};

/// d_{n} . d_{n+1} = 0 in every degree (shapes are enforced at construction).
template <class S>
ValidationResult validate(const ChainComplex<S>& x) {
  for (int n = x.min_degree(); n <= x.max_degree(); ++n) {
    Mat<S> dd = x.diff(n) * x.diff(n + 1);
    if (!is_zero(dd)) {
      std::ostringstream os;
      os << "d_" << n << " . d_" << n + 1 << " != 0";
      return ValidationResult::invalid(n, os.str());
    }
  }
  return ValidationResult::valid();
}

/// Degree-indexed family of matrices (not necessarily a chain map).
template <class S>
class DegreeMap {
 public:
  DegreeMap() = default;

  void set(int n, Mat<S> m) {
    if (m.size() == 0 && m.rows() == 0 && m.cols() == 0) return;
    mats_[n] = std::move(m);
  }

  Mat<S> get(int n, Index rows, Index cols) const {
    auto it = mats_.find(n);
    if (it == mats_.end()) return Mat<S>::Zero(rows, cols);
    if (it->second.rows() != rows || it->second.cols() != cols)
      throw std::invalid_argument("DegreeMap: stored shape mismatch at degree " + std::to_string(n));
    return it->second;
  }

  const std::map<int, Mat<S>>& entries() const { return mats_; }

 private:
  std::map<int, Mat<S>> mats_;
};

/// Chain map f : X -> Y; the commutation d_Y f = f d_X is enforced at
/// construction.
template <class S>
class ChainMap {
 public:
  ChainMap(ChainComplex<S> source, ChainComplex<S> target, DegreeMap<S> components)
      : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
    if (!(source_.ring() == target_.ring()))
      throw std::invalid_argument("ChainMap: source and target rings differ");
    for (const auto& [n, m] : comps_.entries()) {
      if (m.rows() != target_.rank(n) || m.cols() != source_.rank(n)) {
        std::ostringstream os;
        os << "ChainMap: component at degree " << n << " has shape " << m.rows() << "x" << m.cols()
           << ", expected " << target_.rank(n) << "x" << source_.rank(n);
        throw std::invalid_argument(os.str());
      }
    }
    for (int n = lo(); n <= hi(); ++n) {
      Mat<S> lhs = target_.diff(n) * component(n);
      Mat<S> rhs = component(n - 1) * source_.diff(n);
      if (!matrix_equal<S>(lhs, rhs))
        throw std::invalid_argument("ChainMap: not a chain map at degree " + std::to_string(n));
    }
  }

  static ChainMap identity(const ChainComplex<S>& x) {
    DegreeMap<S> c;
    for (int n = x.min_degree(); n <= x.max_degree(); ++n)
      c.set(n, ring_identity(x.ring(), x.rank(n)));
    return ChainMap(x, x, std::move(c));
  }

  static ChainMap zero(const ChainComplex<S>& x, const ChainComplex<S>& y) {
    return ChainMap(x, y, DegreeMap<S>{});
  }

  const ChainComplex<S>& source() const { return source_; }
  const ChainComplex<S>& target() const { return target_; }
  const Ring<S>& ring() const { return source_.ring(); }

  Mat<S> component(int n) const { return comps_.get(n, target_.rank(n), source_.rank(n)); }

  int lo() const { return std::min(source_.min_degree(), target_.min_degree()); }
  int hi() const { return std::max(source_.max_degree(), target_.max_degree()); }

  bool is_zero_map() const {
    for (int n = lo(); n <= hi(); ++n)
      if (!is_zero(component(n))) return false;
    return true;
  }

  friend ChainMap operator*(const ChainMap& g, const ChainMap& f) {
    if (!(f.target_ == g.source_)) throw std::invalid_argument("ChainMap: composite source/target mismatch");
    DegreeMap<S> c;
    for (int n = std::min(f.lo(), g.lo()); n <= std::max(f.hi(), g.hi()); ++n)
      c.set(n, Mat<S>(g.component(n) * f.component(n)));
    return ChainMap(f.source_, g.target_, std::move(c));
  }

  friend ChainMap operator+(const ChainMap& f, const ChainMap& g) {
    check_parallel(f, g);
    DegreeMap<S> c;
    for (int n = f.lo(); n <= f.hi(); ++n) c.set(n, Mat<S>(f.component(n) + g.component(n)));
    return ChainMap(f.source_, f.target_, std::move(c));
  }

  friend ChainMap operator-(const ChainMap& f, const ChainMap& g) {
    check_parallel(f, g);
    DegreeMap<S> c;
    for (int n = f.lo(); n <= f.hi(); ++n) c.set(n, Mat<S>(f.component(n) - g.component(n)));
    return ChainMap(f.source_, f.target_, std::move(c));
  }

  friend bool operator==(const ChainMap& f, const ChainMap& g) {
    if (!(f.source_ == g.source_) || !(f.target_ == g.target_)) return false;
    for (int n = f.lo(); n <= f.hi(); ++n)
      if (!matrix_equal<S>(f.component(n), g.component(n))) return false;
    return true;
  }

 private:
  static void check_parallel(const ChainMap& f, const ChainMap& g) {
    if (!(f.source_ == g.source_) || !(f.target_ == g.target_))
      throw std::invalid_argument("ChainMap: maps are not parallel");
  }

  ChainComplex<S> source_;
  ChainComplex<S> target_;
  DegreeMap<S> comps_;
};

/// Chain homotopy h between parallel maps f, g: components h_n : X_n -> Y_{n+1}
/// with d h + h d = g - f, enforced at construction.
template <class S>
class Homotopy {
 public:
  Homotopy(ChainMap<S> f, ChainMap<S> g, DegreeMap<S> components)
      : f_(std::move(f)), g_(std::move(g)), comps_(std::move(components)) {
    if (!(f_.source() == g_.source()) || !(f_.target() == g_.target()))
      throw std::invalid_argument("Homotopy: maps are not parallel");
    const auto& x = f_.source();
    const auto& y = f_.target();
    for (int n = f_.lo() - 1; n <= f_.hi() + 1; ++n) {
      Mat<S> lhs = y.diff(n + 1) * component(n) + component(n - 1) * x.diff(n);
      Mat<S> rhs = g_.component(n) - f_.component(n);
      if (!matrix_equal<S>(lhs, rhs))
        throw std::invalid_argument("Homotopy: identity fails at degree " + std::to_string(n));
    }
  }

  const ChainMap<S>& from() const { return f_; }
  const ChainMap<S>& to() const { return g_; }
  Mat<S> component(int n) const {
    return comps_.get(n, f_.target().rank(n + 1), f_.source().rank(n));
  }
  const DegreeMap<S>& components() const { return comps_; }

 private:
  ChainMap<S> f_, g_;
  DegreeMap<S> comps_;
};

/// (shift(x, k))_n = x_{n-k}, differential scaled by (-1)^k.
template <class S>
ChainComplex<S> shift(const ChainComplex<S>& x, int k) {
  if (x.empty()) return x;
  std::vector<Index> ranks;
  std::vector<Mat<S>> diffs;
  for (int n = x.min_degree(); n <= x.max_degree(); ++n) ranks.push_back(x.rank(n));
  const bool flip = (k % 2) != 0;
  for (int n = x.min_degree() + 1; n <= x.max_degree(); ++n) {
    Mat<S> d = x.diff(n);
    if (flip) d = -d;
    diffs.push_back(std::move(d));
  }
  return ChainComplex<S>(x.ring(), x.min_degree() + k, std::move(ranks), std::move(diffs));
}

template <class S>
ChainMap<S> shift(const ChainMap<S>& f, int k) {
  ChainComplex<S> src = shift(f.source(), k);
  ChainComplex<S> tgt = shift(f.target(), k);
  DegreeMap<S> c;
  for (int n = f.lo(); n <= f.hi(); ++n) c.set(n + k, f.component(n));
  return ChainMap<S>(std::move(src), std::move(tgt), std::move(c));
}

/// Mapping cone of f : X -> Y with C(f)_n = X_{n-1} (+) Y_n and
/// d(x, y) = (-d_X x, d_Y y - f x), together with the canonical inclusion
/// Y -> C(f) and projection C(f) -> shift(X, 1).
template <class S>
struct Cone {
  ChainComplex<S> complex;
  ChainMap<S> inclusion;
  ChainMap<S> projection;
};

template <class S>
Cone<S> cone(const ChainMap<S>& f) {
  const auto& x = f.source();
  const auto& y = f.target();
  const Ring<S>& ring = f.ring();
  const int lo = std::min(x.min_degree() + 1, y.min_degree());
  const int hi = std::max(x.max_degree() + 1, y.max_degree());

  std::vector<Index> ranks;
  std::vector<Mat<S>> diffs;
  for (int n = lo; n <= hi; ++n) ranks.push_back(x.rank(n - 1) + y.rank(n));
  for (int n = lo + 1; n <= hi; ++n) {
    Mat<S> top = hcat<S>(Mat<S>(-x.diff(n - 1)), Mat<S>::Zero(x.rank(n - 2), y.rank(n)));
    Mat<S> bot = hcat<S>(Mat<S>(-f.component(n - 1)), y.diff(n));
    diffs.push_back(vcat<S>(top, bot));
  }
  ChainComplex<S> c(ring, lo, std::move(ranks), std::move(diffs));

  DegreeMap<S> inc;
  for (int n = y.min_degree(); n <= y.max_degree(); ++n) {
    Mat<S> m = vcat<S>(Mat<S>::Zero(x.rank(n - 1), y.rank(n)), ring_identity(ring, y.rank(n)));
    inc.set(n, std::move(m));
  }
  ChainMap<S> inclusion(y, c, std::move(inc));

  ChainComplex<S> sx = shift(x, 1);
  DegreeMap<S> proj;
  for (int n = lo; n <= hi; ++n)
    proj.set(n, hcat<S>(ring_identity(ring, x.rank(n - 1)), Mat<S>::Zero(x.rank(n - 1), y.rank(n))));
  ChainMap<S> projection(c, sx, std::move(proj));

  return {std::move(c), std::move(inclusion), std::move(projection)};
}

/// Degreewise block-diagonal sum with the four canonical maps.
template <class S>
struct DirectSum {
  ChainComplex<S> complex;
  ChainMap<S> inject_left, inject_right, project_left, project_right;
};

template <class S>
DirectSum<S> direct_sum(const ChainComplex<S>& x, const ChainComplex<S>& y) {
  if (!(x.ring() == y.ring())) throw std::invalid_argument("direct_sum: ring mismatch");
  const Ring<S>& ring = x.ring();
  int lo = 0, hi = -1;
  if (x.empty()) {
    lo = y.min_degree();
    hi = y.max_degree();
  } else if (y.empty()) {
    lo = x.min_degree();
    hi = x.max_degree();
  } else {
    lo = std::min(x.min_degree(), y.min_degree());
    hi = std::max(x.max_degree(), y.max_degree());
  }

  std::vector<Index> ranks;
  std::vector<Mat<S>> diffs;
  for (int n = lo; n <= hi; ++n) ranks.push_back(x.rank(n) + y.rank(n));
  for (int n = lo + 1; n <= hi; ++n)
    diffs.push_back(block2x2<S>(x.diff(n), Mat<S>::Zero(x.rank(n - 1), y.rank(n)),
                                Mat<S>::Zero(y.rank(n - 1), x.rank(n)), y.diff(n)));
  ChainComplex<S> s(ring, lo, std::move(ranks), std::move(diffs));

  DegreeMap<S> il, ir, pl, pr;
  for (int n = lo; n <= hi; ++n) {
    il.set(n, vcat<S>(ring_identity(ring, x.rank(n)), Mat<S>::Zero(y.rank(n), x.rank(n))));
    ir.set(n, vcat<S>(Mat<S>::Zero(x.rank(n), y.rank(n)), ring_identity(ring, y.rank(n))));
    pl.set(n, hcat<S>(ring_identity(ring, x.rank(n)), Mat<S>::Zero(x.rank(n), y.rank(n))));
    pr.set(n, hcat<S>(Mat<S>::Zero(y.rank(n), x.rank(n)), ring_identity(ring, y.rank(n))));
  }
  return {s, ChainMap<S>(x, s, std::move(il)), ChainMap<S>(y, s, std::move(ir)),
          ChainMap<S>(s, x, std::move(pl)), ChainMap<S>(s, y, std::move(pr))};
}

/// H_n(x) = ker(d_n) / im(d_{n+1}) in invariant-factor form.
template <class S>
PresentedGroup homology(const ChainComplex<S>& x, int n) {
  Mat<S> cycles = kernel_basis(x.diff(n));
  auto in_basis = solve_linear<S>(cycles, x.diff(n + 1));
  if (!in_basis) throw std::logic_error("homology: boundaries not contained in cycles");
  return cokernel_presentation(x.ring(), *in_basis);
}

}  // namespace chainmodel
