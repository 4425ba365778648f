#pragma once

#include <vector>

#include "chainmodel/chain_complex.hpp"

namespace chainmodel {

/// The Hom complex of two chain complexes over the same ring.
///
/// Degree k is the free module (+)_n Hom(X_n, Y_{n+k}), flattened block by
/// block (n ascending, column-major inside a block). The differential is
/// D(h) = d_Y h - (-1)^k h d_X, realized as a matrix on the flattened
/// coordinates. Cycles in degree 0 are exactly the chain maps X -> Y and
/// boundaries from degree 1 are the null-homotopic ones.
template <class S>
class HomComplex {
 public:
  HomComplex(ChainComplex<S> x, ChainComplex<S> y) : x_(std::move(x)), y_(std::move(y)) {
    if (!(x_.ring() == y_.ring())) throw std::invalid_argument("HomComplex: ring mismatch");
    if (x_.empty() || y_.empty()) {
      lo_ = 0;
      hi_ = -1;
    } else {
      lo_ = y_.min_degree() - x_.max_degree();
      hi_ = y_.max_degree() - x_.min_degree();
    }
  }

  const ChainComplex<S>& x() const { return x_; }
  const ChainComplex<S>& y() const { return y_; }
  int min_degree() const { return lo_; }
  int max_degree() const { return hi_; }

  Index block_size(int k, int n) const { return x_.rank(n) * y_.rank(n + k); }

  Index block_offset(int k, int n) const {
    Index off = 0;
    for (int m = x_.min_degree(); m < n; ++m) off += block_size(k, m);
    return off;
  }

  Index rank(int k) const {
    if (k < lo_ || k > hi_) return 0;
    Index r = 0;
    for (int n = x_.min_degree(); n <= x_.max_degree(); ++n) r += block_size(k, n);
    return r;
  }

  /// Matrix of D : degree k -> degree k-1.
  Mat<S> boundary(int k) const {
    const Ring<S>& ring = x_.ring();
    Mat<S> d = ring_zeros(ring, rank(k - 1), rank(k));
    if (x_.empty() || y_.empty()) return d;
    const bool flip = (k % 2) != 0;  // -(-1)^k factor on the h d_X term
    for (int n = x_.min_degree(); n <= x_.max_degree(); ++n) {
      // target block n of degree k-1 receives d_Y h_n and h_{n-1} d_X^{(n)}
      if (block_size(k - 1, n) == 0) continue;
      Index row = block_offset(k - 1, n);
      if (block_size(k, n) > 0) {
        Mat<S> term = kron<S>(ring_identity(ring, x_.rank(n)), y_.diff(n + k));
        add_block(d, row, block_offset(k, n), term);
      }
      if (block_size(k, n - 1) > 0) {
        Mat<S> dxt = x_.diff(n).transpose();
        Mat<S> term = kron<S>(dxt, ring_identity(ring, y_.rank(n - 1 + k)));
        if (!flip) term = -term;
        add_block(d, row, block_offset(k, n - 1), term);
      }
    }
    return d;
  }

  /// Flatten a degree-k graded family (comps(n) : X_n -> Y_{n+k}).
  template <class F>
  Vec<S> flatten(int k, F&& comps) const {
    Vec<S> v = Vec<S>::Zero(rank(k));
    for (int n = x_.min_degree(); n <= x_.max_degree(); ++n) {
      if (block_size(k, n) == 0) continue;
      Vec<S> block = vectorize<S>(comps(n));
      v.segment(block_offset(k, n), block.size()) = block;
    }
    return v;
  }

  /// Inverse of flatten: a degree-k family as a DegreeMap.
  DegreeMap<S> unflatten(int k, const Vec<S>& v) const {
    DegreeMap<S> out;
    for (int n = x_.min_degree(); n <= x_.max_degree(); ++n) {
      Index sz = block_size(k, n);
      if (sz == 0) continue;
      out.set(n, unvectorize<S>(v.segment(block_offset(k, n), sz), y_.rank(n + k), x_.rank(n)));
    }
    return out;
  }

  Vec<S> flatten_map(const ChainMap<S>& f) const {
    return flatten(0, [&](int n) { return f.component(n); });
  }

  ChainMap<S> unflatten_map(const Vec<S>& v) const {
    return ChainMap<S>(x_, y_, unflatten(0, v));
  }

  /// The Hom complex as an ordinary chain complex of free modules.
  ChainComplex<S> to_complex() const {
    if (lo_ > hi_) return ChainComplex<S>(x_.ring());
    std::vector<Index> ranks;
    std::vector<Mat<S>> diffs;
    for (int k = lo_; k <= hi_; ++k) ranks.push_back(rank(k));
    for (int k = lo_ + 1; k <= hi_; ++k) diffs.push_back(boundary(k));
    return ChainComplex<S>(x_.ring(), lo_, std::move(ranks), std::move(diffs));
  }

 private:
  static void add_block(Mat<S>& d, Index row, Index col, const Mat<S>& term) {
    for (Index j = 0; j < term.cols(); ++j)
      for (Index i = 0; i < term.rows(); ++i) d(row + i, col + j) += term(i, j);
  }

  ChainComplex<S> x_, y_;
  int lo_, hi_;
};

template <class S>
ChainComplex<S> hom_complex(const ChainComplex<S>& x, const ChainComplex<S>& y) {
  return HomComplex<S>(x, y).to_complex();
}

}  // namespace chainmodel
