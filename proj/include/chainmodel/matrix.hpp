#pragma once

#include <Eigen/Core>
#include <stdexcept>

#include "chainmodel/ring.hpp"

namespace chainmodel {

using Index = Eigen::Index;

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class S>
bool is_zero(const Mat<S>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <class S>
bool matrix_equal(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <class S>
bool is_identity(const Mat<S>& m) {
  if (m.rows() != m.cols()) return false;
  return matrix_equal<S>(m, Mat<S>::Identity(m.rows(), m.cols()));
}

/// [a | b]
template <class S>
Mat<S> hcat(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
  Mat<S> r(a.rows(), a.cols() + b.cols());
  r.leftCols(a.cols()) = a;
  r.rightCols(b.cols()) = b;
  return r;
}

/// [a ; b]
template <class S>
Mat<S> vcat(const Mat<S>& a, const Mat<S>& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vcat: column mismatch");
  Mat<S> r(a.rows() + b.rows(), a.cols());
  r.topRows(a.rows()) = a;
  r.bottomRows(b.rows()) = b;
  return r;
}

/// [[a, b], [c, d]]
template <class S>
Mat<S> block2x2(const Mat<S>& a, const Mat<S>& b, const Mat<S>& c, const Mat<S>& d) {
  return vcat<S>(hcat<S>(a, b), hcat<S>(c, d));
}

template <class S>
Mat<S> kron(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> r = Mat<S>::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

/// Column-major flattening, so vec(L*X*R) = kron(R^T, L) * vec(X).
template <class S>
Vec<S> vectorize(const Mat<S>& m) {
  Vec<S> v(m.size());
  Index at = 0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) v(at++) = m(i, j);
  return v;
}

template <class S>
Mat<S> unvectorize(const Vec<S>& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw std::invalid_argument("unvectorize: size mismatch");
  Mat<S> m(rows, cols);
  Index at = 0;
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = v(at++);
  return m;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
/// Valid over any integral domain; divisions are exact.
template <class S>
S determinant(Mat<S> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const Index n = m.rows();
  if (n == 0) return S(1);
  S prev(1);
  S sign(1);
  for (Index k = 0; k + 1 < n; ++k) {
    if (is_zero(m(k, k))) {
      Index piv = -1;
      for (Index i = k + 1; i < n; ++i)
        if (!is_zero(m(i, k))) { piv = i; break; }
      if (piv < 0) return S(0);
      m.row(k).swap(m.row(piv));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j) {
        auto [q, r] = div_mod(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
        m(i, j) = q;  // exact by Sylvester's identity
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

template <class S>
Mat<S> ring_zeros(const Ring<S>& ring, Index rows, Index cols) {
  Mat<S> m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = ring.from_long(0);
  return m;
}

template <class S>
Mat<S> ring_identity(const Ring<S>& ring, Index n) {
  Mat<S> m = ring_zeros(ring, n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = ring.from_long(1);
  return m;
}

/// Build a matrix from row-major long long data.
template <class S>
Mat<S> ring_matrix(const Ring<S>& ring, Index rows, Index cols,
                   std::initializer_list<long long> row_major) {
  if (static_cast<Index>(row_major.size()) != rows * cols)
    throw std::invalid_argument("ring_matrix: entry count mismatch");
  Mat<S> m(rows, cols);
  auto it = row_major.begin();
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = ring.from_long(*it++);
  return m;
}

}  // namespace chainmodel
