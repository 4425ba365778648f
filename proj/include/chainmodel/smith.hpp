#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "chainmodel/matrix.hpp"

namespace chainmodel {

/// Smith normal form u*a*v = diag(d) with u, v invertible over the ring and
/// d_1 | d_2 | ... (zeros last, entries in canonical form: non-negative over Z,
/// 0/1 over F_p).
template <class S>
struct SmithForm {
  Mat<S> u, v;
  std::vector<S> d;  // length min(rows, cols)

  Index rank() const {
    Index r = 0;
    for (const S& x : d)
      if (!is_zero(x)) ++r;
    return r;
  }

  Mat<S> diagonal(Index rows, Index cols) const {
    Mat<S> m = Mat<S>::Zero(rows, cols);
    for (Index i = 0; i < static_cast<Index>(d.size()); ++i) m(i, i) = d[i];
    return m;
  }
};

/// Classic elimination to Smith normal form. The pivot is always a nonzero
/// entry of least magnitude in the remaining block, which bounds coefficient
/// growth over Z. Over a field every nonzero entry is a unit and the loop
/// degenerates to Gaussian elimination with 0/1 invariant factors.
template <class S>
SmithForm<S> smith_form(const Mat<S>& input) {
  const Index m = input.rows(), n = input.cols();
  const Index steps = std::min(m, n);
  Mat<S> a = input;
  Mat<S> u = Mat<S>::Identity(m, m);
  Mat<S> v = Mat<S>::Identity(n, n);

  auto find_pivot = [&](Index t) -> std::pair<Index, Index> {
    Index bi = -1, bj = -1;
    for (Index i = t; i < m; ++i)
      for (Index j = t; j < n; ++j) {
        if (is_zero(a(i, j))) continue;
        if (bi < 0 || better_pivot(a(i, j), a(bi, bj))) {
          bi = i;
          bj = j;
        }
      }
    return {bi, bj};
  };

  Index t = 0;
  for (; t < steps; ++t) {
    auto [pi, pj] = find_pivot(t);
    if (pi < 0) break;  // remaining block is zero

    bool settled = false;
    while (!settled) {
      a.row(t).swap(a.row(pi));
      u.row(t).swap(u.row(pi));
      a.col(t).swap(a.col(pj));
      v.col(t).swap(v.col(pj));

      // Clear column t below the pivot, then row t to its right. Remainders
      // shrink strictly, so re-running the pivot search terminates.
      bool dirty = false;
      for (Index i = t + 1; i < m; ++i) {
        if (is_zero(a(i, t))) continue;
        auto [q, r] = div_mod(a(i, t), a(t, t));
        a.row(i) -= a.row(t) * q;
        u.row(i) -= u.row(t) * q;
        if (!is_zero(r)) dirty = true;
      }
      for (Index j = t + 1; j < n; ++j) {
        if (is_zero(a(t, j))) continue;
        auto [q, r] = div_mod(a(t, j), a(t, t));
        a.col(j) -= a.col(t) * q;
        v.col(j) -= v.col(t) * q;
        if (!is_zero(r)) dirty = true;
      }

      if (dirty) {
        std::tie(pi, pj) = find_pivot(t);
        continue;
      }

      // Pivot divides everything in its row/column; enforce the divisibility
      // chain against the rest of the block.
      settled = true;
      for (Index i = t + 1; i < m && settled; ++i)
        for (Index j = t + 1; j < n && settled; ++j) {
          auto [q, r] = div_mod(a(i, j), a(t, t));
          (void)q;
          if (!is_zero(r)) {
            a.row(t) += a.row(i);
            u.row(t) += u.row(i);
            std::tie(pi, pj) = find_pivot(t);
            settled = false;
          }
        }
    }

    S s = unit_normalizer(a(t, t));
    if (s != S(1)) {
      a.row(t) *= s;
      u.row(t) *= s;
    }
  }

  SmithForm<S> out;
  out.u = std::move(u);
  out.v = std::move(v);
  out.d.reserve(steps);
  for (Index i = 0; i < steps; ++i) out.d.push_back(i < t ? a(i, i) : S(0));
  return out;
}

/// Solve a*x = b exactly over the ring; returns nullopt when no solution
/// exists (over Z: an invariant factor fails to divide the transformed
/// right-hand side).
template <class S>
std::optional<Mat<S>> solve_linear(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_linear: row mismatch");
  SmithForm<S> sf = smith_form(a);
  Mat<S> y = sf.u * b;
  Mat<S> z = Mat<S>::Zero(a.cols(), b.cols());
  const Index steps = static_cast<Index>(sf.d.size());
  for (Index c = 0; c < b.cols(); ++c) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (i < steps && !is_zero(sf.d[i])) {
        auto [q, r] = div_mod(y(i, c), sf.d[i]);
        if (!is_zero(r)) return std::nullopt;
        z(i, c) = q;
      } else if (!is_zero(y(i, c))) {
        return std::nullopt;
      }
    }
  }
  return Mat<S>(sf.v * z);
}

/// Columns form a basis of {x : a*x = 0}; over Z this is a basis of the full
/// kernel lattice, read off the Smith transforms.
template <class S>
Mat<S> kernel_basis(const Mat<S>& a) {
  SmithForm<S> sf = smith_form(a);
  std::vector<Index> free_cols;
  for (Index j = 0; j < a.cols(); ++j)
    if (j >= static_cast<Index>(sf.d.size()) || is_zero(sf.d[j])) free_cols.push_back(j);
  Mat<S> k(a.cols(), static_cast<Index>(free_cols.size()));
  for (Index c = 0; c < k.cols(); ++c) k.col(c) = sf.v.col(free_cols[c]);
  return k;
}

template <class S>
Index rank(const Mat<S>& a) {
  return smith_form(a).rank();
}

/// Inverse of a matrix that is invertible over the ring; nullopt otherwise.
template <class S>
std::optional<Mat<S>> ring_inverse(const Mat<S>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  return solve_linear<S>(a, Mat<S>::Identity(a.rows(), a.rows()));
}

/// Left inverse r with r*a = I, when a is a split injection over the ring.
template <class S>
std::optional<Mat<S>> split_injection_witness(const Mat<S>& a) {
  Mat<S> at = a.transpose();
  auto x = solve_linear<S>(at, Mat<S>::Identity(a.cols(), a.cols()));
  if (!x) return std::nullopt;
  return Mat<S>(x->transpose());
}

/// Right inverse s with a*s = I, when a is a split surjection over the ring.
template <class S>
std::optional<Mat<S>> split_surjection_witness(const Mat<S>& a) {
  return solve_linear<S>(a, Mat<S>::Identity(a.rows(), a.rows()));
}

}  // namespace chainmodel
