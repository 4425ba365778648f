#pragma once

#include <optional>
#include <vector>

#include "chainmodel/smith.hpp"

namespace chainmodel {

/// Builder for block linear systems whose unknowns are matrices and whose
/// equations have the shape  sum_i L_i X_{v_i} R_i = C.  Everything is
/// assembled into one flat system via vec(L X R) = kron(R^T, L) vec(X) and
/// solved exactly over the ring.
template <class S>
class LinearSystemBuilder {
 public:
  explicit LinearSystemBuilder(Ring<S> ring) : ring_(std::move(ring)) {}

  Index add_variable(Index rows, Index cols) {
    vars_.push_back({rows, cols, var_entries_});
    var_entries_ += rows * cols;
    return static_cast<Index>(vars_.size()) - 1;
  }

  Index add_equation(Index rows, Index cols) {
    eqs_.push_back({rows, cols, eq_entries_});
    eq_entries_ += rows * cols;
    rhs_.push_back(Mat<S>::Zero(rows, cols));
    return static_cast<Index>(eqs_.size()) - 1;
  }

  /// Adds the term L * X_var * R to the given equation's left-hand side.
  void add_term(Index eq, Index var, const Mat<S>& left, const Mat<S>& right) {
    const Block& e = eqs_[static_cast<size_t>(eq)];
    const Block& v = vars_[static_cast<size_t>(var)];
    if (left.rows() != e.rows || right.cols() != e.cols || left.cols() != v.rows ||
        right.rows() != v.cols)
      throw std::invalid_argument("LinearSystemBuilder: term shape mismatch");
    terms_.push_back({eq, var, left, right});
  }

  /// Sets the right-hand side: sum of terms = C.
  void set_rhs(Index eq, const Mat<S>& c) {
    const Block& e = eqs_[static_cast<size_t>(eq)];
    if (c.rows() != e.rows || c.cols() != e.cols)
      throw std::invalid_argument("LinearSystemBuilder: rhs shape mismatch");
    rhs_[static_cast<size_t>(eq)] = c;
  }

  /// Solves the assembled system; returns the unknown matrices or nullopt.
  std::optional<std::vector<Mat<S>>> solve() const {
    Mat<S> a = ring_zeros(ring_, eq_entries_, var_entries_);
    Mat<S> b = ring_zeros(ring_, eq_entries_, 1);
    for (const Term& t : terms_) {
      const Block& e = eqs_[static_cast<size_t>(t.eq)];
      const Block& v = vars_[static_cast<size_t>(t.var)];
      // (L X R)(i,j) = sum_{k,l} L(i,k) X(k,l) R(l,j)
      for (Index j = 0; j < e.cols; ++j)
        for (Index i = 0; i < e.rows; ++i) {
          Index row = e.offset + j * e.rows + i;
          for (Index l = 0; l < v.cols; ++l)
            for (Index k = 0; k < v.rows; ++k) {
              if (is_zero(t.left(i, k)) || is_zero(t.right(l, j))) continue;
              a(row, v.offset + l * v.rows + k) += t.left(i, k) * t.right(l, j);
            }
        }
    }
    for (size_t e = 0; e < eqs_.size(); ++e) {
      const Block& blk = eqs_[e];
      for (Index j = 0; j < blk.cols; ++j)
        for (Index i = 0; i < blk.rows; ++i) b(blk.offset + j * blk.rows + i, 0) = rhs_[e](i, j);
    }
    auto x = solve_linear<S>(a, b);
    if (!x) return std::nullopt;
    std::vector<Mat<S>> out;
    out.reserve(vars_.size());
    for (const Block& v : vars_) {
      Mat<S> m(v.rows, v.cols);
      for (Index j = 0; j < v.cols; ++j)
        for (Index i = 0; i < v.rows; ++i) m(i, j) = (*x)(v.offset + j * v.rows + i, 0);
      out.push_back(std::move(m));
    }
    return out;
  }

 private:
  struct Block {
    Index rows, cols, offset;
  };
  struct Term {
    Index eq, var;
    Mat<S> left, right;
  };

  Ring<S> ring_;
  std::vector<Block> vars_;
  std::vector<Block> eqs_;
  std::vector<Term> terms_;
  std::vector<Mat<S>> rhs_;
  Index var_entries_ = 0;
  Index eq_entries_ = 0;
};

}  // namespace chainmodel
