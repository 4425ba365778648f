#pragma once

#include <optional>
#include <vector>

#include "chainmodel/abelian_group.hpp"

namespace chainmodel {

/// Finite-dimensional module over k[eps] (eps^2 = 0, k = F_p), given by the
/// matrix of the eps action on a chosen basis.
class KEpsModule {
 public:
  KEpsModule(Ring<Fp> field, Mat<Fp> eps) : field_(field), eps_(std::move(eps)) {
    if (eps_.rows() != eps_.cols()) throw std::invalid_argument("KEpsModule: eps must be square");
    if (!is_zero(Mat<Fp>(eps_ * eps_))) throw std::invalid_argument("KEpsModule: eps^2 != 0");
  }

  const Ring<Fp>& field() const { return field_; }
  Index dim() const { return eps_.rows(); }
  const Mat<Fp>& eps() const { return eps_; }

  friend bool operator==(const KEpsModule& a, const KEpsModule& b) {
    return a.field_ == b.field_ && matrix_equal<Fp>(a.eps_, b.eps_);
  }

 private:
  Ring<Fp> field_;
  Mat<Fp> eps_;
};

/// k^a (+) k[eps]^b in normal form: b regular pairs (x_i, y_i) with
/// eps x_i = y_i, followed by a trivial generators.
inline KEpsModule normal_form_module(const Ring<Fp>& field, Index a, Index b) {
  Mat<Fp> eps = ring_zeros(field, a + 2 * b, a + 2 * b);
  for (Index i = 0; i < b; ++i) eps(2 * i + 1, 2 * i) = field.from_long(1);
  return KEpsModule(field, std::move(eps));
}

inline KEpsModule trivial_module(const Ring<Fp>& field, Index dim) {
  return KEpsModule(field, ring_zeros(field, dim, dim));
}

inline KEpsModule free_module(const Ring<Fp>& field, Index rank) {
  return normal_form_module(field, 0, rank);
}

/// k[eps]-linear map: a matrix commuting with the eps actions.
class KEpsHom {
 public:
  KEpsHom(KEpsModule source, KEpsModule target, Mat<Fp> matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (!(source_.field() == target_.field()))
      throw std::invalid_argument("KEpsHom: field mismatch");
    if (matrix_.rows() != target_.dim() || matrix_.cols() != source_.dim())
      throw std::invalid_argument("KEpsHom: matrix shape mismatch");
    if (!matrix_equal<Fp>(Mat<Fp>(matrix_ * source_.eps()), Mat<Fp>(target_.eps() * matrix_)))
      throw std::invalid_argument("KEpsHom: matrix does not commute with eps");
  }

  static KEpsHom identity(const KEpsModule& m) {
    return KEpsHom(m, m, ring_identity(m.field(), m.dim()));
  }
  static KEpsHom zero(const KEpsModule& m, const KEpsModule& n) {
    return KEpsHom(m, n, ring_zeros(m.field(), n.dim(), m.dim()));
  }

  const KEpsModule& source() const { return source_; }
  const KEpsModule& target() const { return target_; }
  const Mat<Fp>& matrix() const { return matrix_; }

  friend KEpsHom operator*(const KEpsHom& g, const KEpsHom& f) {
    if (!(f.target() == g.source())) throw std::invalid_argument("KEpsHom: composite mismatch");
    return KEpsHom(f.source_, g.target_, Mat<Fp>(g.matrix_ * f.matrix_));
  }
  friend KEpsHom operator-(const KEpsHom& f, const KEpsHom& g) {
    return KEpsHom(f.source_, f.target_, Mat<Fp>(f.matrix_ - g.matrix_));
  }
  friend bool operator==(const KEpsHom& f, const KEpsHom& g) {
    return f.source_ == g.source_ && f.target_ == g.target_ &&
           matrix_equal<Fp>(f.matrix_, g.matrix_);
  }

 private:
  KEpsModule source_, target_;
  Mat<Fp> matrix_;
};

/// Short exact sequence of k[eps]-modules (the category is abelian, so every
/// kernel-cokernel pair qualifies). Exactness is checked by rank counting.
struct KEpsSes {
  KEpsHom i, p;

  KEpsSes(KEpsHom i_, KEpsHom p_) : i(std::move(i_)), p(std::move(p_)) {
    if (!(i.target() == p.source())) throw std::invalid_argument("KEpsSes: middle mismatch");
    if (!is_zero(Mat<Fp>(p.matrix() * i.matrix()))) throw std::invalid_argument("KEpsSes: p i != 0");
    Index ri = rank(i.matrix()), rp = rank(p.matrix());
    if (ri != i.source().dim()) throw std::invalid_argument("KEpsSes: i not injective");
    if (rp != p.target().dim()) throw std::invalid_argument("KEpsSes: p not surjective");
    if (i.source().dim() + p.target().dim() != i.target().dim())
      throw std::invalid_argument("KEpsSes: not exact in the middle");
  }
};

/// Basis of Hom(m, n): matrices commuting with eps, as vectorized columns.
inline Mat<Fp> hom_basis(const KEpsModule& m, const KEpsModule& n) {
  if (!(m.field() == n.field())) throw std::invalid_argument("hom_basis: field mismatch");
  // T eps_m - eps_n T = 0  <=>  (eps_m^T (x) I - I (x) eps_n) vec(T) = 0
  Mat<Fp> em_t = m.eps().transpose();
  Mat<Fp> lhs = kron<Fp>(em_t, ring_identity(m.field(), n.dim())) -
                kron<Fp>(ring_identity(m.field(), m.dim()), n.eps());
  return kernel_basis<Fp>(lhs);
}

/// m decomposed as k^a (+) k[eps]^b with mutually inverse isomorphisms to the
/// normal-form module.
struct KEpsDecomposition {
  Index trivial_rank;  // a
  Index free_rank;     // b
  KEpsModule normal_form;
  KEpsHom from_normal_form;  // normal_form -> m
  KEpsHom to_normal_form;    // m -> normal_form
};

inline KEpsDecomposition decompose(const KEpsModule& m) {
  const Ring<Fp>& field = m.field();
  const Index d = m.dim();
  const Index b = rank(m.eps());
  const Index a = d - 2 * b;

  // columns V with eps V of full rank b: unit vectors at the pivot columns
  // of eps; then eps V completes inside ker(eps), and the rest of ker(eps)
  // gives the trivial part.
  std::vector<Index> pivot_cols;
  {
    Mat<Fp> work = m.eps();
    Index r = 0;
    for (Index j = 0; j < d && r < b; ++j) {
      Index piv = -1;
      for (Index i = r; i < d; ++i)
        if (!work(i, j).is_zero()) { piv = i; break; }
      if (piv < 0) continue;
      work.row(piv).swap(work.row(r));
      for (Index i = 0; i < d; ++i) {
        if (i == r || work(i, j).is_zero()) continue;
        Fp factor = work(i, j) * work(r, j).inverse();
        work.row(i) -= work.row(r) * factor;
      }
      pivot_cols.push_back(j);
      ++r;
    }
  }

  Mat<Fp> basis(d, d);
  Index at = 0;
  for (Index idx = 0; idx < b; ++idx) {
    Index j = pivot_cols[static_cast<size_t>(idx)];
    for (Index i = 0; i < d; ++i) basis(i, at) = field.from_long(i == j ? 1 : 0);
    basis.col(at + 1) = m.eps().col(j);
    at += 2;
  }
  // complete with kernel vectors independent of what we have so far
  Mat<Fp> ker = kernel_basis(m.eps());
  for (Index c = 0; c < ker.cols() && at < d; ++c) {
    basis.col(at) = ker.col(c);
    if (rank(Mat<Fp>(basis.leftCols(at + 1))) == at + 1) ++at;
  }
  if (at != d) throw std::logic_error("decompose: basis completion failed");

  KEpsModule nf = normal_form_module(field, a, b);
  auto inv = ring_inverse<Fp>(basis);
  if (!inv) throw std::logic_error("decompose: basis not invertible");
  KEpsHom from_nf(nf, m, basis);
  KEpsHom to_nf(m, nf, *inv);
  return {a, b, std::move(nf), std::move(from_nf), std::move(to_nf)};
}

inline bool is_free(const KEpsModule& m) { return decompose(m).trivial_rank == 0; }

/// K >-> F ->> m with F = k[eps] (x) (underlying space of m): the free cover.
inline KEpsSes free_cover(const KEpsModule& m) {
  const Ring<Fp>& field = m.field();
  const Index d = m.dim();
  KEpsModule f = free_module(field, d);
  // free generators are the pairs (x_i, y_i = eps x_i); send x_i to e_i and
  // y_i to eps e_i
  Mat<Fp> cm = ring_zeros(field, d, 2 * d);
  for (Index i = 0; i < d; ++i) {
    cm(i, 2 * i) = field.from_long(1);
    cm.col(2 * i + 1) = m.eps().col(i);
  }
  KEpsHom cover(f, m, std::move(cm));
  Mat<Fp> kb = kernel_basis(cover.matrix());
  auto keps = solve_linear<Fp>(kb, Mat<Fp>(f.eps() * kb));
  if (!keps) throw std::logic_error("free_cover: kernel not eps-stable");
  KEpsModule k(field, std::move(*keps));
  KEpsHom inc(k, f, kb);
  return KEpsSes(std::move(inc), std::move(cover));
}

/// m >-> F' ->> C with F' free: the free envelope x -> 1 (x) eps x + eps (x) x.
inline KEpsSes free_envelope(const KEpsModule& m) {
  const Ring<Fp>& field = m.field();
  const Index d = m.dim();
  KEpsModule f = free_module(field, d);
  Mat<Fp> em = ring_zeros(field, 2 * d, d);
  for (Index i = 0; i < d; ++i) {
    em.row(2 * i) = m.eps().row(i);
    em(2 * i + 1, i) = field.from_long(1);
  }
  KEpsHom env(m, f, std::move(em));

  // cokernel: complete im(env) to a basis of F'
  Mat<Fp> im = env.matrix();
  Mat<Fp> full(2 * d, 2 * d);
  full.leftCols(d) = im;
  Index at = d;
  for (Index j = 0; j < 2 * d && at < 2 * d; ++j) {
    for (Index i = 0; i < 2 * d; ++i) full(i, at) = field.from_long(i == j ? 1 : 0);
    if (rank(Mat<Fp>(full.leftCols(at + 1))) == at + 1) ++at;
  }
  if (at != 2 * d) throw std::logic_error("free_envelope: basis completion failed");
  auto inv = ring_inverse<Fp>(full);
  if (!inv) throw std::logic_error("free_envelope: completion not invertible");
  Mat<Fp> proj = inv->bottomRows(d);          // coordinates along the completion
  Mat<Fp> comp = full.rightCols(d);           // completion vectors
  Mat<Fp> ceps = proj * f.eps() * comp;
  KEpsModule c(field, std::move(ceps));
  KEpsHom p(f, c, Mat<Fp>(proj));
  return KEpsSes(std::move(env), std::move(p));
}

/// Hom(m, n) modulo maps factoring through a free module, with canonical
/// reduction. The factoring subspace is the image of composition with the
/// free cover of n.
class StableHom {
 public:
  StableHom(const KEpsModule& m, const KEpsModule& n)
      : m_(m), n_(n), cover_(free_cover(n)), sub_(make_subquotient(m, n, cover_)) {}

  const PresentedGroup& group() const { return sub_.group(); }
  Index generator_count() const { return sub_.generator_count(); }

  KEpsHom generator(Index i) const {
    return KEpsHom(m_, n_, unvectorize<Fp>(sub_.generator(i), n_.dim(), m_.dim()));
  }

  Vec<Fp> reduce(const KEpsHom& f) const {
    if (!(f.source() == m_) || !(f.target() == n_))
      throw std::invalid_argument("StableHom::reduce: wrong hom");
    auto c = sub_.coordinates(vectorize<Fp>(f.matrix()));
    if (!c) throw std::logic_error("StableHom::reduce: not in the hom space");
    return *c;
  }

 private:
  static Subquotient<Fp> make_subquotient(const KEpsModule& m, const KEpsModule& n,
                                          const KEpsSes& cover) {
    Mat<Fp> homs = hom_basis(m, n);
    Mat<Fp> lifts = hom_basis(m, cover.p.source());
    // columns: cover.p composed with each basic map m -> F(n)
    Mat<Fp> through = kron<Fp>(ring_identity(m.field(), m.dim()), cover.p.matrix()) * lifts;
    auto rel = solve_linear<Fp>(homs, through);
    if (!rel) throw std::logic_error("StableHom: factoring maps are not homs");
    return Subquotient<Fp>(m.field(), std::move(homs), *rel);
  }

  KEpsModule m_, n_;
  KEpsSes cover_;
  Subquotient<Fp> sub_;
};

inline StableHom stable_hom(const KEpsModule& m, const KEpsModule& n) {
  if (!(m.field() == n.field())) throw std::invalid_argument("stable_hom: field mismatch");
  return StableHom(m, n);
}

/// Ext^1(m, n) from the minimal presentation extracted from decompose: the
/// trivial part of m contributes a copies of ker(eps_n)/im(eps_n).
inline PresentedGroup ext1_keps(const KEpsModule& m, const KEpsModule& n) {
  if (!(m.field() == n.field())) throw std::invalid_argument("ext1_keps: field mismatch");
  const Index a = decompose(m).trivial_rank;
  Mat<Fp> ker = kernel_basis(n.eps());
  auto im = solve_linear<Fp>(ker, n.eps());
  if (!im) throw std::logic_error("ext1_keps: image not inside kernel");
  PresentedGroup e = cokernel_presentation(n.field(), *im);
  PresentedGroup out;
  out.ring = n.field().desc();
  out.free_rank = static_cast<long>(a) * e.free_rank;
  return out;
}

}  // namespace chainmodel
