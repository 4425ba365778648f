#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chainmodel/smith.hpp"

namespace chainmodel {

/// Finitely generated module over the coefficient ring in invariant-factor
/// canonical form. Over Z: torsion factors d_i > 1 with d_1 | d_2 | ... plus a
/// free rank. Over F_p there is no torsion and free_rank is the dimension.
struct PresentedGroup {
  RingDesc ring;
  std::vector<Integer> torsion;
  long free_rank = 0;

  bool is_trivial() const { return torsion.empty() && free_rank == 0; }

  std::string str() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
      if (!first) os << " + ";
      first = false;
    };
    if (ring.kind == RingDesc::Kind::prime_field) {
      sep();
      os << "F_" << ring.p;
      if (free_rank > 1) os << "^" << free_rank;
      return os.str();
    }
    for (const Integer& d : torsion) {
      sep();
      os << "Z/" << d;
    }
    if (free_rank > 0) {
      sep();
      os << "Z";
      if (free_rank > 1) os << "^" << free_rank;
    }
    return os.str();
  }

  friend bool operator==(const PresentedGroup&, const PresentedGroup&) = default;
};

namespace detail {
inline void push_invariant_factor(PresentedGroup& g, const Integer& d) {
  if (!is_unit(d)) g.torsion.push_back(abs(d));
}
inline void push_invariant_factor(PresentedGroup& g, const Fp& d) {
  (void)g;
  (void)d;  // nonzero invariant factors over a field are units
}
}  // namespace detail

/// coker(a) = R^rows / column span of a, in invariant-factor form.
template <class S>
PresentedGroup cokernel_presentation(const Ring<S>& ring, const Mat<S>& a) {
  SmithForm<S> sf = smith_form(a);
  PresentedGroup g;
  g.ring = ring.desc();
  for (const S& d : sf.d)
    if (!is_zero(d)) detail::push_invariant_factor(g, d);
  g.free_rank = static_cast<long>(a.rows() - sf.rank());
  return g;
}

/// The subquotient span(basis)/span(basis * relations) of an ambient free
/// module, with canonical coordinates. `relations` columns are expressed in
/// the basis, so the group is coker(relations) on basis coordinates.
template <class S>
class Subquotient {
 public:
  Subquotient(const Ring<S>& ring, Mat<S> basis, const Mat<S>& relations)
      : ring_(ring), basis_(std::move(basis)), rel_(smith_form(relations)) {
    if (relations.rows() != basis_.cols())
      throw std::invalid_argument("Subquotient: relations not in basis coordinates");
    auto uinv = ring_inverse<S>(rel_.u);
    if (!uinv) throw std::logic_error("Subquotient: Smith transform not invertible");
    u_inv_ = std::move(*uinv);

    group_.ring = ring.desc();
    const Index k = basis_.cols();
    for (Index i = 0; i < k; ++i) {
      if (i < static_cast<Index>(rel_.d.size()) && !is_zero(rel_.d[i])) {
        if (is_unit(rel_.d[i])) continue;  // killed coordinate
        kept_.push_back(i);
        detail::push_invariant_factor(group_, rel_.d[i]);
        moduli_.push_back(rel_.d[i]);
      } else {
        kept_.push_back(i);
        moduli_.push_back(S(0));
        ++group_.free_rank;
      }
    }
  }

  const PresentedGroup& group() const { return group_; }
  Index generator_count() const { return static_cast<Index>(kept_.size()); }

  /// Ambient vector representing the i-th canonical generator.
  Vec<S> generator(Index i) const { return basis_ * u_inv_.col(kept_[static_cast<size_t>(i)]); }

  /// Canonical coordinates of an ambient vector, or nullopt when it does not
  /// lie in the span of the basis. Torsion coordinates are reduced to [0, d).
  std::optional<Vec<S>> coordinates(const Vec<S>& ambient) const {
    Mat<S> rhs(ambient.size(), 1);
    rhs.col(0) = ambient;
    auto z = solve_linear<S>(basis_, rhs);
    if (!z) return std::nullopt;
    Mat<S> w = rel_.u * (*z);
    Vec<S> out(generator_count());
    for (Index i = 0; i < generator_count(); ++i) {
      Index src = kept_[static_cast<size_t>(i)];
      const S& d = moduli_[static_cast<size_t>(i)];
      if (is_zero(d)) {
        out(i) = w(src, 0);
      } else {
        auto [q, r] = div_mod(w(src, 0), d);
        (void)q;
        out(i) = canonical_residue(r, d);
      }
    }
    return out;
  }

 private:
  static Integer canonical_residue(const Integer& r, const Integer& d) {
    return r.sign() < 0 ? r + abs(d) : r;
  }
  static Fp canonical_residue(const Fp& r, const Fp&) { return r; }

  Ring<S> ring_;
  Mat<S> basis_;
  SmithForm<S> rel_;
  Mat<S> u_inv_;
  PresentedGroup group_;
  std::vector<Index> kept_;
  std::vector<S> moduli_;
};

}  // namespace chainmodel
