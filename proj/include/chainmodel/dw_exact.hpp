#pragma once

#include <optional>

#include "chainmodel/hom_complex.hpp"
#include "chainmodel/linear_system.hpp"

namespace chainmodel {

/// Degreewise split short exact sequence A >-> B ->> C with explicit
/// degreewise witnesses: retractions r_n of i_n and sections s_n of p_n
/// satisfying r i = 1, p s = 1 and i r + s p = 1 in every degree.
template <class S>
class DwSes {
 public:
  DwSes(ChainMap<S> i, ChainMap<S> p, DegreeMap<S> sections, DegreeMap<S> retractions)
      : i_(std::move(i)), p_(std::move(p)), s_(std::move(sections)), r_(std::move(retractions)) {
    if (!(i_.target() == p_.source())) throw std::invalid_argument("DwSes: middle term mismatch");
    if (!(p_ * i_).is_zero_map()) throw std::invalid_argument("DwSes: p i != 0");
    for (int n = lo(); n <= hi(); ++n) {
      Mat<S> in = i_.component(n), pn = p_.component(n);
      Mat<S> rn = retraction(n), sn = section(n);
      if (!matrix_equal<S>(Mat<S>(rn * in), ring_identity(ring(), a().rank(n))))
        throw std::invalid_argument("DwSes: r i != 1 at degree " + std::to_string(n));
      if (!matrix_equal<S>(Mat<S>(pn * sn), ring_identity(ring(), c().rank(n))))
        throw std::invalid_argument("DwSes: p s != 1 at degree " + std::to_string(n));
      if (!matrix_equal<S>(Mat<S>(in * rn + sn * pn), ring_identity(ring(), b().rank(n))))
        throw std::invalid_argument("DwSes: i r + s p != 1 at degree " + std::to_string(n));
    }
  }

  const ChainMap<S>& i() const { return i_; }
  const ChainMap<S>& p() const { return p_; }
  const ChainComplex<S>& a() const { return i_.source(); }
  const ChainComplex<S>& b() const { return i_.target(); }
  const ChainComplex<S>& c() const { return p_.target(); }
  const Ring<S>& ring() const { return i_.ring(); }

  Mat<S> section(int n) const { return s_.get(n, b().rank(n), c().rank(n)); }
  Mat<S> retraction(int n) const { return r_.get(n, a().rank(n), b().rank(n)); }

  int lo() const { return std::min(i_.lo(), p_.lo()); }
  int hi() const { return std::max(i_.hi(), p_.hi()); }

 private:
  ChainMap<S> i_, p_;
  DegreeMap<S> s_, r_;
};

/// Witness that a chain map is an admissible mono (epi) in the degreewise
/// split structure: the degreewise one-sided inverses plus the computed
/// cokernel (kernel) with its connecting chain map.
template <class S>
struct AdmissibleWitness {
  enum class Kind { mono, epi };

  Kind kind;
  ChainMap<S> map;
  DegreeMap<S> inverses;       // left inverses of i_n (mono) / right inverses of p_n (epi)
  ChainComplex<S> complement;  // cokernel (mono) / kernel (epi)
  ChainMap<S> connecting;      // B -> coker (mono) / ker -> B (epi)
  DegreeMap<S> complement_basis;  // mono: s_n with i r + s q = 1; epi: r_n with k r + s p = 1

  /// Assembles the witnessed short exact sequence.
  DwSes<S> to_ses() const {
    if (kind == Kind::mono) return DwSes<S>(map, connecting, clone(complement_basis), clone(inverses));
    return DwSes<S>(connecting, map, clone(inverses), clone(complement_basis));
  }

 private:
  static DegreeMap<S> clone(const DegreeMap<S>& m) { return m; }
};

/// Detects a degreewise split monomorphism and constructs its cokernel on the
/// complement im(1 - i r), with basis extracted through the kernel lattice of
/// i r (a saturated sublattice, so the quotient is again free).
template <class S>
std::optional<AdmissibleWitness<S>> admissible_mono(const ChainMap<S>& f) {
  const auto& a = f.source();
  const auto& b = f.target();
  const Ring<S>& ring = f.ring();

  DegreeMap<S> retracts, sections;
  std::map<int, Mat<S>> basis;  // j_n : coker_n -> B_n
  for (int n = f.lo(); n <= f.hi(); ++n) {
    Mat<S> fn = f.component(n);
    auto r = split_injection_witness<S>(fn);
    if (!r) return std::nullopt;
    retracts.set(n, *r);
    Mat<S> proj = fn * (*r);  // idempotent with image im(f_n)
    Mat<S> j = kernel_basis<S>(proj);
    basis.emplace(n, std::move(j));
  }

  std::vector<Index> ranks;
  std::vector<Mat<S>> diffs;
  const int lo = f.lo(), hi = f.hi();
  for (int n = lo; n <= hi; ++n) ranks.push_back(basis.at(n).cols());
  DegreeMap<S> quotient;
  std::map<int, Mat<S>> q;
  for (int n = lo; n <= hi; ++n) {
    // q_n expresses the complement projector in the basis j_n
    Mat<S> proj = ring_identity(ring, b.rank(n)) - f.component(n) * retracts.get(n, a.rank(n), b.rank(n));
    auto qn = solve_linear<S>(basis.at(n), proj);
    if (!qn) throw std::logic_error("admissible_mono: projector not in complement span");
    q.emplace(n, std::move(*qn));
  }
  for (int n = lo + 1; n <= hi; ++n) diffs.push_back(Mat<S>(q.at(n - 1) * b.diff(n) * basis.at(n)));
  ChainComplex<S> coker(ring, lo, std::move(ranks), std::move(diffs));

  DegreeMap<S> qmap;
  for (int n = lo; n <= hi; ++n) qmap.set(n, q.at(n));
  ChainMap<S> connecting(b, coker, std::move(qmap));
  for (int n = lo; n <= hi; ++n) sections.set(n, basis.at(n));

  return AdmissibleWitness<S>{AdmissibleWitness<S>::Kind::mono, f, std::move(retracts),
                              std::move(coker), std::move(connecting), std::move(sections)};
}

/// Dual of admissible_mono: detects a degreewise split epimorphism and
/// constructs its kernel complex with inclusion.
template <class S>
std::optional<AdmissibleWitness<S>> admissible_epi(const ChainMap<S>& g) {
  const auto& b = g.source();
  const auto& c = g.target();
  const Ring<S>& ring = g.ring();

  DegreeMap<S> sections;
  std::map<int, Mat<S>> basis;  // k_n : ker_n -> B_n
  for (int n = g.lo(); n <= g.hi(); ++n) {
    Mat<S> gn = g.component(n);
    auto s = split_surjection_witness<S>(gn);
    if (!s) return std::nullopt;
    sections.set(n, *s);
    basis.emplace(n, kernel_basis<S>(gn));
  }

  const int lo = g.lo(), hi = g.hi();
  std::vector<Index> ranks;
  std::vector<Mat<S>> diffs;
  for (int n = lo; n <= hi; ++n) ranks.push_back(basis.at(n).cols());
  for (int n = lo + 1; n <= hi; ++n) {
    auto dk = solve_linear<S>(basis.at(n - 1), Mat<S>(b.diff(n) * basis.at(n)));
    if (!dk) throw std::logic_error("admissible_epi: differential does not preserve the kernel");
    diffs.push_back(std::move(*dk));
  }
  ChainComplex<S> ker(ring, lo, std::move(ranks), std::move(diffs));

  DegreeMap<S> kmap, retracts;
  for (int n = lo; n <= hi; ++n) {
    kmap.set(n, basis.at(n));
    Mat<S> proj = ring_identity(ring, b.rank(n)) - sections.get(n, b.rank(n), c.rank(n)) * g.component(n);
    auto rn = solve_linear<S>(basis.at(n), proj);
    if (!rn) throw std::logic_error("admissible_epi: projector not in kernel span");
    retracts.set(n, *rn);
  }
  ChainMap<S> connecting(ker, b, std::move(kmap));

  return AdmissibleWitness<S>{AdmissibleWitness<S>::Kind::epi, g, std::move(sections),
                              std::move(ker), std::move(connecting), std::move(retracts)};
}

/// Pushout of an admissible mono i : A >-> B along f : A -> Z, built
/// degreewise through the splitting: P_n = Z_n (+) coker(i)_n with the
/// differential twisted by f composed with the twist of B.
template <class S>
struct PushoutResult {
  ChainComplex<S> complex;              // P
  ChainMap<S> from_z;                   // Z -> P, again an admissible mono
  ChainMap<S> from_b;                   // B -> P
  AdmissibleWitness<S> pushed_witness;  // witness for Z -> P, cokernel = coker(i)
};

template <class S>
PushoutResult<S> pushout_mono(const AdmissibleWitness<S>& w, const ChainMap<S>& f) {
  if (w.kind != AdmissibleWitness<S>::Kind::mono)
    throw std::invalid_argument("pushout_mono: witness is not a mono witness");
  if (!(f.source() == w.map.source())) throw std::invalid_argument("pushout_mono: source mismatch");
  const auto& a = w.map.source();
  const auto& b = w.map.target();
  const auto& z = f.target();
  const auto& ck = w.complement;
  const Ring<S>& ring = f.ring();

  int lo = std::min(z.empty() ? ck.min_degree() : z.min_degree(), ck.empty() ? z.min_degree() : ck.min_degree());
  int hi = std::max(z.max_degree(), ck.max_degree());
  if (z.empty() && ck.empty()) { lo = 0; hi = -1; }

  auto tw = [&](int n) {  // twist tau_n = r_{n-1} d_B j_n : coker_n -> A_{n-1}
    Mat<S> r = w.inverses.get(n - 1, a.rank(n - 1), b.rank(n - 1));
    Mat<S> j = w.complement_basis.get(n, b.rank(n), ck.rank(n));
    return Mat<S>(r * b.diff(n) * j);
  };

  std::vector<Index> ranks;
  std::vector<Mat<S>> diffs;
  for (int n = lo; n <= hi; ++n) ranks.push_back(z.rank(n) + ck.rank(n));
  for (int n = lo + 1; n <= hi; ++n)
    diffs.push_back(block2x2<S>(z.diff(n), Mat<S>(f.component(n - 1) * tw(n)),
                                Mat<S>::Zero(ck.rank(n - 1), z.rank(n)), ck.diff(n)));
  ChainComplex<S> p(ring, lo, std::move(ranks), std::move(diffs));

  DegreeMap<S> zeta, beta, zr, zjs, quot;
  for (int n = lo; n <= hi; ++n) {
    zeta.set(n, vcat<S>(ring_identity(ring, z.rank(n)), Mat<S>::Zero(ck.rank(n), z.rank(n))));
    Mat<S> r = w.inverses.get(n, a.rank(n), b.rank(n));
    Mat<S> q = w.connecting.component(n);
    beta.set(n, vcat<S>(Mat<S>(f.component(n) * r), q));
    zr.set(n, hcat<S>(ring_identity(ring, z.rank(n)), Mat<S>::Zero(z.rank(n), ck.rank(n))));
    zjs.set(n, vcat<S>(Mat<S>::Zero(z.rank(n), ck.rank(n)), ring_identity(ring, ck.rank(n))));
    quot.set(n, hcat<S>(Mat<S>::Zero(ck.rank(n), z.rank(n)), ring_identity(ring, ck.rank(n))));
  }
  ChainMap<S> from_z(z, p, std::move(zeta));
  ChainMap<S> from_b(b, p, std::move(beta));
  ChainMap<S> quotient(p, ck, std::move(quot));
  AdmissibleWitness<S> pushed{AdmissibleWitness<S>::Kind::mono, from_z, std::move(zr), ck,
                              std::move(quotient), std::move(zjs)};
  return {std::move(p), std::move(from_z), std::move(from_b), std::move(pushed)};
}

/// Pullback of an admissible epi p : B ->> C along f : Z -> C, dual to
/// pushout_mono: PB_n = Z_n (+) ker(p)_n.
template <class S>
struct PullbackResult {
  ChainComplex<S> complex;              // PB
  ChainMap<S> to_z;                     // PB -> Z, again an admissible epi
  ChainMap<S> to_b;                     // PB -> B
  AdmissibleWitness<S> pulled_witness;  // witness for PB -> Z, kernel = ker(p)
};

template <class S>
PullbackResult<S> pullback_epi(const AdmissibleWitness<S>& w, const ChainMap<S>& f) {
  if (w.kind != AdmissibleWitness<S>::Kind::epi)
    throw std::invalid_argument("pullback_epi: witness is not an epi witness");
  if (!(f.target() == w.map.target())) throw std::invalid_argument("pullback_epi: target mismatch");
  const auto& b = w.map.source();
  const auto& c = w.map.target();
  const auto& z = f.source();
  const auto& kr = w.complement;
  const Ring<S>& ring = f.ring();

  int lo = std::min(z.empty() ? kr.min_degree() : z.min_degree(), kr.empty() ? z.min_degree() : kr.min_degree());
  int hi = std::max(z.max_degree(), kr.max_degree());
  if (z.empty() && kr.empty()) { lo = 0; hi = -1; }

  auto tw = [&](int n) {  // sigma_n f_n = r_{n-1} d_B s_n f_n : Z_n -> ker_{n-1}
    Mat<S> r = w.complement_basis.get(n - 1, kr.rank(n - 1), b.rank(n - 1));
    Mat<S> s = w.inverses.get(n, b.rank(n), c.rank(n));
    return Mat<S>(r * b.diff(n) * s * f.component(n));
  };

  std::vector<Index> ranks;
  std::vector<Mat<S>> diffs;
  for (int n = lo; n <= hi; ++n) ranks.push_back(z.rank(n) + kr.rank(n));
  for (int n = lo + 1; n <= hi; ++n)
    diffs.push_back(block2x2<S>(z.diff(n), Mat<S>::Zero(z.rank(n - 1), kr.rank(n)), tw(n), kr.diff(n)));
  ChainComplex<S> pb(ring, lo, std::move(ranks), std::move(diffs));

  DegreeMap<S> toz, tob, sec, kin, ret;
  for (int n = lo; n <= hi; ++n) {
    toz.set(n, hcat<S>(ring_identity(ring, z.rank(n)), Mat<S>::Zero(z.rank(n), kr.rank(n))));
    Mat<S> s = w.inverses.get(n, b.rank(n), c.rank(n));
    Mat<S> k = w.connecting.component(n);
    tob.set(n, hcat<S>(Mat<S>(s * f.component(n)), k));
    sec.set(n, vcat<S>(ring_identity(ring, z.rank(n)), Mat<S>::Zero(kr.rank(n), z.rank(n))));
    kin.set(n, vcat<S>(Mat<S>::Zero(z.rank(n), kr.rank(n)), ring_identity(ring, kr.rank(n))));
    ret.set(n, hcat<S>(Mat<S>::Zero(kr.rank(n), z.rank(n)), ring_identity(ring, kr.rank(n))));
  }
  ChainMap<S> to_z(pb, z, std::move(toz));
  ChainMap<S> to_b(pb, b, std::move(tob));
  ChainMap<S> kernel_inc(kr, pb, std::move(kin));
  AdmissibleWitness<S> pulled{AdmissibleWitness<S>::Kind::epi, to_z, std::move(sec), kr,
                              std::move(kernel_inc), std::move(ret)};
  return {std::move(pb), std::move(to_z), std::move(to_b), std::move(pulled)};
}

/// Cokernel of a split mono from a supplied degreewise left inverse, together
/// with the explicit degreewise isomorphism of the middle term with the
/// canonical split sum A (+) coker.
template <class S>
struct SplitMonoSes {
  DwSes<S> ses;
  ChainComplex<S> split_model;  // direct_sum(A, coker)
  DegreeMap<S> iso_to_split;    // B_n -> A_n (+) coker_n, rows (r; q)
  DegreeMap<S> iso_from_split;  // inverse, columns (i | j)
};

template <class S>
SplitMonoSes<S> split_mono_cokernel(const ChainMap<S>& f, const DegreeMap<S>& left_inverse) {
  const auto& a = f.source();
  const auto& b = f.target();
  for (int n = f.lo(); n <= f.hi(); ++n) {
    Mat<S> r = left_inverse.get(n, a.rank(n), b.rank(n));
    if (!matrix_equal<S>(Mat<S>(r * f.component(n)), ring_identity(f.ring(), a.rank(n))))
      throw std::invalid_argument("split_mono_cokernel: left inverse fails at degree " +
                                  std::to_string(n));
  }
  DegreeMap<S> sections, quots;
  std::map<int, Mat<S>> basis;
  for (int n = f.lo(); n <= f.hi(); ++n) {
    Mat<S> r = left_inverse.get(n, a.rank(n), b.rank(n));
    Mat<S> proj = ring_identity(f.ring(), b.rank(n)) - f.component(n) * r;
    Mat<S> j = kernel_basis<S>(Mat<S>(f.component(n) * r));
    auto q = solve_linear<S>(j, proj);
    if (!q) throw std::logic_error("split_mono_cokernel: projector not in complement span");
    basis.emplace(n, j);
    quots.set(n, *q);
    sections.set(n, j);
  }
  std::vector<Index> ranks;
  std::vector<Mat<S>> diffs;
  for (int n = f.lo(); n <= f.hi(); ++n) ranks.push_back(basis.at(n).cols());
  for (int n = f.lo() + 1; n <= f.hi(); ++n)
    diffs.push_back(Mat<S>(quots.get(n - 1, basis.at(n - 1).cols(), b.rank(n - 1)) * b.diff(n) *
                           basis.at(n)));
  ChainComplex<S> coker(f.ring(), f.lo(), std::move(ranks), std::move(diffs));
  DegreeMap<S> qmap = quots;
  ChainMap<S> q(b, coker, std::move(qmap));
  DwSes<S> ses(f, q, sections, left_inverse);

  ChainComplex<S> model = direct_sum(a, coker).complex;
  DegreeMap<S> to_split, from_split;
  for (int n = f.lo(); n <= f.hi(); ++n) {
    Mat<S> r = left_inverse.get(n, a.rank(n), b.rank(n));
    to_split.set(n, vcat<S>(r, ses.p().component(n)));
    from_split.set(n, hcat<S>(f.component(n), ses.section(n)));
  }
  return {std::move(ses), std::move(model), std::move(to_split), std::move(from_split)};
}

/// The explicit diagram exhibiting a split mono f (with chain-level splitting
/// g f = 1) as a retract of the admissible mono (1; -f) : A -> A (+) C.
template <class S>
struct RetractDiagram {
  ChainMap<S> outer;        // f : A -> C, both columns of the outer squares
  ChainMap<S> middle;       // (1; -f) : A -> A (+) C
  ChainMap<S> bottom_left;  // (g; -1) : C -> A (+) C
  ChainMap<S> bottom_right; // (f, f g - 1) : A (+) C -> C
};

template <class S>
RetractDiagram<S> retract_embedding(const ChainMap<S>& f, const ChainMap<S>& g) {
  if (!(g.source() == f.target()) || !(g.target() == f.source()))
    throw std::invalid_argument("retract_embedding: g must run opposite to f");
  ChainMap<S> gf = g * f;
  if (!(gf == ChainMap<S>::identity(f.source())))
    throw std::invalid_argument("retract_embedding: g f != 1");

  const auto& a = f.source();
  const auto& c = f.target();
  ChainComplex<S> ac = direct_sum(a, c).complex;
  const Ring<S>& ring = f.ring();

  DegreeMap<S> mid, bl, br;
  ChainMap<S> fg = f * g;
  for (int n = std::min(f.lo(), g.lo()); n <= std::max(f.hi(), g.hi()); ++n) {
    mid.set(n, vcat<S>(ring_identity(ring, a.rank(n)), Mat<S>(-f.component(n))));
    bl.set(n, vcat<S>(g.component(n), Mat<S>(-ring_identity(ring, c.rank(n)))));
    br.set(n, hcat<S>(f.component(n),
                      Mat<S>(fg.component(n) - ring_identity(ring, c.rank(n)))));
  }
  return {f, ChainMap<S>(a, ac, std::move(mid)), ChainMap<S>(c, ac, std::move(bl)),
          ChainMap<S>(ac, c, std::move(br))};
}

/// Verifies the six identities of the retract diagram exactly.
template <class S>
bool retract_diagram_commutes(const RetractDiagram<S>& d) {
  const auto& a = d.outer.source();
  const auto& c = d.outer.target();
  // rows compose to identities
  if (!(d.bottom_right * d.bottom_left == ChainMap<S>::identity(c))) return false;
  // left square: middle . 1_A = bottom_left . f
  if (!(d.middle == d.bottom_left * d.outer)) return false;
  // right square: f . 1_A = bottom_right . middle
  if (!(d.outer == d.bottom_right * d.middle)) return false;
  (void)a;
  return true;
}

/// The degreewise split extension of C by A classified by a twist
/// f : C -> shift(A, 1): middle B_n = A_n (+) C_n with differential
/// [[d_A, f], [0, d_C]].
template <class S>
DwSes<S> twisted_extension(const ChainMap<S>& f) {
  const auto& c = f.source();
  ChainComplex<S> a = shift(f.target(), -1);
  const Ring<S>& ring = f.ring();

  int lo = 0, hi = -1;
  if (a.empty()) {
    lo = c.min_degree();
    hi = c.max_degree();
  } else if (c.empty()) {
    lo = a.min_degree();
    hi = a.max_degree();
  } else {
    lo = std::min(a.min_degree(), c.min_degree());
    hi = std::max(a.max_degree(), c.max_degree());
  }

  std::vector<Index> ranks;
  std::vector<Mat<S>> diffs;
  for (int n = lo; n <= hi; ++n) ranks.push_back(a.rank(n) + c.rank(n));
  for (int n = lo + 1; n <= hi; ++n)
    diffs.push_back(block2x2<S>(a.diff(n), f.component(n), Mat<S>::Zero(c.rank(n - 1), a.rank(n)),
                                c.diff(n)));
  ChainComplex<S> b(ring, lo, std::move(ranks), std::move(diffs));

  DegreeMap<S> i, p, s, r;
  for (int n = lo; n <= hi; ++n) {
    i.set(n, vcat<S>(ring_identity(ring, a.rank(n)), Mat<S>::Zero(c.rank(n), a.rank(n))));
    p.set(n, hcat<S>(Mat<S>::Zero(c.rank(n), a.rank(n)), ring_identity(ring, c.rank(n))));
    s.set(n, vcat<S>(Mat<S>::Zero(a.rank(n), c.rank(n)), ring_identity(ring, c.rank(n))));
    r.set(n, hcat<S>(ring_identity(ring, a.rank(n)), Mat<S>::Zero(a.rank(n), c.rank(n))));
  }
  return DwSes<S>(ChainMap<S>(a, b, std::move(i)), ChainMap<S>(b, c, std::move(p)), std::move(s),
                  std::move(r));
}

}  // namespace chainmodel
