#pragma once

#include <optional>

#include "chainmodel/dw_exact.hpp"

namespace chainmodel {

/// Classification of a chain map in the Frobenius model structure on
/// degreewise split complexes: cofibrations are the degreewise split monos,
/// trivial ones additionally have contractible cokernel; dually for
/// fibrations; weak equivalences are the homotopy equivalences.
struct MapClass {
  bool is_cofibration = false;
  bool is_trivial_cofibration = false;
  bool is_fibration = false;
  bool is_trivial_fibration = false;
  bool is_weak_equivalence = false;

  friend bool operator==(const MapClass&, const MapClass&) = default;
};

/// Contracting homotopy h with d h + h d = 1, when one exists.
template <class S>
std::optional<Homotopy<S>> is_contractible(const ChainComplex<S>& x) {
  HomComplex<S> hom(x, x);
  ChainMap<S> one = ChainMap<S>::identity(x);
  Mat<S> rhs(hom.rank(0), 1);
  rhs.col(0) = hom.flatten_map(one);
  auto h = solve_linear<S>(hom.boundary(1), rhs);
  if (!h) return std::nullopt;
  Vec<S> v = h->col(0);
  return Homotopy<S>(ChainMap<S>::zero(x, x), one, hom.unflatten(1, v));
}

/// Chain homotopy h with d h + h d = g - f, when one exists. This is the
/// direct linear-algebra route; homotopic_by_factorization is the structural
/// one, and the two must agree on existence.
template <class S>
std::optional<Homotopy<S>> find_homotopy(const ChainMap<S>& f, const ChainMap<S>& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    throw std::invalid_argument("find_homotopy: maps are not parallel");
  HomComplex<S> hom(f.source(), f.target());
  Mat<S> rhs(hom.rank(0), 1);
  rhs.col(0) = hom.flatten_map(g - f);
  auto h = solve_linear<S>(hom.boundary(1), rhs);
  if (!h) return std::nullopt;
  Vec<S> v = h->col(0);
  return Homotopy<S>(f, g, hom.unflatten(1, v));
}

/// The contractible cover P(X) ->> X with P(X)_n = X_n (+) X_{n+1},
/// differential [[d, 0], [1, -d]] and kernel shift(X, -1). The sequence
/// shift(X,-1) >-> P(X) ->> X witnesses enough projectives.
template <class S>
DwSes<S> enough_projectives(const ChainComplex<S>& x) {
  const Ring<S>& ring = x.ring();
  int lo = x.min_degree() - 1, hi = x.max_degree();
  if (x.empty()) { lo = 0; hi = -1; }

  std::vector<Index> ranks;
  std::vector<Mat<S>> diffs;
  for (int n = lo; n <= hi; ++n) ranks.push_back(x.rank(n) + x.rank(n + 1));
  for (int n = lo + 1; n <= hi; ++n) {
    Mat<S> tl = x.diff(n);
    Mat<S> tr = Mat<S>::Zero(x.rank(n - 1), x.rank(n + 1));
    Mat<S> bl = ring_identity(ring, x.rank(n));
    Mat<S> br = Mat<S>(-x.diff(n + 1));
    diffs.push_back(block2x2<S>(tl, tr, bl, br));
  }
  ChainComplex<S> p(ring, lo, std::move(ranks), std::move(diffs));

  ChainComplex<S> k = shift(x, -1);
  DegreeMap<S> inc, proj, sec, ret;
  for (int n = lo; n <= hi; ++n) {
    inc.set(n, vcat<S>(Mat<S>::Zero(x.rank(n), x.rank(n + 1)), ring_identity(ring, x.rank(n + 1))));
    proj.set(n, hcat<S>(ring_identity(ring, x.rank(n)), Mat<S>::Zero(x.rank(n), x.rank(n + 1))));
    sec.set(n, vcat<S>(ring_identity(ring, x.rank(n)), Mat<S>::Zero(x.rank(n + 1), x.rank(n))));
    ret.set(n, hcat<S>(Mat<S>::Zero(x.rank(n + 1), x.rank(n)), ring_identity(ring, x.rank(n + 1))));
  }
  return DwSes<S>(ChainMap<S>(k, p, std::move(inc)), ChainMap<S>(p, x, std::move(proj)),
                  std::move(sec), std::move(ret));
}

/// X >-> C(1_X) ->> shift(X, 1) with contractible middle; witnesses enough
/// injectives.
template <class S>
DwSes<S> enough_injectives(const ChainComplex<S>& x) {
  Cone<S> c = cone(ChainMap<S>::identity(x));
  const Ring<S>& ring = x.ring();
  DegreeMap<S> sec, ret;
  for (int n = c.complex.min_degree(); n <= c.complex.max_degree(); ++n) {
    // C_n = X_{n-1} (+) X_n; inclusion is (0; 1), projection is (1, 0)
    sec.set(n, vcat<S>(ring_identity(ring, x.rank(n - 1)), Mat<S>::Zero(x.rank(n), x.rank(n - 1))));
    ret.set(n, hcat<S>(Mat<S>::Zero(x.rank(n), x.rank(n - 1)), ring_identity(ring, x.rank(n))));
  }
  return DwSes<S>(c.inclusion, c.projection, std::move(sec), std::move(ret));
}

/// Factoring-through-a-contractible witness for a homotopy: g - f = q . beta
/// with beta landing in the contractible cover of the target.
template <class S>
struct FactorizationHomotopy {
  ChainMap<S> through;  // beta : X -> P(Y)
  ChainMap<S> cover;    // q : P(Y) ->> Y
  ChainComplex<S> middle;
};

/// Decides homotopy by looking for a factorization of g - f through the
/// contractible cover P(Y). The unknown runs over the chain maps X -> P(Y),
/// i.e. the cycle lattice of the Hom complex.
template <class S>
std::optional<FactorizationHomotopy<S>> homotopic_by_factorization(const ChainMap<S>& f,
                                                                   const ChainMap<S>& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    throw std::invalid_argument("homotopic_by_factorization: maps are not parallel");
  const auto& x = f.source();
  const auto& y = f.target();
  DwSes<S> cover = enough_projectives(y);
  const ChainMap<S>& q = cover.p();
  const ChainComplex<S>& p = cover.b();

  HomComplex<S> maps_to_cover(x, p);
  Mat<S> cycles = kernel_basis<S>(maps_to_cover.boundary(0));
  HomComplex<S> maps_to_y(x, y);

  // columns: q composed with each basic chain map X -> P(Y), flattened
  Mat<S> composed(maps_to_y.rank(0), cycles.cols());
  for (Index c = 0; c < cycles.cols(); ++c) {
    Vec<S> col = cycles.col(c);
    ChainMap<S> basic = maps_to_cover.unflatten_map(col);
    composed.col(c) = maps_to_y.flatten_map(q * basic);
  }
  Mat<S> rhs(maps_to_y.rank(0), 1);
  rhs.col(0) = maps_to_y.flatten_map(g - f);
  auto coeff = solve_linear<S>(composed, rhs);
  if (!coeff) return std::nullopt;
  Vec<S> beta_flat = cycles * coeff->col(0);
  ChainMap<S> beta = maps_to_cover.unflatten_map(beta_flat);
  return FactorizationHomotopy<S>{std::move(beta), q, p};
}

/// Good path object Y -> Y (+) P(Y) -> Y (+) Y: i = (1; 0) is a trivial
/// cofibration, p = [[1, 0], [1, q]] is a fibration, and p i is the diagonal.
template <class S>
struct PathObject {
  ChainComplex<S> middle;  // Y (+) P(Y)
  ChainMap<S> i;           // Y -> middle
  ChainMap<S> p;           // middle -> Y (+) Y
  DwSes<S> cover;          // the projective cover of Y used as Q
};

template <class S>
PathObject<S> path_object(const ChainComplex<S>& y) {
  const Ring<S>& ring = y.ring();
  DwSes<S> cover = enough_projectives(y);
  const ChainComplex<S>& q = cover.b();
  ChainComplex<S> middle = direct_sum(y, q).complex;
  ChainComplex<S> yy = direct_sum(y, y).complex;

  DegreeMap<S> ic, pc;
  int lo = middle.min_degree(), hi = middle.max_degree();
  for (int n = lo; n <= hi; ++n) {
    ic.set(n, vcat<S>(ring_identity(ring, y.rank(n)), Mat<S>::Zero(q.rank(n), y.rank(n))));
    Mat<S> top = hcat<S>(ring_identity(ring, y.rank(n)), Mat<S>::Zero(y.rank(n), q.rank(n)));
    Mat<S> bot = hcat<S>(ring_identity(ring, y.rank(n)), cover.p().component(n));
    pc.set(n, vcat<S>(top, bot));
  }
  ChainMap<S> i(y, middle, std::move(ic));
  ChainMap<S> p(middle, yy, std::move(pc));
  return {std::move(middle), std::move(i), std::move(p), std::move(cover)};
}

/// Homotopy-inverse search: g, h, k with g a chain map, g f - 1 = d h + h d
/// and f g - 1 = d k + k d, set up as one joint linear system.
template <class S>
bool is_homotopy_equivalence(const ChainMap<S>& f) {
  const auto& x = f.source();
  const auto& y = f.target();
  const Ring<S>& ring = f.ring();
  LinearSystemBuilder<S> sys(ring);

  const int glo = std::min(x.min_degree(), y.min_degree());
  const int ghi = std::max(x.max_degree(), y.max_degree());

  std::map<int, Index> g_var, h_var, k_var;
  for (int n = glo; n <= ghi; ++n) {
    if (x.rank(n) && y.rank(n)) g_var[n] = sys.add_variable(x.rank(n), y.rank(n));
    if (x.rank(n) && x.rank(n + 1)) h_var[n] = sys.add_variable(x.rank(n + 1), x.rank(n));
    if (y.rank(n) && y.rank(n + 1)) k_var[n] = sys.add_variable(y.rank(n + 1), y.rank(n));
  }
  auto has = [](const std::map<int, Index>& m, int n) { return m.find(n) != m.end(); };

  // chain condition: d_X g_n - g_{n-1} d_Y = 0
  for (int n = glo; n <= ghi; ++n) {
    if (!x.rank(n - 1) || !y.rank(n)) continue;
    Index eq = sys.add_equation(x.rank(n - 1), y.rank(n));
    if (has(g_var, n)) sys.add_term(eq, g_var[n], x.diff(n), ring_identity(ring, y.rank(n)));
    if (has(g_var, n - 1))
      sys.add_term(eq, g_var[n - 1], Mat<S>(-ring_identity(ring, x.rank(n - 1))), y.diff(n));
  }
  // g f - 1_X = d h + h d on X
  for (int n = glo; n <= ghi; ++n) {
    if (!x.rank(n)) continue;
    Index eq = sys.add_equation(x.rank(n), x.rank(n));
    if (has(g_var, n)) sys.add_term(eq, g_var[n], ring_identity(ring, x.rank(n)), f.component(n));
    if (has(h_var, n)) sys.add_term(eq, h_var[n], Mat<S>(-x.diff(n + 1)), ring_identity(ring, x.rank(n)));
    if (has(h_var, n - 1))
      sys.add_term(eq, h_var[n - 1], Mat<S>(-ring_identity(ring, x.rank(n))), x.diff(n));
    sys.set_rhs(eq, ring_identity(ring, x.rank(n)));
  }
  // f g - 1_Y = d k + k d on Y
  for (int n = glo; n <= ghi; ++n) {
    if (!y.rank(n)) continue;
    Index eq = sys.add_equation(y.rank(n), y.rank(n));
    if (has(g_var, n)) sys.add_term(eq, g_var[n], f.component(n), ring_identity(ring, y.rank(n)));
    if (has(k_var, n)) sys.add_term(eq, k_var[n], Mat<S>(-y.diff(n + 1)), ring_identity(ring, y.rank(n)));
    if (has(k_var, n - 1))
      sys.add_term(eq, k_var[n - 1], Mat<S>(-ring_identity(ring, y.rank(n))), y.diff(n));
    sys.set_rhs(eq, ring_identity(ring, y.rank(n)));
  }
  return sys.solve().has_value();
}

template <class S>
bool is_cofibration(const ChainMap<S>& f) {
  return admissible_mono(f).has_value();
}

template <class S>
bool is_fibration(const ChainMap<S>& f) {
  return admissible_epi(f).has_value();
}

template <class S>
bool is_trivial_cofibration(const ChainMap<S>& f) {
  auto w = admissible_mono(f);
  return w && is_contractible(w->complement).has_value();
}

template <class S>
bool is_trivial_fibration(const ChainMap<S>& f) {
  auto w = admissible_epi(f);
  return w && is_contractible(w->complement).has_value();
}

template <class S>
MapClass classify(const ChainMap<S>& f) {
  MapClass out;
  if (auto w = admissible_mono(f)) {
    out.is_cofibration = true;
    out.is_trivial_cofibration = is_contractible(w->complement).has_value();
  }
  if (auto w = admissible_epi(f)) {
    out.is_fibration = true;
    out.is_trivial_fibration = is_contractible(w->complement).has_value();
  }
  out.is_weak_equivalence = is_homotopy_equivalence(f);
  return out;
}

/// Factorization f = p . i of a chain map.
template <class S>
struct Factorization {
  ChainMap<S> i;
  ChainMap<S> p;
  ChainComplex<S> middle;
};

/// f = (f, q) . (1; 0) through X (+) P(Y): i is a trivial cofibration
/// (cokernel P(Y) contractible), p is a fibration.
template <class S>
Factorization<S> factor_trivcof_fib(const ChainMap<S>& f) {
  const auto& x = f.source();
  const auto& y = f.target();
  const Ring<S>& ring = f.ring();
  DwSes<S> cover = enough_projectives(y);
  const ChainComplex<S>& py = cover.b();
  ChainComplex<S> middle = direct_sum(x, py).complex;

  DegreeMap<S> ic, pc;
  for (int n = middle.min_degree(); n <= middle.max_degree(); ++n) {
    ic.set(n, vcat<S>(ring_identity(ring, x.rank(n)), Mat<S>::Zero(py.rank(n), x.rank(n))));
    pc.set(n, hcat<S>(f.component(n), cover.p().component(n)));
  }
  return {ChainMap<S>(x, middle, std::move(ic)), ChainMap<S>(middle, y, std::move(pc)),
          std::move(middle)};
}

/// f = (1, 0) . (f; iota) through Y (+) C(1_X): i is a cofibration, p is a
/// trivial fibration (kernel C(1_X) contractible).
template <class S>
Factorization<S> factor_cof_trivfib(const ChainMap<S>& f) {
  const auto& x = f.source();
  const auto& y = f.target();
  const Ring<S>& ring = f.ring();
  DwSes<S> env = enough_injectives(x);
  const ChainComplex<S>& cx = env.b();
  ChainComplex<S> middle = direct_sum(y, cx).complex;

  DegreeMap<S> ic, pc;
  for (int n = middle.min_degree(); n <= middle.max_degree(); ++n) {
    ic.set(n, vcat<S>(f.component(n), env.i().component(n)));
    pc.set(n, hcat<S>(ring_identity(ring, y.rank(n)), Mat<S>::Zero(y.rank(n), cx.rank(n))));
  }
  return {ChainMap<S>(x, middle, std::move(ic)), ChainMap<S>(middle, y, std::move(pc)),
          std::move(middle)};
}

/// pi(X, Y): chain maps modulo chain homotopy, as the degree-0 homology of
/// the Hom complex, with representative chain maps and canonical reduction.
template <class S>
class HomotopyClassGroup {
 public:
  HomotopyClassGroup(const ChainComplex<S>& x, const ChainComplex<S>& y)
      : hom_(x, y),
        sub_(x.ring(), kernel_basis<S>(hom_.boundary(0)), relation_matrix(hom_)) {}

  const PresentedGroup& group() const { return sub_.group(); }

  Index generator_count() const { return sub_.generator_count(); }

  ChainMap<S> generator(Index i) const { return hom_.unflatten_map(sub_.generator(i)); }

  /// Canonical coordinates of a chain map in the presented group; equal
  /// coordinates exactly for chain homotopic maps.
  Vec<S> reduce(const ChainMap<S>& f) const {
    auto c = sub_.coordinates(hom_.flatten_map(f));
    if (!c) throw std::invalid_argument("HomotopyClassGroup::reduce: not a chain map");
    return *c;
  }

 private:
  static Mat<S> relation_matrix(const HomComplex<S>& hom) {
    Mat<S> cycles = kernel_basis<S>(hom.boundary(0));
    auto t = solve_linear<S>(cycles, hom.boundary(1));
    if (!t) throw std::logic_error("HomotopyClassGroup: boundaries are not cycles");
    return *t;
  }

  HomComplex<S> hom_;
  Subquotient<S> sub_;
};

template <class S>
HomotopyClassGroup<S> pi_group(const ChainComplex<S>& x, const ChainComplex<S>& y) {
  if (!(x.ring() == y.ring())) throw std::invalid_argument("pi_group: ring mismatch");
  return HomotopyClassGroup<S>(x, y);
}

/// Ext^n in the degreewise split structure, computed as pi(X, shift(Y, n)).
template <class S>
PresentedGroup ext_dw(int n, const ChainComplex<S>& x, const ChainComplex<S>& y) {
  if (n < 0) throw std::invalid_argument("ext_dw: negative degree");
  return pi_group(x, shift(y, n)).group();
}

/// Classifying map of a degreewise split extension: the obstruction
/// d s - s d pushed into A, reduced in pi(C, shift(A, 1)).
template <class S>
struct SesClass {
  ChainMap<S> classifying;  // C -> shift(A, 1)
  Vec<S> coordinate;        // canonical coordinates in pi(C, shift(A, 1))
  PresentedGroup group;
};

template <class S>
SesClass<S> ses_to_class(const DwSes<S>& e) {
  const auto& a = e.a();
  const auto& b = e.b();
  const auto& c = e.c();
  ChainComplex<S> sa = shift(a, 1);
  DegreeMap<S> comps;
  for (int n = e.lo(); n <= e.hi(); ++n) {
    Mat<S> theta = b.diff(n) * e.section(n) - e.section(n - 1) * c.diff(n);
    comps.set(n, Mat<S>(e.retraction(n - 1) * theta));
  }
  ChainMap<S> phi(c, sa, std::move(comps));
  HomotopyClassGroup<S> pi(c, sa);
  Vec<S> coord = pi.reduce(phi);
  return {std::move(phi), std::move(coord), pi.group()};
}

/// Inverse construction: the twisted extension classified by f : C -> shift(A,1).
template <class S>
DwSes<S> class_to_ses(const ChainMap<S>& f) {
  return twisted_extension(f);
}

/// Whether the canonical admissible mono X >-> C(1_X) splits by a chain
/// retraction; must agree with contractibility.
template <class S>
bool injectivity_probe(const ChainComplex<S>& x) {
  DwSes<S> env = enough_injectives(x);
  const ChainComplex<S>& cx = env.b();
  const Ring<S>& ring = x.ring();
  LinearSystemBuilder<S> sys(ring);
  std::map<int, Index> rho;
  for (int n = cx.min_degree(); n <= cx.max_degree(); ++n)
    if (x.rank(n) && cx.rank(n)) rho[n] = sys.add_variable(x.rank(n), cx.rank(n));
  auto has = [&](int n) { return rho.find(n) != rho.end(); };
  for (int n = cx.min_degree(); n <= cx.max_degree() + 1; ++n) {
    if (!x.rank(n - 1) || !cx.rank(n)) continue;
    Index eq = sys.add_equation(x.rank(n - 1), cx.rank(n));
    if (has(n)) sys.add_term(eq, rho[n], x.diff(n), ring_identity(ring, cx.rank(n)));
    if (has(n - 1)) sys.add_term(eq, rho[n - 1], Mat<S>(-ring_identity(ring, x.rank(n - 1))), cx.diff(n));
  }
  for (int n = x.min_degree(); n <= x.max_degree(); ++n) {
    if (!x.rank(n)) continue;
    Index eq = sys.add_equation(x.rank(n), x.rank(n));
    if (has(n)) sys.add_term(eq, rho[n], ring_identity(ring, x.rank(n)), env.i().component(n));
    sys.set_rhs(eq, ring_identity(ring, x.rank(n)));
  }
  return sys.solve().has_value();
}

/// Dual probe: whether the cover P(X) ->> X admits a chain section.
template <class S>
bool projectivity_probe(const ChainComplex<S>& x) {
  DwSes<S> cover = enough_projectives(x);
  const ChainComplex<S>& px = cover.b();
  const Ring<S>& ring = x.ring();
  LinearSystemBuilder<S> sys(ring);
  std::map<int, Index> sig;
  for (int n = px.min_degree(); n <= px.max_degree(); ++n)
    if (x.rank(n) && px.rank(n)) sig[n] = sys.add_variable(px.rank(n), x.rank(n));
  auto has = [&](int n) { return sig.find(n) != sig.end(); };
  for (int n = px.min_degree(); n <= px.max_degree() + 1; ++n) {
    if (!px.rank(n - 1) || !x.rank(n)) continue;
    Index eq = sys.add_equation(px.rank(n - 1), x.rank(n));
    if (has(n)) sys.add_term(eq, sig[n], px.diff(n), ring_identity(ring, x.rank(n)));
    if (has(n - 1)) sys.add_term(eq, sig[n - 1], Mat<S>(-ring_identity(ring, px.rank(n - 1))), x.diff(n));
  }
  for (int n = x.min_degree(); n <= x.max_degree(); ++n) {
    if (!x.rank(n)) continue;
    Index eq = sys.add_equation(x.rank(n), x.rank(n));
    if (has(n)) sys.add_term(eq, sig[n], cover.p().component(n), ring_identity(ring, x.rank(n)));
    sys.set_rhs(eq, ring_identity(ring, x.rank(n)));
  }
  return sys.solve().has_value();
}

}  // namespace chainmodel
