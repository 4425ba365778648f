#pragma once

#include <random>

#include "chainmodel/frobenius.hpp"
#include "chainmodel/keps.hpp"

namespace chainmodel {

using Rng = std::mt19937_64;

/// Independent deterministic stream for sample `index` of run `seed`; lets
/// suites evaluate samples in any order and replay a single counterexample.
inline Rng rng_for(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t h = seed * 0x9E3779B97F4A7C15ull ^ (index + 0xD1B54A32D192ED03ull);
  h ^= h >> 31;
  h *= 0xBF58476D1CE4E5B9ull;
  h ^= h >> 29;
  return Rng(h);
}

inline long rand_range(Rng& rng, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  return d(rng);
}

template <class S>
S rand_scalar(const Ring<S>& ring, Rng& rng, long bound);

template <>
inline Integer rand_scalar<Integer>(const Ring<Integer>& ring, Rng& rng, long bound) {
  return ring.from_long(rand_range(rng, -bound, bound));
}

template <>
inline Fp rand_scalar<Fp>(const Ring<Fp>& ring, Rng& rng, long) {
  return ring.from_long(rand_range(rng, 0, ring.p - 1));
}

template <class S>
S rand_nonzero(const Ring<S>& ring, Rng& rng, long bound) {
  for (;;) {
    S v = rand_scalar(ring, rng, bound);
    if (!is_zero(v)) return v;
  }
}

template <class S>
Mat<S> rand_matrix(const Ring<S>& ring, Rng& rng, Index rows, Index cols, long bound) {
  Mat<S> m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = rand_scalar(ring, rng, bound);
  return m;
}

inline Integer unit_inverse(const Ring<Integer>&, const Integer& u) { return u; }
inline Fp unit_inverse(const Ring<Fp>&, const Fp& u) { return u.inverse(); }

/// Random unimodular matrix as a product of elementary operations, together
/// with its exact inverse.
template <class S>
std::pair<Mat<S>, Mat<S>> rand_unimodular(const Ring<S>& ring, Rng& rng, Index n, int ops) {
  Mat<S> u = ring_identity(ring, n);
  Mat<S> uinv = ring_identity(ring, n);
  if (n < 1) return {u, uinv};
  for (int k = 0; k < ops; ++k) {
    switch (rand_range(rng, 0, 2)) {
      case 0: {  // row_i += c * row_j; the inverse picks up col_j -= c * col_i
        Index i = rand_range(rng, 0, n - 1), j = rand_range(rng, 0, n - 1);
        if (i == j) break;
        S c = rand_range(rng, 0, 1) ? ring.from_long(1) : ring.from_long(-1);
        u.row(i) += u.row(j) * c;
        uinv.col(j) -= uinv.col(i) * c;
        break;
      }
      case 1: {
        Index i = rand_range(rng, 0, n - 1), j = rand_range(rng, 0, n - 1);
        u.row(i).swap(u.row(j));
        uinv.col(i).swap(uinv.col(j));
        break;
      }
      default: {
        Index i = rand_range(rng, 0, n - 1);
        S c = ring.from_long(-1);
        u.row(i) *= c;
        uinv.col(i) *= unit_inverse(ring, c);
        break;
      }
    }
  }
  return {u, uinv};
}

struct SampleOptions {
  int max_span = 4;      // number of degrees covered
  Index max_rank = 4;    // per-degree rank cap
  long entry_bound = 3;  // magnitude of raw entries over Z
  int pieces = 3;        // elementary summands per complex
  int twists = 2;        // elementary basis changes per degree
};

/// Random bounded complex: a direct sum of spheres and disks in a random
/// degree window, conjugated degreewise by small unimodular matrices (which
/// preserves the isomorphism type but hides the block structure).
///
/// Degree layout before conjugation, at window offset j: top cells of disks
/// with top at j, then bottom cells of disks with top at j+1, then spheres.
template <class S>
ChainComplex<S> sample_complex(const Ring<S>& ring, Rng& rng, const SampleOptions& opts = {},
                               bool contractible = false) {
  const int lo = static_cast<int>(rand_range(rng, -1, 1));
  const int span = static_cast<int>(rand_range(rng, 1, opts.max_span));
  std::vector<std::vector<S>> disks(static_cast<size_t>(span));  // indexed by top offset
  std::vector<Index> spheres(static_cast<size_t>(span), 0);

  auto rank_at = [&](int j) -> Index {
    Index r = spheres[static_cast<size_t>(j)] + static_cast<Index>(disks[static_cast<size_t>(j)].size());
    if (j + 1 < span) r += static_cast<Index>(disks[static_cast<size_t>(j + 1)].size());
    return r;
  };

  int pieces = static_cast<int>(rand_range(rng, contractible ? 0 : 1, opts.pieces));
  for (int p = 0; p < pieces; ++p) {
    bool is_disk = span > 1 && (contractible || rand_range(rng, 0, 1));
    if (is_disk) {
      int top = static_cast<int>(rand_range(rng, 1, span - 1));
      if (rank_at(top) >= opts.max_rank || rank_at(top - 1) >= opts.max_rank) continue;
      S d = contractible ? (rand_range(rng, 0, 1) ? ring.from_long(1) : ring.from_long(-1))
                         : rand_nonzero(ring, rng, opts.entry_bound);
      disks[static_cast<size_t>(top)].push_back(d);
    } else if (!contractible) {
      int at = static_cast<int>(rand_range(rng, 0, span - 1));
      if (rank_at(at) >= opts.max_rank) continue;
      ++spheres[static_cast<size_t>(at)];
    }
  }

  std::vector<Index> ranks;
  for (int j = 0; j < span; ++j) ranks.push_back(rank_at(j));
  std::vector<Mat<S>> diffs;
  for (int j = 1; j < span; ++j) {
    Mat<S> d = ring_zeros(ring, ranks[static_cast<size_t>(j - 1)], ranks[static_cast<size_t>(j)]);
    const auto& ds = disks[static_cast<size_t>(j)];
    const Index row0 = static_cast<Index>(disks[static_cast<size_t>(j - 1)].size());
    for (size_t k = 0; k < ds.size(); ++k)
      d(row0 + static_cast<Index>(k), static_cast<Index>(k)) = ds[k];
    diffs.push_back(std::move(d));
  }
  ChainComplex<S> x(ring, lo, ranks, std::move(diffs));

  if (opts.twists <= 0 || x.empty()) return x;
  // conjugate degreewise: d'_n = u_{n-1} d_n u_n^{-1}
  std::map<int, std::pair<Mat<S>, Mat<S>>> u;
  for (int n = x.min_degree(); n <= x.max_degree(); ++n)
    u[n] = rand_unimodular(ring, rng, x.rank(n), opts.twists);
  std::vector<Index> ranks2;
  std::vector<Mat<S>> diffs2;
  for (int n = x.min_degree(); n <= x.max_degree(); ++n) ranks2.push_back(x.rank(n));
  for (int n = x.min_degree() + 1; n <= x.max_degree(); ++n)
    diffs2.push_back(Mat<S>(u.at(n - 1).first * x.diff(n) * u.at(n).second));
  return ChainComplex<S>(ring, x.min_degree(), std::move(ranks2), std::move(diffs2));
}

template <class S>
ChainComplex<S> sample_contractible(const Ring<S>& ring, Rng& rng, const SampleOptions& opts = {}) {
  return sample_complex(ring, rng, opts, true);
}

/// Random chain map X -> Y: an integer combination of a basis of the cycle
/// lattice of the Hom complex.
template <class S>
ChainMap<S> sample_chain_map(const ChainComplex<S>& x, const ChainComplex<S>& y, Rng& rng,
                             long coeff_bound = 3) {
  HomComplex<S> hom(x, y);
  Mat<S> cycles = kernel_basis<S>(hom.boundary(0));
  Vec<S> c(cycles.cols());
  for (Index i = 0; i < c.size(); ++i) c(i) = rand_scalar(x.ring(), rng, coeff_bound);
  Vec<S> flat = cycles * c;
  return hom.unflatten_map(flat);
}

/// Random degreewise split short exact sequence, built as the twisted
/// extension of a random classifying map.
template <class S>
DwSes<S> sample_ses(const Ring<S>& ring, Rng& rng, const SampleOptions& opts = {}) {
  ChainComplex<S> a = sample_complex(ring, rng, opts);
  ChainComplex<S> c = sample_complex(ring, rng, opts);
  ChainMap<S> f = sample_chain_map(c, shift(a, 1), rng, opts.entry_bound);
  return twisted_extension(f);
}

/// Random ses with prescribed contractibility of the outer terms.
template <class S>
DwSes<S> sample_ses_with(const Ring<S>& ring, Rng& rng, bool a_contractible, bool c_contractible,
                         const SampleOptions& opts = {}) {
  ChainComplex<S> a = sample_complex(ring, rng, opts, a_contractible);
  ChainComplex<S> c = sample_complex(ring, rng, opts, c_contractible);
  ChainMap<S> f = sample_chain_map(c, shift(a, 1), rng, opts.entry_bound);
  return twisted_extension(f);
}

/// Random chain map between independently sampled complexes, with a mix of
/// structured cases (identities, zero maps, inclusions, projections,
/// homotopy equivalences) so classification sees every flag combination.
template <class S>
ChainMap<S> sample_morphism(const Ring<S>& ring, Rng& rng, const SampleOptions& opts = {}) {
  switch (rand_range(rng, 0, 9)) {
    case 0: {
      ChainComplex<S> x = sample_complex(ring, rng, opts);
      return ChainMap<S>::identity(x);
    }
    case 1: {
      ChainComplex<S> x = sample_complex(ring, rng, opts);
      ChainComplex<S> y = sample_complex(ring, rng, opts);
      return ChainMap<S>::zero(x, y);
    }
    case 2: {  // admissible mono from a random extension
      DwSes<S> e = sample_ses(ring, rng, opts);
      return e.i();
    }
    case 3: {  // admissible epi
      DwSes<S> e = sample_ses(ring, rng, opts);
      return e.p();
    }
    case 4: {  // homotopy equivalence: projection off a contractible summand
      ChainComplex<S> x = sample_complex(ring, rng, opts);
      ChainComplex<S> d = sample_contractible(ring, rng, opts);
      return direct_sum(x, d).project_left;
    }
    case 5: {  // scaled identity (not admissible over Z when the scalar is not a unit)
      ChainComplex<S> x = sample_complex(ring, rng, opts);
      S c = rand_scalar(ring, rng, opts.entry_bound);
      DegreeMap<S> comps;
      for (int n = x.min_degree(); n <= x.max_degree(); ++n) {
        Mat<S> m = ring_identity(ring, x.rank(n));
        m *= c;
        comps.set(n, std::move(m));
      }
      return ChainMap<S>(x, x, std::move(comps));
    }
    default: {
      ChainComplex<S> x = sample_complex(ring, rng, opts);
      ChainComplex<S> y = sample_complex(ring, rng, opts);
      return sample_chain_map(x, y, rng, opts.entry_bound);
    }
  }
}

/// Chain-level split pair (f, g) with g f = 1 embedding the given complex
/// into a conjugated direct sum A (+) W.
template <class S>
std::pair<ChainMap<S>, ChainMap<S>> sample_split_pair_for(const ChainComplex<S>& a, Rng& rng,
                                                          const SampleOptions& opts = {}) {
  const Ring<S>& ring = a.ring();
  ChainComplex<S> w = sample_complex(ring, rng, opts);
  DirectSum<S> s = direct_sum(a, w);
  ChainMap<S> up = sample_chain_map(w, a, rng, 1);
  ChainMap<S> down = sample_chain_map(a, w, rng, 1);
  // phi = [[1, u],[0, 1]] [[1, 0],[v, 1]]  with chain maps u, v off-diagonal
  DegreeMap<S> phic, phinvc;
  for (int n = s.complex.min_degree(); n <= s.complex.max_degree(); ++n) {
    Mat<S> iu = block2x2<S>(ring_identity(ring, a.rank(n)), up.component(n),
                            Mat<S>::Zero(w.rank(n), a.rank(n)), ring_identity(ring, w.rank(n)));
    Mat<S> lv = block2x2<S>(ring_identity(ring, a.rank(n)), Mat<S>::Zero(a.rank(n), w.rank(n)),
                            down.component(n), ring_identity(ring, w.rank(n)));
    Mat<S> iu_inv = block2x2<S>(ring_identity(ring, a.rank(n)), Mat<S>(-up.component(n)),
                                Mat<S>::Zero(w.rank(n), a.rank(n)), ring_identity(ring, w.rank(n)));
    Mat<S> lv_inv = block2x2<S>(ring_identity(ring, a.rank(n)), Mat<S>::Zero(a.rank(n), w.rank(n)),
                                Mat<S>(-down.component(n)), ring_identity(ring, w.rank(n)));
    phic.set(n, Mat<S>(iu * lv));
    phinvc.set(n, Mat<S>(lv_inv * iu_inv));
  }
  ChainMap<S> phi(s.complex, s.complex, std::move(phic));
  ChainMap<S> phi_inv(s.complex, s.complex, std::move(phinvc));
  ChainMap<S> f = phi * s.inject_left;
  ChainMap<S> g = s.project_left * phi_inv;
  return {std::move(f), std::move(g)};
}

template <class S>
std::pair<ChainMap<S>, ChainMap<S>> sample_split_pair(const Ring<S>& ring, Rng& rng,
                                                      const SampleOptions& opts = {}) {
  return sample_split_pair_for(sample_complex(ring, rng, opts), rng, opts);
}

// ---- k[eps] samplers ----

inline KEpsModule sample_keps_module(const Ring<Fp>& field, Rng& rng, Index max_dim = 4) {
  Index b = rand_range(rng, 0, max_dim / 2);
  Index a = rand_range(rng, 0, max_dim - 2 * b);
  KEpsModule nf = normal_form_module(field, a, b);
  auto [u, uinv] = rand_unimodular(field, rng, nf.dim(), 4);
  return KEpsModule(field, Mat<Fp>(u * nf.eps() * uinv));
}

inline KEpsModule sample_free_keps_module(const Ring<Fp>& field, Rng& rng, Index max_dim = 4) {
  Index b = rand_range(rng, 0, max_dim / 2);
  KEpsModule nf = free_module(field, b);
  auto [u, uinv] = rand_unimodular(field, rng, nf.dim(), 4);
  return KEpsModule(field, Mat<Fp>(u * nf.eps() * uinv));
}

inline KEpsHom sample_keps_hom(const KEpsModule& m, const KEpsModule& n, Rng& rng) {
  Mat<Fp> basis = hom_basis(m, n);
  Vec<Fp> c(basis.cols());
  for (Index i = 0; i < c.size(); ++i) c(i) = rand_scalar(m.field(), rng, 0);
  return KEpsHom(m, n, unvectorize<Fp>(Vec<Fp>(basis * c), n.dim(), m.dim()));
}

/// Random module automorphism, found by rejection over the hom space.
inline KEpsHom sample_keps_automorphism(const KEpsModule& m, Rng& rng, int tries = 64) {
  for (int t = 0; t < tries; ++t) {
    KEpsHom h = sample_keps_hom(m, m, rng);
    if (rank(h.matrix()) == m.dim()) return h;
  }
  return KEpsHom::identity(m);
}

/// Random short exact sequence of k[eps]-modules: the block inclusion of a
/// summand, hidden by an automorphism of the middle.
inline KEpsSes sample_keps_ses(const Ring<Fp>& field, Rng& rng, Index max_dim = 4) {
  KEpsModule a = sample_keps_module(field, rng, max_dim / 2 + 1);
  KEpsModule c = sample_keps_module(field, rng, max_dim / 2 + 1);
  Index d = a.dim() + c.dim();
  Mat<Fp> eps = block2x2<Fp>(a.eps(), ring_zeros(field, a.dim(), c.dim()),
                             ring_zeros(field, c.dim(), a.dim()), c.eps());
  KEpsModule b(field, std::move(eps));
  Mat<Fp> im = ring_zeros(field, d, a.dim());
  for (Index i = 0; i < a.dim(); ++i) im(i, i) = field.from_long(1);
  Mat<Fp> pm = ring_zeros(field, c.dim(), d);
  for (Index i = 0; i < c.dim(); ++i) pm(i, a.dim() + i) = field.from_long(1);
  KEpsHom phi = sample_keps_automorphism(b, rng);
  auto phinv = ring_inverse<Fp>(phi.matrix());
  if (!phinv) throw std::logic_error("sample_keps_ses: automorphism not invertible");
  KEpsHom i(a, b, Mat<Fp>(phi.matrix() * im));
  KEpsHom p(b, c, Mat<Fp>(pm * (*phinv)));
  return KEpsSes(std::move(i), std::move(p));
}

}  // namespace chainmodel
