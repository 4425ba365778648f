#include <doctest.h>

#include <set>

#include "chainmodel/checker.hpp"
#include "support/fixtures.hpp"

using namespace chainmodel;
using namespace fixtures;

namespace {

KEpsModule k_point(const Ring<Fp>& field) { return trivial_module(field, 1); }

/// Exhaustive oracle over F_2: T factors through a free module iff
/// T = eps_n v + v eps_m for some k-linear v (enumerated bit by bit).
std::set<std::vector<int>> factoring_maps_f2(const KEpsModule& m, const KEpsModule& n) {
  const Index rows = n.dim(), cols = m.dim();
  std::set<std::vector<int>> out;
  const long total = 1L << (rows * cols);
  for (long code = 0; code < total; ++code) {
    Mat<Fp> v(rows, cols);
    for (Index k = 0; k < rows * cols; ++k)
      v(k % rows, k / rows) = Fp((code >> k) & 1, 2);
    Mat<Fp> t = n.eps() * v + v * m.eps();
    std::vector<int> key;
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) key.push_back(static_cast<int>(t(i, j).value()));
    out.insert(std::move(key));
  }
  return out;
}

std::vector<int> hom_key(const KEpsHom& h) {
  std::vector<int> key;
  for (Index j = 0; j < h.matrix().cols(); ++j)
    for (Index i = 0; i < h.matrix().rows(); ++i)
      key.push_back(static_cast<int>(h.matrix()(i, j).value()));
  return key;
}

}  // namespace

TEST_CASE("module constructor enforces eps^2 = 0") {
  Mat<Fp> bad = ring_matrix(F2, 1, 1, {1});
  CHECK_THROWS_AS(KEpsModule(F2, bad), std::invalid_argument);
  CHECK_NOTHROW(normal_form_module(F2, 2, 1));
}

TEST_CASE("decompose reads off the normal form") {
  KEpsDecomposition d0 = decompose(trivial_module(F2, 3));
  CHECK(d0.trivial_rank == 3);
  CHECK(d0.free_rank == 0);

  Mat<Fp> reg = ring_matrix(F2, 2, 2, {0, 1, 0, 0});
  KEpsDecomposition d1 = decompose(KEpsModule(F2, reg));
  CHECK(d1.trivial_rank == 0);
  CHECK(d1.free_rank == 1);

  for (std::uint64_t i = 0; i < 25; ++i) {
    Rng rng = rng_for(301, i);
    KEpsModule m = sample_keps_module(F2, rng, 4);
    KEpsDecomposition d = decompose(m);
    CHECK(d.trivial_rank == m.dim() - 2 * rank(m.eps()));
    CHECK(d.free_rank == rank(m.eps()));
    // the iso pair composes to identities exactly
    CHECK(d.to_normal_form * d.from_normal_form == KEpsHom::identity(d.normal_form));
    CHECK(d.from_normal_form * d.to_normal_form == KEpsHom::identity(m));
  }
}

TEST_CASE("is_free") {
  CHECK(is_free(trivial_module(F2, 0)));
  CHECK(!is_free(k_point(F2)));
  CHECK(is_free(free_module(F2, 2)));
}

TEST_CASE("free cover and envelope of the fixtures") {
  KEpsSes cov = free_cover(k_point(F2));
  CHECK(cov.p.source().dim() == 2);
  CHECK(is_free(cov.p.source()));
  // kernel of the augmentation is k again
  CHECK(decompose(cov.i.source()).trivial_rank == 1);
  CHECK(decompose(cov.i.source()).free_rank == 0);

  // the cover of a free module splits, the cover of k does not
  CHECK(KepsInstance::cover_splits(free_cover(free_module(F2, 1))));
  CHECK(!KepsInstance::cover_splits(free_cover(k_point(F2))));
  CHECK(KepsInstance::envelope_splits(free_envelope(free_module(F2, 2))));
  CHECK(!KepsInstance::envelope_splits(free_envelope(k_point(F2))));
}

TEST_CASE("free cover and envelope on samples") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    Rng rng = rng_for(307, i);
    KEpsModule m = sample_keps_module(F2, rng, 4);
    KEpsSes cov = free_cover(m);
    CHECK(is_free(cov.p.source()));
    KEpsSes env = free_envelope(m);
    CHECK(is_free(env.i.target()));
  }
  KEpsSes zero_cov = free_cover(trivial_module(F2, 0));
  CHECK(zero_cov.p.source().dim() == 0);
}

TEST_CASE("stable hom of the basic modules") {
  StableHom kk = stable_hom(k_point(F2), k_point(F2));
  CHECK(kk.group().str() == "F_2");
  CHECK(kk.group().free_rank == 1);

  StableHom ff = stable_hom(free_module(F2, 1), free_module(F2, 1));
  CHECK(ff.group().is_trivial());

  StableHom kf = stable_hom(k_point(F2), free_module(F2, 1));
  CHECK(kf.group().is_trivial());
}

TEST_CASE("stable hom agrees with the exhaustive factoring oracle at small dims") {
  std::vector<std::pair<Index, Index>> shapes = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}};
  for (auto [a1, b1] : shapes)
    for (auto [a2, b2] : shapes) {
      KEpsModule m = normal_form_module(F2, a1, b1);
      KEpsModule n = normal_form_module(F2, a2, b2);
      if (m.dim() * n.dim() > 9) continue;  // keep the enumeration tiny here
      auto triv = factoring_maps_f2(m, n);
      Mat<Fp> homs = hom_basis(m, n);
      StableHom sh = stable_hom(m, n);
      const Index k = homs.cols();
      for (long code = 0; code < (1L << k); ++code) {
        Vec<Fp> c(k);
        for (Index j = 0; j < k; ++j) c(j) = Fp((code >> j) & 1, 2);
        KEpsHom t(m, n, unvectorize<Fp>(Vec<Fp>(homs * c), n.dim(), m.dim()));
        bool oracle_trivial = triv.count(hom_key(t)) > 0;
        Vec<Fp> red = sh.reduce(t);
        bool reduce_trivial = true;
        for (Index j = 0; j < red.size(); ++j)
          if (!is_zero(red(j))) reduce_trivial = false;
        CHECK(oracle_trivial == reduce_trivial);
      }
    }
}

TEST_CASE("reduce separates classes exactly as factoring does") {
  for (std::uint64_t i = 0; i < 15; ++i) {
    Rng rng = rng_for(311, i);
    KEpsModule m = sample_keps_module(F2, rng, 3);
    KEpsModule n = sample_keps_module(F2, rng, 3);
    StableHom sh = stable_hom(m, n);
    KEpsHom f = sample_keps_hom(m, n, rng);
    KEpsHom g = sample_keps_hom(m, n, rng);
    auto triv = factoring_maps_f2(m, n);
    bool same_class = true;
    Vec<Fp> rf = sh.reduce(f), rg = sh.reduce(g);
    for (Index j = 0; j < rf.size(); ++j)
      if (rf(j) != rg(j)) same_class = false;
    CHECK(same_class == (triv.count(hom_key(g - f)) > 0));
  }
}

TEST_CASE("ext1 on the basic modules") {
  CHECK(ext1_keps(k_point(F2), k_point(F2)).str() == "F_2");
  for (std::uint64_t i = 0; i < 15; ++i) {
    Rng rng = rng_for(313, i);
    KEpsModule m = sample_keps_module(F2, rng, 3);
    CHECK(ext1_keps(free_module(F2, 1), m).is_trivial());
    CHECK(ext1_keps(m, free_module(F2, 1)).is_trivial());
    KEpsModule f = sample_free_keps_module(F2, rng, 4);
    CHECK(ext1_keps(f, m).is_trivial());
    CHECK(ext1_keps(m, f).is_trivial());
  }
}

TEST_CASE("frobenius orthogonality and completeness for (all, frees)") {
  for (std::uint64_t i = 0; i < 12; ++i) {
    Rng rng = rng_for(317, i);
    KEpsModule q = sample_keps_module(F2, rng, 4);
    KEpsModule w = sample_free_keps_module(F2, rng, 4);
    CHECK(ext1_keps(q, w).is_trivial());
    CHECK(ext1_keps(w, q).is_trivial());
    KEpsSes cov = free_cover(q);
    KEpsSes env = free_envelope(q);
    CHECK(is_free(cov.p.source()));
    CHECK(is_free(env.i.target()));
  }
}

TEST_CASE("sampled k[eps] sequences are exact with hom structure maps") {
  for (std::uint64_t i = 0; i < 15; ++i) {
    Rng rng = rng_for(331, i);
    CHECK_NOTHROW(sample_keps_ses(F2, rng, 4));
  }
}
