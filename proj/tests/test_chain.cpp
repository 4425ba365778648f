#include <doctest.h>

#include "chainmodel/hom_complex.hpp"
#include "chainmodel/sampling.hpp"
#include "support/fixtures.hpp"

using namespace chainmodel;
using namespace fixtures;

TEST_CASE("validate accepts the fixtures and rejects a broken differential") {
  CHECK(validate(D1()));
  CHECK(validate(Z0()));
  CHECK(validate(K2()));
  CHECK(validate(F2K0()));

  // [Z -1-> Z -1-> Z]: the middle composition is 1, not 0
  ChainComplex<Integer> bad(ZZ, 0, {1, 1, 1},
                            {ring_matrix(ZZ, 1, 1, {1}), ring_matrix(ZZ, 1, 1, {1})});
  ValidationResult r = validate(bad);
  CHECK(!r);
  CHECK(r.degree == 1);  // the middle degree
}

TEST_CASE("shift moves degrees and flips signs") {
  CHECK(shift(S0(), 1) == S1());
  ChainComplex<Integer> down = shift(K2(), -1);
  CHECK(down.min_degree() == -1);
  CHECK(down.diff(0)(0, 0) == Integer(-2));
  for (std::uint64_t i = 0; i < 20; ++i) {
    Rng rng = rng_for(5, i);
    ChainComplex<Integer> x = sample_complex(ZZ, rng);
    CHECK(shift(shift(x, 1), -1) == x);
    CHECK(validate(shift(x, 3)));
  }
}

TEST_CASE("cone of the identity on S0 is D1 up to the sign convention") {
  Cone<Integer> c = cone(ChainMap<Integer>::identity(S0()));
  CHECK(c.complex.rank(0) == 1);
  CHECK(c.complex.rank(1) == 1);
  // the pinned convention d(x, y) = (-d x, d y - f x) produces d_1 = [-1]
  CHECK(c.complex.diff(1)(0, 0) == Integer(-1));
  CHECK(validate(c.complex));
}

TEST_CASE("cone of the zero map is the direct sum with zero differential") {
  Cone<Integer> c = cone(ChainMap<Integer>::zero(S0(), S0()));
  CHECK(c.complex == direct_sum(S1(), S0()).complex);
}

TEST_CASE("cone of multiplication by 2 gives K2 up to the sign convention") {
  Cone<Integer> c = cone(scale_S0(2));
  CHECK(c.complex.rank(1) == 1);
  CHECK(c.complex.rank(0) == 1);
  CHECK(c.complex.diff(1)(0, 0) == Integer(-2));
  PresentedGroup h = homology(c.complex, 0);
  CHECK(h == homology(K2(), 0));
}

TEST_CASE("cone inclusion and projection are chain maps forming a dw-split sequence") {
  for (std::uint64_t i = 0; i < 15; ++i) {
    Rng rng = rng_for(7, i);
    ChainComplex<Integer> x = sample_complex(ZZ, rng);
    ChainComplex<Integer> y = sample_complex(ZZ, rng);
    ChainMap<Integer> f = sample_chain_map(x, y, rng);
    Cone<Integer> c = cone(f);
    CHECK(validate(c.complex));
    CHECK((c.projection * c.inclusion).is_zero_map());
    // degreewise split: inclusion splits by (0, 1), projection by (1; 0)
    auto w = admissible_mono(c.inclusion);
    CHECK(w.has_value());
  }
}

TEST_CASE("direct sum adds ranks and absorbs the zero complex") {
  CHECK(direct_sum(Z0(), K2()).complex == K2());
  DirectSum<Integer> s = direct_sum(S0(), S0());
  CHECK(s.complex.rank(0) == 2);
  for (std::uint64_t i = 0; i < 15; ++i) {
    Rng rng = rng_for(11, i);
    ChainComplex<Integer> x = sample_complex(ZZ, rng);
    ChainComplex<Integer> y = sample_complex(ZZ, rng);
    DirectSum<Integer> d = direct_sum(x, y);
    CHECK(validate(d.complex));
    for (int n = d.complex.min_degree(); n <= d.complex.max_degree(); ++n)
      CHECK(d.complex.rank(n) == x.rank(n) + y.rank(n));
    CHECK(d.project_left * d.inject_left == ChainMap<Integer>::identity(x));
    CHECK(d.project_right * d.inject_right == ChainMap<Integer>::identity(y));
    CHECK((d.project_right * d.inject_left).is_zero_map());
  }
}

TEST_CASE("hom complex ranks and differential") {
  CHECK(hom_complex(S0(), S0()) == S0());
  CHECK(hom_complex(Z0(), K2()) == Z0());

  HomComplex<Integer> h(K2(), K2());
  CHECK(h.rank(0) == 2);
  CHECK(h.rank(1) == 1);
  CHECK(h.rank(-1) == 1);
  CHECK(validate(h.to_complex()));

  for (std::uint64_t i = 0; i < 10; ++i) {
    Rng rng = rng_for(13, i);
    ChainComplex<Integer> x = sample_complex(ZZ, rng);
    ChainComplex<Integer> y = sample_complex(ZZ, rng);
    CHECK(validate(hom_complex(x, y)));
  }
}

TEST_CASE("hom complex degree-0 cycles are exactly the chain maps") {
  HomComplex<Integer> h(K2(), K2());
  Mat<Integer> cycles = kernel_basis<Integer>(h.boundary(0));
  // chain endomorphisms of K2 are the diagonal pairs (m, m)
  CHECK(cycles.cols() == 1);
  ChainMap<Integer> basic = h.unflatten_map(Vec<Integer>(cycles.col(0)));
  CHECK(matrix_equal<Integer>(basic.component(0), basic.component(1)));
  CHECK(is_unit(basic.component(0)(0, 0)));
}

TEST_CASE("homology of the fixtures") {
  PresentedGroup hk2 = homology(K2(), 0);
  CHECK(hk2.torsion.size() == 1);
  CHECK(hk2.torsion[0] == Integer(2));
  CHECK(hk2.free_rank == 0);

  for (int n = -1; n <= 2; ++n) CHECK(homology(D1(), n).is_trivial());

  PresentedGroup hf = homology(F2K0(), 0);
  CHECK(hf.torsion.empty());
  CHECK(hf.free_rank == 1);
  CHECK(hf.str() == "F_2");
}

TEST_CASE("homology over F_p has zero torsion and dimension-count free rank") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    Rng rng = rng_for(19, i);
    ChainComplex<Fp> x = sample_complex(F2, rng);
    for (int n = x.min_degree(); n <= x.max_degree(); ++n) {
      PresentedGroup h = homology(x, n);
      CHECK(h.torsion.empty());
      long dim_kernel = static_cast<long>(kernel_basis(x.diff(n)).cols());
      long dim_image = static_cast<long>(smith_form(x.diff(n + 1)).rank());
      CHECK(h.free_rank == dim_kernel - dim_image);
    }
  }
}

TEST_CASE("sampled complexes always validate") {
  for (std::uint64_t i = 0; i < 40; ++i) {
    Rng rng = rng_for(29, i);
    CHECK(validate(sample_complex(ZZ, rng)));
    CHECK(validate(sample_complex(F2, rng)));
    CHECK(validate(sample_contractible(ZZ, rng)));
  }
}

TEST_CASE("chain map constructor rejects non-commuting components") {
  DegreeMap<Integer> c;
  c.set(0, ring_matrix(ZZ, 1, 1, {1}));
  c.set(1, ring_matrix(ZZ, 1, 1, {3}));
  CHECK_THROWS_AS(ChainMap<Integer>(K2(), K2(), std::move(c)), std::invalid_argument);
}

TEST_CASE("homotopy constructor verifies its identity") {
  // on D1, the identity is null-homotopic via h_0 = 1
  DegreeMap<Integer> h;
  h.set(0, ring_matrix(ZZ, 1, 1, {1}));
  ChainMap<Integer> one = ChainMap<Integer>::identity(D1());
  ChainMap<Integer> zero = ChainMap<Integer>::zero(D1(), D1());
  CHECK_NOTHROW(Homotopy<Integer>(zero, one, h));
  DegreeMap<Integer> bad;
  bad.set(0, ring_matrix(ZZ, 1, 1, {2}));
  CHECK_THROWS_AS(Homotopy<Integer>(zero, one, bad), std::invalid_argument);
}
