#include <doctest.h>

#include "chainmodel/abelian_group.hpp"
#include "chainmodel/sampling.hpp"

using namespace chainmodel;

namespace {
const Ring<Integer> ZZ;
const Ring<Fp> F2(2);
const Ring<Fp> F3(3);
}  // namespace

TEST_CASE("smith form of the zero 1x1 matrix over Z") {
  Mat<Integer> a = ring_matrix(ZZ, 1, 1, {0});
  SmithForm<Integer> sf = smith_form(a);
  REQUIRE(sf.d.size() == 1);
  CHECK(sf.d[0] == Integer(0));
  CHECK(matrix_equal<Integer>(Mat<Integer>(sf.u * a * sf.v), sf.diagonal(1, 1)));
}

TEST_CASE("smith form of [[2,4],[6,8]] over Z") {
  // d1 = gcd of the entries = 2, d1*d2 = |det| = 8, so d = [2, 4]
  Mat<Integer> a = ring_matrix(ZZ, 2, 2, {2, 4, 6, 8});
  SmithForm<Integer> sf = smith_form(a);
  REQUIRE(sf.d.size() == 2);
  CHECK(sf.d[0] == Integer(2));
  CHECK(sf.d[1] == Integer(4));
  CHECK(matrix_equal<Integer>(Mat<Integer>(sf.u * a * sf.v), sf.diagonal(2, 2)));
  CHECK(is_unit(determinant<Integer>(sf.u)));
  CHECK(is_unit(determinant<Integer>(sf.v)));
}

TEST_CASE("smith form of the identity") {
  Mat<Integer> a = ring_identity(ZZ, 2);
  SmithForm<Integer> sf = smith_form(a);
  CHECK(sf.d[0] == Integer(1));
  CHECK(sf.d[1] == Integer(1));
}

TEST_CASE("smith invariants over F_p are ones then zeros") {
  Mat<Fp> a = ring_matrix(F3, 2, 3, {1, 2, 0, 2, 1, 0});
  SmithForm<Fp> sf = smith_form(a);
  REQUIRE(sf.d.size() == 2);
  CHECK(sf.d[0] == F3.from_long(1));
  CHECK(matrix_equal<Fp>(Mat<Fp>(sf.u * a * sf.v), sf.diagonal(2, 3)));
}

TEST_CASE("smith form invariants on random matrices") {
  for (int ring_case = 0; ring_case < 2; ++ring_case) {
    for (std::uint64_t i = 0; i < 60; ++i) {
      Rng rng = rng_for(17, i + 1000 * ring_case);
      Index r = rand_range(rng, 0, 4), c = rand_range(rng, 0, 4);
      if (ring_case == 0) {
        Mat<Integer> a = rand_matrix(ZZ, rng, r, c, 5);
        SmithForm<Integer> sf = smith_form(a);
        CHECK(matrix_equal<Integer>(Mat<Integer>(sf.u * a * sf.v), sf.diagonal(r, c)));
        CHECK(is_unit(determinant<Integer>(sf.u)));
        CHECK(is_unit(determinant<Integer>(sf.v)));
        for (size_t k = 0; k + 1 < sf.d.size(); ++k)
          if (!is_zero(sf.d[k + 1])) CHECK(divides(sf.d[k], sf.d[k + 1]));
      } else {
        Mat<Fp> a = rand_matrix(F3, rng, r, c, 0);
        SmithForm<Fp> sf = smith_form(a);
        CHECK(matrix_equal<Fp>(Mat<Fp>(sf.u * a * sf.v), sf.diagonal(r, c)));
        CHECK(is_unit(determinant<Fp>(sf.u)));
      }
    }
  }
}

TEST_CASE("solve_linear over Z and F_3") {
  Mat<Integer> a = ring_matrix(ZZ, 1, 1, {2});
  auto x = solve_linear<Integer>(a, ring_matrix(ZZ, 1, 1, {4}));
  REQUIRE(x.has_value());
  CHECK((*x)(0, 0) == Integer(2));
  CHECK(!solve_linear<Integer>(a, ring_matrix(ZZ, 1, 1, {1})).has_value());

  Mat<Fp> b = ring_matrix(F3, 1, 1, {2});
  auto y = solve_linear<Fp>(b, ring_matrix(F3, 1, 1, {1}));
  REQUIRE(y.has_value());
  CHECK((*y)(0, 0) == F3.from_long(2));
}

TEST_CASE("solve_linear solves exactly when a solution exists") {
  for (std::uint64_t i = 0; i < 60; ++i) {
    Rng rng = rng_for(23, i);
    Index r = rand_range(rng, 1, 4), c = rand_range(rng, 1, 4), k = rand_range(rng, 1, 2);
    Mat<Integer> a = rand_matrix(ZZ, rng, r, c, 3);
    Mat<Integer> x0 = rand_matrix(ZZ, rng, c, k, 3);
    Mat<Integer> b = a * x0;
    auto x = solve_linear<Integer>(a, b);
    REQUIRE(x.has_value());
    CHECK(matrix_equal<Integer>(Mat<Integer>(a * (*x)), b));
  }
}

TEST_CASE("kernel_basis spans the kernel lattice") {
  Mat<Integer> two = ring_matrix(ZZ, 1, 1, {2});
  CHECK(kernel_basis(two).cols() == 0);
  Mat<Integer> zero = ring_matrix(ZZ, 1, 1, {0});
  Mat<Integer> kz = kernel_basis(zero);
  REQUIRE(kz.cols() == 1);
  CHECK(is_unit(kz(0, 0)));
  Mat<Fp> two_mod2 = ring_matrix(F2, 1, 1, {2});
  CHECK(kernel_basis(two_mod2).cols() == 1);

  for (std::uint64_t i = 0; i < 40; ++i) {
    Rng rng = rng_for(31, i);
    Index r = rand_range(rng, 1, 4), c = rand_range(rng, 1, 4);
    Mat<Integer> a = rand_matrix(ZZ, rng, r, c, 3);
    Mat<Integer> k = kernel_basis(a);
    CHECK(is_zero(Mat<Integer>(a * k)));
    // a random solution of a x = 0 lies in the column span of the basis
    Mat<Integer> mixed = k * rand_matrix(ZZ, rng, k.cols(), 1, 3);
    auto back = solve_linear<Integer>(k, mixed);
    CHECK(back.has_value());
  }
}

TEST_CASE("cokernel presentations") {
  PresentedGroup g = cokernel_presentation(ZZ, ring_matrix(ZZ, 2, 2, {2, 4, 6, 8}));
  REQUIRE(g.torsion.size() == 2);
  CHECK(g.torsion[0] == Integer(2));
  CHECK(g.torsion[1] == Integer(4));
  CHECK(g.free_rank == 0);
  CHECK(g.str() == "Z/2 + Z/4");

  PresentedGroup free1 = cokernel_presentation(ZZ, ring_zeros(ZZ, 1, 0));
  CHECK(free1.torsion.empty());
  CHECK(free1.free_rank == 1);
  CHECK(free1.str() == "Z");

  PresentedGroup trivial = cokernel_presentation(ZZ, ring_matrix(ZZ, 1, 1, {1}));
  CHECK(trivial.is_trivial());
  CHECK(trivial.str() == "0");
}

TEST_CASE("split injection witnesses") {
  Mat<Integer> inc = ring_matrix(ZZ, 2, 1, {1, 0});
  auto r = split_injection_witness<Integer>(inc);
  REQUIRE(r.has_value());
  CHECK(matrix_equal<Integer>(Mat<Integer>((*r) * inc), ring_identity(ZZ, 1)));

  CHECK(!split_injection_witness<Integer>(ring_matrix(ZZ, 1, 1, {2})).has_value());

  auto r3 = split_injection_witness<Fp>(ring_matrix(F3, 1, 1, {2}));
  REQUIRE(r3.has_value());
  CHECK((*r3)(0, 0) == F3.from_long(2));
}

TEST_CASE("split witness absence matches exhaustive search over small fields") {
  // dims <= 3, p <= 3: when the witness solver says none, no left inverse
  // exists among all candidate matrices
  auto exhaustive_left_inverse = [](const Ring<Fp>& field, const Mat<Fp>& a) {
    const Index rows = a.cols(), cols = a.rows();
    long total = 1;
    for (Index i = 0; i < rows * cols; ++i) total *= field.p;
    for (long code = 0; code < total; ++code) {
      Mat<Fp> r(rows, cols);
      long c = code;
      for (Index k = 0; k < rows * cols; ++k) {
        r(k % rows, k / rows) = field.from_long(c % field.p);
        c /= field.p;
      }
      if (matrix_equal<Fp>(Mat<Fp>(r * a), ring_identity(field, rows))) return true;
    }
    return false;
  };
  for (std::uint64_t i = 0; i < 12; ++i) {
    Rng rng = rng_for(47, i);
    const Ring<Fp>& field = (i % 2) ? F2 : F3;
    Index r = rand_range(rng, 1, 3), c = rand_range(rng, 1, 2);
    Mat<Fp> a = rand_matrix(field, rng, r, c, 0);
    bool solver = split_injection_witness<Fp>(a).has_value();
    bool brute = exhaustive_left_inverse(field, a);
    CHECK(solver == brute);
  }
}

TEST_CASE("subquotient coordinates and generators") {
  // Z^2 / span{(2,0)} = Z/2 (+) Z
  Mat<Integer> basis = ring_identity(ZZ, 2);
  Mat<Integer> rel = ring_matrix(ZZ, 2, 1, {2, 0});
  Subquotient<Integer> sq(ZZ, basis, rel);
  CHECK(sq.group().torsion.size() == 1);
  CHECK(sq.group().torsion[0] == Integer(2));
  CHECK(sq.group().free_rank == 1);
  for (Index i = 0; i < sq.generator_count(); ++i) {
    auto coords = sq.coordinates(sq.generator(i));
    REQUIRE(coords.has_value());
    for (Index j = 0; j < coords->size(); ++j)
      CHECK((*coords)(j) == Integer(i == j ? 1 : 0));
  }
}
