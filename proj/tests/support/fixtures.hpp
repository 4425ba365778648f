#pragma once

#include "chainmodel/chain_complex.hpp"

// Shared small complexes used across the test suites:
//   Z0    the zero complex
//   S0    rank 1 in degree 0
//   S1    rank 1 in degree 1
//   D1    [Z -1-> Z] in degrees 1, 0
//   K2    [Z -2-> Z] in degrees 1, 0
//   F2K0  [F_2 -0-> F_2] in degrees 1, 0
namespace fixtures {

using namespace chainmodel;

inline const Ring<Integer> ZZ;
inline const Ring<Fp> F2{2};
inline const Ring<Fp> F3{3};

inline ChainComplex<Integer> Z0() { return ChainComplex<Integer>(ZZ); }

inline ChainComplex<Integer> S0() { return ChainComplex<Integer>(ZZ, 0, {1}, {}); }

inline ChainComplex<Integer> S1() { return ChainComplex<Integer>(ZZ, 1, {1}, {}); }

inline ChainComplex<Integer> sphere(int degree) {
  return ChainComplex<Integer>(ZZ, degree, {1}, {});
}

inline ChainComplex<Integer> D1() {
  return ChainComplex<Integer>(ZZ, 0, {1, 1}, {ring_matrix(ZZ, 1, 1, {1})});
}

inline ChainComplex<Integer> K2() {
  return ChainComplex<Integer>(ZZ, 0, {1, 1}, {ring_matrix(ZZ, 1, 1, {2})});
}

inline ChainComplex<Fp> F2K0() {
  return ChainComplex<Fp>(F2, 0, {1, 1}, {ring_zeros(F2, 1, 1)});
}

/// The degree-0 inclusion S0 -> D1.
inline ChainMap<Integer> include_S0_D1() {
  DegreeMap<Integer> c;
  c.set(0, ring_matrix(ZZ, 1, 1, {1}));
  return ChainMap<Integer>(S0(), D1(), std::move(c));
}

/// The degree-1 projection D1 -> S1.
inline ChainMap<Integer> project_D1_S1() {
  DegreeMap<Integer> c;
  c.set(1, ring_matrix(ZZ, 1, 1, {1}));
  return ChainMap<Integer>(D1(), S1(), std::move(c));
}

/// Multiplication by m on S0.
inline ChainMap<Integer> scale_S0(long long m) {
  DegreeMap<Integer> c;
  c.set(0, ring_matrix(ZZ, 1, 1, {m}));
  return ChainMap<Integer>(S0(), S0(), std::move(c));
}

/// The chain endomorphism (m, m) of K2.
inline ChainMap<Integer> K2_endo(long long m) {
  DegreeMap<Integer> c;
  c.set(0, ring_matrix(ZZ, 1, 1, {m}));
  c.set(1, ring_matrix(ZZ, 1, 1, {m}));
  return ChainMap<Integer>(K2(), K2(), std::move(c));
}

}  // namespace fixtures
