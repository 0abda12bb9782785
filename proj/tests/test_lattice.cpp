#include <cstdlib>
#include <functional>

#include "doctest.h"
#include "msmb/error.hpp"
#include "msmb/lattice.hpp"
#include "oracles.hpp"

using msmb::Error;
using msmb::ErrorKind;
using msmb::Int;
using msmb::IntMatrix;
using msmb::IntVector;
using msmb::SemigroupMatrix;
using oracle::im;
using oracle::iv;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("matrix validation accepts pointed input and rejects the rest") {
  CHECK(kind_of([] { SemigroupMatrix::row(iv({2, 0, 4})); }) == ErrorKind::ZeroColumn);
  CHECK(kind_of([] { SemigroupMatrix::row(iv({2, -3, 4})); }) == ErrorKind::NotPointed);
  CHECK(kind_of([] { SemigroupMatrix::from_rows(im({{1, -1}, {-1, 1}})); }) ==
        ErrorKind::NotPointed);
  CHECK_THROWS_AS(SemigroupMatrix::from_rows(IntMatrix{}), Error);
  CHECK_THROWS_AS(SemigroupMatrix::from_rows(im({{1, 2}, {1}})), Error);

  // Negative entries are fine above one row as long as the cone stays pointed.
  SemigroupMatrix tilted = SemigroupMatrix::from_rows(im({{1, 0}, {-1, 1}}));
  CHECK(tilted.rows() == 2);
  CHECK(tilted.cols() == 2);
  REQUIRE(tilted.dual().size() == 2);
  for (int j = 0; j < tilted.cols(); ++j) {
    msmb::Rat dot = 0;
    for (int i = 0; i < tilted.rows(); ++i) dot += tilted.dual()[i] * tilted.at(i, j);
    CHECK(dot >= 1);
  }

  SemigroupMatrix curve = SemigroupMatrix::row(iv({2, 3, 4}));
  CHECK(curve.mul(iv({1, 0, 1})) == iv({6}));
  CHECK(curve.in_kernel(iv({2, 0, -1})));
  CHECK_FALSE(curve.in_kernel(iv({2, 0, 1})));
}

TEST_CASE("kernel basis lies in the kernel and has full corank") {
  SemigroupMatrix A = SemigroupMatrix::row(iv({2, 3, 4}));
  auto basis = msmb::kernel_basis(A);
  REQUIRE(basis.size() == 2);
  for (const IntVector& b : basis) CHECK(A.in_kernel(b));

  SemigroupMatrix B = SemigroupMatrix::from_rows(im({{1, 1, 1}, {0, 1, 2}}));
  auto kb = msmb::kernel_basis(B);
  REQUIRE(kb.size() == 1);
  CHECK(B.in_kernel(kb.front()));
  CHECK(oracle::canonical(kb.front()) == iv({1, -2, 1}));
}

TEST_CASE("fiber enumeration matches the digit-by-digit oracle") {
  SemigroupMatrix A = SemigroupMatrix::row(iv({2, 3, 4}));
  for (long t = 0; t <= 20; ++t) {
    msmb::Fiber f = msmb::enumerate_fiber(A, iv({t}));
    CHECK(f.target == iv({t}));
    CHECK(f.points == oracle::fiber(A.entries(), iv({t})));
  }

  SemigroupMatrix C = SemigroupMatrix::row(iv({3, 5, 11}));
  for (long t : {0L, 1L, 30L, 47L})
    CHECK(msmb::enumerate_fiber(C, iv({t})).points == oracle::fiber(C.entries(), iv({t})));

  SemigroupMatrix M = SemigroupMatrix::from_rows(im({{1, 1, 1}, {0, 1, 2}}));
  for (long a = 0; a <= 6; ++a)
    for (long b = 0; b <= 6; ++b)
      CHECK(msmb::enumerate_fiber(M, iv({a, b})).points == oracle::fiber(M.entries(), iv({a, b})));
}

TEST_CASE("capped fiber enumeration keeps exactly the short points") {
  SemigroupMatrix A = SemigroupMatrix::row(iv({2, 3, 4}));
  for (long t : {8L, 12L, 16L}) {
    for (long cap : {0L, 2L, 4L, 100L}) {
      std::vector<IntVector> expect;
      for (const IntVector& p : oracle::fiber(A.entries(), iv({t})))
        if (oracle::norm1(p) <= cap) expect.push_back(p);
      CHECK(msmb::enumerate_fiber_capped(A, iv({t}), Int(cap)) == expect);
    }
  }
}

TEST_CASE("kernel ball enumeration is complete, canonical and sorted") {
  SemigroupMatrix A = SemigroupMatrix::row(iv({2, 3, 4}));
  for (long r : {0L, 1L, 3L, 7L, 9L}) {
    auto got = msmb::enumerate_kernel_ball(A, Int(r));
    CHECK(got == oracle::kernel_ball(A.entries(), r));
    for (const IntVector& z : got) {
      CHECK(A.in_kernel(z));
      CHECK(oracle::norm1(z) <= r);
      CHECK(z == oracle::canonical(z));
    }
  }
  SemigroupMatrix C = SemigroupMatrix::row(iv({3, 5, 11}));
  CHECK(msmb::enumerate_kernel_ball(C, Int(9)) == oracle::kernel_ball(C.entries(), 9));
  SemigroupMatrix M = SemigroupMatrix::from_rows(im({{1, 1, 1}, {0, 1, 2}}));
  CHECK(msmb::enumerate_kernel_ball(M, Int(8)) == oracle::kernel_ball(M.entries(), 8));
}

TEST_CASE("applicability restates the componentwise inequalities") {
  oracle::Rng rng(20260814);
  for (int trial = 0; trial < 200; ++trial) {
    IntVector x(4), u(4);
    for (int i = 0; i < 4; ++i) {
      x[i] = Int(rng.pick(0, 6));
      u[i] = Int(rng.pick(-5, 5));
    }
    msmb::Applicability got = msmb::applicable(u, x);
    bool plus = true, minus = true;
    for (int i = 0; i < 4; ++i) {
      if (x[i] + u[i] < 0) plus = false;
      if (x[i] - u[i] < 0) minus = false;
    }
    CHECK(got.plus == plus);
    CHECK(got.minus == minus);
  }
}

TEST_CASE("decomposition predicates follow their definitions") {
  oracle::Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 4;
    IntVector z(n), u(n), v(n);
    for (int i = 0; i < n; ++i) {
      z[i] = Int(rng.pick(-6, 6));
      u[i] = Int(rng.pick(-6, 6));
      v[i] = z[i] - u[i];
    }
    msmb::DecompositionFlags f = msmb::decomposition_predicates(z, u, v);

    bool conformal = oracle::add(oracle::plus_part(u), oracle::plus_part(v)) ==
                         oracle::plus_part(z) &&
                     oracle::add(oracle::minus_part(u), oracle::minus_part(v)) ==
                         oracle::minus_part(z);
    bool semiconformal = true;
    for (int i = 0; i < n; ++i)
      if (u[i] > 0 && v[i] < 0) semiconformal = false;
    auto leq = [](const IntVector& a, const IntVector& b) {
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
      return true;
    };
    bool pos_distance = leq(oracle::plus_part(u), oracle::plus_part(z)) &&
                        oracle::norm1(v) < oracle::norm1(z);
    bool neg_distance = leq(oracle::minus_part(u), oracle::minus_part(z)) &&
                        oracle::norm1(v) < oracle::norm1(z);
    bool nonzero_u = false, nonzero_v = false;
    for (int i = 0; i < n; ++i) {
      if (u[i] != 0) nonzero_u = true;
      if (v[i] != 0) nonzero_v = true;
    }

    CHECK(f.conformal == conformal);
    CHECK(f.semiconformal == semiconformal);
    CHECK(f.pos_distance == pos_distance);
    CHECK(f.neg_distance == neg_distance);
    CHECK(f.proper == (nonzero_u && nonzero_v));
  }

  CHECK(kind_of([] {
          msmb::decomposition_predicates(iv({1, -1}), iv({1, 0}), iv({1, -1}));
        }) == ErrorKind::SumMismatch);
}

TEST_CASE("search budget guards the enumeration volume") {
  ::setenv("MSMB_MAX_CELLS", "4", 1);
  CHECK(msmb::search_budget() == 4);
  SemigroupMatrix A = SemigroupMatrix::row(iv({2, 3, 4}));
  CHECK(kind_of([&] { msmb::enumerate_kernel_ball(A, Int(7)); }) == ErrorKind::BoundTooLarge);
  ::unsetenv("MSMB_MAX_CELLS");
  CHECK(msmb::search_budget() > 4);
  CHECK_FALSE(msmb::enumerate_kernel_ball(A, Int(7)).empty());
}
