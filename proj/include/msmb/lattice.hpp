// Kernel lattices, fibers, kernel-norm balls, applicability and the four
// decomposition predicates underlying everything else.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "msmb/matrix.hpp"

namespace msmb {

// Global enumeration budget (number of visited search nodes). Defaults to
// 400 million; override with the MSMB_MAX_CELLS environment variable.
// Exceeding it raises Error(BoundTooLarge).
std::int64_t search_budget();

struct Fiber {
  IntVector target;               // length d
  std::vector<IntVector> points;  // lexicographically sorted, complete
};

// Lattice basis of ker(A) ∩ Z^n — the full (saturated) kernel lattice,
// canonicalised by row Hermite normal form. Size n - rank(A).
std::vector<IntVector> kernel_basis(const SemigroupMatrix& A);

// All u in N^n with A·u = t. Finite by pointedness; empty if t is not in NA.
Fiber enumerate_fiber(const SemigroupMatrix& A, const IntVector& t);

// Fiber points with 1-norm <= cap only (shared engine of the ball search).
std::vector<IntVector> enumerate_fiber_capped(const SemigroupMatrix& A, const IntVector& t,
                                              const Int& cap);

// All canonical moves z in ker(A) \ {0} with ||z|| <= bound, lex-sorted.
std::vector<IntVector> enumerate_kernel_ball(const SemigroupMatrix& A, const Int& bound);

struct Applicability {
  bool plus = false;   // x >= u-, so x -> x + u stays nonnegative
  bool minus = false;  // x >= u+, so x -> x - u stays nonnegative
};

Applicability applicable(const IntVector& u, const IntVector& x);

struct DecompositionFlags {
  bool conformal = false;      // z+ = u+ + v+ and z- = u- + v-
  bool semiconformal = false;  // u_i > 0 implies v_i >= 0 (ordered pair u, v)
  bool pos_distance = false;   // u+ <= z+ and ||v|| < ||z||
  bool neg_distance = false;   // u- <= z- and ||v|| < ||z||
  bool proper = false;         // u != 0 and v != 0
};

// Requires z = u + v (throws Error(SumMismatch) otherwise).
DecompositionFlags decomposition_predicates(const IntVector& z, const IntVector& u,
                                            const IntVector& v);

}  // namespace msmb
