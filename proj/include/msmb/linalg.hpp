// Exact linear algebra: rational rank/nullspace, integer normal forms with
// unimodular tracking, adjugates, and Fourier–Motzkin feasibility with a
// witness. Everything is deterministic and allocation-simple; inputs are
// desk scale (dimensions below ~16).
#pragma once

#include <optional>
#include <vector>

#include "msmb/ints.hpp"

namespace msmb {

using RatVector = std::vector<Rat>;
using RatMatrix = std::vector<RatVector>;   // row-major
using IntMatrix = std::vector<IntVector>;   // row-major

int rank_rational(const IntMatrix& rows);

// Basis of {x : rows * x = 0} over the rationals, scaled to primitive integer
// vectors. Deterministic (free columns in increasing order).
std::vector<IntVector> nullspace_rational(const IntMatrix& rows);

// Column-style Hermite reduction A*U = [H | 0] with U unimodular. Returns the
// last n - rank columns of U: a lattice basis of ker(A) ∩ Z^n (saturated
// because U is unimodular).
std::vector<IntVector> integer_kernel_lattice(const IntMatrix& rows);

// Row Hermite normal form of the lattice spanned by the given rows; canonical
// basis of the same lattice (pivots positive, entries above pivots reduced
// into [0, pivot)). Zero rows are dropped.
IntMatrix hnf_rows(IntMatrix rows);

// Adjugate of a nonsingular square matrix: adj(M) with M*adj(M) = det(M)*I.
// Also reports det. Throws Error(InvalidInput) if M is singular.
IntMatrix adjugate(const IntMatrix& m, Int& det);

// One affine inequality sum_j coeffs[j]*y_j + constant >= 0.
struct AffineIneq {
  RatVector coeffs;
  Rat constant;
};

// Exact Fourier–Motzkin: returns a feasible point if the system has one.
std::optional<RatVector> fm_feasible(std::vector<AffineIneq> system, int nvars);

// A minimal-support linear dependency among a list of vectors: the index set
// of participating vectors plus the (unique up to sign) primitive coefficient
// vector, sign-fixed so its first entry is positive.
struct SupportDependency {
  std::vector<int> support;  // increasing indices into the input list
  IntVector coeffs;          // aligned with support; primitive; coeffs[0] > 0
};

// All minimal-support dependencies ("matroid circuits with coefficients") of
// the given vectors, ordered by (support size, lexicographic support). A
// subset is reported iff its span has nullity one and the kernel generator
// has full support — exactly the minimal dependent subsets.
std::vector<SupportDependency> support_minimal_dependencies(const std::vector<IntVector>& vecs);

}  // namespace msmb
