// Circuits, the Graver basis, indispensable moves, Markov-basis verification
// and enumeration of all minimal Markov bases.
#pragma once

#include <vector>

#include "msmb/lattice.hpp"
#include "msmb/moveset.hpp"

namespace msmb {

// Minimal-support nonzero kernel elements. For a 1-row matrix this is the
// classical pair formula (a_j/g)·e_i − (a_i/g)·e_j over i < j with
// g = gcd(a_i, a_j); for more rows, column subsets with nullity one.
MoveSet circuits(const SemigroupMatrix& A);

// All nonzero kernel elements minimal under the conformal order
// (z ⊑ z' iff z⁺ ≤ z'⁺ and z⁻ ≤ z'⁻), computed by completion: close ± a
// kernel lattice basis under pairwise sums with conformal normal-form
// reduction, then keep the ⊑-minimal survivors. Throws Error(BudgetExceeded)
// if the element cap is hit.
MoveSet graver(const SemigroupMatrix& A);

// Moves belonging to every Markov basis: the Graver elements admitting no
// proper semi-conformal decomposition z = u + v (u_i > 0 ⇒ v_i ≥ 0, both
// parts nonzero).
MoveSet indispensables(const SemigroupMatrix& A);

struct MarkovCheck {
  bool ok = true;
  // Populated when ok is false: the target of the first disconnected fiber
  // and a pair of its points in different connected components.
  IntVector witness_target;
  IntVector witness_from;
  IntVector witness_to;
};

// True iff B connects g⁺ to g⁻ inside the fiber of A·g⁺ for every Graver
// element g. This suffices for B to be a Markov basis: any two points of a
// common fiber differ by a kernel element, which decomposes conformally into
// Graver elements, and each Graver step is applicable along the way because
// conformal summands never leave the nonnegative orthant.
MarkovCheck verify_markov(const SemigroupMatrix& A, const MoveSet& B);

// Exhaustive variant: checks full connectivity of every fiber whose target
// is A·x for some x ∈ N^n with ||x|| ≤ bound.
MarkovCheck verify_markov_exhaustive(const SemigroupMatrix& A, const MoveSet& B,
                                     const Int& bound);

// Every minimal Markov basis of A. Searches subsets of the Graver basis that
// contain all indispensable moves, sweeping cardinalities upward; all bases
// found at the first successful cardinality are exactly the minimal ones
// (minimal generating sets share their cardinality under the positive grading
// that pointedness provides). Throws Error(BudgetExceeded) on blow-up.
std::vector<MoveSet> minimal_markov_bases(const SemigroupMatrix& A);

// Union of all minimal Markov bases.
MoveSet universal_markov(const SemigroupMatrix& A);

}  // namespace msmb
