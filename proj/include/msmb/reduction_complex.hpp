// Norm-space machinery at desk scale: circuits of a finite vector
// configuration, the cone of norm assignments compatible with those circuits
// ("metric cone"), closure of a move set under basis reductions, the strict
// inequalities each reducible relation imposes on a norm, and the resulting
// complex of relatively open cones on which a basis is norm-reducing. Extreme
// rays are computed by an exact double-description sweep.
#pragma once

#include <string>
#include <vector>

#include "msmb/ints.hpp"
#include "msmb/moveset.hpp"

namespace msmb {

// Guards; exceeding any throws Error kinds documented on the operations.
inline constexpr int kMatroidMaxElements = 12;   // configuration size for circuit scans
inline constexpr int kRayMaxVars = 8;            // variables for double description
inline constexpr int kRayMaxRows = 200;          // inequalities for double description
inline constexpr int kClosureMaxAdditions = 512; // new moves a closure may add
inline constexpr long long kTransversalCap = 65536; // inequality choices per complex

// One homogeneous inequality  sum_i coeffs[i]*n_i  <= 0  (or < 0 when strict)
// over the variables of the enclosing system. Rational inequalities are
// stored cleared to integers. `origin` records what produced the row, e.g.
// "triangle 12^24", "relation 245 reduce by 4" or "positivity 3".
struct Inequality {
  IntVector coeffs;
  bool strict = false;
  std::string origin;

  bool operator==(const Inequality& o) const {
    return coeffs == o.coeffs && strict == o.strict;
  }
};

// A homogeneous system over named variables n_1..n_k. Labels usually render
// the moves whose norms the variables stand for; bare systems may use any
// placeholder names.
struct IneqSystem {
  std::vector<std::string> labels;
  std::vector<Inequality> rows;

  int dim() const { return static_cast<int>(labels.size()); }
};

// Does the point satisfy every row (strict rows strictly)?
bool satisfies(const IneqSystem& sys, const IntVector& point);

// A polyhedral cone stored by its defining system together with the extreme
// rays of the system's closure. `interior` is the sum of the rays: a point of
// the relative interior of the closure. Whenever a cone with strict rows is
// reported by the operations below, `interior` satisfies the strict rows
// strictly, witnessing that the relatively open part is nonempty.
struct Cone {
  IneqSystem sys;
  std::vector<IntVector> rays;  // primitive columns, lexicographically sorted
  IntVector interior;           // componentwise sum of rays

  bool operator==(const Cone& o) const { return rays == o.rays; }
};

// A minimal linearly dependent subset of a vector configuration with the
// dependence coefficients, unique up to sign. `name` is the exponent
// notation over 1-based positions — each index followed by ^k when its
// |coefficient| is k > 1 — e.g. "1^22^35" for coefficients (2, 3, 1) on
// positions 1, 2, 5.
struct MatroidCircuit {
  std::vector<int> support;  // increasing 0-based indices into the input list
  IntVector coeffs;          // aligned with support; primitive; first entry > 0
  std::string name;
};

// An integer relation  sum_i multipliers[i]*b_i = target_coeff * s  between
// the moves b_i of a basis and the move s at `target` in a surrounding list.
// Stored primitively (gcd of all coefficients 1) and identified with its
// negative: the first nonzero multiplier is positive.
struct KernelRelation {
  IntVector multipliers;  // over the basis moves, in their canonical order
  int target = -1;        // index into the surrounding move list
  Int target_coeff;       // nonzero
  std::string name;       // exponent notation over the surrounding list
};

// One way to shorten a relation: subtract one copy of the basis move at
// `reducer`. The conjunction of `ineqs` must hold for the shortening to
// decrease the norm of the relation's target. When the shortened relation
// lands on a listed move this is a single strict inequality; under the weak
// projection fallback it is the pair of reverse-triangle bounds instead.
struct ReductionOption {
  int reducer = -1;                // index into the basis moves
  std::vector<Inequality> ineqs;   // over the surrounding move list
};

// A relation together with all of its reduction options. A norm for which the
// basis reduces every relation must satisfy at least one option per relation.
struct RelationSystem {
  KernelRelation relation;
  std::vector<ReductionOption> options;
};

// Output of distance_reducing_complex: the ground move list indexing all
// variables, the ambient metric cone, the relation systems at the scanned
// coefficient bound, the deduplicated relatively open cells (one per
// transversal of the options with nonempty interior) and, when requested,
// their pairwise overlaps. The coefficient bound is recorded because the
// relation scan is finite only under it.
struct ReductionComplex {
  std::vector<IntVector> ground;
  Int coeff_bound;
  Cone metric;
  std::vector<RelationSystem> relations;
  std::vector<Cone> cells;
  std::vector<Cone> overlaps;
};

// All minimal linearly dependent subsets of the given nonzero vectors with
// their primitive dependence coefficients, ordered by (size, lexicographic
// support). Throws Error(GuardExceeded) when more than kMatroidMaxElements
// vectors are given; Error(InvalidInput) on empty input, a zero vector or
// mixed lengths.
std::vector<MatroidCircuit> matroid_circuits_with_coeffs(const std::vector<IntVector>& vecs);

// The cone of norm assignments n_i > 0 compatible with every circuit of the
// configuration: each circuit with coefficients c contributes
// |c_i| n_i <= sum_{j != i} |c_j| n_j for every i of its support, and each
// variable a strict positivity row. Variables follow the given order. Throws
// like matroid_circuits_with_coeffs, plus Error(DimensionGuard) when the
// configuration exceeds kRayMaxVars variables.
Cone metric_cone(const std::vector<IntVector>& vecs);

// Extreme rays of the closure of the system: primitive integer generators,
// lexicographically sorted. Strict rows are closed first; if the sum of the
// computed rays fails a strict row, the relatively open cone is empty and
// an empty list is returned. Requires a pointed closure (Error(Unsupported)
// otherwise), at most kRayMaxVars variables and kRayMaxRows rows
// (Error(DimensionGuard)).
std::vector<IntVector> extreme_rays(const IneqSystem& sys);

// Smallest superset of `start` closed under shortening relations of `basis`:
// whenever some primitive relation  sum alpha_b b = alpha_s s  with s listed,
// all |alpha| <= coeff_bound and alpha_b >= 1 shortens to a vector that is no
// listed move's multiple, the primitive form of that vector is added; repeat
// until stable. Both move sets must share the ambient matrix, contain only
// primitive moves, satisfy basis ⊆ start, and `basis` must be a Markov basis
// (Error(InvalidInput) otherwise). Throws Error(NonConvergence) after
// kClosureMaxAdditions additions and Error(BudgetExceeded) when the
// coefficient scan is too large.
MoveSet b_reduction_closure(const MoveSet& basis, const MoveSet& start, const Int& coeff_bound);

// Every primitive relation of `basis` with target in `all` at the bound,
// together with its reduction options: one strict inequality
// |alpha_s| n_s > |alpha_s'| n_s'  per participating basis move, where s' is
// the move the shortened relation lands on. Requires `all` closed under
// basis reductions at the bound (Error(InvalidInput) when a shortening
// target is missing). With weak_projection, a missing target instead yields
// the weaker conjunction of reverse-triangle bounds expressed over the basis
// moves, and the closedness requirement is waived.
std::vector<RelationSystem> reduction_inequality_sets(const MoveSet& basis, const MoveSet& all,
                                                      const Int& coeff_bound,
                                                      bool weak_projection = false);

// The complex of relatively open cones on which `basis` reduces all its
// relations: for each transversal (one option per relation) intersect the
// metric cone of `all` with the chosen strict half-spaces, drop cones with
// empty relative interior, deduplicate by ray set, and order by (ray count,
// lexicographic rays). With pairwise_overlaps, also reports the nonempty
// pairwise intersections of distinct cells. Preconditions as for
// reduction_inequality_sets; Error(GuardExceeded) when the number of
// transversals exceeds kTransversalCap.
ReductionComplex distance_reducing_complex(const MoveSet& basis, const MoveSet& all,
                                           const Int& coeff_bound,
                                           bool pairwise_overlaps = false);

}  // namespace msmb
