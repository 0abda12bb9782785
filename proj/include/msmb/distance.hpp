// Distance-reduction predicates (plain and strong), greedy fiber connection,
// distance-irreducible sets, single-element reducer queries and the
// enumeration of all minimal (strongly) distance-reducing Markov bases.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "msmb/bases.hpp"
#include "msmb/moveset.hpp"

namespace msmb {

enum class Side { positive_part, negative_part };
enum class Direction { add, subtract };

const char* side_name(Side s);
const char* direction_name(Direction d);

// One strictly norm-decreasing application of `reducer` to one endpoint of
// the pair (z⁺, z⁻).
struct ReductionWitness {
  IntVector target;   // z
  IntVector reducer;  // u, as stored in the move set
  Side side;          // endpoint u is applied to
  Direction direction;
  Int norm_before;  // ||z||
  Int norm_after;   // distance after the application
};

// Tests the four applications of u (and thereby of -u) against z, in the
// fixed clause order: z⁺+u, z⁺-u, z⁻+u, z⁻-u. With a side filter, only that
// endpoint's two clauses are examined. Returns the first strict decrease.
std::optional<ReductionWitness> reduction_by(const IntVector& u, const IntVector& z,
                                             std::optional<Side> side = std::nullopt);

// First witness over B in canonical move order (clauses nested innermost).
// Requires z ∈ ker(ambient); note the answer is invariant under z ↦ -z.
std::optional<ReductionWitness> reduces_element(const MoveSet& B, const IntVector& z);

// Requires a witness on the z⁺ endpoint and one on the z⁻ endpoint, found
// independently (possibly through different moves).
std::optional<std::pair<ReductionWitness, ReductionWitness>> strongly_reduces_element(
    const MoveSet& B, const IntVector& z);

// One candidate application of a move to one endpoint of (z⁺, z⁻), recorded
// whether or not it decreases the distance; used to explain failed checks.
struct Application {
  IntVector move;
  Side side;
  Direction direction;
  bool applicable = false;  // endpoint dominates the required part of the move
  Int norm_after;           // meaningful only when applicable
};

// The 4·|B| candidate applications against z in scan order (moves outer,
// clauses inner). Requires z ∈ ker(ambient).
std::vector<Application> all_applications(const MoveSet& B, const IntVector& z);

struct ReducingCheck {
  bool ok = true;
  IntVector witness;  // first unreduced Graver element when ok is false
};

// B reduces every nonzero kernel element iff it reduces every Graver element,
// so only canonical Graver moves are scanned.
ReducingCheck is_distance_reducing(const SemigroupMatrix& A, const MoveSet& B);
ReducingCheck is_strongly_distance_reducing(const SemigroupMatrix& A, const MoveSet& B);

// Transforms x into y by successive applications of ±moves of B, each step
// strictly decreasing ||x - y||; returns the applied deltas in order (apply
// x += delta successively to walk the path; intermediates stay nonnegative).
// Throws Error(NotReducing) when B is not distance reducing, and
// Error(InvalidInput) when x, y are not nonnegative points of one fiber.
std::vector<IntVector> greedy_connect(const MoveSet& B, const IntVector& x, const IntVector& y);

// The four distance-irreducible sets. The one-sided sets are genuinely
// sign-asymmetric, so they are kept as signed lex-sorted lists; their
// intersection and union are symmetric and stored canonically.
struct IrreducibleSets {
  std::vector<IntVector> d_plus;   // no positive distance decomposition
  std::vector<IntVector> d_minus;  // no negative distance decomposition; = -d_plus
  MoveSet d;                       // d_plus ∩ d_minus
  MoveSet d_weak;                  // d_plus ∪ d_minus
};

// Filters ±graver(A): z belongs to d_plus iff there is no z = u + v with
// u, v nonzero kernel elements, u⁺ ≤ z⁺ and ||v|| < ||z|| (v is enumerated
// from the kernel ball of radius ||z||-1); mirrored for d_minus. With
// summands_from_graver the candidate u is additionally required to be a
// Graver element (an experimental restriction; no equality is claimed).
IrreducibleSets irreducible_sets(const SemigroupMatrix& A, bool summands_from_graver = false);

// All canonical moves z with ||z|| ≤ bound such that {z} reduces g (on the
// given endpoint only, when a side is passed). A negative bound selects the
// default 2·max{||h|| : h ∈ graver(A)}, beyond which no move can reduce any
// Graver element.
MoveSet reducers_of(const SemigroupMatrix& A, const IntVector& g, const Int& bound = Int(-1),
                    std::optional<Side> side = std::nullopt);

// Every inclusion-minimal set hitting each member of `family` (sets given as
// lex-sorted element lists). Deterministic order; throws Error(BudgetExceeded)
// on blow-up.
std::vector<std::vector<IntVector>> minimal_hitting_sets(
    const std::vector<std::vector<IntVector>>& family);

struct UniversalReducing {
  MoveSet core;                      // contained in every qualifying basis
  std::vector<IntVector> unreduced;  // canonical Graver moves the core misses
  std::vector<MoveSet> minimal_bases;
  MoveSet universal;  // union of the minimal bases
};

// Minimal distance-reducing Markov bases and their union. Every qualifying
// basis contains d = core and must reduce each unreduced Graver element g by
// some move of norm ≤ 2·max Graver norm, so the bases are exactly
// core ∪ X over the minimal hitting sets X of the reducer families.
UniversalReducing universal_distance_reducing(const SemigroupMatrix& A);
// Strong analogue: core d_weak, with the hit requirement split per endpoint.
UniversalReducing universal_strongly_distance_reducing(const SemigroupMatrix& A);

}  // namespace msmb
