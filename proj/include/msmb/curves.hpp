// Specialisations for 1×n matrices (numerical semigroups / monomial curves):
// semigroup membership, gluings and gluing-type trees with
// complete-intersection detection, the dimension-3 classification of minimal
// Markov bases, the sign game and the triangular (first-kind) normal form it
// certifies, the R_{i,j} inequalities on that form, and closed-form
// distance-reduction checkers for dimensions 3 and 4.
#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "msmb/distance.hpp"
#include "msmb/matrix.hpp"
#include "msmb/moveset.hpp"

namespace msmb {

// Decides x ∈ ℕ·gens by a table of reachable values up to x.
// Throws Error(InvalidInput) for empty/nonpositive generators or negative x,
// Error(BoundTooLarge) when the table would exceed the search budget.
bool semigroup_member(const std::vector<Int>& gens, const Int& x);

// One bipartition of the columns witnessing a gluing: with B, C the entry
// lists of the two sides, x = lcm(gcd B, gcd C) generates ℤB ∩ ℤC, and the
// split is a gluing exactly when x ∈ ℕB ∩ ℕC.
struct GluingSplit {
  std::vector<int> left;   // column indices, increasing; contains column 0
  std::vector<int> right;  // the complement, increasing
  Int x;
};

// Every gluing bipartition, ordered by (left size, lexicographic left).
// Empty result = no gluing. Throws Error(GuardExceeded) beyond 12 columns.
std::vector<GluingSplit> find_gluings(const SemigroupMatrix& A);

// Binary gluing tree: a leaf holds one generator, a node glues the semigroups
// of its two subtrees over the value x = lcm(gcd(leaves left), gcd(leaves
// right)), which lies in both subsemigroups.
class GluingTree {
 public:
  static GluingTree leaf(Int a);
  static GluingTree node(GluingTree left, GluingTree right, Int x);

  bool is_leaf() const { return left_ == nullptr; }
  // The generator (leaf) or the gluing value x (node).
  const Int& value() const { return value_; }
  const GluingTree& left() const;
  const GluingTree& right() const;

  // Leaf values in left-to-right order.
  std::vector<Int> leaves() const;
  // "(3 ∘_15 5)" style rendering; ascii swaps "∘_" for "o_".
  std::string type_string(bool ascii = false) const;

  bool operator==(const GluingTree& o) const;
  bool operator!=(const GluingTree& o) const { return !(*this == o); }

 private:
  GluingTree() = default;
  Int value_;
  std::shared_ptr<const GluingTree> left_, right_;
};

// First gluing tree in the deterministic search order (left blocks contain
// the lowest remaining column; splits tried by size then lexicographically),
// or nullopt when A is not a complete intersection. A single column is a
// leaf. Throws Error(GuardExceeded) beyond 12 columns.
std::optional<GluingTree> gluing_type(const SemigroupMatrix& A);

// Every gluing tree, in the same deterministic order.
std::vector<GluingTree> gluing_type_all(const SemigroupMatrix& A);

// A 1×n matrix is a complete intersection exactly when some gluing splits it
// into two complete intersections, i.e. when a gluing tree exists.
bool is_complete_intersection(const SemigroupMatrix& A);

// Parses "(3 ∘_15 5)" / "(3 o_15 5)" grammar (leaf = decimal integer) and
// validates the gluing invariants at every node. Throws Error(ParseError) on
// malformed input, Error(InvalidInput) when a node is not a genuine gluing.
GluingTree parse_gluing_type(const std::string& text);

// Dimension-3 classification, case (1): the unique minimal Markov basis
// {g1, g2, g3} where g_i has its i-th coordinate equal to -c_i and strictly
// positive coordinates elsewhere, and g1 + g2 + g3 = 0.
struct HerzogNci {
  IntVector g1, g2, g3;
  Int c1, c2, c3;
};

// Dimension-3 classification, case (2): for one qualifying column pair, every
// minimal Markov basis is {b, c0 + λ·b} with λ in an explicit interval.
// Vectors are stored in the original column order; `perm` maps display slots
// to columns (slots 0, 1 carry the pair with the smaller generator first, so
// the displayed b is (b1, -b2, 0) with b1 > b2; slot 2 carries the rest).
struct HerzogCiFamily {
  int pivot_i = 0, pivot_j = 0;  // 0-based columns of the qualifying pair
  std::array<int, 3> perm{};     // perm[slot] = original column
  IntVector b;                   // the circuit on the pair, positive on perm[0]
  IntVector c0;                  // the λ = 0 basis member, negative on perm[2]
  Int lambda_min, lambda_max;    // inclusive; always contains 0
};

struct HerzogClassification {
  bool ci = false;
  Int scale;          // gcd of the entries; divided out for semigroup work
  IntVector reduced;  // entries / scale
  std::optional<HerzogNci> nci;          // engaged when !ci
  std::vector<HerzogCiFamily> families;  // engaged when ci; one per pair
  std::vector<MoveSet> bases;  // all minimal Markov bases, deduplicated,
                               // ordered lexicographically by move list
};

// Classifies the minimal Markov bases of (a1 a2 a3). The minimal multipliers
// c_i = min{k ≥ 1 : k·a_i ∈ ℕ{a_j, a_l}} decide the case: a pair (i, j)
// qualifies when c_i·a_i = c_j·a_j = lcm(a_i, a_j), i.e. the circuit on the
// pair is simultaneously the minimal type-i and type-j element.
// Throws Error(InvalidInput) for nonpositive entries and
// Error(NonDistinctEntries) for repeated ones.
HerzogClassification herzog_dim3(const Int& a1, const Int& a2, const Int& a3);

// Entrywise sign pattern of a k×n integer matrix; entries are -1, 0, +1.
class SignMatrix {
 public:
  static SignMatrix of(const MoveSet& M);  // rows = moves in canonical order
  static SignMatrix of_rows(const std::vector<IntVector>& rows);
  // Rows separated by ';' or newlines; entries '+', '-', '0' or '.';
  // spaces and commas are ignored. Throws Error(ParseError).
  static SignMatrix parse(const std::string& text);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int at(int i, int j) const { return s_[static_cast<size_t>(i) * cols_ + j]; }
  // Rows joined with ';', entries rendered '+', '-', '.'.
  std::string to_string() const;

 private:
  SignMatrix(int r, int c) : rows_(r), cols_(c), s_(static_cast<size_t>(r) * c, 0) {}
  int rows_ = 0, cols_ = 0;
  std::vector<int> s_;
};

// One game move: select entry (row, col), 1-based; the move deletes that row
// and that column. It is valid when the entry is the only nonzero one left in
// its column and no other live entry of its row has the same sign.
struct GameMove {
  int row = 0, col = 0;
};

// First winning deletion sequence in lexicographic (row, col) exploration
// order, or nullopt when no sequence deletes every entry. Losing states are
// memoised. Throws Error(GuardExceeded) beyond 31 rows or columns.
std::optional<std::vector<GameMove>> sign_game(const SignMatrix& S);

// Triangular normal form of a minimal Markov basis of a 1×n matrix: row i
// (2 ≤ i ≤ n) reads (u_{i,1}, …, u_{i,i-1}, -u_{i,i}, 0, …, 0) over the
// permuted columns, with every u_{i,j} ≥ 0, u_{i,i} > 0 and u_{2,1} ≥ u_{2,2}
// (so the first permuted generator is at most the second).
struct FirstKindBasis {
  SemigroupMatrix ambient;     // the original, unpermuted matrix
  int n = 0;
  std::vector<int> col_perm;   // col_perm[slot] = original column, 0-based
  std::vector<int> row_source; // row_source[i-2] = index into the move list
  std::vector<int> row_sign;   // ±1 applied to that move (after permuting)
  std::vector<IntVector> u;    // u[i-2] = (u_{i,1}, …, u_{i,i}), diagonal
                               // stored positive

  // u_{i,j} for 2 ≤ i ≤ n, 1 ≤ j ≤ i.
  const Int& entry(int i, int j) const { return u[i - 2][j - 1]; }
  // Generators in slot order.
  std::vector<Int> permuted_entries() const;
  // Row i as a length-n kernel element in the original column order.
  IntVector kernel_row(int i) const;
};

// Searches for the triangular form by playing the sign game on sign(M) and
// replaying a winning sequence: the k-th move sends its matrix row to
// triangular row n+1-k and its column to slot n+1-k; the surviving column
// becomes slot 1; row signs are flipped so diagonals are negative, and slots
// 1, 2 are swapped if needed. Returns nullopt when the game is lost, or when
// |M| ≠ n-1 (a triangular form has exactly n-1 rows). Throws
// Error(InvalidInput) when M is not a minimal Markov basis of A.
std::optional<FirstKindBasis> admits_first_kind(const SemigroupMatrix& A, const MoveSet& M);

// Evaluation of the three R_{i,j} alternatives on a triangular basis:
//   (i)   u_{i,1} + … + u_{i,i-1} < u_{i,i},
//   (ii)  some row ℓ strictly between i and j is supported on columns i, ℓ
//         alone and has u_{ℓ,i} > u_{ℓ,ℓ},
//   (iii) Σ_{k ≤ j} u_{j,k} < 2(u_{j,i} + u_{j,j}).
struct RijReport {
  int i = 0, j = 0;
  bool cond_i = false, cond_ii = false, cond_iii = false;
  std::optional<int> witness_ell;  // the row certifying (ii)
  bool satisfied = false;          // any of the three
};

// Throws Error(IndexOutOfRange) unless 2 ≤ i < j ≤ n.
RijReport condition_Rij(const FirstKindBasis& F, int i, int j);

struct FirstKindCheck {
  bool reducing = true;            // all pairs satisfied
  std::vector<RijReport> reports;  // every pair 2 ≤ i < j ≤ n
};

// A triangular basis is distance reducing exactly when every R_{i,j} holds.
FirstKindCheck check_first_kind(const FirstKindBasis& F);

struct CircuitCheck {
  bool ok = true;
  IntVector failing_circuit;              // first canonical circuit missed
  std::vector<Application> applications;  // every move application against it
};

// Does M reduce the distance of every circuit of A? This is weaker than full
// distance reduction in general but equivalent for complete intersections and
// for the structured dimension-3/4 cases.
CircuitCheck check_reduces_circuits(const SemigroupMatrix& A, const MoveSet& M);

// Outcome of a structure-aware distance-reduction check. `method` names the
// decision route, `detail` spells out the decisive inequalities. On a
// negative answer `failing` holds an unreduced kernel element (a circuit for
// every structured route) and `applications` lists all candidate move
// applications against it. `fallback` marks the full-sweep route taken when
// no supported structure matches.
struct CheckReport {
  bool reducing = false;
  std::string method;
  std::string detail;
  std::optional<IntVector> failing;
  std::vector<Application> applications;
  bool fallback = false;
};

// Dimension-3 checker: classifies (a1 a2 a3), requires M to be one of its
// minimal Markov bases (Error(InvalidInput) otherwise), and decides distance
// reduction by the closed-form inequality of the matching case:
// pair case "c1 < c2+c3" on the displayed type-3 member, otherwise
// "v21 < c2+v23 or v31 < v32+c3" over ascending generators.
CheckReport check_dim3(const SemigroupMatrix& A, const MoveSet& M);

// Dimension-4 checker. Requires M to be a minimal Markov basis. Routes:
// triangular form (three inequality groups on u), split form
// {(b1,-b2,0,0), (0,0,c3,-c4), (d1,d2,-d3,-d4)} (d1 or d3 vanishes, and
// d1+d3 < d2+d4), glued triple (dimension-3 inequalities plus
// "v21+v23 < c2 or h1+h3 < h2+h4" and "h1+h2 < h3+h4"), and otherwise a
// full-sweep fallback flagged with `fallback`.
CheckReport check_dim4(const SemigroupMatrix& A, const MoveSet& M);

}  // namespace msmb
