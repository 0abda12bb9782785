// Canonically ordered sets of lattice moves attached to their ambient matrix.
#pragma once

#include <string>
#include <vector>

#include "msmb/matrix.hpp"

namespace msmb {

enum class MoveKind { circuits, graver, markov, indispensable, universal_markov, custom };

const char* move_kind_name(MoveKind k);

// A finite set of nonzero kernel elements of one matrix, stored canonically:
// each move sign-normalised (first nonzero entry positive), deduplicated and
// lexicographically sorted. A move represents the pair {z, -z}.
class MoveSet {
 public:
  // Validates: every move has length A.cols(), is nonzero and lies in ker(A).
  static MoveSet of(SemigroupMatrix A, std::vector<IntVector> moves,
                    MoveKind kind = MoveKind::custom);

  const SemigroupMatrix& ambient() const { return ambient_; }
  const std::vector<IntVector>& moves() const { return moves_; }
  MoveKind kind() const { return kind_; }
  std::size_t size() const { return moves_.size(); }
  bool empty() const { return moves_.empty(); }

  // Membership of the unordered pair {z, -z}.
  bool contains(const IntVector& z) const;

  MoveSet with_kind(MoveKind k) const;
  // Set operations require equal ambient matrices; results are tagged custom.
  MoveSet unite(const MoveSet& o) const;
  MoveSet intersect(const MoveSet& o) const;
  MoveSet subtract(const MoveSet& o) const;

  bool operator==(const MoveSet& o) const {
    return ambient_ == o.ambient_ && moves_ == o.moves_;
  }

  // Largest 1-norm over the moves (0 when empty).
  Int max_norm() const;
  // Both signs of every move, lex-sorted.
  std::vector<IntVector> signed_moves() const;

 private:
  MoveSet(SemigroupMatrix a, std::vector<IntVector> m, MoveKind k)
      : ambient_(std::move(a)), moves_(std::move(m)), kind_(k) {}

  SemigroupMatrix ambient_;
  std::vector<IntVector> moves_;
  MoveKind kind_;
};

}  // namespace msmb
