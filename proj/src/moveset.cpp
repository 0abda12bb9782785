#include "msmb/moveset.hpp"

#include <algorithm>
#include <iterator>

#include "msmb/error.hpp"
#include "msmb/vec.hpp"

namespace msmb {

const char* move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::circuits: return "circuits";
    case MoveKind::graver: return "graver";
    case MoveKind::markov: return "markov";
    case MoveKind::indispensable: return "indispensable";
    case MoveKind::universal_markov: return "universal_markov";
    case MoveKind::custom: return "custom";
  }
  return "custom";
}

MoveSet MoveSet::of(SemigroupMatrix A, std::vector<IntVector> moves, MoveKind kind) {
  std::vector<IntVector> canon;
  canon.reserve(moves.size());
  for (IntVector& z : moves) {
    if (static_cast<int>(z.size()) != A.cols())
      throw Error(ErrorKind::InvalidInput, "move " + to_string(z) + " has wrong length");
    if (is_zero(z)) throw Error(ErrorKind::InvalidInput, "zero vector is not a move");
    if (!A.in_kernel(z))
      throw Error(ErrorKind::InvalidInput, "move " + to_string(z) + " is not in the kernel");
    canon.push_back(canonical(std::move(z)));
  }
  std::sort(canon.begin(), canon.end(), lex_less);
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  return MoveSet(std::move(A), std::move(canon), kind);
}

bool MoveSet::contains(const IntVector& z) const {
  IntVector c = canonical(z);
  return std::binary_search(moves_.begin(), moves_.end(), c, lex_less);
}

MoveSet MoveSet::with_kind(MoveKind k) const { return MoveSet(ambient_, moves_, k); }

namespace {
void require_same_ambient(const MoveSet& a, const MoveSet& b) {
  if (!(a.ambient() == b.ambient()))
    throw Error(ErrorKind::InvalidInput, "move sets have different ambient matrices");
}
}  // namespace

MoveSet MoveSet::unite(const MoveSet& o) const {
  require_same_ambient(*this, o);
  std::vector<IntVector> out;
  std::set_union(moves_.begin(), moves_.end(), o.moves_.begin(), o.moves_.end(),
                 std::back_inserter(out), lex_less);
  return MoveSet(ambient_, std::move(out), MoveKind::custom);
}

MoveSet MoveSet::intersect(const MoveSet& o) const {
  require_same_ambient(*this, o);
  std::vector<IntVector> out;
  std::set_intersection(moves_.begin(), moves_.end(), o.moves_.begin(), o.moves_.end(),
                        std::back_inserter(out), lex_less);
  return MoveSet(ambient_, std::move(out), MoveKind::custom);
}

MoveSet MoveSet::subtract(const MoveSet& o) const {
  require_same_ambient(*this, o);
  std::vector<IntVector> out;
  std::set_difference(moves_.begin(), moves_.end(), o.moves_.begin(), o.moves_.end(),
                      std::back_inserter(out), lex_less);
  return MoveSet(ambient_, std::move(out), MoveKind::custom);
}

Int MoveSet::max_norm() const {
  Int m = 0;
  for (const IntVector& z : moves_) m = std::max(m, norm1(z));
  return m;
}

std::vector<IntVector> MoveSet::signed_moves() const {
  std::vector<IntVector> out;
  out.reserve(2 * moves_.size());
  for (const IntVector& z : moves_) {
    out.push_back(z);
    out.push_back(neg(z));
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

}  // namespace msmb
