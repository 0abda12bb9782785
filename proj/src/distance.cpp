#include "msmb/distance.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "msmb/error.hpp"
#include "msmb/vec.hpp"

namespace msmb {

const char* side_name(Side s) {
  return s == Side::positive_part ? "positive_part" : "negative_part";
}

const char* direction_name(Direction d) { return d == Direction::add ? "add" : "subtract"; }

std::optional<ReductionWitness> reduction_by(const IntVector& u, const IntVector& z,
                                             std::optional<Side> side) {
  const IntVector zp = plus_part(z), zm = minus_part(z);
  const IntVector up = plus_part(u), um = minus_part(u);
  const Int before = norm1(z);

  struct Clause {
    Side side;
    Direction direction;
  };
  static const Clause order[4] = {{Side::positive_part, Direction::add},
                                  {Side::positive_part, Direction::subtract},
                                  {Side::negative_part, Direction::add},
                                  {Side::negative_part, Direction::subtract}};
  for (const Clause& c : order) {
    if (side && *side != c.side) continue;
    const IntVector& endpoint = c.side == Side::positive_part ? zp : zm;
    const IntVector& needed = c.direction == Direction::add ? um : up;
    if (!leq(needed, endpoint)) continue;
    // Moving one endpoint changes the difference z by ±u; the sign depends on
    // which endpoint moves (z = z⁺ - z⁻).
    bool diff_gains_u = (c.side == Side::positive_part) == (c.direction == Direction::add);
    Int after = norm1(diff_gains_u ? add(z, u) : sub(z, u));
    if (after < before)
      return ReductionWitness{z, u, c.side, c.direction, before, after};
  }
  return std::nullopt;
}

std::vector<Application> all_applications(const MoveSet& B, const IntVector& z) {
  if (!B.ambient().in_kernel(z))
    throw Error(ErrorKind::InvalidInput, "element " + to_string(z) + " is not in the kernel");
  const IntVector zp = plus_part(z), zm = minus_part(z);
  static const std::pair<Side, Direction> order[4] = {
      {Side::positive_part, Direction::add},
      {Side::positive_part, Direction::subtract},
      {Side::negative_part, Direction::add},
      {Side::negative_part, Direction::subtract}};
  std::vector<Application> out;
  for (const IntVector& u : B.moves()) {
    for (const auto& [side, direction] : order) {
      Application app;
      app.move = u;
      app.side = side;
      app.direction = direction;
      const IntVector& endpoint = side == Side::positive_part ? zp : zm;
      const IntVector needed =
          direction == Direction::add ? minus_part(u) : plus_part(u);
      app.applicable = leq(needed, endpoint);
      if (app.applicable) {
        bool diff_gains_u = (side == Side::positive_part) == (direction == Direction::add);
        app.norm_after = norm1(diff_gains_u ? add(z, u) : sub(z, u));
      }
      out.push_back(std::move(app));
    }
  }
  return out;
}

std::optional<ReductionWitness> reduces_element(const MoveSet& B, const IntVector& z) {
  if (!B.ambient().in_kernel(z))
    throw Error(ErrorKind::InvalidInput, "element " + to_string(z) + " is not in the kernel");
  for (const IntVector& u : B.moves())
    if (auto w = reduction_by(u, z)) return w;
  return std::nullopt;
}

std::optional<std::pair<ReductionWitness, ReductionWitness>> strongly_reduces_element(
    const MoveSet& B, const IntVector& z) {
  if (!B.ambient().in_kernel(z))
    throw Error(ErrorKind::InvalidInput, "element " + to_string(z) + " is not in the kernel");
  std::optional<ReductionWitness> pos, neg;
  for (const IntVector& u : B.moves()) {
    if (!pos) pos = reduction_by(u, z, Side::positive_part);
    if (!neg) neg = reduction_by(u, z, Side::negative_part);
    if (pos && neg) return std::make_pair(*pos, *neg);
  }
  return std::nullopt;
}

namespace {

ReducingCheck reducing_check(const SemigroupMatrix& A, const MoveSet& B, bool strong) {
  if (!(B.ambient() == A))
    throw Error(ErrorKind::InvalidInput, "move set belongs to a different matrix");
  ReducingCheck res;
  // Reduction of z and of -z are equivalent (the four clauses swap), so the
  // canonical Graver representatives cover the whole Graver basis.
  const MoveSet G = graver(A);
  for (const IntVector& g : G.moves()) {
    bool ok = strong ? strongly_reduces_element(B, g).has_value()
                     : reduces_element(B, g).has_value();
    if (!ok) {
      res.ok = false;
      res.witness = g;
      return res;
    }
  }
  return res;
}

}  // namespace

ReducingCheck is_distance_reducing(const SemigroupMatrix& A, const MoveSet& B) {
  return reducing_check(A, B, false);
}

ReducingCheck is_strongly_distance_reducing(const SemigroupMatrix& A, const MoveSet& B) {
  return reducing_check(A, B, true);
}

std::vector<IntVector> greedy_connect(const MoveSet& B, const IntVector& x, const IntVector& y) {
  const SemigroupMatrix& A = B.ambient();
  if (x.size() != y.size() || static_cast<int>(x.size()) != A.cols())
    throw Error(ErrorKind::InvalidInput, "points have the wrong dimension");
  if (!is_nonneg(x) || !is_nonneg(y))
    throw Error(ErrorKind::InvalidInput, "fiber points must be nonnegative");
  if (A.mul(x) != A.mul(y))
    throw Error(ErrorKind::InvalidInput, "points lie in different fibers");
  ReducingCheck rc = is_distance_reducing(A, B);
  if (!rc.ok)
    throw Error(ErrorKind::NotReducing,
                "basis does not reduce " + to_string(rc.witness));

  // Witnesses are evaluated on z = x_cur - y_cur; applicability on the actual
  // points follows because x_cur ≥ z⁺ and y_cur ≥ z⁻. Steps on the y side are
  // collected separately and replayed backwards (negated) at the end, so the
  // output walks x → meeting point → y through nonnegative intermediates.
  IntVector xc = x, yc = y;
  std::vector<IntVector> xsteps, ysteps;
  while (xc != yc) {
    IntVector z = sub(xc, yc);
    std::optional<ReductionWitness> best;
    for (const IntVector& u : B.moves()) {
      auto w = reduction_by(u, z);
      if (w && (!best || w->norm_after < best->norm_after)) best = w;
    }
    assert(best && "a distance-reducing basis reduces every kernel element");
    IntVector delta =
        best->direction == Direction::add ? best->reducer : neg(best->reducer);
    if (best->side == Side::positive_part) {
      xc = add(xc, delta);
      assert(is_nonneg(xc));
      xsteps.push_back(delta);
    } else {
      yc = add(yc, delta);
      assert(is_nonneg(yc));
      ysteps.push_back(delta);
    }
  }
  std::vector<IntVector> path = std::move(xsteps);
  for (auto it = ysteps.rbegin(); it != ysteps.rend(); ++it) path.push_back(neg(*it));
  return path;
}

namespace {

// Does z = u + v with v drawn from ±ball give a distance decomposition on the
// requested side? plus side: u⁺ ≤ z⁺; minus side: u⁻ ≤ z⁻. ||v|| < ||z|| holds
// by the ball radius; u, v must be nonzero.
bool has_distance_decomposition(const IntVector& z, const std::vector<IntVector>& ball_signed,
                                bool plus_side, const MoveSet* summand_filter) {
  const Int nz = norm1(z);
  for (const IntVector& v : ball_signed) {
    if (norm1(v) >= nz) continue;
    IntVector u = sub(z, v);
    if (is_zero(u)) continue;
    if (plus_side ? !leq(plus_part(u), plus_part(z)) : !leq(minus_part(u), minus_part(z)))
      continue;
    if (summand_filter && !summand_filter->contains(u)) continue;
    return true;
  }
  return false;
}

}  // namespace

IrreducibleSets irreducible_sets(const SemigroupMatrix& A, bool summands_from_graver) {
  const MoveSet G = graver(A);
  const Int maxnorm = G.max_norm();
  std::vector<IntVector> ball_signed;
  if (maxnorm > 0)
    for (const IntVector& v : enumerate_kernel_ball(A, maxnorm - 1)) {
      ball_signed.push_back(v);
      ball_signed.push_back(neg(v));
    }

  std::vector<IntVector> d_plus, d_minus;
  std::vector<IntVector> d_moves, dw_moves;
  for (const IntVector& zc : G.moves()) {
    bool in_plus[2], in_minus[2];
    const IntVector zn = neg(zc);
    const MoveSet* filt = summands_from_graver ? &G : nullptr;
    in_plus[0] = !has_distance_decomposition(zc, ball_signed, true, filt);
    in_plus[1] = !has_distance_decomposition(zn, ball_signed, true, filt);
    in_minus[0] = !has_distance_decomposition(zc, ball_signed, false, filt);
    in_minus[1] = !has_distance_decomposition(zn, ball_signed, false, filt);
    if (in_plus[0]) d_plus.push_back(zc);
    if (in_plus[1]) d_plus.push_back(zn);
    if (in_minus[0]) d_minus.push_back(zc);
    if (in_minus[1]) d_minus.push_back(zn);
    if ((in_plus[0] && in_minus[0]) || (in_plus[1] && in_minus[1])) d_moves.push_back(zc);
    if (in_plus[0] || in_minus[0] || in_plus[1] || in_minus[1]) dw_moves.push_back(zc);
  }
  std::sort(d_plus.begin(), d_plus.end(), lex_less);
  std::sort(d_minus.begin(), d_minus.end(), lex_less);
  // Negating a decomposition z = u + v to -z = (-u) + (-v) swaps the sides.
  {
    std::vector<IntVector> neg_plus;
    neg_plus.reserve(d_plus.size());
    for (const IntVector& v : d_plus) neg_plus.push_back(neg(v));
    std::sort(neg_plus.begin(), neg_plus.end(), lex_less);
    assert(neg_plus == d_minus);
  }
  return IrreducibleSets{std::move(d_plus), std::move(d_minus),
                         MoveSet::of(A, std::move(d_moves)),
                         MoveSet::of(A, std::move(dw_moves))};
}

MoveSet reducers_of(const SemigroupMatrix& A, const IntVector& g, const Int& bound,
                    std::optional<Side> side) {
  if (!A.in_kernel(g))
    throw Error(ErrorKind::InvalidInput, "element " + to_string(g) + " is not in the kernel");
  Int b = bound;
  if (sgn(b) < 0) b = 2 * graver(A).max_norm();
  std::vector<IntVector> hits;
  for (const IntVector& t : enumerate_kernel_ball(A, b))
    if (reduction_by(t, g, side)) hits.push_back(t);
  return MoveSet::of(A, std::move(hits));
}

namespace {
constexpr std::size_t kHittingNodeCap = 1000000;

void hitting_rec(const std::vector<std::vector<IntVector>>& family, std::vector<IntVector>& cur,
                 std::set<std::vector<IntVector>>& out, std::size_t& nodes) {
  if (++nodes > kHittingNodeCap)
    throw Error(ErrorKind::BudgetExceeded, "hitting-set search budget exhausted");
  auto hits = [&cur](const std::vector<IntVector>& s) {
    for (const IntVector& e : s)
      if (std::binary_search(cur.begin(), cur.end(), e, lex_less)) return true;
    return false;
  };
  const std::vector<IntVector>* first_unhit = nullptr;
  for (const auto& s : family)
    if (!hits(s)) {
      first_unhit = &s;
      break;
    }
  if (!first_unhit) {
    // Keep only inclusion-minimal candidates: every element must be needed.
    for (const IntVector& e : cur) {
      std::vector<IntVector> rest;
      for (const IntVector& f : cur)
        if (f != e) rest.push_back(f);
      bool still_hits_all = true;
      for (const auto& s : family) {
        bool h = false;
        for (const IntVector& x : s)
          if (std::binary_search(rest.begin(), rest.end(), x, lex_less)) {
            h = true;
            break;
          }
        if (!h) {
          still_hits_all = false;
          break;
        }
      }
      if (still_hits_all) return;  // e redundant → cur not minimal
    }
    out.insert(cur);
    return;
  }
  for (const IntVector& e : *first_unhit) {
    if (std::binary_search(cur.begin(), cur.end(), e, lex_less)) continue;
    auto pos = std::lower_bound(cur.begin(), cur.end(), e, lex_less);
    cur.insert(pos, e);
    hitting_rec(family, cur, out, nodes);
    cur.erase(std::lower_bound(cur.begin(), cur.end(), e, lex_less));
  }
}

}  // namespace

std::vector<std::vector<IntVector>> minimal_hitting_sets(
    const std::vector<std::vector<IntVector>>& family) {
  for (const auto& s : family)
    if (s.empty()) throw Error(ErrorKind::InvalidInput, "empty set cannot be hit");
  std::set<std::vector<IntVector>> out;
  std::vector<IntVector> cur;
  std::size_t nodes = 0;
  hitting_rec(family, cur, out, nodes);
  return std::vector<std::vector<IntVector>>(out.begin(), out.end());
}

namespace {

UniversalReducing universal_impl(const SemigroupMatrix& A, bool strong) {
  const MoveSet G = graver(A);
  IrreducibleSets irr = irreducible_sets(A);
  MoveSet core = strong ? irr.d_weak : irr.d;
  const Int N = 2 * G.max_norm();

  // Requirement sets: for each Graver move the core fails to reduce, the
  // moves of norm ≤ N that would; beyond N nothing reduces a Graver element.
  // Each set contains the move itself, so it is never empty.
  std::vector<std::vector<IntVector>> family;
  std::vector<IntVector> unreduced;
  for (const IntVector& g : G.moves()) {
    if (!strong) {
      if (!reduces_element(core, g)) {
        unreduced.push_back(g);
        family.push_back(reducers_of(A, g, N).moves());
      }
    } else {
      bool miss = false;
      for (Side s : {Side::positive_part, Side::negative_part}) {
        bool covered = false;
        for (const IntVector& u : core.moves())
          if (reduction_by(u, g, s)) {
            covered = true;
            break;
          }
        if (!covered) {
          family.push_back(reducers_of(A, g, N, s).moves());
          miss = true;
        }
      }
      if (miss) unreduced.push_back(g);
    }
  }

  UniversalReducing res{core, std::move(unreduced), {}, core};
  if (family.empty()) {
    res.minimal_bases.push_back(core.with_kind(MoveKind::markov));
    res.universal = core;
    return res;
  }
  std::vector<IntVector> uni = core.moves();
  for (const std::vector<IntVector>& X : minimal_hitting_sets(family)) {
    std::vector<IntVector> b = core.moves();
    b.insert(b.end(), X.begin(), X.end());
    res.minimal_bases.push_back(MoveSet::of(A, std::move(b), MoveKind::markov));
    uni.insert(uni.end(), X.begin(), X.end());
  }
  res.universal = MoveSet::of(A, std::move(uni));
  return res;
}

}  // namespace

UniversalReducing universal_distance_reducing(const SemigroupMatrix& A) {
  return universal_impl(A, false);
}

UniversalReducing universal_strongly_distance_reducing(const SemigroupMatrix& A) {
  return universal_impl(A, true);
}

}  // namespace msmb
