#include <algorithm>
#include <optional>
#include <vector>

#include "doctest.h"
#include "msmb/bases.hpp"
#include "msmb/distance.hpp"
#include "msmb/error.hpp"
#include "msmb/lattice.hpp"
#include "oracles.hpp"

using msmb::Application;
using msmb::Direction;
using msmb::Error;
using msmb::ErrorKind;
using msmb::Int;
using msmb::IntVector;
using msmb::MoveSet;
using msmb::ReductionWitness;
using msmb::SemigroupMatrix;
using msmb::Side;
using oracle::iv;

namespace {

long small(const Int& x) {
  REQUIRE(x.fits_slong_p());
  return x.get_si();
}

IntVector negate(IntVector z) {
  for (Int& c : z) c = -c;
  return z;
}

Int max_norm(const std::vector<IntVector>& moves) {
  Int r = 0;
  for (const IntVector& m : moves) {
    Int n = oracle::norm1(m);
    if (n > r) r = n;
  }
  return r;
}

// Expected distance after applying the clause (side, direction) of u to z.
Int clause_norm(const IntVector& u, const IntVector& z, Side s, Direction d) {
  bool toward = (s == Side::positive_part) == (d == Direction::add);
  return toward ? oracle::norm1(oracle::add(z, u)) : oracle::norm1(oracle::sub(z, u));
}

bool clause_applicable(const IntVector& u, const IntVector& z, Side s, Direction d) {
  IntVector endpoint = (s == Side::positive_part) ? oracle::plus_part(z) : oracle::minus_part(z);
  IntVector moved = (d == Direction::add) ? oracle::add(endpoint, u) : oracle::sub(endpoint, u);
  return oracle::nonneg(moved);
}

void check_witness(const ReductionWitness& w, const IntVector& z,
                   const std::vector<IntVector>& allowed) {
  CHECK(w.target == z);
  CHECK(std::find(allowed.begin(), allowed.end(), w.reducer) != allowed.end());
  CHECK(w.norm_before == oracle::norm1(z));
  CHECK(w.norm_after < w.norm_before);
  CHECK(clause_applicable(w.reducer, z, w.side, w.direction));
  CHECK(clause_norm(w.reducer, z, w.side, w.direction) == w.norm_after);
}

}  // namespace

TEST_CASE("element reduction agrees with the fiber-walk oracle") {
  oracle::Rng rng(20260814);
  for (const auto& entries : {iv({2, 3, 4}), iv({3, 5, 11}), iv({3, 5, 9})}) {
    SemigroupMatrix A = SemigroupMatrix::row(entries);
    auto G = msmb::graver(A).moves();
    auto ball = oracle::kernel_ball(A.entries(), 9);
    REQUIRE(!ball.empty());
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<IntVector> sub;
      for (const IntVector& g : G)
        if (rng.pick(0, 1)) sub.push_back(g);
      if (sub.empty()) sub.push_back(G[static_cast<std::size_t>(rng.pick(0, 100)) % G.size()]);
      MoveSet B = MoveSet::of(A, sub, msmb::MoveKind::custom);
      const IntVector& z = ball[static_cast<std::size_t>(rng.pick(0, 1000)) % ball.size()];

      auto w = msmb::reduces_element(B, z);
      CHECK(w.has_value() == oracle::reduces(B.moves(), z));
      CHECK(w.has_value() == msmb::reduces_element(B, negate(z)).has_value());
      if (w) check_witness(*w, z, B.moves());

      auto s = msmb::strongly_reduces_element(B, z);
      CHECK(s.has_value() == oracle::strongly_reduces(B.moves(), z));
      if (s) {
        CHECK(w.has_value());
        CHECK(s->first.side == Side::positive_part);
        CHECK(s->second.side == Side::negative_part);
        check_witness(s->first, z, B.moves());
        check_witness(s->second, z, B.moves());
      }

      // The returned witness is the first hit of the application scan.
      auto apps = msmb::all_applications(B, z);
      REQUIRE(apps.size() == 4 * B.moves().size());
      std::optional<std::size_t> first;
      for (std::size_t k = 0; k < apps.size(); ++k) {
        const Application& app = apps[k];
        CHECK(app.move == B.moves()[k / 4]);
        Side side = (k % 4 < 2) ? Side::positive_part : Side::negative_part;
        Direction dir = (k % 2 == 0) ? Direction::add : Direction::subtract;
        CHECK(app.side == side);
        CHECK(app.direction == dir);
        CHECK(app.applicable == clause_applicable(app.move, z, side, dir));
        if (app.applicable) {
          CHECK(app.norm_after == clause_norm(app.move, z, side, dir));
          if (!first && app.norm_after < oracle::norm1(z)) first = k;
        }
      }
      CHECK(w.has_value() == first.has_value());
      if (w && first) {
        CHECK(w->reducer == apps[*first].move);
        CHECK(w->side == apps[*first].side);
        CHECK(w->direction == apps[*first].direction);
        CHECK(w->norm_after == apps[*first].norm_after);
      }
    }
  }
}

TEST_CASE("reduction by one move respects the clause order and side filter") {
  SemigroupMatrix A = SemigroupMatrix::row(iv({3, 5, 11}));
  auto ball = oracle::kernel_ball(A.entries(), 10);
  auto G = msmb::graver(A).moves();
  for (const IntVector& u : G) {
    for (const IntVector& z : ball) {
      auto full = msmb::reduction_by(u, z);
      bool any = false;
      for (int c = 0; c < 4 && !any; ++c) {
        Side s = (c < 2) ? Side::positive_part : Side::negative_part;
        Direction d = (c % 2 == 0) ? Direction::add : Direction::subtract;
        if (clause_applicable(u, z, s, d) && clause_norm(u, z, s, d) < oracle::norm1(z)) {
          any = true;
          REQUIRE(full.has_value());
          CHECK(full->side == s);
          CHECK(full->direction == d);
        }
      }
      CHECK(full.has_value() == any);
      for (Side s : {Side::positive_part, Side::negative_part}) {
        auto filtered = msmb::reduction_by(u, z, s);
        bool side_any = false;
        for (int c = 0; c < 4; ++c) {
          Side cs = (c < 2) ? Side::positive_part : Side::negative_part;
          if (cs != s) continue;
          Direction d = (c % 2 == 0) ? Direction::add : Direction::subtract;
          if (clause_applicable(u, z, cs, d) && clause_norm(u, z, cs, d) < oracle::norm1(z))
            side_any = true;
        }
        CHECK(filtered.has_value() == side_any);
        if (filtered) CHECK(filtered->side == s);
      }
    }
  }
}

TEST_CASE("the stuck element of the 3-5-11 curve") {
  SemigroupMatrix A = SemigroupMatrix::row(iv({3, 5, 11}));
  MoveSet M = MoveSet::of(A, {iv({5, -3, 0}), iv({2, 1, -1})}, msmb::MoveKind::markov);
  IntVector z = iv({0, 11, -5});
  CHECK_FALSE(msmb::reduces_element(M, z).has_value());

  auto apps = msmb::all_applications(M, z);
  REQUIRE(apps.size() == 8);
  // Canonical move order puts (2,1,-1) first; each move admits exactly one
  // applicable clause, landing at distance 16 and 18 — never below 16.
  CHECK(M.moves() == std::vector<IntVector>{iv({2, 1, -1}), iv({5, -3, 0})});
  std::vector<Int> applicable_norms;
  for (const Application& app : apps)
    if (app.applicable) applicable_norms.push_back(app.norm_after);
  CHECK(applicable_norms == std::vector<Int>{Int(16), Int(18)});
  CHECK(oracle::norm1(z) == 16);
}

TEST_CASE("distance reducing verdicts match a full ball sweep") {
  struct Case {
    IntVector entries;
    std::vector<IntVector> basis;
    bool want;
  };
  std::vector<Case> cases = {
      {iv({3, 5, 9}), {iv({5, -3, 0}), iv({3, 0, -1})}, false},
      {iv({3, 5, 9}), {iv({2, -3, 1}), iv({3, 0, -1})}, true},
      {iv({3, 5, 11}), {iv({5, -3, 0}), iv({2, 1, -1})}, false},
      {iv({2, 3, 4}), {iv({3, -2, 0}), iv({2, 0, -1})}, false},
      {iv({2, 3, 4}), {iv({2, 0, -1}), iv({1, -2, 1})}, true},
  };
  for (const Case& c : cases) {
    SemigroupMatrix A = SemigroupMatrix::row(c.entries);
    MoveSet B = MoveSet::of(A, c.basis, msmb::MoveKind::markov);
    auto weak = msmb::is_distance_reducing(A, B);
    CHECK(weak.ok == c.want);

    auto G = msmb::graver(A).moves();
    long radius = small(max_norm(G));
    bool oracle_weak = true, oracle_strong = true;
    for (const IntVector& z : oracle::kernel_ball(A.entries(), radius)) {
      if (!oracle::reduces(B.moves(), z)) oracle_weak = false;
      if (!oracle::strongly_reduces(B.moves(), z)) oracle_strong = false;
    }
    CHECK(weak.ok == oracle_weak);
    auto strong = msmb::is_strongly_distance_reducing(A, B);
    CHECK(strong.ok == oracle_strong);
    if (strong.ok) CHECK(weak.ok);

    if (!weak.ok) {
      CHECK(std::find(G.begin(), G.end(), weak.witness) != G.end());
      CHECK_FALSE(oracle::reduces(B.moves(), weak.witness));
    }
    if (!strong.ok) CHECK_FALSE(oracle::strongly_reduces(B.moves(), strong.witness));
  }
}

TEST_CASE("greedy connect produces a valid monotone walk") {
  SemigroupMatrix A = SemigroupMatrix::row(iv({3, 5, 9}));
  MoveSet B = MoveSet::of(A, {iv({2, -3, 1}), iv({3, 0, -1})}, msmb::MoveKind::markov);
  REQUIRE(msmb::is_distance_reducing(A, B).ok);
  oracle::Rng rng(5);
  for (long t : {30L, 45L, 60L, 90L}) {
    auto pts = oracle::fiber(A.entries(), iv({t}));
    REQUIRE(pts.size() >= 2);
    for (int trial = 0; trial < 6; ++trial) {
      const IntVector& x = pts[static_cast<std::size_t>(rng.pick(0, 1000)) % pts.size()];
      const IntVector& y = pts[static_cast<std::size_t>(rng.pick(0, 1000)) % pts.size()];
      auto path = msmb::greedy_connect(B, x, y);
      CHECK(oracle::norm1(oracle::sub(x, y)) >= Int(static_cast<long>(path.size())));
      IntVector cur = x;
      for (const IntVector& step : path) {
        bool is_move = false;
        for (const IntVector& m : B.moves())
          if (step == m || step == negate(m)) is_move = true;
        CHECK(is_move);
        cur = oracle::add(cur, step);
        CHECK(oracle::nonneg(cur));
      }
      CHECK(cur == y);
    }
  }

  SemigroupMatrix C = SemigroupMatrix::row(iv({3, 5, 11}));
  MoveSet M = MoveSet::of(C, {iv({5, -3, 0}), iv({2, 1, -1})}, msmb::MoveKind::markov);
  CHECK_THROWS_AS(msmb::greedy_connect(M, iv({0, 11, 0}), iv({0, 0, 5})), Error);
  try {
    msmb::greedy_connect(M, iv({0, 11, 0}), iv({0, 0, 5}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotReducing);
  }
  try {
    msmb::greedy_connect(M, iv({1, 0, 0}), iv({0, 1, 0}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
  try {
    msmb::greedy_connect(M, iv({-1, 0, 0}), iv({0, 1, 0}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
}

TEST_CASE("irreducible sets match their decomposition definition") {
  SemigroupMatrix A = SemigroupMatrix::row(iv({2, 3, 4}));
  auto ir = msmb::irreducible_sets(A);
  CHECK(ir.d_plus == std::vector<IntVector>{iv({-2, 0, 1}), iv({1, -2, 1}), iv({2, 0, -1})});
  CHECK(ir.d_minus == std::vector<IntVector>{iv({-2, 0, 1}), iv({-1, 2, -1}), iv({2, 0, -1})});
  CHECK(ir.d.moves() == std::vector<IntVector>{iv({2, 0, -1})});
  CHECK(ir.d_weak.moves() == oracle::canon_set({iv({2, 0, -1}), iv({1, -2, 1})}));

  for (const auto& entries : {iv({2, 3, 4}), iv({3, 5, 11})}) {
    SemigroupMatrix M = SemigroupMatrix::row(entries);
    auto sets = msmb::irreducible_sets(M);

    auto negated = sets.d_plus;
    for (IntVector& z : negated) z = negate(z);
    std::sort(negated.begin(), negated.end());
    CHECK(sets.d_minus == negated);

    // Membership per definition: z is plus-irreducible when no kernel summand
    // u = z - v with u⁺ ≤ z⁺ leaves a strictly shorter remainder v.
    auto G = msmb::graver(M).moves();
    std::vector<IntVector> signed_graver;
    for (const IntVector& g : G) {
      signed_graver.push_back(g);
      signed_graver.push_back(negate(g));
    }
    std::sort(signed_graver.begin(), signed_graver.end());
    auto leq = [](const IntVector& a, const IntVector& b) {
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
      return true;
    };
    std::vector<IntVector> want_plus, want_minus;
    for (const IntVector& z : signed_graver) {
      long shorter = small(oracle::norm1(z)) - 1;
      bool plus_ok = true, minus_ok = true;
      for (const IntVector& cv : oracle::kernel_ball(M.entries(), shorter)) {
        for (int sgn = 0; sgn < 2; ++sgn) {
          IntVector v = (sgn == 0) ? cv : negate(cv);
          IntVector u = oracle::sub(z, v);
          bool u_zero = true;
          for (const Int& c : u)
            if (c != 0) u_zero = false;
          if (u_zero) continue;
          if (leq(oracle::plus_part(u), oracle::plus_part(z))) plus_ok = false;
          if (leq(oracle::minus_part(u), oracle::minus_part(z))) minus_ok = false;
        }
      }
      if (plus_ok) want_plus.push_back(z);
      if (minus_ok) want_minus.push_back(z);
    }
    CHECK(sets.d_plus == want_plus);
    CHECK(sets.d_minus == want_minus);

    // Chain: indispensable ⊆ d ⊆ d_weak ⊆ Graver.
    auto ind = msmb::indispensables(M);
    for (const IntVector& m : ind.moves()) CHECK(sets.d.contains(m));
    for (const IntVector& m : sets.d.moves()) CHECK(sets.d_weak.contains(m));
    for (const IntVector& m : sets.d_weak.moves()) CHECK(msmb::graver(M).contains(m));

    // Restricting summands to Graver elements only enlarges the sets.
    auto restricted = msmb::irreducible_sets(M, true);
    for (const IntVector& z : sets.d_plus)
      CHECK(std::find(restricted.d_plus.begin(), restricted.d_plus.end(), z) !=
            restricted.d_plus.end());
  }
}

TEST_CASE("single-move reducers are sound and complete up to the bound") {
  SemigroupMatrix A = SemigroupMatrix::row(iv({3, 5, 11}));
  IntVector g = iv({0, 11, -5});
  const long bound = 12;
  auto found = msmb::reducers_of(A, g, Int(bound)).moves();
  for (const IntVector& m : found) {
    CHECK(oracle::norm1(m) <= bound);
    CHECK(oracle::reduces({m}, g));
  }
  std::vector<IntVector> expect;
  for (const IntVector& m : oracle::kernel_ball(A.entries(), bound))
    if (oracle::reduces({m}, g)) expect.push_back(m);
  CHECK(found == expect);

  for (Side s : {Side::positive_part, Side::negative_part}) {
    auto sided = msmb::reducers_of(A, g, Int(bound), s).moves();
    std::vector<IntVector> sided_expect;
    for (const IntVector& m : oracle::kernel_ball(A.entries(), bound))
      if (oracle::reduces_at({m}, g, s == Side::positive_part)) sided_expect.push_back(m);
    CHECK(sided == sided_expect);
  }
}

TEST_CASE("minimal hitting sets against subset brute force") {
  auto a = iv({1, 0, 0}), b = iv({0, 1, 0}), c = iv({0, 0, 1}), d = iv({1, 1, 0});
  std::vector<IntVector> universe = {a, b, c, d};

  auto brute = [&](const std::vector<std::vector<IntVector>>& family) {
    std::vector<std::vector<IntVector>> hitting;
    for (unsigned mask = 0; mask < 16; ++mask) {
      std::vector<IntVector> pick;
      for (unsigned i = 0; i < 4; ++i)
        if (mask & (1u << i)) pick.push_back(universe[i]);
      bool hits_all = true;
      for (const auto& f : family) {
        bool hit = false;
        for (const IntVector& e : pick)
          if (std::find(f.begin(), f.end(), e) != f.end()) hit = true;
        if (!hit) hits_all = false;
      }
      if (hits_all) hitting.push_back(pick);
    }
    std::vector<std::vector<IntVector>> minimal;
    for (const auto& h : hitting) {
      bool is_min = true;
      for (const auto& other : hitting) {
        if (other.size() >= h.size() || other == h) continue;
        bool subset = true;
        for (const IntVector& e : other)
          if (std::find(h.begin(), h.end(), e) == h.end()) subset = false;
        if (subset) is_min = false;
      }
      if (is_min) {
        auto sorted = h;
        std::sort(sorted.begin(), sorted.end());
        minimal.push_back(sorted);
      }
    }
    std::sort(minimal.begin(), minimal.end());
    minimal.erase(std::unique(minimal.begin(), minimal.end()), minimal.end());
    return minimal;
  };

  auto run = [&](std::vector<std::vector<IntVector>> family) {
    for (auto& f : family) std::sort(f.begin(), f.end());
    auto got = msmb::minimal_hitting_sets(family);
    for (auto& g : got) std::sort(g.begin(), g.end());
    std::sort(got.begin(), got.end());
    CHECK(got == brute(family));
  };

  run({{a}, {a, b}, {b, c}});
  run({{a, b}, {c, d}});
  run({{a, b, c, d}});
  run({{a}, {b}, {c}, {d}});
  run({{a, b}, {b, c}, {c, a}});
}

TEST_CASE("universal reducing bases of the 3-5-11 curve") {
  SemigroupMatrix A = SemigroupMatrix::row(iv({3, 5, 11}));
  auto uni = msmb::universal_distance_reducing(A);
  REQUIRE(uni.minimal_bases.size() == 2);
  std::vector<std::vector<IntVector>> got = {uni.minimal_bases[0].moves(),
                                             uni.minimal_bases[1].moves()};
  std::sort(got.begin(), got.end());
  std::vector<std::vector<IntVector>> want = {
      oracle::canon_set({iv({2, 1, -1}), iv({5, -3, 0}), iv({1, -5, 2})}),
      oracle::canon_set({iv({2, 1, -1}), iv({5, -3, 0}), iv({3, -4, 1})})};
  std::sort(want.begin(), want.end());
  CHECK(got == want);

  CHECK(uni.core.moves() == msmb::irreducible_sets(A).d.moves());
  CHECK(uni.universal.moves() == msmb::irreducible_sets(A).d_weak.moves());
  for (const auto& basis : uni.minimal_bases) {
    CHECK(msmb::verify_markov(A, basis).ok);
    CHECK(msmb::is_distance_reducing(A, basis).ok);
    for (const IntVector& m : uni.core.moves()) CHECK(basis.contains(m));
    for (const IntVector& skip : basis.moves()) {
      std::vector<IntVector> rest;
      for (const IntVector& m : basis.moves())
        if (m != skip) rest.push_back(m);
      MoveSet sub = MoveSet::of(A, rest, msmb::MoveKind::markov);
      bool still = msmb::verify_markov(A, sub).ok && msmb::is_distance_reducing(A, sub).ok;
      CHECK_FALSE(still);
    }
  }
  for (const IntVector& g : uni.unreduced) {
    CHECK(msmb::graver(A).contains(g));
    CHECK_FALSE(oracle::reduces(uni.core.moves(), g));
  }
  const msmb::MoveSet G = msmb::graver(A);
  for (const IntVector& g : G.moves()) {
    bool in_unreduced =
        std::find(uni.unreduced.begin(), uni.unreduced.end(), g) != uni.unreduced.end();
    CHECK(in_unreduced == !oracle::reduces(uni.core.moves(), g));
  }
}
