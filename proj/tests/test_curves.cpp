#include <algorithm>
#include <vector>

#include "doctest.h"
#include "msmb/bases.hpp"
#include "msmb/curves.hpp"
#include "msmb/distance.hpp"
#include "msmb/error.hpp"
#include "oracles.hpp"

using msmb::Error;
using msmb::ErrorKind;
using msmb::GameMove;
using msmb::Int;
using msmb::IntVector;
using msmb::MoveSet;
using msmb::SemigroupMatrix;
using msmb::SignMatrix;
using oracle::iv;

namespace {

// Replays a deletion sequence against the stated rule: the chosen entry must
// be the only live nonzero one in its column, with no same-sign live entry in
// its row; the move then retires that row and column. Winning means no live
// nonzero entry survives.
bool replay_wins(const SignMatrix& S, const std::vector<GameMove>& seq) {
  std::vector<char> row_live(static_cast<std::size_t>(S.rows()), 1);
  std::vector<char> col_live(static_cast<std::size_t>(S.cols()), 1);
  for (const GameMove& mv : seq) {
    int r = mv.row - 1, c = mv.col - 1;
    if (r < 0 || r >= S.rows() || c < 0 || c >= S.cols()) return false;
    if (!row_live[static_cast<std::size_t>(r)] || !col_live[static_cast<std::size_t>(c)])
      return false;
    if (S.at(r, c) == 0) return false;
    for (int i = 0; i < S.rows(); ++i)
      if (i != r && row_live[static_cast<std::size_t>(i)] && S.at(i, c) != 0) return false;
    for (int j = 0; j < S.cols(); ++j)
      if (j != c && col_live[static_cast<std::size_t>(j)] && S.at(r, j) == S.at(r, c))
        return false;
    row_live[static_cast<std::size_t>(r)] = 0;
    col_live[static_cast<std::size_t>(c)] = 0;
  }
  for (int i = 0; i < S.rows(); ++i)
    for (int j = 0; j < S.cols(); ++j)
      if (row_live[static_cast<std::size_t>(i)] && col_live[static_cast<std::size_t>(j)] &&
          S.at(i, j) != 0)
        return false;
  return true;
}

}  // namespace

TEST_CASE("numerical semigroup membership") {
  std::vector<Int> gens = {Int(3), Int(5)};
  for (long x : {0L, 3L, 5L, 6L, 8L, 9L, 10L, 11L, 12L, 13L, 100L})
    CHECK(msmb::semigroup_member(gens, Int(x)));
  for (long x : {1L, 2L, 4L, 7L}) CHECK_FALSE(msmb::semigroup_member(gens, Int(x)));
  std::vector<Int> wide = {Int(4), Int(9), Int(37)};
  CHECK(msmb::semigroup_member(wide, Int(13)));
  CHECK_FALSE(msmb::semigroup_member(wide, Int(7)));
}

TEST_CASE("gluing splits carry the lattice-intersection generator") {
  SemigroupMatrix A = SemigroupMatrix::row(iv({3, 5, 9}));
  auto splits = msmb::find_gluings(A);
  REQUIRE(splits.size() == 2);
  CHECK(splits[0].left == std::vector<int>{0, 1});
  CHECK(splits[0].x == 9);
  CHECK(splits[1].left == std::vector<int>{0, 2});
  CHECK(splits[1].x == 15);

  SemigroupMatrix B = SemigroupMatrix::row(iv({2, 3, 4}));
  auto bs = msmb::find_gluings(B);
  REQUIRE(bs.size() == 2);
  CHECK(bs[0].left == std::vector<int>{0, 1});
  CHECK(bs[0].x == 4);
  CHECK(bs[1].left == std::vector<int>{0, 2});
  CHECK(bs[1].x == 6);

  CHECK(msmb::find_gluings(SemigroupMatrix::row(iv({14, 21, 23, 29}))).empty());
  CHECK_FALSE(msmb::is_complete_intersection(SemigroupMatrix::row(iv({14, 21, 23, 29}))));
  CHECK(msmb::is_complete_intersection(A));
  CHECK(msmb::is_complete_intersection(B));
}

TEST_CASE("gluing trees render, parse and enumerate deterministically") {
  SemigroupMatrix A = SemigroupMatrix::row(iv({3, 5, 9}));
  auto all = msmb::gluing_type_all(A);
  REQUIRE(all.size() == 2);
  CHECK(all[0].type_string() == "((3 ∘_15 5) ∘_9 9)");
  CHECK(all[1].type_string() == "((3 ∘_9 9) ∘_15 5)");
  CHECK(all[0].type_string(true) == "((3 o_15 5) o_9 9)");
  auto one = msmb::gluing_type(A);
  REQUIRE(one.has_value());
  CHECK(one->type_string() == all[0].type_string());

  for (const auto& tree : all) {
    auto back = msmb::parse_gluing_type(tree.type_string());
    CHECK(back == tree);
    CHECK(back.type_string() == tree.type_string());
    std::vector<Int> lv = back.leaves();  // traversal order follows the tree
    std::sort(lv.begin(), lv.end());
    CHECK(lv == std::vector<Int>{Int(3), Int(5), Int(9)});
  }

  auto contains_type = [](const std::vector<msmb::GluingTree>& trees, const std::string& s) {
    for (const auto& t : trees)
      if (t.type_string() == s) return true;
    return false;
  };
  CHECK(contains_type(msmb::gluing_type_all(SemigroupMatrix::row(iv({7, 8, 22, 23}))),
                      "(((7 ∘_56 8) ∘_22 22) ∘_23 23)"));
  CHECK(contains_type(msmb::gluing_type_all(SemigroupMatrix::row(iv({8, 14, 15, 20}))),
                      "(((8 ∘_40 20) ∘_28 14) ∘_30 15)"));
  CHECK(contains_type(msmb::gluing_type_all(SemigroupMatrix::row(iv({90, 126, 350, 525}))),
                      "((90 ∘_630 126) ∘_3150 (350 ∘_1050 525))"));
  CHECK_FALSE(msmb::gluing_type(SemigroupMatrix::row(iv({14, 21, 23, 29}))).has_value());

  CHECK_THROWS_AS(msmb::parse_gluing_type("((3 ∘_15 5)"), Error);
  CHECK_THROWS_AS(msmb::parse_gluing_type("(3 ∘_x 5)"), Error);
  CHECK_THROWS_AS(msmb::parse_gluing_type(""), Error);
}

TEST_CASE("dimension-3 classification by minimal multipliers") {
  auto ci = msmb::herzog_dim3(Int(3), Int(5), Int(9));
  CHECK(ci.ci);
  CHECK(ci.scale == 1);
  REQUIRE(ci.bases.size() == 2);
  CHECK(ci.bases[0].moves() == oracle::canon_set({iv({2, -3, 1}), iv({3, 0, -1})}));
  CHECK(ci.bases[1].moves() == oracle::canon_set({iv({5, -3, 0}), iv({3, 0, -1})}));
  REQUIRE(ci.families.size() == 1);
  const auto& fam = ci.families.front();
  CHECK(fam.lambda_min <= 0);
  CHECK(fam.lambda_max >= 0);
  CHECK(fam.lambda_max - fam.lambda_min + 1 == Int(2));
  for (Int lam = fam.lambda_min; lam <= fam.lambda_max; lam += 1) {
    IntVector member(fam.c0.size());
    for (std::size_t k = 0; k < member.size(); ++k) member[k] = fam.c0[k] + lam * fam.b[k];
    auto basis = oracle::canon_set({fam.b, member});
    bool found = false;
    for (const auto& bset : ci.bases)
      if (bset.moves() == basis) found = true;
    CHECK(found);
  }

  auto scaled = msmb::herzog_dim3(Int(6), Int(10), Int(18));
  CHECK(scaled.scale == 2);
  CHECK(scaled.reduced == iv({3, 5, 9}));
  REQUIRE(scaled.bases.size() == 2);
  CHECK(scaled.bases[0].moves() == ci.bases[0].moves());
  CHECK(scaled.bases[1].moves() == ci.bases[1].moves());

  auto nci = msmb::herzog_dim3(Int(3), Int(5), Int(7));
  CHECK_FALSE(nci.ci);
  REQUIRE(nci.nci.has_value());
  CHECK(nci.nci->c1 == 4);
  CHECK(nci.nci->c2 == 2);
  CHECK(nci.nci->c3 == 2);
  REQUIRE(nci.bases.size() == 1);
  CHECK(nci.bases[0].moves() ==
        oracle::canon_set({nci.nci->g1, nci.nci->g2, nci.nci->g3}));
  auto mmb = msmb::minimal_markov_bases(SemigroupMatrix::row(iv({3, 5, 7})));
  REQUIRE(mmb.size() == 1);
  CHECK(mmb[0].moves() == nci.bases[0].moves());

  CHECK_THROWS_AS(msmb::herzog_dim3(Int(0), Int(5), Int(9)), Error);
  try {
    msmb::herzog_dim3(Int(3), Int(3), Int(9));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonDistinctEntries);
  }

  auto unique11 = msmb::herzog_dim3(Int(3), Int(5), Int(11));
  REQUIRE(unique11.bases.size() == 1);
  CHECK(unique11.bases[0].moves() == oracle::canon_set({iv({5, -3, 0}), iv({2, 1, -1})}));
}

TEST_CASE("sign matrices parse and print faithfully") {
  SignMatrix S = SignMatrix::parse("+-.;.+-");
  CHECK(S.rows() == 2);
  CHECK(S.cols() == 3);
  CHECK(S.at(0, 0) == 1);
  CHECK(S.at(0, 1) == -1);
  CHECK(S.at(0, 2) == 0);
  CHECK(S.at(1, 2) == -1);
  SignMatrix back = SignMatrix::parse(S.to_string());
  REQUIRE(back.rows() == S.rows());
  REQUIRE(back.cols() == S.cols());
  for (int i = 0; i < S.rows(); ++i)
    for (int j = 0; j < S.cols(); ++j) CHECK(back.at(i, j) == S.at(i, j));

  SignMatrix R = SignMatrix::of_rows({iv({5, -3, 0}), iv({-2, 0, 7})});
  CHECK(R.at(0, 0) == 1);
  CHECK(R.at(1, 0) == -1);
  CHECK(R.at(1, 1) == 0);
  CHECK(R.at(1, 2) == 1);

  CHECK_THROWS_AS(SignMatrix::parse("+-;+"), Error);
  CHECK_THROWS_AS(SignMatrix::parse("+x"), Error);
  CHECK_THROWS_AS(SignMatrix::parse(""), Error);
}

TEST_CASE("the sign game finds and certifies deletion sequences") {
  SignMatrix trivial = SignMatrix::parse("+-..");
  auto seq = msmb::sign_game(trivial);
  REQUIRE(seq.has_value());
  CHECK(replay_wins(trivial, *seq));
  CHECK(seq->front().row == 1);
  CHECK(seq->front().col == 1);

  CHECK_FALSE(msmb::sign_game(SignMatrix::parse("++")).has_value());
  CHECK_FALSE(msmb::sign_game(SignMatrix::parse("+-....;..+-..;++.-..;.-..+-;.+..--"))
                  .has_value());

  SemigroupMatrix A = SemigroupMatrix::row(iv({7, 8, 22, 23}));
  auto bases = msmb::minimal_markov_bases(A);
  REQUIRE(bases.size() == 1);
  auto control = msmb::sign_game(SignMatrix::of(bases.front()));
  REQUIRE(control.has_value());
  CHECK(replay_wins(SignMatrix::of(bases.front()), *control));

  try {
    msmb::sign_game(SignMatrix::parse(std::string(32, '+')));
    FAIL("expected a guard error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GuardExceeded);
  }
}

TEST_CASE("triangular presentations and the pairwise conditions") {
  SemigroupMatrix A = SemigroupMatrix::row(iv({7, 8, 22, 23}));
  auto bases = msmb::minimal_markov_bases(A);
  REQUIRE(bases.size() == 1);
  auto F = msmb::admits_first_kind(A, bases.front());
  REQUIRE(F.has_value());
  CHECK(F->n == 4);
  CHECK(F->permuted_entries() == iv({7, 8, 22, 23}));
  CHECK(F->entry(2, 1) == 8);
  CHECK(F->entry(2, 2) == 7);
  CHECK(F->entry(3, 1) == 2);
  CHECK(F->entry(3, 2) == 1);
  CHECK(F->entry(3, 3) == 1);
  CHECK(F->entry(4, 1) == 1);
  CHECK(F->entry(4, 2) == 2);
  CHECK(F->entry(4, 3) == 0);
  CHECK(F->entry(4, 4) == 1);
  CHECK(oracle::canonical(F->kernel_row(2)) == iv({8, -7, 0, 0}));
  CHECK(oracle::canonical(F->kernel_row(3)) == iv({2, 1, -1, 0}));
  CHECK(oracle::canonical(F->kernel_row(4)) == iv({1, 2, 0, -1}));

  auto r23 = msmb::condition_Rij(*F, 2, 3);
  CHECK_FALSE(r23.cond_i);   // 8 < 7 fails
  CHECK_FALSE(r23.cond_ii);  // no row strictly between 2 and 3
  CHECK_FALSE(r23.cond_iii); // 2+1+1 < 2·(1+1) fails
  CHECK_FALSE(r23.satisfied);
  auto chk = msmb::check_first_kind(*F);
  CHECK_FALSE(chk.reducing);
  CHECK(chk.reports.size() == 3);

  CHECK_THROWS_AS(msmb::condition_Rij(*F, 1, 2), Error);
  CHECK_THROWS_AS(msmb::condition_Rij(*F, 2, 2), Error);
  CHECK_THROWS_AS(msmb::condition_Rij(*F, 2, 5), Error);
}

TEST_CASE("circuit reduction check finds the missed circuit") {
  SemigroupMatrix A = SemigroupMatrix::row(iv({14, 21, 23, 29}));
  std::vector<IntVector> M = {iv({1, 1, 1, -2}), iv({3, -2, 0, 0}), iv({3, 1, -4, 1}),
                              iv({7, 0, -3, -1})};
  MoveSet B = MoveSet::of(A, M, msmb::MoveKind::markov);
  auto circ = msmb::check_reduces_circuits(A, B);
  CHECK(circ.ok);
  auto full = msmb::is_distance_reducing(A, B);
  CHECK_FALSE(full.ok);
  CHECK_FALSE(oracle::reduces(B.moves(), full.witness));
  CHECK_FALSE(msmb::reduces_element(B, iv({1, 4, -3, -1})).has_value());

  // A deliberately poor set misses a circuit and reports it with its
  // application table.
  MoveSet tiny = MoveSet::of(A, {iv({1, 1, 1, -2})}, msmb::MoveKind::custom);
  auto miss = msmb::check_reduces_circuits(A, tiny);
  CHECK_FALSE(miss.ok);
  CHECK(msmb::circuits(A).contains(miss.failing_circuit));
  CHECK_FALSE(oracle::reduces(tiny.moves(), miss.failing_circuit));
  CHECK(miss.applications.size() == 4);
}

TEST_CASE("dimension-3 checker matches the full sweep on every route") {
  SemigroupMatrix A9 = SemigroupMatrix::row(iv({3, 5, 9}));
  MoveSet M1 = MoveSet::of(A9, {iv({5, -3, 0}), iv({3, 0, -1})}, msmb::MoveKind::markov);
  MoveSet M2 = MoveSet::of(A9, {iv({2, -3, 1}), iv({3, 0, -1})}, msmb::MoveKind::markov);
  auto r1 = msmb::check_dim3(A9, M1);
  CHECK_FALSE(r1.reducing);
  CHECK(r1.method == "ci-pair");
  CHECK(r1.detail == "c1 < c2+c3 fails: 5 < 3");
  auto r2 = msmb::check_dim3(A9, M2);
  CHECK(r2.reducing);
  CHECK(r2.detail == "c1 < c2+c3 holds: 2 < 4");

  SemigroupMatrix A11 = SemigroupMatrix::row(iv({3, 5, 11}));
  MoveSet M11 = MoveSet::of(A11, {iv({5, -3, 0}), iv({2, 1, -1})}, msmb::MoveKind::markov);
  auto r3 = msmb::check_dim3(A11, M11);
  CHECK_FALSE(r3.reducing);
  CHECK(r3.method == "ci-pair");
  CHECK(r3.detail == "c1 < c2+c3 fails: 2 < 2");
  REQUIRE(r3.failing.has_value());
  CHECK(*r3.failing == iv({0, 11, -5}));
  CHECK_FALSE(r3.applications.empty());

  SemigroupMatrix A7 = SemigroupMatrix::row(iv({3, 5, 7}));
  auto mmb7 = msmb::minimal_markov_bases(A7);
  REQUIRE(mmb7.size() == 1);
  auto r4 = msmb::check_dim3(A7, mmb7.front());
  CHECK(r4.method == "nci-triple");
  CHECK(r4.reducing == msmb::is_distance_reducing(A7, mmb7.front()).ok);

  // Route-independent agreement with the definitional sweep.
  struct Probe {
    SemigroupMatrix A;
    MoveSet M;
  };
  std::vector<Probe> probes = {{A9, M1}, {A9, M2}, {A11, M11}, {A7, mmb7.front()}};
  SemigroupMatrix A4 = SemigroupMatrix::row(iv({2, 3, 4}));
  for (const auto& b : msmb::minimal_markov_bases(A4)) probes.push_back({A4, b});
  for (const auto& p : probes)
    CHECK(msmb::check_dim3(p.A, p.M).reducing == msmb::is_distance_reducing(p.A, p.M).ok);

  CHECK_THROWS_AS(msmb::check_dim3(A11, MoveSet::of(A11, msmb::graver(A11).moves(),
                                                    msmb::MoveKind::markov)),
                  Error);
}

TEST_CASE("dimension-4 checker routes and agreement") {
  SemigroupMatrix A = SemigroupMatrix::row(iv({7, 8, 22, 23}));
  auto bases = msmb::minimal_markov_bases(A);
  REQUIRE(bases.size() == 1);
  auto rep = msmb::check_dim4(A, bases.front());
  CHECK_FALSE(rep.reducing);
  CHECK(rep.method == "first-kind");
  CHECK_FALSE(rep.fallback);
  CHECK(rep.detail.find("(a) c1 < c2+c3 fails: 2 < 2") != std::string::npos);
  REQUIRE(rep.failing.has_value());
  CHECK(*rep.failing == iv({0, 11, -4, 0}));
  CHECK(rep.reducing == msmb::is_distance_reducing(A, bases.front()).ok);

  SemigroupMatrix W = SemigroupMatrix::row(iv({14, 21, 23, 29}));
  MoveSet M = MoveSet::of(W, {iv({1, 1, 1, -2}), iv({3, -2, 0, 0}), iv({3, 1, -4, 1}),
                              iv({7, 0, -3, -1})},
                          msmb::MoveKind::markov);
  auto fb = msmb::check_dim4(W, M);
  CHECK(fb.method == "fallback");
  CHECK(fb.fallback);
  CHECK(fb.detail.find("decided by the full reduction sweep") != std::string::npos);
  CHECK_FALSE(fb.reducing);
  CHECK(fb.reducing == msmb::is_distance_reducing(W, M).ok);

  SemigroupMatrix G = SemigroupMatrix::row(iv({8, 14, 15, 20}));
  auto gb = msmb::minimal_markov_bases(G);
  REQUIRE(!gb.empty());
  auto grep = msmb::check_dim4(G, gb.front());
  CHECK(grep.reducing == msmb::is_distance_reducing(G, gb.front()).ok);
}
