#include "msmb/reference.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "msmb/bases.hpp"
#include "msmb/curves.hpp"
#include "msmb/distance.hpp"
#include "msmb/error.hpp"
#include "msmb/matrix.hpp"
#include "msmb/moveset.hpp"
#include "msmb/reduction_complex.hpp"
#include "msmb/vec.hpp"

namespace msmb {
namespace {

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::vector<IntVector> rows(std::initializer_list<std::initializer_list<long>> rs) {
  std::vector<IntVector> out;
  out.reserve(rs.size());
  for (const auto& r : rs) {
    IntVector v;
    v.reserve(r.size());
    for (long x : r) v.emplace_back(x);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<IntVector> canon_sorted(std::vector<IntVector> vs) {
  for (auto& v : vs) v = canonical(v);
  std::sort(vs.begin(), vs.end(), lex_less);
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

std::vector<IntVector> lex_sorted(std::vector<IntVector> vs) {
  std::sort(vs.begin(), vs.end(), lex_less);
  return vs;
}

std::string render(const std::vector<IntVector>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ", ";
    s += to_string(vs[i]);
  }
  return s;
}

SemigroupMatrix curve(std::initializer_list<long> gens) {
  return SemigroupMatrix::row(iv(gens));
}

struct Expect {
  bool ok = true;
  std::string msg;
  void that(bool cond, const std::string& label) {
    if (cond) return;
    ok = false;
    if (!msg.empty()) msg += "; ";
    msg += label;
  }
};

void expect_moves(Expect& e, const std::string& what, const std::vector<IntVector>& got,
                  std::vector<IntVector> want) {
  want = canon_sorted(std::move(want));
  if (got != want)
    e.that(false, what + ": expected {" + render(want) + "} but got {" + render(got) + "}");
}

void expect_signed(Expect& e, const std::string& what, const std::vector<IntVector>& got,
                   std::vector<IntVector> want) {
  want = lex_sorted(std::move(want));
  if (got != want)
    e.that(false, what + ": expected {" + render(want) + "} but got {" + render(got) + "}");
}

bool same_basis_sets(const std::vector<MoveSet>& got, std::vector<std::vector<IntVector>> want) {
  std::vector<std::vector<IntVector>> g;
  g.reserve(got.size());
  for (const auto& m : got) g.push_back(m.moves());
  for (auto& w : want) w = canon_sorted(std::move(w));
  std::sort(g.begin(), g.end());
  std::sort(want.begin(), want.end());
  return g == want;
}

using Body = std::function<void(Expect&)>;

void add(std::vector<CheckResult>& out, const char* group, const char* name,
         const std::string& pass_detail, const Body& body) {
  CheckResult r;
  r.group = group;
  r.name = name;
  Expect e;
  try {
    body(e);
  } catch (const Error& err) {
    e.that(false, std::string("error: ") + err.what());
  } catch (const std::exception& ex) {
    e.that(false, std::string("unexpected exception: ") + ex.what());
  }
  r.pass = e.ok;
  r.detail = e.ok ? pass_detail : e.msg;
  out.push_back(std::move(r));
}

void graver_checks(std::vector<CheckResult>& out) {
  add(out, "graver", "graver-2-3-4",
      "(0, 4, -3), (1, -2, 1), (1, 2, -2), (2, 0, -1), (3, -2, 0)", [](Expect& e) {
        MoveSet g = graver(curve({2, 3, 4}));
        expect_moves(e, "graver moves", g.moves(),
                     rows({{3, -2, 0}, {2, 0, -1}, {1, -2, 1}, {1, 2, -2}, {0, 4, -3}}));
      });
}

void minimal_basis_checks(std::vector<CheckResult>& out) {
  add(out, "minimal-bases", "minimal-2-3-4",
      "exactly {(2, 0, -1), (3, -2, 0)} and {(1, -2, 1), (2, 0, -1)}", [](Expect& e) {
        auto bases = minimal_markov_bases(curve({2, 3, 4}));
        e.that(bases.size() == 2, "expected 2 bases, got " + std::to_string(bases.size()));
        e.that(same_basis_sets(bases, {rows({{3, -2, 0}, {2, 0, -1}}),
                                       rows({{2, 0, -1}, {1, -2, 1}})}),
               "basis sets differ from the two expected two-move bases");
      });
  add(out, "minimal-bases", "minimal-8-31-33-53", "exactly the two six-move bases",
      [](Expect& e) {
        auto bases = minimal_markov_bases(curve({8, 31, 33, 53}));
        e.that(bases.size() == 2, "expected 2 bases, got " + std::to_string(bases.size()));
        e.that(same_basis_sets(
                   bases,
                   {rows({{2, -2, 3, -1},
                          {3, 2, -1, -1},
                          {5, -3, 0, 1},
                          {5, 0, 2, -2},
                          {6, 1, -4, 1},
                          {8, -1, -1, 0}}),
                    rows({{1, 4, -4, 0},
                          {2, -2, 3, -1},
                          {3, 2, -1, -1},
                          {5, -3, 0, 1},
                          {5, 0, 2, -2},
                          {8, -1, -1, 0}})}),
               "basis sets differ from the two expected six-move bases");
      });
  add(out, "minimal-bases", "minimal-3-5-8-11", "exactly the two three-move bases",
      [](Expect& e) {
        auto bases = minimal_markov_bases(curve({3, 5, 8, 11}));
        e.that(bases.size() == 2, "expected 2 bases, got " + std::to_string(bases.size()));
        e.that(same_basis_sets(bases, {rows({{1, 1, -1, 0}, {2, 1, 0, -1}, {5, -3, 0, 0}}),
                                       rows({{1, 1, -1, 0}, {1, 0, 1, -1}, {5, -3, 0, 0}})}),
               "basis sets differ from the two expected three-move bases");
      });
}

void dim3_checks(std::vector<CheckResult>& out) {
  add(out, "dim3", "classify-3-5-9", "complete intersection with two minimal bases",
      [](Expect& e) {
        HerzogClassification cls = herzog_dim3(Int(3), Int(5), Int(9));
        e.that(cls.ci, "expected a complete intersection");
        e.that(cls.bases.size() == 2,
               "expected 2 bases, got " + std::to_string(cls.bases.size()));
        e.that(same_basis_sets(cls.bases,
                               {rows({{5, -3, 0}, {3, 0, -1}}), rows({{2, -3, 1}, {3, 0, -1}})}),
               "basis sets differ from {(3, 0, -1), (5, -3, 0)} and {(2, -3, 1), (3, 0, -1)}");
      });
  add(out, "dim3", "classify-3-5-11", "complete intersection with a unique minimal basis",
      [](Expect& e) {
        HerzogClassification cls = herzog_dim3(Int(3), Int(5), Int(11));
        e.that(cls.ci, "expected a complete intersection");
        e.that(cls.bases.size() == 1,
               "expected a unique basis, got " + std::to_string(cls.bases.size()));
        e.that(same_basis_sets(cls.bases, {rows({{5, -3, 0}, {2, 1, -1}})}),
               "basis differs from {(2, 1, -1), (5, -3, 0)}");
      });
  add(out, "dim3", "check-3-5-11",
      "not reducing: c1 < c2+c3 fails: 2 < 2; circuit (0, 11, -5) only grows (norms 18 and 16)",
      [](Expect& e) {
        SemigroupMatrix A = curve({3, 5, 11});
        MoveSet M = MoveSet::of(A, rows({{5, -3, 0}, {2, 1, -1}}), MoveKind::markov);
        CheckReport rep = check_dim3(A, M);
        e.that(!rep.reducing, "expected a negative verdict");
        e.that(rep.method == "ci-pair", "method: expected ci-pair, got " + rep.method);
        e.that(rep.detail == "c1 < c2+c3 fails: 2 < 2",
               "detail: expected \"c1 < c2+c3 fails: 2 < 2\", got \"" + rep.detail + "\"");
        e.that(rep.failing.has_value() && *rep.failing == iv({0, 11, -5}),
               "failing element: expected (0, 11, -5), got " +
                   (rep.failing ? to_string(*rep.failing) : std::string("none")));
        bool saw18 = false;
        bool saw16 = false;
        bool none_below_16 = true;
        for (const Application& ap : rep.applications) {
          if (!ap.applicable) continue;
          if (ap.move == iv({5, -3, 0}) && ap.norm_after == 18) saw18 = true;
          if (ap.move == iv({2, 1, -1}) && ap.norm_after == 16) saw16 = true;
          if (ap.norm_after < 16) none_below_16 = false;
        }
        e.that(saw18, "application of (5, -3, 0) with resulting norm 18 not found");
        e.that(saw16, "application of (2, 1, -1) with resulting norm 16 not found");
        e.that(none_below_16, "an application dropped below the starting norm 16");
      });
  add(out, "dim3", "check-3-5-9",
      "basis {(3, 0, -1), (5, -3, 0)} rejected (5 < 3 fails); basis {(2, -3, 1), (3, 0, -1)} "
      "accepted (2 < 4 holds)",
      [](Expect& e) {
        SemigroupMatrix A = curve({3, 5, 9});
        MoveSet M1 = MoveSet::of(A, rows({{5, -3, 0}, {3, 0, -1}}), MoveKind::markov);
        CheckReport r1 = check_dim3(A, M1);
        e.that(!r1.reducing, "first basis: expected a negative verdict");
        e.that(r1.detail == "c1 < c2+c3 fails: 5 < 3",
               "first basis detail: expected \"c1 < c2+c3 fails: 5 < 3\", got \"" + r1.detail +
                   "\"");
        MoveSet M2 = MoveSet::of(A, rows({{2, -3, 1}, {3, 0, -1}}), MoveKind::markov);
        CheckReport r2 = check_dim3(A, M2);
        e.that(r2.reducing, "second basis: expected a positive verdict");
        e.that(r2.detail == "c1 < c2+c3 holds: 2 < 4",
               "second basis detail: expected \"c1 < c2+c3 holds: 2 < 4\", got \"" + r2.detail +
                   "\"");
      });
}

void dim4_checks(std::vector<CheckResult>& out) {
  add(out, "dim4", "check-7-8-22-23",
      "triangular presentation found; clause (a) fails at 2 < 2; circuit (0, 11, -4, 0)",
      [](Expect& e) {
        SemigroupMatrix A = curve({7, 8, 22, 23});
        MoveSet M = MoveSet::of(A, rows({{8, -7, 0, 0}, {2, 1, -1, 0}, {1, 2, 0, -1}}),
                                MoveKind::markov);
        CheckReport rep = check_dim4(A, M);
        e.that(!rep.reducing, "expected a negative verdict");
        e.that(rep.method == "first-kind", "method: expected first-kind, got " + rep.method);
        e.that(rep.detail.find("(a) c1 < c2+c3 fails: 2 < 2") != std::string::npos,
               "detail does not report clause (a) failing at 2 < 2: \"" + rep.detail + "\"");
        e.that(rep.failing.has_value() && *rep.failing == iv({0, 11, -4, 0}),
               "failing element: expected (0, 11, -4, 0), got " +
                   (rep.failing ? to_string(*rep.failing) : std::string("none")));
        e.that(!rep.fallback, "closed-form route expected, fallback sweep used");
      });
  add(out, "dim4", "check-90-126-350-525",
      "split presentation found; clause (i) fails (d1 = 14, d3 = 3); circuit (0, 25, 0, -6)",
      [](Expect& e) {
        SemigroupMatrix A = curve({90, 126, 350, 525});
        MoveSet M = MoveSet::of(A, rows({{7, -5, 0, 0}, {0, 0, 3, -2}, {14, 15, -3, -4}}),
                                MoveKind::markov);
        CheckReport rep = check_dim4(A, M);
        e.that(!rep.reducing, "expected a negative verdict");
        e.that(rep.method == "split", "method: expected split, got " + rep.method);
        e.that(rep.detail.find("(i) d1 = 0 or d3 = 0 fails") != std::string::npos,
               "detail does not report clause (i) failing: \"" + rep.detail + "\"");
        e.that(rep.failing.has_value() && *rep.failing == iv({0, 25, 0, -6}),
               "failing element: expected (0, 25, 0, -6), got " +
                   (rep.failing ? to_string(*rep.failing) : std::string("none")));
        e.that(!rep.fallback, "closed-form route expected, fallback sweep used");
      });
}

void separation_checks(std::vector<CheckResult>& out) {
  add(out, "separation", "circuits-vs-full-14-21-23-29",
      "reduces every circuit, yet a kernel element is unreduced; no gluing exists",
      [](Expect& e) {
        SemigroupMatrix A = curve({14, 21, 23, 29});
        MoveSet M = MoveSet::of(
            A, rows({{1, 1, 1, -2}, {3, -2, 0, 0}, {3, 1, -4, 1}, {7, 0, -3, -1}}),
            MoveKind::markov);
        CircuitCheck cc = check_reduces_circuits(A, M);
        e.that(cc.ok, "expected every circuit to be reduced; " + to_string(cc.failing_circuit) +
                          " is missed");
        ReducingCheck rc = is_distance_reducing(A, M);
        e.that(!rc.ok, "expected a non-reducing verdict over the full kernel");
        if (!rc.ok) {
          e.that(!rc.witness.empty() && A.in_kernel(rc.witness),
                 "witness is not a kernel element");
          e.that(!reduces_element(M, rc.witness).has_value(),
                 "witness " + to_string(rc.witness) + " is actually reduced");
        }
        e.that(!reduces_element(M, iv({1, 4, -3, -1})).has_value(),
               "(1, 4, -3, -1) should not be reduced by the basis");
        e.that(find_gluings(A).empty(), "expected no gluing split");
      });
}

void irreducible_checks(std::vector<CheckResult>& out) {
  add(out, "irreducibles", "irreducibles-2-3-4",
      "one-sided sets have three elements each; core pair (2, 0, -1); weak set adds (1, -2, 1)",
      [](Expect& e) {
        IrreducibleSets ir = irreducible_sets(curve({2, 3, 4}));
        expect_signed(e, "positive side", ir.d_plus,
                      rows({{2, 0, -1}, {1, -2, 1}, {-2, 0, 1}}));
        expect_signed(e, "negative side", ir.d_minus,
                      rows({{2, 0, -1}, {-2, 0, 1}, {-1, 2, -1}}));
        expect_moves(e, "two-sided set", ir.d.moves(), rows({{2, 0, -1}}));
        expect_moves(e, "weak set", ir.d_weak.moves(), rows({{2, 0, -1}, {1, -2, 1}}));
      });
  add(out, "irreducibles", "irreducibles-8-14-15-20",
      "two-sided set has three move pairs; weak set adds (0, 0, 4, -3)", [](Expect& e) {
        IrreducibleSets ir = irreducible_sets(curve({8, 14, 15, 20}));
        expect_signed(e, "positive side", ir.d_plus,
                      rows({{5, 0, 0, -2},
                            {2, 1, -2, 0},
                            {0, 0, 4, -3},
                            {1, -2, 0, 1},
                            {-5, 0, 0, 2},
                            {-2, -1, 2, 0},
                            {-1, 2, 0, -1}}));
        expect_signed(e, "negative side", ir.d_minus,
                      rows({{-5, 0, 0, 2},
                            {-2, -1, 2, 0},
                            {0, 0, -4, 3},
                            {-1, 2, 0, -1},
                            {5, 0, 0, -2},
                            {2, 1, -2, 0},
                            {1, -2, 0, 1}}));
        expect_moves(e, "two-sided set", ir.d.moves(),
                     rows({{5, 0, 0, -2}, {2, 1, -2, 0}, {1, -2, 0, 1}}));
        expect_moves(e, "weak set", ir.d_weak.moves(),
                     rows({{5, 0, 0, -2}, {2, 1, -2, 0}, {1, -2, 0, 1}, {0, 0, 4, -3}}));
      });
  add(out, "irreducibles", "irreducibles-3-5-8-11",
      "two-sided set has three move pairs; weak set adds (3, -4, 0, 1) and (1, -5, 0, 2)",
      [](Expect& e) {
        IrreducibleSets ir = irreducible_sets(curve({3, 5, 8, 11}));
        expect_signed(e, "positive side", ir.d_plus,
                      rows({{1, 1, -1, 0},
                            {5, -3, 0, 0},
                            {3, -4, 0, 1},
                            {1, 0, 1, -1},
                            {1, -5, 0, 2},
                            {-1, -1, 1, 0},
                            {-5, 3, 0, 0},
                            {-1, 0, -1, 1}}));
        expect_moves(e, "two-sided set", ir.d.moves(),
                     rows({{1, 1, -1, 0}, {5, -3, 0, 0}, {1, 0, 1, -1}}));
        expect_moves(e, "weak set", ir.d_weak.moves(),
                     rows({{1, 1, -1, 0},
                           {5, -3, 0, 0},
                           {1, 0, 1, -1},
                           {3, -4, 0, 1},
                           {1, -5, 0, 2}}));
      });
  add(out, "irreducibles", "irreducibles-8-31-33-53",
      "two-sided and weak sets agree (eight move pairs); (3, -1, -3, 2) lies outside every "
      "minimal Markov basis",
      [](Expect& e) {
        SemigroupMatrix A = curve({8, 31, 33, 53});
        IrreducibleSets ir = irreducible_sets(A);
        std::vector<IntVector> want = rows({{8, -1, -1, 0},
                                            {5, 0, 2, -2},
                                            {3, 2, -1, -1},
                                            {2, -2, 3, -1},
                                            {5, -3, 0, 1},
                                            {1, 4, -4, 0},
                                            {3, -1, -3, 2},
                                            {0, 3, 2, -3}});
        expect_moves(e, "two-sided set", ir.d.moves(), want);
        expect_moves(e, "weak set", ir.d_weak.moves(), want);
        e.that(ir.d.contains(iv({3, -1, -3, 2})), "(3, -1, -3, 2) missing from two-sided set");
        MoveSet um = universal_markov(A);
        e.that(!um.contains(iv({3, -1, -3, 2})),
               "(3, -1, -3, 2) unexpectedly appears in a minimal Markov basis");
      });
  add(out, "irreducibles", "irreducibles-4-9-37",
      "two-sided set is the unique minimal basis plus the pair (2, -5, 1)", [](Expect& e) {
        SemigroupMatrix A = curve({4, 9, 37});
        auto bases = minimal_markov_bases(A);
        e.that(bases.size() == 1,
               "expected a unique minimal basis, got " + std::to_string(bases.size()));
        e.that(same_basis_sets(bases, {rows({{9, -4, 0}, {7, 1, -1}})}),
               "minimal basis differs from {(7, 1, -1), (9, -4, 0)}");
        IrreducibleSets ir = irreducible_sets(A);
        expect_moves(e, "two-sided set", ir.d.moves(),
                     rows({{9, -4, 0}, {7, 1, -1}, {2, -5, 1}}));
        if (!bases.empty()) {
          ReducingCheck rc = is_distance_reducing(A, bases.front());
          e.that(!rc.ok, "the unique minimal basis should not reduce every kernel element");
        }
      });
}

void universal_checks(std::vector<CheckResult>& out) {
  add(out, "universal", "universal-3-5-11",
      "two minimal reducing bases; their union is the weak irreducible set (four move pairs)",
      [](Expect& e) {
        SemigroupMatrix A = curve({3, 5, 11});
        UniversalReducing ur = universal_distance_reducing(A);
        e.that(ur.minimal_bases.size() == 2,
               "expected 2 minimal reducing bases, got " +
                   std::to_string(ur.minimal_bases.size()));
        e.that(same_basis_sets(ur.minimal_bases,
                               {rows({{2, 1, -1}, {5, -3, 0}, {1, -5, 2}}),
                                rows({{2, 1, -1}, {5, -3, 0}, {3, -4, 1}})}),
               "minimal reducing bases differ from the two expected three-move bases");
        expect_moves(e, "union", ur.universal.moves(),
                     rows({{2, 1, -1}, {5, -3, 0}, {1, -5, 2}, {3, -4, 1}}));
        IrreducibleSets ir = irreducible_sets(A);
        e.that(ur.universal.moves() == ir.d_weak.moves(),
               "union differs from the weak irreducible set");
        e.that(graver(A).intersect(ur.universal).moves() == ur.universal.moves(),
               "union should stay inside the Graver basis here");
      });
  add(out, "universal", "universal-3-5-8-11",
      "71 minimal reducing bases; reducer tiers 3 + 2 + 34; (1, 5, 2, -4) leaves the Graver "
      "basis",
      [](Expect& e) {
        SemigroupMatrix A = curve({3, 5, 8, 11});
        UniversalReducing ur = universal_distance_reducing(A);
        expect_moves(e, "core", ur.core.moves(),
                     rows({{1, 1, -1, 0}, {5, -3, 0, 0}, {1, 0, 1, -1}}));
        expect_moves(e, "unreduced elements", ur.unreduced,
                     rows({{0, 11, 0, -5}, {1, -5, 0, 2}}));
        e.that(ur.minimal_bases.size() == 71,
               "expected 71 minimal reducing bases, got " +
                   std::to_string(ur.minimal_bases.size()));
        MoveSet r_big = reducers_of(A, iv({0, 11, 0, -5}));
        MoveSet r_small = reducers_of(A, iv({1, -5, 0, 2}));
        expect_moves(e, "both-reducer tier", r_big.intersect(r_small).moves(),
                     rows({{3, -4, 0, 1}, {2, -5, 1, 1}, {1, -5, 0, 2}}));
        expect_moves(e, "small-only tier", r_small.subtract(r_big).moves(),
                     rows({{4, -4, 1, 0}, {2, -5, 2, 0}}));
        expect_moves(e, "large-only tier", r_big.subtract(r_small).moves(),
                     rows({{0, 6, -1, -2},  {1, -6, 2, 1},  {2, -6, 3, 0},  {1, 6, 0, -3},
                           {0, 5, 1, -3},   {0, 7, -3, -1}, {1, -7, 4, 0},  {0, 8, -5, 0},
                           {0, 11, 0, -5},  {0, 4, 3, -4},  {0, 3, 5, -5},  {1, 5, 2, -4},
                           {2, 6, 1, -4},   {1, 4, 4, -5},  {3, 7, 0, -4},  {2, 5, 3, -5},
                           {2, -10, 0, 4},  {4, -9, 0, 3},  {3, 6, 2, -5},  {6, -8, 0, 2},
                           {1, -11, 1, 4},  {3, -10, 1, 3}, {5, -9, 1, 2},  {4, 7, 1, -5},
                           {7, -8, 1, 1},   {2, -11, 2, 3}, {4, -10, 2, 2}, {6, -9, 2, 1},
                           {5, 8, 0, -5},   {3, -11, 3, 2}, {5, -10, 3, 1}, {4, -11, 4, 1},
                           {5, -11, 5, 0},  {11, -11, 0, 2}}));
        e.that(ur.universal.contains(iv({1, 5, 2, -4})),
               "(1, 5, 2, -4) missing from the union of minimal reducing bases");
        e.that(!graver(A).contains(iv({1, 5, 2, -4})),
               "(1, 5, 2, -4) unexpectedly lies in the Graver basis");
      });
}

void gluing_checks(std::vector<CheckResult>& out) {
  add(out, "gluing", "gluing-3-5-9", "both splitting orders appear", [](Expect& e) {
    auto all = gluing_type_all(curve({3, 5, 9}));
    std::vector<std::string> got;
    got.reserve(all.size());
    for (const auto& t : all) got.push_back(t.type_string());
    std::vector<std::string> want = {"((3 ∘_15 5) ∘_9 9)",
                                     "((3 ∘_9 9) ∘_15 5)"};
    if (got != want) {
      std::string g;
      for (const auto& s : got) g += (g.empty() ? "" : " | ") + s;
      e.that(false, "trees: expected both splitting orders, got: " + g);
    }
  });
  add(out, "gluing", "gluing-7-8-22-23", "nested chain tree recovered", [](Expect& e) {
    GluingTree want = parse_gluing_type("(((7 ∘_56 8) ∘_22 22) ∘_23 23)");
    auto all = gluing_type_all(curve({7, 8, 22, 23}));
    bool found = false;
    for (const auto& t : all)
      if (t == want) found = true;
    e.that(found, "tree (((7 ∘_56 8) ∘_22 22) ∘_23 23) not produced");
  });
  add(out, "gluing", "gluing-90-126-350-525", "balanced tree recovered", [](Expect& e) {
    GluingTree want = parse_gluing_type("((90 ∘_630 126) ∘_3150 (350 ∘_1050 525))");
    auto all = gluing_type_all(curve({90, 126, 350, 525}));
    bool found = false;
    for (const auto& t : all)
      if (t == want) found = true;
    e.that(found, "tree ((90 ∘_630 126) ∘_3150 (350 ∘_1050 525)) not produced");
  });
  add(out, "gluing", "gluing-8-14-15-20", "chain tree through 20 recovered", [](Expect& e) {
    GluingTree want = parse_gluing_type("(((8 ∘_40 20) ∘_28 14) ∘_30 15)");
    auto all = gluing_type_all(curve({8, 14, 15, 20}));
    bool found = false;
    for (const auto& t : all)
      if (t == want) found = true;
    e.that(found, "tree (((8 ∘_40 20) ∘_28 14) ∘_30 15) not produced");
  });
  add(out, "gluing", "sign-game-dead-end",
      "the 5x6 sign pattern admits no winning sequence", [](Expect& e) {
        SignMatrix s = SignMatrix::parse("+-....;..+-..;++.-..;.-..+-;.+..--");
        e.that(!sign_game(s).has_value(), "expected no winning sequence");
        SemigroupMatrix A = curve({7, 8, 22, 23});
        MoveSet M = MoveSet::of(A, rows({{8, -7, 0, 0}, {2, 1, -1, 0}, {1, 2, 0, -1}}),
                                MoveKind::markov);
        e.that(sign_game(SignMatrix::of(M)).has_value(),
               "control pattern should admit a winning sequence");
      });
}

// Ground configuration for the worked three-dimensional kernel example:
// the five Graver moves of (2 3 4) plus the extra move discovered by closure.
std::vector<IntVector> ground5() {
  return rows({{3, -2, 0}, {2, 0, -1}, {1, -2, 1}, {1, 2, -2}, {0, 4, -3}});
}

std::vector<IntVector> ground6() {
  auto g = ground5();
  g.push_back(iv({3, 2, -3}));
  return g;
}

// Reads a ray matrix given row-wise in the order a1..a6 above, returns its
// columns re-indexed to the canonical (lexicographic) ground order used by
// the library, primitive and lexicographically sorted.
std::vector<IntVector> rays_from_columns(const std::vector<IntVector>& paper_rows,
                                         std::size_t vars) {
  static const std::size_t source_row[6] = {4, 2, 3, 1, 0, 5};
  std::vector<IntVector> cols;
  const std::size_t n = paper_rows.front().size();
  cols.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    IntVector c(vars, Int(0));
    for (std::size_t k = 0; k < vars; ++k) c[k] = paper_rows[source_row[k]][j];
    cols.push_back(primitive(c));
  }
  std::sort(cols.begin(), cols.end(), lex_less);
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  return cols;
}

std::string render_names(const std::vector<MatroidCircuit>& cs) {
  std::string s;
  for (const auto& c : cs) {
    if (!s.empty()) s += ",";
    s += c.name;
  }
  return s;
}

void complex_checks(std::vector<CheckResult>& out) {
  add(out, "complex", "triangles-5", "ten support-minimal relations, names verified",
      [](Expect& e) {
        auto cs = matroid_circuits_with_coeffs(ground5());
        std::vector<std::string> want = {"123",   "12^24", "1^22^35", "13^24",  "13^35",
                                         "14^35^2", "234",   "23^25",   "24^25", "345"};
        std::vector<std::string> got;
        got.reserve(cs.size());
        for (const auto& c : cs) got.push_back(c.name);
        e.that(got == want, "names: expected " + [&] {
          std::string s;
          for (const auto& w : want) s += (s.empty() ? "" : ",") + w;
          return s;
        }() + " got " + render_names(cs));
      });
  add(out, "complex", "triangles-6", "twenty support-minimal relations, names verified",
      [](Expect& e) {
        auto cs = matroid_circuits_with_coeffs(ground6());
        std::vector<std::string> want = {
            "123",    "12^24",  "1^22^35", "12^36",   "13^24",  "13^35",  "1^23^36",
            "14^35^2", "14^36^2", "156",     "234",     "23^25",  "2^236",  "24^25",
            "246",    "2^356^2", "345",     "34^26",   "3^35^26", "4^356"};
        std::vector<std::string> got;
        got.reserve(cs.size());
        for (const auto& c : cs) got.push_back(c.name);
        e.that(got == want, "names: expected twenty known strings, got " + render_names(cs));
      });
  add(out, "complex", "metric-cone-5", "five extreme rays match the published matrix",
      [](Expect& e) {
        Cone c = metric_cone(ground5());
        std::vector<IntVector> want = rows({{2, 1, 1, 0, 1},
                                            {1, 1, 0, 1, 1},
                                            {1, 0, 1, 1, 2},
                                            {3, 2, 1, 1, 0},
                                            {0, 1, 1, 2, 3}});
        std::sort(want.begin(), want.end(), lex_less);
        if (c.rays != want)
          e.that(false, "rays: expected {" + render(want) + "} got {" + render(c.rays) + "}");
        e.that(satisfies(c.sys, c.interior), "interior point fails its own cone");
      });
  add(out, "complex", "metric-cone-6", "six extreme rays match the published matrix",
      [](Expect& e) {
        Cone c = metric_cone(ground6());
        std::vector<IntVector> want = rows({{2, 1, 1, 0, 1, 1},
                                            {1, 1, 0, 1, 1, 2},
                                            {1, 0, 1, 1, 2, 1},
                                            {3, 2, 1, 1, 0, 3},
                                            {0, 1, 1, 2, 3, 3},
                                            {3, 1, 2, 1, 3, 0}});
        std::sort(want.begin(), want.end(), lex_less);
        if (c.rays != want)
          e.that(false, "rays: expected {" + render(want) + "} got {" + render(c.rays) + "}");
        e.that(satisfies(c.sys, c.interior), "interior point fails its own cone");
      });
  add(out, "complex", "closure-2-3-4",
      "closure under the two-move basis adds exactly (3, 2, -3); idempotent; bound 1 adds "
      "nothing",
      [](Expect& e) {
        SemigroupMatrix A = curve({2, 3, 4});
        MoveSet basis = MoveSet::of(A, rows({{3, -2, 0}, {2, 0, -1}}), MoveKind::markov);
        MoveSet g = graver(A);
        MoveSet closed = b_reduction_closure(basis, g, Int(3));
        expect_moves(e, "closed set", closed.moves(),
                     rows({{3, -2, 0},
                           {2, 0, -1},
                           {1, -2, 1},
                           {1, 2, -2},
                           {0, 4, -3},
                           {3, 2, -3}}));
        MoveSet again = b_reduction_closure(basis, closed, Int(3));
        e.that(again.moves() == closed.moves(), "closure is not idempotent");
        MoveSet shallow = b_reduction_closure(basis, g, Int(1));
        e.that(shallow.moves() == g.moves(), "bound 1 should add nothing");
      });
  add(out, "complex", "reduction-table-2-3-4",
      "four kernel relations with the published reduction options", [](Expect& e) {
        SemigroupMatrix A = curve({2, 3, 4});
        MoveSet basis = MoveSet::of(A, rows({{3, -2, 0}, {2, 0, -1}}), MoveKind::markov);
        MoveSet g = graver(A);
        MoveSet closed = b_reduction_closure(basis, g, Int(3));
        auto rels = reduction_inequality_sets(basis, closed, Int(3));
        e.that(rels.size() == 4, "expected 4 relations, got " + std::to_string(rels.size()));
        // Expected data per relation, in output order. Ground order is
        // (0,4,-3), (1,-2,1), (1,2,-2), (2,0,-1), (3,-2,0), (3,2,-3); the
        // basis moves sit at ground indices 3 and 4. Each option contributes
        // one strict inequality, recorded as a dense coefficient vector.
        struct WantRel {
          int target;
          std::vector<IntVector> option_rows;  // aligned with basis order
          IntVector multipliers;
          int target_coeff;
        };
        std::vector<WantRel> want;
        want.push_back({0,
                        rows({{-1, 2, 0, 0, 0, 0}, {-1, 0, 0, 0, 0, 1}}),
                        iv({3, -2}),
                        1});
        want.push_back({1,
                        rows({{0, -1, 0, 0, 1, 0}, {0, -1, 0, 1, 0, 0}}),
                        iv({1, -1}),
                        -1});
        want.push_back({2,
                        rows({{0, 1, -1, 0, 0, 0}, {0, 0, -1, 2, 0, 0}}),
                        iv({2, -1}),
                        1});
        want.push_back({5,
                        rows({{0, 0, 1, 0, 0, -1}, {0, 0, 0, 3, 0, -1}}),
                        iv({3, -1}),
                        1});
        for (std::size_t i = 0; i < rels.size() && i < want.size(); ++i) {
          const RelationSystem& rs = rels[i];
          const WantRel& w = want[i];
          std::string tag = "relation " + std::to_string(i + 1);
          e.that(rs.relation.target == w.target,
                 tag + ": target index differs from " + std::to_string(w.target));
          e.that(rs.relation.multipliers == w.multipliers, tag + ": multipliers differ");
          e.that(rs.relation.target_coeff == Int(w.target_coeff),
                 tag + ": target coefficient differs");
          bool shape_ok = rs.options.size() == w.option_rows.size();
          if (shape_ok) {
            for (std::size_t j = 0; j < rs.options.size(); ++j) {
              const ReductionOption& opt = rs.options[j];
              shape_ok = shape_ok && opt.ineqs.size() == 1 && opt.ineqs.front().strict &&
                         opt.ineqs.front().coeffs == w.option_rows[j];
            }
          }
          e.that(shape_ok, tag + ": reduction options differ from the published table");
        }
      });
  add(out, "complex", "cells-2-3-4",
      "published cells recovered: two transversal cones, their overlap, and the 1-norm gap",
      [](Expect& e) {
        SemigroupMatrix A = curve({2, 3, 4});
        MoveSet basis = MoveSet::of(A, rows({{3, -2, 0}, {2, 0, -1}}), MoveKind::markov);
        MoveSet g = graver(A);
        MoveSet closed = b_reduction_closure(basis, g, Int(3));
        ReductionComplex cx = distance_reducing_complex(basis, closed, Int(3), true);
        std::vector<IntVector> a1 = rays_from_columns(rows({{1, 0, 2, 3, 4, 6},
                                                            {0, 1, 1, 1, 1, 1},
                                                            {1, 1, 1, 2, 3, 5},
                                                            {1, 2, 2, 2, 2, 4},
                                                            {2, 3, 3, 3, 5, 9},
                                                            {1, 3, 3, 3, 3, 3}}),
                                                      6);
        std::vector<IntVector> a2 =
            rays_from_columns(rows({{1, 2, 3, 4, 0, 2, 3, 4, 7},
                                    {0, 1, 1, 1, 1, 1, 1, 1, 2},
                                    {1, 2, 2, 3, 1, 1, 2, 3, 5},
                                    {1, 2, 2, 2, 2, 2, 2, 2, 4},
                                    {2, 4, 2, 5, 3, 3, 3, 5, 8},
                                    {1, 2, 2, 2, 3, 3, 3, 3, 4}}),
                              6);
        std::vector<IntVector> a12 =
            rays_from_columns(rows({{1, 0, 2, 3, 4, 3, 4, 5, 9},
                                    {0, 1, 1, 1, 1, 1, 1, 1, 2},
                                    {1, 1, 1, 2, 3, 3, 3, 4, 7},
                                    {1, 2, 2, 2, 2, 3, 3, 3, 6},
                                    {2, 3, 3, 3, 5, 6, 3, 7, 12},
                                    {1, 3, 3, 3, 3, 3, 3, 3, 6}}),
                              6);
        bool has1 = false;
        bool has2 = false;
        for (const Cone& c : cx.cells) {
          if (c.rays == a1) has1 = true;
          if (c.rays == a2) has2 = true;
        }
        e.that(has1, "first published cell not among the cells");
        e.that(has2, "second published cell not among the cells");
        bool has12 = false;
        for (const Cone& c : cx.overlaps)
          if (c.rays == a12) has12 = true;
        e.that(has12, "published overlap cone not among the pairwise overlaps");
        IntVector one_norm = iv({7, 4, 5, 3, 5, 8});
        e.that(satisfies(cx.metric.sys, one_norm),
               "1-norm point should satisfy the metric cone");
        bool in_some_cell = false;
        for (const Cone& c : cx.cells)
          if (satisfies(c.sys, one_norm)) in_some_cell = true;
        e.that(!in_some_cell, "1-norm point should lie outside every cell");
      });
}

}  // namespace

std::vector<CheckResult> verification_suite() {
  std::vector<CheckResult> out;
  graver_checks(out);
  minimal_basis_checks(out);
  dim3_checks(out);
  dim4_checks(out);
  separation_checks(out);
  irreducible_checks(out);
  universal_checks(out);
  gluing_checks(out);
  complex_checks(out);
  return out;
}

}  // namespace msmb
