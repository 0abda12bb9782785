#include "msmb/bases.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

#include "msmb/error.hpp"
#include "msmb/linalg.hpp"
#include "msmb/vec.hpp"

namespace msmb {

MoveSet circuits(const SemigroupMatrix& A) {
  std::vector<IntVector> moves;
  const int n = A.cols();
  if (A.rows() == 1) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Int g = gcd(A.at(0, i), A.at(0, j));
        IntVector z(n, Int(0));
        z[i] = A.at(0, j) / g;
        z[j] = A.at(0, i) / g;
        z[j] = -z[j];
        moves.push_back(std::move(z));
      }
  } else {
    std::vector<IntVector> cols(n);
    for (int j = 0; j < n; ++j) cols[j] = A.col(j);
    for (const SupportDependency& dep : support_minimal_dependencies(cols)) {
      IntVector z(n, Int(0));
      for (size_t k = 0; k < dep.support.size(); ++k) z[dep.support[k]] = dep.coeffs[k];
      moves.push_back(std::move(z));
    }
  }
  return MoveSet::of(A, std::move(moves), MoveKind::circuits);
}

namespace {

// Subtract conformal summands from r until none is left. Returns the zero
// vector when r lies in the conformal monoid generated by pool.
IntVector conformal_normal_form(IntVector r, const std::vector<IntVector>& pool) {
  bool progress = true;
  while (progress && !is_zero(r)) {
    progress = false;
    for (const IntVector& g : pool) {
      if (conformal_leq(g, r)) {
        r = sub(r, g);
        progress = true;
        break;
      }
    }
  }
  return r;
}

constexpr std::size_t kGraverElementCap = 20000;
constexpr std::size_t kGraverPairCap = 5000000;

}  // namespace

MoveSet graver(const SemigroupMatrix& A) {
  // Completion over the ± closure of a kernel lattice basis: every pairwise
  // sum is reduced to conformal normal form; nonzero remainders join the pool
  // and spawn new pairs. Termination: remainders are pairwise ⊑-incomparable
  // with existing pool members, and ⊑ admits no infinite antichain. On
  // completion the pool conformally generates ker(A), so its ⊑-minimal
  // members are exactly the primitive kernel elements.
  std::vector<IntVector> pool;
  for (const IntVector& v : kernel_basis(A)) {
    pool.push_back(v);
    pool.push_back(neg(v));
  }
  std::deque<std::pair<std::size_t, std::size_t>> pending;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j) pending.emplace_back(i, j);

  std::size_t processed = 0;
  while (!pending.empty()) {
    if (++processed > kGraverPairCap)
      throw Error(ErrorKind::BudgetExceeded, "completion pair budget exhausted");
    auto [i, j] = pending.front();
    pending.pop_front();
    IntVector r = conformal_normal_form(add(pool[i], pool[j]), pool);
    if (is_zero(r)) continue;
    IntVector nr = neg(r);
    for (const IntVector& fresh : {r, nr}) {
      std::size_t k = pool.size();
      if (k + 1 > kGraverElementCap || pending.size() > kGraverPairCap)
        throw Error(ErrorKind::BudgetExceeded, "completion element cap exhausted");
      for (std::size_t t = 0; t < k; ++t) pending.emplace_back(t, k);
      pool.push_back(fresh);
    }
  }

  // Keep the ⊑-minimal elements (the pool may contain reducible leftovers
  // from early rounds), after deduplication.
  std::sort(pool.begin(), pool.end(), lex_less);
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  std::vector<IntVector> minimal;
  for (const IntVector& z : pool) {
    bool is_min = true;
    for (const IntVector& g : pool) {
      if (g != z && conformal_leq(g, z)) {
        is_min = false;
        break;
      }
    }
    if (is_min) minimal.push_back(z);
  }
  return MoveSet::of(A, std::move(minimal), MoveKind::graver);
}

MoveSet indispensables(const SemigroupMatrix& A) {
  // z is dispensable iff it splits as z = u + v with u, v nonzero kernel
  // elements and u_i > 0 ⇒ v_i ≥ 0. Writing u = q − m with q = u⁺, m = u⁻:
  // the semi-conformal condition forces q ≤ z⁺, and m ranges over the fiber
  // of A·q with support disjoint from q. Any such pair with u ∉ {0, z} is a
  // proper decomposition (v_i = z_i − q_i ≥ 0 holds automatically on the
  // support of q), and every proper decomposition arises this way.
  const MoveSet G = graver(A);
  const int n = A.cols();
  std::vector<IntVector> keep;
  for (const IntVector& z : G.moves()) {
    IntVector zp = plus_part(z);
    bool split = false;
    IntVector q(n, Int(0));
    // Enumerate all 0 ≤ q ≤ z⁺ by odometer.
    while (!split) {
      if (!is_zero(q)) {
        for (const IntVector& m : enumerate_fiber_capped(A, A.mul(q), Int(-1))) {
          bool disjoint = true;
          for (int i = 0; i < n && disjoint; ++i)
            if (sgn(q[i]) > 0 && sgn(m[i]) > 0) disjoint = false;
          if (!disjoint) continue;
          IntVector u = sub(q, m);
          if (is_zero(u) || u == z) continue;
          split = true;
          break;
        }
      }
      int pos = 0;
      while (pos < n && q[pos] == zp[pos]) {
        q[pos] = 0;
        ++pos;
      }
      if (pos == n) break;
      q[pos] += 1;
    }
    if (!split) keep.push_back(z);
  }
  return MoveSet::of(A, std::move(keep), MoveKind::indispensable);
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// One fiber with precomputed move-edges: edges_per_move[k] lists the index
// pairs (i, j) with points[i] + move_k = points[j].
struct FiberGraph {
  std::vector<IntVector> points;  // lex sorted
  std::map<IntVector, int> index;
  std::vector<std::vector<std::pair<int, int>>> edges_per_move;

  explicit FiberGraph(std::vector<IntVector> pts) : points(std::move(pts)) {
    for (int i = 0; i < static_cast<int>(points.size()); ++i) index.emplace(points[i], i);
  }

  void add_move_edges(const IntVector& u) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
      IntVector y = add(points[i], u);
      if (!is_nonneg(y)) continue;
      auto it = index.find(y);
      if (it != index.end()) edges.emplace_back(i, it->second);
    }
    edges_per_move.push_back(std::move(edges));
  }

  // Components under the moves selected by `mask` (empty mask = all).
  Dsu components(const std::vector<bool>* mask) const {
    Dsu dsu(static_cast<int>(points.size()));
    for (std::size_t k = 0; k < edges_per_move.size(); ++k) {
      if (mask && !(*mask)[k]) continue;
      for (const auto& [i, j] : edges_per_move[k]) dsu.unite(i, j);
    }
    return dsu;
  }
};

// Shared engine: fibers keyed by target, with one edge set per move of B and
// a list of (fiber, from, to) connection requirements.
struct MarkovEngine {
  const SemigroupMatrix& A;
  std::vector<IntVector> moves;  // canonical representatives
  std::map<IntVector, int> fiber_of_target;
  std::vector<FiberGraph> fibers;

  MarkovEngine(const SemigroupMatrix& a, std::vector<IntVector> mv)
      : A(a), moves(std::move(mv)) {}

  int fiber_index(const IntVector& t) {
    auto it = fiber_of_target.find(t);
    if (it != fiber_of_target.end()) return it->second;
    FiberGraph fg(enumerate_fiber(A, t).points);
    for (const IntVector& u : moves) fg.add_move_edges(u);
    int idx = static_cast<int>(fibers.size());
    fibers.push_back(std::move(fg));
    fiber_of_target.emplace(t, idx);
    return idx;
  }
};

}  // namespace

MarkovCheck verify_markov(const SemigroupMatrix& A, const MoveSet& B) {
  if (!(B.ambient() == A))
    throw Error(ErrorKind::InvalidInput, "move set belongs to a different matrix");
  MarkovEngine eng(A, B.moves());
  MarkovCheck res;
  const MoveSet G = graver(A);
  for (const IntVector& g : G.moves()) {
    IntVector gp = plus_part(g), gm = minus_part(g);
    int fi = eng.fiber_index(A.mul(gp));
    FiberGraph& fg = eng.fibers[fi];
    Dsu dsu = fg.components(nullptr);
    int a = fg.index.at(gp), b = fg.index.at(gm);
    if (dsu.find(a) != dsu.find(b)) {
      res.ok = false;
      res.witness_target = A.mul(gp);
      res.witness_from = gp;
      res.witness_to = gm;
      return res;
    }
  }
  return res;
}

MarkovCheck verify_markov_exhaustive(const SemigroupMatrix& A, const MoveSet& B,
                                     const Int& bound) {
  if (!(B.ambient() == A))
    throw Error(ErrorKind::InvalidInput, "move set belongs to a different matrix");
  if (sgn(bound) < 0) throw Error(ErrorKind::InvalidInput, "negative norm bound");
  // Collect every target reachable as A·x with ||x|| ≤ bound.
  std::vector<IntVector> targets;
  {
    const int n = A.cols();
    IntVector x(n, Int(0));
    std::int64_t visits = 0;
    std::function<void(int, Int)> rec = [&](int j, Int used) {
      if (++visits > search_budget())
        throw Error(ErrorKind::BoundTooLarge, "enumeration exceeded MSMB_MAX_CELLS");
      if (j == n) {
        targets.push_back(A.mul(x));
        return;
      }
      for (Int v = 0; used + v <= bound; ++v) {
        x[j] = v;
        rec(j + 1, used + v);
      }
      x[j] = 0;
    };
    rec(0, Int(0));
    std::sort(targets.begin(), targets.end(), lex_less);
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  }

  MarkovEngine eng(A, B.moves());
  MarkovCheck res;
  for (const IntVector& t : targets) {
    FiberGraph& fg = eng.fibers[eng.fiber_index(t)];
    if (fg.points.size() < 2) continue;
    Dsu dsu = fg.components(nullptr);
    int root = dsu.find(0);
    for (int i = 1; i < static_cast<int>(fg.points.size()); ++i) {
      if (dsu.find(i) != root) {
        res.ok = false;
        res.witness_target = t;
        res.witness_from = fg.points[0];
        res.witness_to = fg.points[i];
        return res;
      }
    }
  }
  return res;
}

namespace {

constexpr std::size_t kBasisEnumerationCap = 100000;

// All labelled spanning trees on c vertices as edge lists, decoded from
// Prüfer sequences (the single edge {0, 1} when c == 2).
std::vector<std::vector<std::pair<int, int>>> labelled_trees(int c) {
  std::vector<std::vector<std::pair<int, int>>> trees;
  std::vector<int> seq(std::max(c - 2, 0), 0);
  while (true) {
    std::vector<int> degree(c, 1);
    for (int v : seq) ++degree[v];
    std::vector<std::pair<int, int>> edges;
    std::vector<bool> used(c, false);
    std::vector<int> deg = degree;
    for (int v : seq) {
      for (int leaf = 0; leaf < c; ++leaf) {
        if (deg[leaf] == 1 && !used[leaf]) {
          edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
          used[leaf] = true;
          --deg[v];
          break;
        }
      }
    }
    std::vector<int> rest;
    for (int v = 0; v < c; ++v)
      if (!used[v] && deg[v] == 1) rest.push_back(v);
    if (rest.size() == 2) edges.emplace_back(rest[0], rest[1]);
    std::sort(edges.begin(), edges.end());
    trees.push_back(std::move(edges));
    int pos = 0;
    while (pos < static_cast<int>(seq.size()) && seq[pos] == c - 1) seq[pos++] = 0;
    if (pos == static_cast<int>(seq.size())) break;
    ++seq[pos];
  }
  std::sort(trees.begin(), trees.end());
  trees.erase(std::unique(trees.begin(), trees.end()), trees.end());
  return trees;
}

}  // namespace

std::vector<MoveSet> minimal_markov_bases(const SemigroupMatrix& A) {
  // Generation is decided degree by degree. For a degree t, split the fiber
  // of t into the connected components of its support graph (points joined
  // when their supports meet): t contributes generators exactly when there
  // are c >= 2 components, and the degree-t part of any minimal basis is a
  // choice of spanning tree on the components together with one
  // representative pair per tree edge. Cross-component points have disjoint
  // supports, so the move x - y determines the pair (x, y) and distinct
  // choices yield distinct bases. Every minimal basis lies inside the Graver
  // basis, so the Graver degrees exhaust the candidate degrees.
  const MoveSet G = graver(A);

  std::vector<IntVector> degrees;
  for (const IntVector& g : G.moves()) degrees.push_back(A.mul(plus_part(g)));
  std::sort(degrees.begin(), degrees.end(), lex_less);
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());

  // Per contributing degree: every admissible set of degree-t moves.
  std::vector<std::vector<std::vector<IntVector>>> options_per_degree;
  for (const IntVector& t : degrees) {
    const std::vector<IntVector>& pts = enumerate_fiber(A, t).points;
    const int m = static_cast<int>(pts.size());
    Dsu dsu(m);
    // Support-graph components via point-coordinate incidence: linking all
    // points positive in a coordinate realises the transitive closure.
    for (int j = 0; j < A.cols(); ++j) {
      int first = -1;
      for (int i = 0; i < m; ++i) {
        if (sgn(pts[i][j]) <= 0) continue;
        if (first < 0)
          first = i;
        else
          dsu.unite(first, i);
      }
    }
    std::map<int, std::vector<IntVector>> by_root;
    for (int i = 0; i < m; ++i) by_root[dsu.find(i)].push_back(pts[i]);
    if (by_root.size() < 2) continue;
    std::vector<std::vector<IntVector>> comps;
    for (auto& [root, members] : by_root) comps.push_back(std::move(members));
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return lex_less(a.front(), b.front()); });

    const int c = static_cast<int>(comps.size());
    std::vector<std::vector<IntVector>> options;
    for (const auto& tree : labelled_trees(c)) {
      // Odometer over one representative pair per tree edge.
      std::vector<std::size_t> pick(tree.size() * 2, 0);
      while (true) {
        std::vector<IntVector> moves;
        for (std::size_t e = 0; e < tree.size(); ++e) {
          const IntVector& x = comps[tree[e].first][pick[2 * e]];
          const IntVector& y = comps[tree[e].second][pick[2 * e + 1]];
          moves.push_back(sub(x, y));
        }
        std::sort(moves.begin(), moves.end(), lex_less);
        options.push_back(std::move(moves));
        if (options.size() > kBasisEnumerationCap)
          throw Error(ErrorKind::BudgetExceeded, "too many minimal Markov bases to enumerate");
        std::size_t pos = 0;
        while (pos < pick.size()) {
          const auto& comp = comps[pos % 2 == 0 ? tree[pos / 2].first : tree[pos / 2].second];
          if (++pick[pos] < comp.size()) break;
          pick[pos] = 0;
          ++pos;
        }
        if (pos == pick.size()) break;
      }
    }
    std::sort(options.begin(), options.end());
    options.erase(std::unique(options.begin(), options.end()), options.end());
    options_per_degree.push_back(std::move(options));
  }

  std::size_t total = 1;
  for (const auto& options : options_per_degree) {
    total *= options.size();
    if (total > kBasisEnumerationCap)
      throw Error(ErrorKind::BudgetExceeded, "too many minimal Markov bases to enumerate");
  }

  std::vector<MoveSet> found;
  std::vector<std::size_t> pick(options_per_degree.size(), 0);
  while (true) {
    std::vector<IntVector> sel;
    for (std::size_t d = 0; d < pick.size(); ++d)
      for (const IntVector& z : options_per_degree[d][pick[d]]) sel.push_back(z);
    found.push_back(MoveSet::of(A, std::move(sel), MoveKind::markov));
    std::size_t pos = 0;
    while (pos < pick.size()) {
      if (++pick[pos] < options_per_degree[pos].size()) break;
      pick[pos] = 0;
      ++pos;
    }
    if (pos == pick.size()) break;
  }
  std::sort(found.begin(), found.end(), [](const MoveSet& a, const MoveSet& b) {
    return std::lexicographical_compare(a.moves().begin(), a.moves().end(), b.moves().begin(),
                                        b.moves().end(), lex_less);
  });
  return found;
}

MoveSet universal_markov(const SemigroupMatrix& A) {
  std::vector<IntVector> all;
  for (const MoveSet& B : minimal_markov_bases(A))
    for (const IntVector& z : B.moves()) all.push_back(z);
  return MoveSet::of(A, std::move(all), MoveKind::universal_markov);
}

}  // namespace msmb
