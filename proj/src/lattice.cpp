#include "msmb/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <functional>
#include <set>

#include "msmb/error.hpp"
#include "msmb/vec.hpp"

namespace msmb {

std::int64_t search_budget() {
  // Read the environment on every call so an override (or the CLI's
  // --max-cells, which sets it at dispatch time) takes effect immediately.
  const std::int64_t budget = [] {
    if (const char* env = std::getenv("MSMB_MAX_CELLS")) {
      char* end = nullptr;
      long long v = std::strtoll(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<std::int64_t>(v);
    }
    return static_cast<std::int64_t>(400000000);
  }();
  return budget;
}

std::vector<IntVector> kernel_basis(const SemigroupMatrix& A) {
  std::vector<IntVector> lat = integer_kernel_lattice(A.entries());
  IntMatrix canon = hnf_rows(std::move(lat));
  for (const IntVector& v : canon) assert(A.in_kernel(v));
  return canon;
}

namespace {

// The fiber/ball recursions run over a signed integer type T, either int64
// (fast path, used when a conservative bound rules out overflow) or Int.
// Both instantiations execute identical logic.

struct NodeBudget {
  std::int64_t left = search_budget();
  void spend() {
    if (--left < 0) throw Error(ErrorKind::BoundTooLarge, "enumeration exceeded MSMB_MAX_CELLS");
  }
};

template <class T>
struct Cast;

template <>
struct Cast<long long> {
  static long long to(const Int& v) { return v.get_si(); }
  static Int back(long long v) { return Int(static_cast<long>(v)); }
};

template <>
struct Cast<Int> {
  static const Int& to(const Int& v) { return v; }
  static Int back(const Int& v) { return v; }
};

// Per-coordinate ceiling bound from the rational dual y: u_j <= y·t / y·a_j.
// Returns -1 when y·t < 0 (fiber certainly empty).
template <class T>
struct FiberSearch {
  int d, n;
  std::vector<std::vector<T>> cols;  // cols[j][i] = A[i][j]
  std::vector<Rat> dual_col;         // y·a_j (> 0)
  RatVector dual;
  NodeBudget* budget;
  T cap;                              // remaining 1-norm budget (negative = unlimited)
  std::vector<T> point;
  std::vector<std::vector<T>>* out;   // collected points
  const std::vector<T>* forbid;       // if set, coordinates with forbid[j] > 0 must stay 0

  void run(std::vector<T>& t, int j, T used) {
    budget->spend();
    if (j == n) {
      bool zero = true;
      for (int i = 0; i < d; ++i)
        if (t[i] != 0) zero = false;
      if (zero) out->push_back(point);
      return;
    }
    // Remaining-target feasibility and coordinate bound via the dual.
    Rat yt(0);
    for (int i = 0; i < d; ++i) yt += dual[i] * Rat(Cast<T>::back(t[i]));
    if (sgn(yt) < 0) return;
    Rat q = yt / dual_col[j];
    // max value for u_j: floor(q), clipped by the norm cap.
    Int qfloor = fdiv(Int(q.get_num()), Int(q.get_den()));
    T hi = Cast<T>::to(qfloor);
    if (cap >= 0 && hi > cap - used) hi = cap - used;
    if (forbid && (*forbid)[j] > 0) hi = 0;
    for (T v = 0; v <= hi; ++v) {
      if (v > 0)
        for (int i = 0; i < d; ++i) t[i] -= cols[j][i];
      point[j] = v;
      run(t, j + 1, used + v);
    }
    // restore target
    if (hi > 0)
      for (int i = 0; i < d; ++i) t[i] += cols[j][i] * hi;
    point[j] = 0;
  }
};

template <class T>
std::vector<IntVector> fiber_points(const SemigroupMatrix& A, const IntVector& t, const Int& cap,
                                    NodeBudget& budget, const std::vector<T>* forbid) {
  int d = A.rows(), n = A.cols();
  FiberSearch<T> fs;
  fs.d = d;
  fs.n = n;
  fs.cols.assign(n, std::vector<T>(d));
  fs.dual_col.resize(n);
  for (int j = 0; j < n; ++j) {
    Rat dc(0);
    for (int i = 0; i < d; ++i) {
      fs.cols[j][i] = Cast<T>::to(A.at(i, j));
      dc += A.dual()[i] * Rat(A.at(i, j));
    }
    fs.dual_col[j] = dc;
    assert(sgn(dc) > 0);
  }
  fs.dual = A.dual();
  fs.budget = &budget;
  fs.cap = sgn(cap) < 0 ? T(-1) : Cast<T>::to(cap);
  fs.point.assign(n, T(0));
  std::vector<std::vector<T>> rows;
  fs.out = &rows;
  fs.forbid = forbid;
  std::vector<T> tt(d);
  for (int i = 0; i < d; ++i) tt[i] = Cast<T>::to(t[i]);
  fs.run(tt, 0, T(0));

  std::vector<IntVector> res;
  res.reserve(rows.size());
  for (const auto& r : rows) {
    IntVector v(n);
    for (int j = 0; j < n; ++j) v[j] = Cast<T>::back(r[j]);
    res.push_back(std::move(v));
  }
  return res;
}

// True when the int64 path cannot overflow: all |entries|, |t| and the cap
// small enough that every intermediate value stays far below 2^62.
bool int64_safe(const SemigroupMatrix& A, const IntVector& t, const Int& cap) {
  const Int lim = Int(1) << 40;
  Int mx = 0;
  for (const IntVector& r : A.entries())
    for (const Int& x : r) mx = std::max(mx, abs(x));
  for (const Int& x : t) mx = std::max(mx, abs(x));
  if (sgn(cap) > 0) mx = std::max(mx, cap);
  // Bound on any partial target: |t| + n * maxentry * maxcoord where the
  // coordinate bound is itself <= y·t / min(y·a_j); keep it crude but safe.
  Int crude = mx * mx * Int(A.cols() + A.rows() + 2);
  return crude < lim;
}

std::vector<IntVector> fiber_points_any(const SemigroupMatrix& A, const IntVector& t,
                                        const Int& cap, NodeBudget& budget) {
  if (int64_safe(A, t, cap)) return fiber_points<long long>(A, t, cap, budget, nullptr);
  return fiber_points<Int>(A, t, cap, budget, nullptr);
}

}  // namespace

Fiber enumerate_fiber(const SemigroupMatrix& A, const IntVector& t) {
  if (static_cast<int>(t.size()) != A.rows())
    throw Error(ErrorKind::InvalidInput, "fiber target has wrong length");
  NodeBudget budget;
  Fiber f;
  f.target = t;
  f.points = fiber_points_any(A, t, Int(-1), budget);
  std::sort(f.points.begin(), f.points.end(), lex_less);
  return f;
}

std::vector<IntVector> enumerate_fiber_capped(const SemigroupMatrix& A, const IntVector& t,
                                              const Int& cap) {
  NodeBudget budget;
  std::vector<IntVector> pts = fiber_points_any(A, t, cap, budget);
  std::sort(pts.begin(), pts.end(), lex_less);
  return pts;
}

std::vector<IntVector> enumerate_kernel_ball(const SemigroupMatrix& A, const Int& bound) {
  if (sgn(bound) < 0) throw Error(ErrorKind::InvalidInput, "negative ball radius");
  NodeBudget budget;
  int n = A.cols();
  std::set<IntVector> found;

  // Enumerate candidate positive parts p (||p|| <= bound), then negative
  // parts m in the fiber of A·p with ||m|| <= bound - ||p|| and support
  // disjoint from p; z = p - m. Each move is met as both z and -z; the
  // canonical set dedupes.
  bool fast = int64_safe(A, IntVector(A.rows(), Int(0)), bound + 1);

  auto process = [&](const IntVector& p, const Int& pnorm) {
    IntVector t = A.mul(p);
    Int cap = bound - pnorm;
    std::vector<IntVector> ms;
    if (fast) {
      std::vector<long long> forbid(n);
      for (int j = 0; j < n; ++j) forbid[j] = p[j].get_si();
      ms = fiber_points<long long>(A, t, cap, budget, &forbid);
    } else {
      std::vector<Int> forbid(p.begin(), p.end());
      ms = fiber_points<Int>(A, t, cap, budget, &forbid);
    }
    for (const IntVector& m : ms) {
      IntVector z = sub(p, m);
      if (is_zero(z)) continue;
      found.insert(canonical(z));
    }
  };

  // Recursive enumeration of p.
  IntVector p(n, 0);
  std::function<void(int, Int)> rec = [&](int j, Int used) {
    budget.spend();
    if (j == n) {
      process(p, used);
      return;
    }
    for (Int v = 0; used + v <= bound; ++v) {
      p[j] = v;
      rec(j + 1, used + v);
    }
    p[j] = 0;
  };
  rec(0, Int(0));

  return std::vector<IntVector>(found.begin(), found.end());
}

Applicability applicable(const IntVector& u, const IntVector& x) {
  if (u.size() != x.size()) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
  Applicability r;
  r.plus = leq(minus_part(u), x);
  r.minus = leq(plus_part(u), x);
  return r;
}

DecompositionFlags decomposition_predicates(const IntVector& z, const IntVector& u,
                                            const IntVector& v) {
  if (z.size() != u.size() || z.size() != v.size())
    throw Error(ErrorKind::InvalidInput, "dimension mismatch");
  if (add(u, v) != z) throw Error(ErrorKind::SumMismatch, "z != u + v");
  DecompositionFlags f;
  f.conformal = plus_part(z) == add(plus_part(u), plus_part(v)) &&
                minus_part(z) == add(minus_part(u), minus_part(v));
  f.semiconformal = true;
  for (size_t i = 0; i < z.size(); ++i)
    if (sgn(u[i]) > 0 && sgn(v[i]) < 0) f.semiconformal = false;
  Int nz = norm1(z), nv = norm1(v);
  f.pos_distance = leq(plus_part(u), plus_part(z)) && nv < nz;
  f.neg_distance = leq(minus_part(u), minus_part(z)) && nv < nz;
  f.proper = !is_zero(u) && !is_zero(v);
  return f;
}

}  // namespace msmb
