// Slow, definition-level reference implementations used to cross-check the
// library. Everything here is written as a direct restatement of the
// documented behaviour, independent of the library's algorithms: fibers by
// digit enumeration, kernel balls by budgeted odometer, reduction by walking
// the fiber pair, connectivity by breadth-first search.
#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <random>
#include <vector>

#include "msmb/ints.hpp"

namespace oracle {

using msmb::Int;
using msmb::IntMatrix;
using msmb::IntVector;

inline Int norm1(const IntVector& v) {
  Int s = 0;
  for (const Int& x : v) s += (x < 0) ? Int(-x) : x;
  return s;
}

inline bool nonneg(const IntVector& v) {
  for (const Int& x : v)
    if (x < 0) return false;
  return true;
}

inline bool in_kernel(const IntMatrix& rows, const IntVector& z) {
  for (const IntVector& r : rows) {
    Int s = 0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r[i] * z[i];
    if (s != 0) return false;
  }
  return true;
}

// Representative of {z, -z} whose first nonzero coordinate is positive.
inline IntVector canonical(IntVector z) {
  for (const Int& x : z) {
    if (x > 0) return z;
    if (x < 0) {
      for (Int& y : z) y = -y;
      return z;
    }
  }
  return z;
}

inline IntVector plus_part(const IntVector& z) {
  IntVector p(z.size(), Int(0));
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] > 0) p[i] = z[i];
  return p;
}

inline IntVector minus_part(const IntVector& z) {
  IntVector m(z.size(), Int(0));
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] < 0) m[i] = -z[i];
  return m;
}

inline IntVector add(const IntVector& a, const IntVector& b) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVector sub(const IntVector& a, const IntVector& b) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

namespace detail {

inline void fiber_rec(const IntMatrix& rows, std::size_t col, IntVector& rem, IntVector& point,
                      std::vector<IntVector>& out) {
  const std::size_t n = rows.front().size();
  if (col == n) {
    for (const Int& r : rem)
      if (r != 0) return;
    out.push_back(point);
    return;
  }
  // Entries are nonnegative and every column has a positive entry, so the
  // digit at `col` is capped by the tightest remaining row budget.
  Int ub(-1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Int& a = rows[r][col];
    if (a > 0) {
      Int cap = rem[r] / a;  // floor; rem stays nonnegative below
      if (ub < 0 || cap < ub) ub = cap;
    }
  }
  assert(ub >= 0);
  for (Int k(0); k <= ub; ++k) {
    point[col] = k;
    IntVector rem2(rows.size());
    bool feasible = true;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      rem2[r] = rem[r] - rows[r][col] * k;
      if (rem2[r] < 0) feasible = false;
    }
    if (feasible) {
      std::swap(rem, rem2);
      fiber_rec(rows, col + 1, rem, point, out);
      std::swap(rem, rem2);
    }
  }
  point[col] = 0;
}

inline void ball_rec(std::size_t col, const Int& budget, IntVector& point,
                     std::vector<IntVector>& out) {
  if (col == point.size()) {
    out.push_back(point);
    return;
  }
  for (Int k(-budget); k <= budget; ++k) {
    point[col] = k;
    Int used = (k < 0) ? Int(-k) : k;
    ball_rec(col + 1, Int(budget - used), point, out);
  }
  point[col] = 0;
}

}  // namespace detail

// All x >= 0 with rows·x = t, lex-sorted. Requires nonnegative entries with a
// positive entry in every column (true of every matrix used in the tests).
inline std::vector<IntVector> fiber(const IntMatrix& rows, const IntVector& t) {
  assert(!rows.empty());
  for (const IntVector& r : rows)
    for (const Int& a : r) assert(a >= 0);
  std::vector<IntVector> out;
  IntVector rem = t;
  for (const Int& r : rem)
    if (r < 0) return out;
  IntVector point(rows.front().size(), Int(0));
  detail::fiber_rec(rows, 0, rem, point, out);
  std::sort(out.begin(), out.end());
  return out;
}

// Canonical nonzero kernel elements of 1-norm at most `radius`, lex-sorted.
inline std::vector<IntVector> kernel_ball(const IntMatrix& rows, long radius) {
  const std::size_t n = rows.front().size();
  std::vector<IntVector> box;
  IntVector point(n, Int(0));
  detail::ball_rec(0, Int(radius), point, box);
  std::vector<IntVector> out;
  for (const IntVector& z : box) {
    bool zero = true;
    for (const Int& x : z)
      if (x != 0) zero = false;
    if (zero || !in_kernel(rows, z)) continue;
    out.push_back(canonical(z));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Does some move of B (or its negation), applied at the named endpoint of the
// pair (z⁺, z⁻), keep that endpoint nonnegative and strictly shrink the
// distance between the endpoints? Walking x = z⁺ by s changes the distance to
// ||z + s||; walking y = z⁻ by s changes it to ||z - s||.
inline bool reduces_at(const std::vector<IntVector>& B, const IntVector& z, bool plus_endpoint) {
  const IntVector x = plus_part(z);
  const IntVector y = minus_part(z);
  const Int before = norm1(z);
  for (const IntVector& u : B) {
    for (int sign = 0; sign < 2; ++sign) {
      IntVector s = u;
      if (sign == 1)
        for (Int& c : s) c = -c;
      if (plus_endpoint) {
        if (nonneg(add(x, s)) && norm1(add(z, s)) < before) return true;
      } else {
        if (nonneg(add(y, s)) && norm1(sub(z, s)) < before) return true;
      }
    }
  }
  return false;
}

inline bool reduces(const std::vector<IntVector>& B, const IntVector& z) {
  return reduces_at(B, z, true) || reduces_at(B, z, false);
}

inline bool strongly_reduces(const std::vector<IntVector>& B, const IntVector& z) {
  return reduces_at(B, z, true) && reduces_at(B, z, false);
}

// Breadth-first search over `points` under steps ±u, u in B.
inline bool connects(const std::vector<IntVector>& points, const std::vector<IntVector>& B,
                     const IntVector& from, const IntVector& to) {
  std::vector<IntVector> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  auto index_of = [&](const IntVector& p) -> std::ptrdiff_t {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
    if (it == sorted.end() || *it != p) return -1;
    return it - sorted.begin();
  };
  std::ptrdiff_t s = index_of(from), t = index_of(to);
  if (s < 0 || t < 0) return false;
  std::vector<char> seen(sorted.size(), 0);
  std::vector<std::size_t> queue{static_cast<std::size_t>(s)};
  seen[static_cast<std::size_t>(s)] = 1;
  while (!queue.empty()) {
    std::size_t cur = queue.back();
    queue.pop_back();
    if (static_cast<std::ptrdiff_t>(cur) == t) return true;
    for (const IntVector& u : B) {
      for (int sign = 0; sign < 2; ++sign) {
        IntVector next = (sign == 0) ? add(sorted[cur], u) : sub(sorted[cur], u);
        std::ptrdiff_t k = index_of(next);
        if (k >= 0 && !seen[static_cast<std::size_t>(k)]) {
          seen[static_cast<std::size_t>(k)] = 1;
          queue.push_back(static_cast<std::size_t>(k));
        }
      }
    }
  }
  return false;
}

inline bool all_connected(const std::vector<IntVector>& points, const std::vector<IntVector>& B) {
  if (points.size() < 2) return true;
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!connects(points, B, points.front(), points[i])) return false;
  return true;
}

// Is z conformally minimal, i.e. does no proper summand v of the kernel sit
// inside the sign-box of z (0 ≤ v_i ≤ z_i or z_i ≤ v_i ≤ 0 per coordinate)?
inline bool conformal_minimal(const IntMatrix& rows, const IntVector& z) {
  const std::size_t n = z.size();
  IntVector v(n, Int(0));
  // Odometer over the box spanned by 0 and z.
  std::vector<Int> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = (z[i] < 0) ? z[i] : Int(0);
    hi[i] = (z[i] > 0) ? z[i] : Int(0);
    v[i] = lo[i];
  }
  while (true) {
    bool zero = true, whole = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] != 0) zero = false;
      if (v[i] != z[i]) whole = false;
    }
    if (!zero && !whole && in_kernel(rows, v)) return false;
    std::size_t i = 0;
    while (i < n) {
      if (v[i] < hi[i]) {
        v[i] += 1;
        break;
      }
      v[i] = lo[i];
      ++i;
    }
    if (i == n) break;
  }
  return true;
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(unsigned long long seed) : eng(seed) {}
  long pick(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(eng);
  }
};

inline std::vector<IntVector> canon_set(std::vector<IntVector> v) {
  for (IntVector& z : v) z = canonical(z);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline IntMatrix im(std::initializer_list<std::initializer_list<long>> rs) {
  IntMatrix m;
  m.reserve(rs.size());
  for (const auto& r : rs) m.push_back(iv(r));
  return m;
}

}  // namespace oracle
