#include "msmb/linalg.hpp"

#include <algorithm>
#include <cassert>

#include "msmb/error.hpp"
#include "msmb/vec.hpp"

namespace msmb {

namespace {

RatMatrix to_rational(const IntMatrix& rows) {
  RatMatrix m(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    m[i].reserve(rows[i].size());
    for (const Int& x : rows[i]) m[i].emplace_back(x);
  }
  return m;
}

// Gaussian elimination; returns pivot column per eliminated row.
std::vector<int> row_reduce(RatMatrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  size_t ncols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < m.size(); ++c) {
    size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    Rat inv = m[r][c];
    for (size_t j = c; j < ncols; ++j) m[r][j] /= inv;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rat f = m[i][c];
      for (size_t j = c; j < ncols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

}  // namespace

int rank_rational(const IntMatrix& rows) {
  RatMatrix m = to_rational(rows);
  return static_cast<int>(row_reduce(m).size());
}

std::vector<IntVector> nullspace_rational(const IntMatrix& rows) {
  if (rows.empty()) return {};
  size_t n = rows[0].size();
  RatMatrix m = to_rational(rows);
  std::vector<int> pivots = row_reduce(m);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;

  std::vector<IntVector> basis;
  for (size_t free_c = 0; free_c < n; ++free_c) {
    if (is_pivot[free_c]) continue;
    RatVector v(n, Rat(0));
    v[free_c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free_c];
    // Clear denominators, reduce to primitive integers.
    Int den = 1;
    for (const Rat& x : v) den = lcm(den, Int(x.get_den()));
    IntVector iv(n);
    for (size_t j = 0; j < n; ++j) {
      Rat scaled = v[j] * Rat(den);
      assert(scaled.get_den() == 1);
      iv[j] = scaled.get_num();
    }
    basis.push_back(primitive(iv));
  }
  return basis;
}

std::vector<IntVector> integer_kernel_lattice(const IntMatrix& rows) {
  if (rows.empty()) return {};
  size_t d = rows.size(), n = rows[0].size();
  IntMatrix h = rows;                       // d x n, transformed by column ops
  IntMatrix u(n, IntVector(n, 0));          // n x n unimodular, same column ops
  for (size_t i = 0; i < n; ++i) u[i][i] = 1;

  auto col_combine = [&](size_t i, size_t r, size_t c) {
    // Zero h[i][c] against h[i][r] by a unimodular 2-column transform.
    Int a = h[i][r], b = h[i][c];
    Int s, t;
    Int g = gcdext(a, b, s, t);
    Int ar = a / g, bc = b / g;
    for (size_t k = 0; k < d; ++k) {
      Int nr = s * h[k][r] + t * h[k][c];
      Int nc = ar * h[k][c] - bc * h[k][r];
      h[k][r] = nr;
      h[k][c] = nc;
    }
    for (size_t k = 0; k < n; ++k) {
      Int nr = s * u[k][r] + t * u[k][c];
      Int nc = ar * u[k][c] - bc * u[k][r];
      u[k][r] = nr;
      u[k][c] = nc;
    }
  };

  size_t r = 0;
  for (size_t i = 0; i < d && r < n; ++i) {
    // Bring a nonzero into column r using columns >= r, then clear the rest.
    size_t c = r;
    while (c < n && sgn(h[i][c]) == 0) ++c;
    if (c == n) continue;
    if (c != r) {
      for (size_t k = 0; k < d; ++k) std::swap(h[k][r], h[k][c]);
      for (size_t k = 0; k < n; ++k) std::swap(u[k][r], u[k][c]);
    }
    for (c = r + 1; c < n; ++c)
      if (sgn(h[i][c]) != 0) col_combine(i, r, c);
    ++r;
  }

  std::vector<IntVector> kernel;
  for (size_t c = r; c < n; ++c) {
    IntVector v(n);
    for (size_t k = 0; k < n; ++k) v[k] = u[k][c];
    kernel.push_back(v);
  }
  return kernel;
}

IntMatrix hnf_rows(IntMatrix rows) {
  if (rows.empty()) return rows;
  size_t n = rows[0].size();
  size_t r = 0;
  for (size_t c = 0; c < n && r < rows.size(); ++c) {
    // Reduce all entries of column c (rows >= r) to a single gcd entry at r.
    size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (size_t i = r + 1; i < rows.size(); ++i) {
      if (sgn(rows[i][c]) == 0) continue;
      Int s, t;
      Int g = gcdext(rows[r][c], rows[i][c], s, t);
      Int ar = rows[r][c] / g, bi = rows[i][c] / g;
      for (size_t j = 0; j < n; ++j) {
        Int nr = s * rows[r][j] + t * rows[i][j];
        Int ni = ar * rows[i][j] - bi * rows[r][j];
        rows[r][j] = nr;
        rows[i][j] = ni;
      }
    }
    if (sgn(rows[r][c]) < 0)
      for (size_t j = 0; j < n; ++j) rows[r][j] = -rows[r][j];
    // Reduce entries above the pivot into [0, pivot).
    for (size_t i = 0; i < r; ++i) {
      Int q = fdiv(rows[i][c], rows[r][c]);
      if (sgn(q) != 0)
        for (size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

IntMatrix adjugate(const IntMatrix& m, Int& det) {
  size_t n = m.size();
  assert(n > 0 && m[0].size() == n);
  // Solve M * X = I over the rationals, then adj = det * X.
  RatMatrix aug(n, RatVector(2 * n, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug[i][j] = Rat(m[i][j]);
    aug[i][n + i] = 1;
  }
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && sgn(aug[p][c]) == 0) ++p;
    if (p == n) throw Error(ErrorKind::InvalidInput, "adjugate of a singular matrix");
    if (p != c) std::swap(aug[p], aug[c]);
    Rat piv = aug[c][c];
    for (size_t j = c; j < 2 * n; ++j) aug[c][j] /= piv;
    for (size_t i = 0; i < n; ++i) {
      if (i == c || sgn(aug[i][c]) == 0) continue;
      Rat f = aug[i][c];
      for (size_t j = c; j < 2 * n; ++j) aug[i][j] -= f * aug[c][j];
    }
  }
  // det via a separate triangularisation (exact rational pivot product).
  {
    RatMatrix g(n, RatVector(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) g[i][j] = Rat(m[i][j]);
    Rat dr(1);
    for (size_t c = 0; c < n; ++c) {
      size_t p = c;
      while (p < n && sgn(g[p][c]) == 0) ++p;
      assert(p < n);
      if (p != c) {
        std::swap(g[p], g[c]);
        dr = -dr;
      }
      dr *= g[c][c];
      for (size_t i = c + 1; i < n; ++i) {
        if (sgn(g[i][c]) == 0) continue;
        Rat f = g[i][c] / g[c][c];
        for (size_t j = c; j < n; ++j) g[i][j] -= f * g[c][j];
      }
    }
    assert(dr.get_den() == 1);
    det = dr.get_num();
  }
  IntMatrix adj(n, IntVector(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      Rat v = aug[i][n + j] * Rat(det);
      assert(v.get_den() == 1);
      adj[i][j] = v.get_num();
    }
  }
  return adj;
}

std::optional<RatVector> fm_feasible(std::vector<AffineIneq> system, int nvars) {
  constexpr size_t kRowGuard = 200000;
  // layers[k] = the system before eliminating variable k.
  std::vector<std::vector<AffineIneq>> layers;
  for (int v = 0; v < nvars; ++v) {
    layers.push_back(system);
    std::vector<AffineIneq> next;
    std::vector<const AffineIneq*> lower, upper;  // coeff > 0 gives a lower bound on y_v
    for (const AffineIneq& q : system) {
      int s = sgn(q.coeffs[v]);
      if (s == 0)
        next.push_back(q);
      else if (s > 0)
        lower.push_back(&q);
      else
        upper.push_back(&q);
    }
    for (const AffineIneq* lo : lower) {
      for (const AffineIneq* up : upper) {
        // Combine c_lo (>0 coeff) and c_up (<0 coeff) to cancel y_v.
        AffineIneq comb;
        comb.coeffs.assign(nvars, Rat(0));
        Rat a = lo->coeffs[v], b = -up->coeffs[v];
        for (int j = 0; j < nvars; ++j) comb.coeffs[j] = b * lo->coeffs[j] + a * up->coeffs[j];
        comb.constant = b * lo->constant + a * up->constant;
        next.push_back(std::move(comb));
        if (next.size() > kRowGuard)
          throw Error(ErrorKind::GuardExceeded, "Fourier-Motzkin row blow-up");
      }
    }
    system = std::move(next);
  }
  // All variables eliminated: rows are "constant >= 0".
  for (const AffineIneq& q : system)
    if (sgn(q.constant) < 0) return std::nullopt;

  // Back-substitute a witness, last eliminated variable first.
  RatVector y(nvars, Rat(0));
  for (int v = nvars - 1; v >= 0; --v) {
    bool has_lo = false, has_up = false;
    Rat lo, up;
    for (const AffineIneq& q : layers[v]) {
      int s = sgn(q.coeffs[v]);
      if (s == 0) continue;
      // layers[v] has zero coefficients on variables < v (already eliminated).
      Rat rest = q.constant;
      for (int j = v + 1; j < nvars; ++j) rest += q.coeffs[j] * y[j];
      Rat bound = -rest / q.coeffs[v];
      if (s > 0) {  // y_v >= bound
        if (!has_lo || bound > lo) lo = bound, has_lo = true;
      } else {  // y_v <= bound
        if (!has_up || bound < up) up = bound, has_up = true;
      }
    }
    if (has_lo && has_up)
      y[v] = (lo + up) / 2;
    else if (has_lo)
      y[v] = lo;
    else if (has_up)
      y[v] = up;
    else
      y[v] = 0;
  }
  return y;
}

std::vector<SupportDependency> support_minimal_dependencies(const std::vector<IntVector>& vecs) {
  std::vector<SupportDependency> out;
  const int m = static_cast<int>(vecs.size());
  if (m == 0) return out;
  const size_t dim = vecs[0].size();
  for (const IntVector& v : vecs)
    if (v.size() != dim) throw Error(ErrorKind::InvalidInput, "mixed vector dimensions");

  IntMatrix all(dim, IntVector(m, Int(0)));
  for (int j = 0; j < m; ++j)
    for (size_t i = 0; i < dim; ++i) all[i][j] = vecs[j][i];
  const int r = rank_rational(all);

  // Minimal dependent subsets have at most rank+1 elements; a subset is one
  // exactly when its nullity is 1 and the kernel generator has full support.
  for (int s = 1; s <= r + 1 && s <= m; ++s) {
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      IntMatrix sub(dim, IntVector(s, Int(0)));
      for (int j = 0; j < s; ++j)
        for (size_t i = 0; i < dim; ++i) sub[i][j] = vecs[idx[j]][i];
      std::vector<IntVector> ns = nullspace_rational(sub);
      if (ns.size() == 1) {
        IntVector c = ns[0];
        bool full = true;
        for (const Int& x : c)
          if (x == 0) full = false;
        if (full) {
          if (sgn(c[0]) < 0) c = neg(c);
          out.push_back(SupportDependency{idx, std::move(c)});
        }
      }
      // next lexicographic combination of size s
      int pos = s - 1;
      while (pos >= 0 && idx[pos] == m - s + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int j = pos + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace msmb
