#include "msmb/matrix.hpp"

#include <cassert>
#include <sstream>

#include "msmb/error.hpp"
#include "msmb/vec.hpp"

namespace msmb {

SemigroupMatrix SemigroupMatrix::from_rows(IntMatrix rows) {
  if (rows.empty() || rows[0].empty())
    throw Error(ErrorKind::InvalidInput, "matrix must be nonempty");
  size_t n = rows[0].size();
  for (const IntVector& r : rows)
    if (r.size() != n) throw Error(ErrorKind::InvalidInput, "ragged matrix");

  SemigroupMatrix a;
  a.d_ = static_cast<int>(rows.size());
  a.n_ = static_cast<int>(n);
  a.rows_ = std::move(rows);

  for (int j = 0; j < a.n_; ++j) {
    bool zero = true;
    for (int i = 0; i < a.d_; ++i)
      if (sgn(a.rows_[i][j]) != 0) zero = false;
    if (zero) throw Error(ErrorKind::ZeroColumn, "column " + std::to_string(j + 1) + " is zero");
  }

  if (a.d_ == 1) {
    // The only accepted pointed 1×n form: all entries strictly positive.
    for (int j = 0; j < a.n_; ++j)
      if (sgn(a.rows_[0][j]) <= 0)
        throw Error(ErrorKind::NotPointed, "1-row matrices must have strictly positive entries");
    a.dual_.assign(1, Rat(1));
    return a;
  }

  // d > 1: pointed iff {Au = 0, u >= 0, sum u = 1} is infeasible.
  {
    std::vector<AffineIneq> sys;
    auto push = [&](RatVector c, Rat k) { sys.push_back({std::move(c), std::move(k)}); };
    for (int i = 0; i < a.d_; ++i) {
      RatVector c(a.n_);
      for (int j = 0; j < a.n_; ++j) c[j] = Rat(a.rows_[i][j]);
      push(c, Rat(0));  // A_i · u >= 0
      for (Rat& x : c) x = -x;
      push(c, Rat(0));  // A_i · u <= 0
    }
    for (int j = 0; j < a.n_; ++j) {
      RatVector c(a.n_, Rat(0));
      c[j] = 1;
      push(c, Rat(0));  // u_j >= 0
    }
    RatVector ones(a.n_, Rat(1)), negones(a.n_, Rat(-1));
    push(ones, Rat(-1));    // sum u >= 1
    push(negones, Rat(1));  // sum u <= 1
    if (fm_feasible(std::move(sys), a.n_))
      throw Error(ErrorKind::NotPointed, "kernel meets the nonnegative orthant nontrivially");
  }

  // Dual vector: y with y·a_j >= 1 for all columns. Exists exactly when the
  // matrix is pointed (separating-functional duality), so this must succeed.
  {
    std::vector<AffineIneq> sys;
    for (int j = 0; j < a.n_; ++j) {
      RatVector c(a.d_);
      for (int i = 0; i < a.d_; ++i) c[i] = Rat(a.rows_[i][j]);
      sys.push_back({std::move(c), Rat(-1)});  // y·a_j - 1 >= 0
    }
    auto y = fm_feasible(std::move(sys), a.d_);
    assert(y && "pointed matrix must admit a positive dual functional");
    a.dual_ = *y;
  }
  return a;
}

SemigroupMatrix SemigroupMatrix::row(IntVector entries) {
  IntMatrix m;
  m.push_back(std::move(entries));
  return from_rows(std::move(m));
}

IntVector SemigroupMatrix::col(int j) const {
  assert(j >= 0 && j < n_);
  IntVector c(d_);
  for (int i = 0; i < d_; ++i) c[i] = rows_[i][j];
  return c;
}

IntVector SemigroupMatrix::mul(const IntVector& u) const {
  assert(static_cast<int>(u.size()) == n_);
  IntVector t(d_, 0);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < n_; ++j) t[i] += rows_[i][j] * u[j];
  return t;
}

bool SemigroupMatrix::in_kernel(const IntVector& u) const { return is_zero(mul(u)); }

std::string SemigroupMatrix::key() const {
  std::ostringstream os;
  for (int i = 0; i < d_; ++i) {
    for (int j = 0; j < n_; ++j) os << rows_[i][j].get_str() << " ";
    os << ";";
  }
  return os.str();
}

}  // namespace msmb
