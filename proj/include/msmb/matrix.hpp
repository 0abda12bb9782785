// SemigroupMatrix: an integer d×n matrix A with a verified pointedness
// certificate (ker(A) ∩ N^n = {0}) and a rational dual vector y with
// y·a_j >= 1 for every column a_j. The dual bounds every fiber:
// u in F_t implies u_j <= y·t / (y·a_j).
#pragma once

#include <string>
#include <vector>

#include "msmb/ints.hpp"
#include "msmb/linalg.hpp"

namespace msmb {

class SemigroupMatrix {
 public:
  // Validates: nonempty, rectangular, no zero column, pointed.
  // For d = 1 the only accepted pointed form is all entries strictly positive.
  // For d > 1 pointedness is decided exactly (Fourier–Motzkin feasibility of
  // {Au = 0, u >= 0, sum u = 1}), and the dual vector is found the same way.
  static SemigroupMatrix from_rows(IntMatrix rows);

  // Convenience for 1×n.
  static SemigroupMatrix row(IntVector entries);

  int rows() const { return d_; }
  int cols() const { return n_; }
  const IntMatrix& entries() const { return rows_; }
  const Int& at(int i, int j) const { return rows_[i][j]; }
  IntVector col(int j) const;
  const RatVector& dual() const { return dual_; }

  // A·u for u of length n.
  IntVector mul(const IntVector& u) const;
  bool in_kernel(const IntVector& u) const;

  // Deterministic serialisation, usable as a cache key.
  std::string key() const;

  bool operator==(const SemigroupMatrix& o) const { return rows_ == o.rows_; }

 private:
  SemigroupMatrix() = default;
  int d_ = 0, n_ = 0;
  IntMatrix rows_;
  RatVector dual_;
};

}  // namespace msmb
