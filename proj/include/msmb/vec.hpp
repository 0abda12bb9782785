// Componentwise operations on integer vectors: positive/negative parts,
// 1-norm, the conformal partial order, canonical signs and formatting.
#pragma once

#include <algorithm>
#include <cassert>
#include <sstream>
#include <string>

#include "msmb/ints.hpp"

namespace msmb {

inline IntVector plus_part(const IntVector& u) {
  IntVector r(u.size());
  for (size_t i = 0; i < u.size(); ++i) r[i] = sgn(u[i]) > 0 ? u[i] : Int(0);
  return r;
}

inline IntVector minus_part(const IntVector& u) {
  IntVector r(u.size());
  for (size_t i = 0; i < u.size(); ++i) r[i] = sgn(u[i]) < 0 ? Int(-u[i]) : Int(0);
  return r;
}

inline Int norm1(const IntVector& u) {
  Int s = 0;
  for (const Int& x : u) s += abs(x);
  return s;
}

inline bool is_zero(const IntVector& u) {
  return std::all_of(u.begin(), u.end(), [](const Int& x) { return sgn(x) == 0; });
}

inline bool is_nonneg(const IntVector& u) {
  return std::all_of(u.begin(), u.end(), [](const Int& x) { return sgn(x) >= 0; });
}

// Componentwise a <= b.
inline bool leq(const IntVector& a, const IntVector& b) {
  assert(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// Conformal order u ⊑ z: u+ <= z+ and u- <= z-; equivalently each u_i lies
// between 0 and z_i (inclusive, same sign).
inline bool conformal_leq(const IntVector& u, const IntVector& z) {
  assert(u.size() == z.size());
  for (size_t i = 0; i < u.size(); ++i) {
    int su = sgn(u[i]);
    if (su > 0 && u[i] > z[i]) return false;
    if (su < 0 && u[i] < z[i]) return false;
  }
  return true;
}

inline IntVector add(const IntVector& a, const IntVector& b) {
  assert(a.size() == b.size());
  IntVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVector sub(const IntVector& a, const IntVector& b) {
  assert(a.size() == b.size());
  IntVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IntVector neg(const IntVector& a) {
  IntVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

// gcd of all entries (nonnegative; 0 for the zero vector).
inline Int content(const IntVector& a) {
  Int g = 0;
  for (const Int& x : a) g = gcd(g, x);
  return g;
}

// v / content(v); the zero vector stays zero.
inline IntVector primitive(const IntVector& v) {
  Int g = content(v);
  if (sgn(g) == 0) return v;
  IntVector r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

// Canonical sign: first nonzero entry positive.
inline bool is_canonical(const IntVector& v) {
  for (const Int& x : v) {
    int s = sgn(x);
    if (s != 0) return s > 0;
  }
  return true;  // zero vector
}

inline IntVector canonical(const IntVector& v) { return is_canonical(v) ? v : neg(v); }

inline bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

}  // namespace msmb
