// Arbitrary-precision integer/rational aliases and small number-theory helpers.
#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace msmb {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;

inline Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// g = gcd(a,b) (nonnegative) together with s,t such that s*a + t*b = g.
inline Int gcdext(const Int& a, const Int& b, Int& s, Int& t) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline int sgn(const Int& a) { return mpz_sgn(a.get_mpz_t()); }
inline int sgn(const Rat& a) { return mpq_sgn(a.get_mpq_t()); }

inline Int abs(const Int& a) {
  Int r;
  mpz_abs(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

// Floor division (GMP's fdiv), needed because operator/ truncates toward zero.
inline Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline bool fits_ll(const Int& a) { return a.fits_slong_p(); }

}  // namespace msmb
