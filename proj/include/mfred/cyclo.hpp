#pragma once
#include <string>
#include <vector>

#include "mfred/common.hpp"
#include "mfred/poly.hpp"

namespace mfred {

QPoly cyclotomic_poly(u64 n);

// Element of Q(zeta_n) in the power basis 1, z, ..., z^{phi(n)-1}, z = e(1/n).
struct CycNum {
  u64 n = 1;
  std::vector<Rat> c;

  CycNum() : c(1, Rat(0)) {}
  static CycNum zero(u64 n);
  static CycNum from_rat(u64 n, const Rat& r);
  static CycNum one(u64 n) { return from_rat(n, 1); }
  static CycNum zeta(u64 n, i64 j);  // e(j/n)
  // sum_j s[j] z^j for j in [0, n)
  static CycNum from_exponent_sums(u64 n, const std::vector<mpz_class>& s);

  u64 phi() const { return c.size(); }
  bool is_zero() const;
  bool is_rational() const;
  Rat to_rat() const;  // PreconditionError unless rational

  CycNum lift(u64 m) const;       // n | m
  CycNum conj() const;            // z -> z^{-1}
  CycNum galois(u64 a) const;     // z -> z^a, gcd(a, n) = 1
  QPoly as_poly() const { return QPoly(c); }

  CycNum operator-() const;
  friend CycNum operator+(const CycNum& a, const CycNum& b);
  friend CycNum operator-(const CycNum& a, const CycNum& b);
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  friend CycNum operator*(const Rat& s, const CycNum& a);
  friend bool operator==(const CycNum& a, const CycNum& b);
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  std::string str() const;
};

CycNum pow(const CycNum& a, u64 e);
Rat cyc_norm(const CycNum& x);
QPoly cyc_charpoly(const CycNum& x);  // over Q, degree phi(n)

}  // namespace mfred
