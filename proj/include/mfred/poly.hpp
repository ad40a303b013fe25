#pragma once
#include <string>
#include <vector>

#include "mfred/common.hpp"

namespace mfred {

// Univariate polynomial over Q, lowest degree first, no trailing zeros.
struct QPoly {
  std::vector<Rat> c;

  QPoly() = default;
  explicit QPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
  static QPoly constant(const Rat& r) { return QPoly(std::vector<Rat>{r}); }
  static QPoly x() { return QPoly(std::vector<Rat>{0, 1}); }
  static QPoly monomial(size_t d, const Rat& a = 1);

  void trim();
  int deg() const { return (int)c.size() - 1; }  // -1 for zero
  bool is_zero() const { return c.empty(); }
  const Rat& lc() const { return c.back(); }
  Rat coeff(size_t i) const { return i < c.size() ? c[i] : Rat(0); }
  Rat eval(const Rat& x) const;
  QPoly monic() const;
  QPoly derivative() const;

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const Rat& s, const QPoly& a);
  QPoly operator-() const;
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c == b.c; }

  std::string str(const std::string& var = "x") const;
};

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly operator%(const QPoly& a, const QPoly& b);
QPoly operator/(const QPoly& a, const QPoly& b);  // exact-or-truncated quotient
QPoly gcd(const QPoly& a, const QPoly& b);         // monic
Rat resultant(const QPoly& a, const QPoly& b);
Rat discriminant(const QPoly& a);

// Parse a polynomial in one variable, e.g. "x^2+1", "t-5", "3/2*x^3 - x".
QPoly parse_poly(const std::string& s, const std::string& var);

}  // namespace mfred
