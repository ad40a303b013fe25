#pragma once
#include <memory>
#include <string>
#include <vector>

#include "mfred/common.hpp"
#include "mfred/cyclo.hpp"
#include "mfred/poly.hpp"

namespace mfred {

using RatMat = std::vector<std::vector<Rat>>;

QPoly charpoly_matrix(const RatMat& a);  // Faddeev-LeVerrier, monic
RatMat mat_inverse(const RatMat& a);     // PreconditionError if singular

// K = Q[var]/(g) with an integral basis omega_1 = 1, ..., omega_d.
struct NumberField {
  QPoly g;
  int d = 0;
  std::string var = "t";
  RatMat W;     // row i: omega_i in the power basis
  RatMat Winv;  // power basis in terms of omega
  // omega_i * omega_j = sum_k mt[i][j][k] omega_k
  std::vector<std::vector<std::vector<mpz_class>>> mt;

  // Validates g monic of degree >= 1, W invertible with omega_1 = 1, and an
  // integral multiplication table; DataError otherwise.
  static std::shared_ptr<const NumberField> make(const QPoly& g, const RatMat& W,
                                                 const std::string& var = "t");
  static std::shared_ptr<const NumberField> rationals();
};
using NFPtr = std::shared_ptr<const NumberField>;

struct NFElem {
  NFPtr K;
  std::vector<Rat> c;  // power basis coordinates, length d

  NFElem() = default;
  NFElem(NFPtr k, std::vector<Rat> coords);
  static NFElem from_rat(NFPtr k, const Rat& r);
  static NFElem gen(NFPtr k);
  static NFElem from_omega(NFPtr k, const std::vector<Rat>& w);

  bool is_zero() const;
  bool is_rational() const;
  std::vector<Rat> to_omega() const;
  RatMat mult_matrix() const;
  QPoly charpoly() const;
  Rat norm() const;
  Rat trace() const;

  NFElem operator-() const;
  friend NFElem operator+(const NFElem& a, const NFElem& b);
  friend NFElem operator-(const NFElem& a, const NFElem& b);
  friend NFElem operator*(const NFElem& a, const NFElem& b);
  friend NFElem operator*(const Rat& s, const NFElem& a);
  friend bool operator==(const NFElem& a, const NFElem& b) { return a.c == b.c; }

  std::string str() const;
};

NFElem pow(const NFElem& a, u64 e);

// Prod over embeddings of (sigma(a) - tau(c)) for a in K, c in Q(zeta): the
// resultant of the two characteristic polynomials. Its prime support contains
// that of the norm of a - c from any compositum.
Rat res_norm(const NFElem& a, const CycNum& c);

}  // namespace mfred
