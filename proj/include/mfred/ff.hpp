#pragma once
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mfred/common.hpp"
#include "mfred/poly.hpp"

namespace mfred {

// Polynomial over F_p, lowest degree first, no trailing zeros.
using FpPoly = std::vector<u64>;

// F_q = F_p[x]/(m), m monic irreducible of degree d. For d = 1 the modulus is x
// and elements are plain residues.
struct GF {
  using E = std::vector<u64>;  // length d

  u64 p = 2;
  int d = 1;
  FpPoly mod;

  GF() = default;
  GF(u64 p_, FpPoly modulus);
  static GF prime(u64 p) { return GF(p, FpPoly{0, 1}); }

  mpz_class order() const;  // q = p^d
  E zero() const { return E(d, 0); }
  E one() const;
  E from_int(i64 a) const;
  E from_fp(const FpPoly& a) const;  // reduce a polynomial in the generator
  E gen() const;                     // class of x

  bool is_zero(const E& a) const;
  E add(const E& a, const E& b) const;
  E sub(const E& a, const E& b) const;
  E neg(const E& a) const;
  E mul(const E& a, const E& b) const;
  E scale(const E& a, u64 s) const;
  E pow(const E& a, const mpz_class& e) const;
  E pow(const E& a, u64 e) const { return pow(a, mpz_class(std::to_string(e))); }
  E inv(const E& a) const;
  E frob(const E& a) const { return pow(a, p); }
  E pth_root(const E& a) const;
  E random(std::mt19937_64& rng) const;

  std::string str(const E& a, const std::string& var = "a") const;
};

// arithmetic on F_p[x]
void fp_trim(FpPoly& a);
FpPoly fp_add(const FpPoly& a, const FpPoly& b, u64 p);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b, u64 p);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b, u64 p);
FpPoly fp_mod(const FpPoly& a, const FpPoly& m, u64 p);
FpPoly fp_monic(const FpPoly& a, u64 p);
FpPoly fp_from_qpoly(const QPoly& a, u64 p);  // IntegralityError on p-denominators
std::string fp_str(const FpPoly& a, const std::string& var = "x");

// Polynomials over a GF context.
struct GFPoly {
  std::vector<GF::E> c;
  int deg() const { return (int)c.size() - 1; }
  bool is_zero() const { return c.empty(); }
};

void gp_trim(const GF& F, GFPoly& a);
GFPoly gp_add(const GF& F, const GFPoly& a, const GFPoly& b);
GFPoly gp_sub(const GF& F, const GFPoly& a, const GFPoly& b);
GFPoly gp_mul(const GF& F, const GFPoly& a, const GFPoly& b);
void gp_divmod(const GF& F, const GFPoly& a, const GFPoly& b, GFPoly& q, GFPoly& r);
GFPoly gp_mod(const GF& F, const GFPoly& a, const GFPoly& b);
GFPoly gp_div(const GF& F, const GFPoly& a, const GFPoly& b);
GFPoly gp_monic(const GF& F, const GFPoly& a);
GFPoly gp_gcd(const GF& F, const GFPoly& a, const GFPoly& b);
GFPoly gp_derivative(const GF& F, const GFPoly& a);
GFPoly gp_powmod(const GF& F, const GFPoly& base, const mpz_class& e, const GFPoly& m);
GF::E gp_eval(const GF& F, const GFPoly& a, const GF::E& x);
GFPoly gp_from_fp(const GF& F, const FpPoly& a);  // coefficients from the prime field
GFPoly gp_linear(const GF& F, const GF::E& root);  // x - root

// Factor a nonzero polynomial over F into monic irreducibles with multiplicity.
// Deterministic: the equal-degree stage draws from a stream seeded by the input.
std::vector<std::pair<GFPoly, int>> gp_factor(const GF& F, const GFPoly& a);
std::vector<GF::E> gp_roots(const GF& F, const GFPoly& a);  // distinct roots in F

// Reduce a rational polynomial mod l and factor it over F_l.
std::vector<std::pair<FpPoly, int>> poly_factor_mod(const QPoly& a, u64 l);

bool fp_is_irreducible(const FpPoly& a, u64 p);
FpPoly find_irreducible(u64 p, int d);  // lexicographically least monic of degree d

// F_p linear algebra on dense row-major matrices.
using FpMat = std::vector<std::vector<u64>>;
// In-place reduced row echelon form; returns pivot columns.
std::vector<int> fp_rref(FpMat& m, u64 p);
// Basis of {v : m v = 0}.
FpMat fp_kernel(const FpMat& m, int ncols, u64 p);
// Some x with m x = b, if one exists.
std::optional<std::vector<u64>> fp_solve(const FpMat& m, const std::vector<u64>& b, int ncols,
                                         u64 p);

}  // namespace mfred
