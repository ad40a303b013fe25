#pragma once
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mfred/cyclo.hpp"
#include "mfred/ff.hpp"
#include "mfred/numfield.hpp"

namespace mfred {

// A prime P of O_K above l, found by decomposing the algebra O/lO.
struct PrimeIdeal {
  NFPtr K;
  u64 l = 2;
  int e = 1, f = 1;
  int index = 0;   // position among the primes above l
  int nprimes = 1;
  GF F;            // residue field F_{l^f}
  std::string var;  // name of the residue generator when printing
  bool theta_gen = false;  // generator is the image of the field generator
  std::vector<GF::E> omega_img;  // images of the integral basis
  std::vector<u64> idem;         // primitive idempotent of O/lO, omega coordinates
  std::vector<std::vector<u64>> rad, rad2;  // bases of P/lO and P^2 + lO localized here
  QPoly two_elt;        // h with P = (l, h(theta)); zero when none was found
  std::string display;  // "(l)" or "(l,h)" or a matrix fallback

  std::string str(const GF::E& a) const { return F.str(a, var); }
};
using PrimePtr = std::shared_ptr<const PrimeIdeal>;

std::vector<PrimePtr> factor_rational_prime(const NFPtr& K, u64 l);

// image in the residue field; IntegralityError when x is not P-integral
GF::E reduce_nf(const NFElem& x, const PrimeIdeal& P);

// is x in P (x must be P-integral)
bool in_ideal(const NFElem& x, const PrimeIdeal& P);

// Parse "(l)" or "(l,h)" and return the matching prime; DataError if none.
PrimePtr find_prime(const NFPtr& K, const std::string& ideal);

// A place above P: an embedding of the residue field into F_{l^L} together
// with the image W of zeta_M, M prime to l.
struct ResidueContext {
  PrimePtr P;
  u64 l = 2;
  GF F;              // F_{l^L}
  GF::E gen_img;     // image of the residue generator of P
  u64 M = 1;
  GF::E W;
  std::vector<GF::E> gen_pows;

  GF::E embed(const GF::E& a) const;  // F_P -> F
  GF::E reduce(const NFElem& x) const;
  // ord_{l'}(n) must divide M; IntegralityError on l-denominators
  GF::E reduce(const CycNum& x) const;
  GF::E root(u64 n, i64 a) const;  // image of e(a/n)
  GF::E from_int(i64 a) const { return F.from_int(a); }
  std::string str(const GF::E& a) const;
};

// All places above P for roots of unity of order m (l-part dropped): one per
// element of exact order m' in F_{l^L}, L = lcm(f, ord_{m'}(l)). accept filters.
std::vector<ResidueContext> residue_contexts(
    const PrimePtr& P, u64 m, const std::function<bool(const ResidueContext&)>& accept = nullptr);

// images of zeta_{m'} in F_{l^L}
std::vector<GF::E> embed_roots(u64 m, const PrimePtr& P);

// Place for Q(zeta_m) alone (the field Q): the residue field F_l.
PrimePtr rational_prime(u64 l);

}  // namespace mfred
