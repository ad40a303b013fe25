#pragma once
#include <map>
#include <vector>

#include "mfred/common.hpp"
#include "mfred/cyclo.hpp"
#include "mfred/dirichlet.hpp"

namespace mfred {

// Truncated q-expansion a_0 + a_1 q + ... + a_{prec-1} q^{prec-1}. All
// coefficients live in Q(zeta_L).
struct QExp {
  int k = 0;
  u64 N = 1;
  DirichletChar chi;  // modulus divides N
  u64 L = 1;
  std::vector<CycNum> a;
  bool quasi = false;  // E_2 and its V_n images

  size_t prec() const { return a.size(); }
  // InsufficientCoefficients when n >= prec
  const CycNum& coeff(u64 n) const;
  // character value of the form at p, 0 when p | N
  CycNum char_at(u64 p) const;

  QExp lift(u64 m) const;  // coefficients into Q(zeta_m), L | m
  QExp truncate(size_t n) const;
};

QExp qexp_constant(const CycNum& c, size_t prec, int k = 0);

// E_k^{e1,e2} per the usual normalisation, constant term included. The
// (k, e1, e2) = (2, 1, 1 mod p) case gives the level p form.
QExp eisenstein(int k, const DirichletChar& e1, const DirichletChar& e2, size_t prec);
QExp e2(size_t prec);

QExp theta(const QExp& g);
QExp v_op(u64 n, const QExp& g);
QExp u_op(u64 p, const QExp& g);
QExp s_op(u64 p, const CycNum& b, const QExp& g);  // g - b V_p g
QExp hecke_tp(u64 p, const QExp& g);               // U_p + p^{k-1} chi(p) V_p

QExp operator+(const QExp& f, const QExp& g);
QExp operator-(const QExp& f, const QExp& g);
QExp operator*(const CycNum& s, const QExp& g);
QExp operator*(const QExp& f, const QExp& g);  // series product
bool same_coeffs(const QExp& f, const QExp& g);  // over the common precision

// [g, h] = k_g g theta(h) - k_h h theta(g)
QExp rankin_cohen(const QExp& g, const QExp& h);

// g_P^b: for each p the operator chosen by comparing b_p with a_p(g) and the
// roots of X^2 - a_p X + p^{k-1} chi(p). E_2 input is first made modular by
// S_p(p) at a prime with b_p in {0, 1}.
QExp modify(const QExp& g, const std::map<u64, CycNum>& b);

// constant term of (E_k^{e1,e2})_P^b for primitive e1, e2
CycNum modified_constant(int k, const DirichletChar& e1, const DirichletChar& e2,
                         const std::map<u64, CycNum>& b);

}  // namespace mfred
