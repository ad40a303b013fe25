#pragma once
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mfred/common.hpp"
#include "mfred/cyclo.hpp"

namespace mfred {

// Structure of (Z/qZ)^x: one generator per odd prime power, -1 for 4, and
// -1, 5 for 2^e with e >= 3. Generators are CRT-lifted to residues mod q.
struct UnitGroup {
  u64 q = 1;
  std::vector<u64> gens;     // residues mod q
  std::vector<u64> ord;      // generator orders
  std::vector<u64> prime;    // prime each generator belongs to
  std::vector<u64> local;    // generator as a residue mod p^e (Conrey convention)
  u64 exponent = 1;          // lcm of orders
  std::vector<char> unit;               // unit[n] for n in [0, q)
  std::vector<std::vector<u64>> dlog;  // exponent vector of each unit

  static std::shared_ptr<const UnitGroup> get(u64 q);  // cached
};

// A Dirichlet character mod q; the value at gens[i] is e(x[i] / ord[i]).
class DirichletChar {
 public:
  DirichletChar() : G_(UnitGroup::get(1)) {}
  static DirichletChar trivial(u64 q);
  static DirichletChar from_exponents(u64 q, std::vector<u64> x);
  static DirichletChar conrey(u64 q, u64 a);  // PreconditionError if gcd(a,q) > 1
  // angle(g) in Q/Z for each generator g; the angles must be compatible with
  // the generator orders
  static DirichletChar from_angles(u64 q, const std::function<Rat(u64)>& angle);

  u64 modulus() const { return q_; }
  const UnitGroup& group() const { return *G_; }
  const std::vector<u64>& exps() const { return x_; }
  u64 exponent() const { return G_->exponent; }

  // value e(a/exponent()) with a returned, or nullopt when gcd(n,q) > 1
  std::optional<u64> expo(i64 n) const;
  std::optional<Rat> angle(i64 n) const;  // in [0,1)
  CycNum value(i64 n) const;              // in Q(zeta_exponent), 0 off units

  u64 order() const { return order_; }
  u64 conductor() const { return cond_; }
  bool is_trivial() const { return order_ == 1; }
  bool is_primitive() const { return cond_ == q_; }
  bool is_even() const;
  u64 conrey_index() const;
  std::string label() const;  // "q.a"

  DirichletChar primitive_part() const;
  DirichletChar p_part(u64 p) const;
  DirichletChar inverse() const;
  DirichletChar power(i64 s) const;
  DirichletChar induce(u64 m) const;  // q | m
  friend DirichletChar operator*(const DirichletChar& a, const DirichletChar& b);

  // same modulus, same values
  friend bool operator==(const DirichletChar& a, const DirichletChar& b) {
    return a.q_ == b.q_ && a.x_ == b.x_;
  }
  // equal after primitivisation
  bool same_primitive(const DirichletChar& o) const;

 private:
  u64 q_ = 1;
  std::shared_ptr<const UnitGroup> G_;
  std::vector<u64> x_;
  u64 order_ = 1, cond_ = 1;
  void finish();
};

// Characters mod q ordered by Conrey index.
std::vector<DirichletChar> enumerate_chars(u64 q);
std::vector<DirichletChar> enumerate_primitive(u64 c);

// (chi'', chi_lpow) with chi'' of prime-to-l order, chi_lpow of l-power order and
// chi = chi'' * chi_lpow; chi'' = chi^s with s = 1 mod the prime-to-l order and
// s = 0 mod the l-part.
std::pair<DirichletChar, DirichletChar> teichmueller_component(const DirichletChar& chi, u64 l);

// Pairs (e1, e2) of primitive characters with prim(e1 e2) = prim(target), both
// satisfying pred, and v_p(N / (c1 c2)) in {0,1,2} for every prime p != exempt
// (c1 c2 | N always). Ordered by (c1, Conrey index of e1).
std::vector<std::pair<DirichletChar, DirichletChar>> enumerate_primitive_pairs(
    u64 N, const DirichletChar& target,
    const std::function<bool(const DirichletChar&)>& pred = nullptr, u64 exempt = 0);

// "1", "q.a" or "epsq(a)"
DirichletChar parse_char(const std::string& s);

}  // namespace mfred
