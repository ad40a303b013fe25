#pragma once
#include <optional>
#include <string>
#include <vector>

#include "mfred/dirichlet.hpp"
#include "mfred/newform.hpp"
#include "mfred/residues.hpp"

namespace mfred {

// (e1, e2, m1, m2): the candidate chi_l^m1 e1 + chi_l^m2 e2. e1, e2 primitive.
struct Quadruple {
  DirichletChar e1, e2;
  int m1 = 0, m2 = 0;

  std::string str() const;  // "(1,eps7(4),0,0)"
  friend bool operator==(const Quadruple& a, const Quadruple& b) {
    return a.e1 == b.e1 && a.e2 == b.e2 && a.m1 == b.m1 && a.m2 == b.m2;
  }
};

// "1", "eps7(3)", ... for a primitive character
std::string char_name(const DirichletChar& e);

// chi_l^m e as text, e.g. "chi_5*eps7(3)"; "1" when trivial
std::string char_term(u64 l, int m, const DirichletChar& e);

// "e1,e2,m1,m2" with characters as accepted by parse_char
Quadruple parse_quadruple(const std::string& s);

// Q(eps) as a number field with the values of eps at the unit generators.
// Used when a prime ideal is given without a newform.
struct CharField {
  NFPtr K;
  std::vector<NFElem> gens;
};
CharField character_field(const DirichletChar& eps);

// R_{N,k,eps}(lambda). eps_gens are the values of eps at the unit group
// generators, as elements of the field of P. Ordered by the character pair
// (conductor and Conrey index of e1) and then by (m1, m2).
std::vector<Quadruple> r_nkeps(u64 N, int k, const DirichletChar& eps,
                               const std::vector<NFElem>& eps_gens, const PrimePtr& P);
std::vector<Quadruple> r_nkeps(const NewformData& f, const PrimePtr& P);

// R_{N,eps}: primitive pairs with e1 e2 = eps and v_p(N / c1 c2) <= 2
std::vector<std::pair<DirichletChar, DirichletChar>> r_neps(u64 N, const DirichletChar& eps);

struct EisensteinSetup {
  int kprime = 2;
  int r = 1;
  u64 M = 1;       // lcm(c1 c2, r)
  std::string E;   // "E_k'^{e1,e2}" or its 2-stabilization
};
EisensteinSetup eisenstein_setup(const Quadruple& q, u64 l);

u64 n_prime(const NewformData& f, int r);

struct CheckOptions {
  bool conservative = false;  // Sturm weight with max(m1, m2) in place of m1
  bool all_places = true;     // otherwise stop after the first compatible place
};

// One row of the congruence suite at a prime p.
struct PrimeRow {
  u64 p = 0;
  std::string ap;                     // a_p mod the place
  std::vector<std::string> expected;  // one value, or the b_p menu times p^m1 at p | N
  int choice = -1;                    // index into expected that matched
  bool screen = false;                // p | r: shown but not used
  bool ok = false;
};

struct CheckTrace {
  std::string ideal;
  Quadruple q;
  int place = 0;
  Rat B;
  int r = 1;
  bool big = false;
  std::string constant;  // big route: C mod the place, empty when C = 0
  std::vector<PrimeRow> rows;
  bool passed = false;
};

struct ReducibleWitness {
  PrimePtr lambda;
  u64 l = 0;
  Quadruple q;
  bool big = false;  // found by the route for l > k+1, l not dividing N phi(N)
  int place = 0;     // index of the validating place among the compatible ones
  int nplaces = 1;
  int r = 1;
  u64 Nprime = 1;
  Rat B;
  std::vector<std::pair<u64, std::string>> bp;  // chosen b_p at p | N

  std::string decomposition() const;  // "chi_5 + chi_5*eps7(3)"
};

// Places above P for e1, e2 and eps, restricted to those on which eps as an
// element of K_f and eps as a cyclotomic number reduce alike.
std::vector<ResidueContext> compatible_places(const NewformData& f, const PrimePtr& P,
                                              const DirichletChar& e1, const DirichletChar& e2);

Rat small_bound(const NewformData& f, const Quadruple& q, u64 l, bool conservative,
                int* r = nullptr, u64* Nprime = nullptr);
Rat big_bound(const NewformData& f, const DirichletChar& e1, const DirichletChar& e2,
              int* r = nullptr, u64* Nprime = nullptr);

std::optional<ReducibleWitness> check_reducible_small(const NewformData& f, const PrimePtr& P,
                                                      const Quadruple& q,
                                                      const CheckOptions& opt = {},
                                                      std::vector<CheckTrace>* trace = nullptr);

// Prime factors > k+1 and prime to N phi(N) of the gcd of the norms.
std::vector<u64> candidate_primes_big(const NewformData& f, const DirichletChar& e1,
                                      const DirichletChar& e2);
std::vector<u64> candidate_primes_big(const NewformData& f);  // union over R_{N,eps}

std::optional<ReducibleWitness> check_reducible_big(const NewformData& f, const PrimePtr& P,
                                                    const DirichletChar& e1,
                                                    const DirichletChar& e2,
                                                    const CheckOptions& opt = {},
                                                    std::vector<CheckTrace>* trace = nullptr);

// The residue characteristics of the small route: l <= k+1 or l | N phi(N).
std::vector<u64> small_primes(u64 N, int k);

// Largest index of a coefficient any branch of reducible_set reads.
u64 coefficient_budget(const NewformData& f, const CheckOptions& opt = {});

struct ReducibleOptions {
  CheckOptions check;
  u64 max_ell = 0;  // 0: no limit
  unsigned jobs = 1;
};

// Every prime lambda with reducible residual representation, one witness each.
std::vector<ReducibleWitness> reducible_set(const NewformData& f, const ReducibleOptions& opt = {},
                                            std::vector<CheckTrace>* trace = nullptr);

struct BoundCandidate {
  u64 l;
  std::string why;
};

struct DihedralBound {
  bool applicable = true;
  bool finite = false;           // N = 1
  u64 kmax = 0;                  // N = 1: l <= kmax ...
  std::vector<u64> extra;        // ... or l in extra (2k-1, 2k-3)
  mpz_class bound;               // N >= 2: l <= bound (ceiling of the formula)
  std::string note;
};

struct ExoticBound {
  u64 threshold = 0;          // 4k - 3
  std::vector<u64> level_primes;
  bool contains(u64 l) const;
};

struct BoundReport {
  std::vector<BoundCandidate> reducible;
  DihedralBound dihedral;
  ExoticBound exotic;
};

std::vector<BoundCandidate> red_bound_candidates(u64 N, int k, const DirichletChar& eps);
DihedralBound dihedral_bound(u64 N, int k, int degree, bool cm = false);
ExoticBound exotic_bound(u64 N, int k);
// degree < 1: unknown, the dihedral part is then reported as not applicable
BoundReport bound_report(u64 N, int k, const DirichletChar& eps, int degree, bool cm = false);

}  // namespace mfred
