#include "mfred/exceptional.hpp"

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>
#include <thread>

#include "mfred/intfactor.hpp"
#include "mfred/specialvals.hpp"
#include "mfred/thetasturm.hpp"

namespace mfred {

namespace {

u64 lpart_free(u64 n, u64 l) { return prime_to_part(n, l); }

bool phi_divisible(u64 N, u64 l) {
  return N % l == 0 || euler_phi(N) % l == 0;
}

GF::E pow_mod_l(const ResidueContext& C, u64 p, u64 m) { return C.from_int((i64)powmod(p % C.l, m, C.l)); }

void check_budget(const NewformData& f, u64 need) {
  if (need > f.nmax()) throw InsufficientCoefficients(need, f.nmax());
}

// norm of a - c over K_f(c); see the ledger for why a resultant suffices
Rat norm_diff(const NFElem& a, const CycNum& c) { return res_norm(a, c); }

mpz_class num_abs(const Rat& x) { return abs(x.get_num()); }

}  // namespace

std::string char_name(const DirichletChar& e) {
  if (e.is_trivial()) return "1";
  DirichletChar p = e.primitive_part();
  return "eps" + std::to_string(p.modulus()) + "(" + std::to_string(p.conrey_index()) + ")";
}

std::string char_term(u64 l, int m, const DirichletChar& e) {
  std::string s;
  if (m > 0) s = "chi_" + std::to_string(l) + (m > 1 ? "^" + std::to_string(m) : "");
  if (!e.is_trivial()) s += (s.empty() ? "" : "*") + char_name(e);
  return s.empty() ? "1" : s;
}

std::string Quadruple::str() const {
  return "(" + char_name(e1) + "," + char_name(e2) + "," + std::to_string(m1) + "," +
         std::to_string(m2) + ")";
}

Quadruple parse_quadruple(const std::string& s0) {
  std::string s;
  for (char c : s0)
    if (c != ' ') s += c;
  // optional outer parentheses
  if (s.size() > 1 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  // split on commas outside the "epsq(a)" parentheses
  std::vector<std::string> parts(1);
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0)
      parts.emplace_back();
    else
      parts.back() += c;
  }
  if (parts.size() != 4) throw DataError("quadruple must be 'e1,e2,m1,m2': " + s0);
  Quadruple q;
  q.e1 = parse_char(parts[0]).primitive_part();
  q.e2 = parse_char(parts[1]).primitive_part();
  try {
    size_t pos;
    q.m1 = std::stoi(parts[2], &pos);
    if (pos != parts[2].size()) throw 0;
    q.m2 = std::stoi(parts[3], &pos);
    if (pos != parts[3].size()) throw 0;
  } catch (...) {
    throw DataError("quadruple exponents must be integers: " + s0);
  }
  if (q.m1 < 0 || q.m2 < q.m1) throw DataError("quadruple needs 0 <= m1 <= m2: " + s0);
  return q;
}

CharField character_field(const DirichletChar& eps) {
  CharField cf;
  u64 o = eps.order();
  const UnitGroup& G = eps.group();
  if (o <= 2) {
    cf.K = NumberField::rationals();
    for (size_t i = 0; i < G.gens.size(); ++i) {
      u64 e = *eps.expo((i64)G.gens[i]);
      cf.gens.push_back(NFElem::from_rat(cf.K, e == 0 ? 1 : -1));
    }
    return cf;
  }
  QPoly g = cyclotomic_poly(o);
  int d = g.deg();
  RatMat W(d, std::vector<Rat>(d, Rat(0)));
  for (int i = 0; i < d; ++i) W[i][i] = 1;
  cf.K = NumberField::make(g, W, "z");
  NFElem z = NFElem::gen(cf.K);
  u64 ex = eps.exponent();
  for (size_t i = 0; i < G.gens.size(); ++i) {
    u64 e = *eps.expo((i64)G.gens[i]);  // value e(e / ex), and o | ex
    cf.gens.push_back(pow(z, e / (ex / o)));
  }
  return cf;
}

std::vector<std::pair<DirichletChar, DirichletChar>> r_neps(u64 N, const DirichletChar& eps) {
  return enumerate_primitive_pairs(N, eps);
}

std::vector<Quadruple> r_nkeps(u64 N, int k, const DirichletChar& eps,
                               const std::vector<NFElem>& eps_gens, const PrimePtr& P) {
  if (N == 0 || N % eps.modulus() != 0) throw PreconditionError("r_nkeps: modulus of eps must divide N");
  if (k < 2) throw PreconditionError("r_nkeps: weight k >= 2");
  const u64 l = P->l;
  const UnitGroup& G = eps.group();
  if (eps_gens.size() != G.gens.size()) throw PreconditionError("r_nkeps: one value per generator");

  DirichletChar el = eps.p_part(l);
  DirichletChar ep = eps * el.inverse();
  DirichletChar epp = teichmueller_component(ep, l).first;

  // k_l with eps_l(n) = n^{k_l} mod lambda, read off at the generator
  int kl = 0;
  if (l > 2 && el.modulus() > 1) {
    size_t i = 0;
    while (i < G.gens.size() && G.prime[i] != l) ++i;
    MFRED_CHECK(i < G.gens.size(), "r_nkeps: no generator at l");
    GF::E v = reduce_nf(eps_gens[i], *P);
    u64 g = G.gens[i] % l, x = 1;
    kl = -1;
    for (u64 j = 0; j + 1 < l; ++j) {
      if (P->F.from_int((i64)x) == v) {
        kl = (int)j;
        break;
      }
      x = x * g % l;
    }
    if (kl < 0)
      throw InvariantError("inconsistent character data: eps_l mod " + P->display +
                           " is not a power of n -> n mod l");
  }

  std::vector<std::pair<int, int>> Ms;
  const int L1 = (int)l - 1;
  const bool even = epp.is_even();
  for (int m1 = 0; m1 < std::max(L1, 1); ++m1)
    for (int m2 = m1; m2 < std::max(L1, 1); ++m2) {
      if (mod_floor(m1 + m2 - (k + kl - 1), L1) != 0) continue;
      // e1 e2 (-1) = (-1)^{m1+m2+1}; vacuous mod 2
      if (l > 2 && even != ((m1 + m2 + 1) % 2 == 0)) continue;
      Ms.push_back({m1, m2});
    }

  auto pred = [l](const DirichletChar& e) { return e.order() % l != 0 && e.conductor() % l != 0; };
  std::vector<Quadruple> out;
  for (auto& [e1, e2] : enumerate_primitive_pairs(N, epp, pred, l))
    for (auto [m1, m2] : Ms) out.push_back(Quadruple{e1, e2, m1, m2});
  return out;
}

std::vector<Quadruple> r_nkeps(const NewformData& f, const PrimePtr& P) {
  if (P->K != f.K) throw PreconditionError("r_nkeps: prime of another field");
  return r_nkeps(f.N, f.k, f.eps, f.chargen, P);
}

EisensteinSetup eisenstein_setup(const Quadruple& q, u64 l) {
  EisensteinSetup s;
  s.kprime = l == 2 ? 2 : q.m2 - q.m1 + 1;
  bool t1 = q.e1.is_trivial(), t2 = q.e2.is_trivial();
  bool r4 = (l == 2 && t1 && !t2) || (l >= 5 && t1 && t2 && q.m1 == 0 && q.m2 == (int)l - 2) ||
            (s.kprime == 2 && t1 && t2);
  s.r = r4 ? 4 : 1;
  s.M = lcm_u64(q.e1.conductor() * q.e2.conductor(), (u64)s.r);
  std::string E0 = "E_" + std::to_string(s.kprime) + "^{" + char_name(q.e1) + "," + char_name(q.e2) + "}";
  s.E = r4 ? "(" + E0 + ")_2^0" : E0;
  return s;
}

u64 n_prime(const NewformData& f, int r) {
  if (r == 1) return f.N;
  if (r != 4) throw PreconditionError("n_prime: r is 1 or 4");
  if (f.N % 2) return 4 * f.N;
  return f.coeff(2).is_zero() ? f.N : 2 * f.N;
}

std::vector<ResidueContext> compatible_places(const NewformData& f, const PrimePtr& P,
                                              const DirichletChar& e1, const DirichletChar& e2) {
  const u64 l = P->l;
  u64 M = lcm_u64(lcm_u64(lpart_free(e1.exponent(), l), lpart_free(e2.exponent(), l)),
                  lpart_free(f.eps.exponent(), l));
  const UnitGroup& G = f.eps.group();
  auto accept = [&](const ResidueContext& C) {
    for (size_t i = 0; i < G.gens.size(); ++i)
      if (C.reduce(f.chargen[i]) != C.reduce(f.eps.value((i64)G.gens[i]))) return false;
    return true;
  };
  auto out = residue_contexts(P, M, accept);
  MFRED_CHECK(!out.empty(), "no place above " + P->display + " matches the character values");
  return out;
}

Rat small_bound(const NewformData& f, const Quadruple& q, u64 l, bool conservative, int* r,
                u64* Nprime) {
  EisensteinSetup s = eisenstein_setup(q, l);
  u64 Np = n_prime(f, s.r);
  MFRED_CHECK(l != 2 || Np >= 3, "N' >= 3 when l = 2");
  int mg = (conservative ? std::max(q.m1, q.m2) : q.m1) + 1;
  SturmParams sp = sturm_params(f.k, 1, s.kprime, mg, l, Np);
  if (r) *r = s.r;
  if (Nprime) *Nprime = Np;
  return sp.B;
}

Rat big_bound(const NewformData& f, const DirichletChar& e1, const DirichletChar& e2, int* r,
              u64* Nprime) {
  // (m1, m2) = (0, k-1) and l > k+1: only the (2, 1, 1) case raises r
  int rr = (f.k == 2 && e1.is_trivial() && e2.is_trivial()) ? 4 : 1;
  u64 Np = n_prime(f, rr);
  if (r) *r = rr;
  if (Nprime) *Nprime = Np;
  return sturm_bound(Np, (u64)f.k);
}

namespace {

// The congruence suite shared by both routes. u1(p), u2(p) are the two
// character values times the powers of p; at p | N, a_p must be one of
// 0, u1, u2.
struct Suite {
  const NewformData& f;
  const ResidueContext& C;
  u64 l;
  int r;
  u64 pmax;
  bool include_l;  // the big route also checks p = l
  std::function<GF::E(u64)> u1, u2;

  bool run(CheckTrace* tr, std::vector<std::pair<u64, std::string>>& bp) const {
    bool passed = true;
    for (u64 p : primes_upto(pmax)) {
      if (p == l && !include_l) continue;
      bool screen = r % p == 0;
      if (screen && !tr) continue;
      PrimeRow row;
      row.p = p;
      row.screen = screen;
      GF::E ap = C.reduce(f.coeff(p));
      GF::E a = u1(p), b = u2(p);
      std::vector<GF::E> menu;
      if (f.N % p)
        menu = {C.F.add(a, b)};
      else
        menu = {C.F.zero(), a, b};
      for (size_t i = 0; i < menu.size(); ++i)
        if (ap == menu[i]) {
          row.choice = (int)i;
          break;
        }
      row.ok = row.choice >= 0;
      if (!screen && f.N % p == 0 && row.ok) {
        static const char* names[] = {"0", "eps1(p)", "p^(m2-m1)*eps2(p)"};
        bp.push_back({p, names[row.choice]});
      }
      if (tr) {
        row.ap = C.str(ap);
        for (auto& m : menu) row.expected.push_back(C.str(m));
        tr->rows.push_back(row);
      }
      if (!screen && !row.ok) {
        passed = false;
        if (!tr) break;
      }
    }
    return passed;
  }
};

}  // namespace

std::optional<ReducibleWitness> check_reducible_small(const NewformData& f, const PrimePtr& P,
                                                      const Quadruple& q, const CheckOptions& opt,
                                                      std::vector<CheckTrace>* trace) {
  const u64 l = P->l;
  int r;
  u64 Np;
  Rat B = small_bound(f, q, l, opt.conservative, &r, &Np);
  u64 pmax = floor_rat(B);
  check_budget(f, pmax);
  auto places = compatible_places(f, P, q.e1, q.e2);
  for (size_t idx = 0; idx < places.size(); ++idx) {
    const ResidueContext& C = places[idx];
    Suite S{f, C, l, r, pmax, false,
            [&](u64 p) { return C.F.mul(pow_mod_l(C, p, q.m1), C.reduce(q.e1.value((i64)p))); },
            [&](u64 p) { return C.F.mul(pow_mod_l(C, p, q.m2), C.reduce(q.e2.value((i64)p))); }};
    CheckTrace tr;
    tr.ideal = P->display;
    tr.q = q;
    tr.place = (int)idx;
    tr.B = B;
    tr.r = r;
    std::vector<std::pair<u64, std::string>> bp;
    bool ok = S.run(trace ? &tr : nullptr, bp);
    if (trace) {
      tr.passed = ok;
      trace->push_back(std::move(tr));
    }
    if (ok) {
      ReducibleWitness w;
      w.lambda = P;
      w.l = l;
      w.q = q;
      w.place = (int)idx;
      w.nplaces = (int)places.size();
      w.r = r;
      w.Nprime = Np;
      w.B = B;
      w.bp = bp;
      return w;
    }
    if (!opt.all_places) break;
  }
  return std::nullopt;
}

std::optional<ReducibleWitness> check_reducible_big(const NewformData& f, const PrimePtr& P,
                                                    const DirichletChar& e1,
                                                    const DirichletChar& e2,
                                                    const CheckOptions& opt,
                                                    std::vector<CheckTrace>* trace) {
  const u64 l = P->l;
  const int k = f.k;
  if (l <= (u64)k + 1 || phi_divisible(f.N, l))
    throw PreconditionError("check_reducible_big: l > k+1 and l prime to N phi(N) required");
  int r;
  u64 Np;
  Rat B = big_bound(f, e1, e2, &r, &Np);
  u64 pmax = floor_rat(B);
  check_budget(f, pmax);
  Quadruple q{e1, e2, 0, k - 1};
  DirichletChar eps0 = f.eps.primitive_part();
  auto places = compatible_places(f, P, e1, e2);
  for (size_t idx = 0; idx < places.size(); ++idx) {
    const ResidueContext& C = places[idx];
    const GF& F = C.F;
    CheckTrace tr;
    tr.ideal = P->display;
    tr.q = q;
    tr.place = (int)idx;
    tr.B = B;
    tr.r = r;
    tr.big = true;
    bool ok = true;
    if (r == 1 && e1.is_trivial()) {
      GF::E c = C.reduce(gen_bernoulli((unsigned)k, eps0));
      c = F.neg(F.mul(c, F.inv(F.from_int(2 * k))));
      for (u64 p : prime_divisors(f.N)) {
        check_budget(f, p);
        GF::E ap = C.reduce(f.coeff(p));
        GF::E t = F.mul(pow_mod_l(C, p, (u64)k - 1), C.reduce(eps0.value((i64)p)));
        c = F.mul(c, F.mul(ap, F.sub(ap, t)));
      }
      ok = F.is_zero(c);
      tr.constant = C.str(c);
    }
    std::vector<std::pair<u64, std::string>> bp;
    if (ok || trace) {
      Suite S{f, C, l, r, pmax, true,
              [&](u64 p) { return C.reduce(e1.value((i64)p)); },
              [&](u64 p) { return F.mul(pow_mod_l(C, p, (u64)k - 1), C.reduce(e2.value((i64)p))); }};
      bool s = S.run(trace ? &tr : nullptr, bp);
      ok = ok && s;
    }
    // ordinarity at l, when a_l is present
    if ((ok || trace) && l > pmax && l <= f.nmax()) {
      GF::E al = C.reduce(f.coeff(l));
      GF::E want = F.add(C.reduce(e1.value((i64)l)),
                         F.mul(pow_mod_l(C, l, (u64)k - 1), C.reduce(e2.value((i64)l))));
      PrimeRow row;
      row.p = l;
      row.ok = al == want;
      row.choice = row.ok ? 0 : -1;
      if (trace) {
        row.ap = C.str(al);
        row.expected = {C.str(want)};
        tr.rows.push_back(row);
      }
      ok = ok && row.ok;
    }
    if (trace) {
      tr.passed = ok;
      trace->push_back(std::move(tr));
    }
    if (ok) {
      ReducibleWitness w;
      w.lambda = P;
      w.l = l;
      w.q = q;
      w.big = true;
      w.place = (int)idx;
      w.nplaces = (int)places.size();
      w.r = r;
      w.Nprime = Np;
      w.B = B;
      w.bp = bp;
      return w;
    }
    if (!opt.all_places) break;
  }
  return std::nullopt;
}

std::vector<u64> candidate_primes_big(const NewformData& f, const DirichletChar& e1,
                                      const DirichletChar& e2) {
  const int k = f.k;
  int r;
  u64 Np;
  Rat B = big_bound(f, e1, e2, &r, &Np);
  u64 pmax = floor_rat(B);
  check_budget(f, pmax);
  mpz_class g = 0;
  auto take = [&](const Rat& n) {
    if (n != 0) g = gcd(g, num_abs(n));
  };
  auto pk = [&](u64 p) {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), p, (unsigned long)k - 1);
    return Rat(t);
  };
  CycNum zero = CycNum::zero(1);
  if (r == 1 && e1.is_trivial()) {
    DirichletChar eps0 = f.eps.primitive_part();
    Rat n = cyc_norm(gen_bernoulli((unsigned)k, eps0));
    for (u64 p : prime_divisors(f.N)) {
      check_budget(f, p);
      const NFElem& ap = f.coeff(p);
      n *= norm_diff(ap, zero) * norm_diff(ap, pk(p) * eps0.value((i64)p));
    }
    take(n);
  }
  for (u64 p : primes_upto(pmax)) {
    if (r % p == 0) continue;
    const NFElem& ap = f.coeff(p);
    CycNum v1 = e1.value((i64)p), v2 = pk(p) * e2.value((i64)p);
    if (f.N % p)
      take(norm_diff(ap, v1 + v2));
    else
      take(norm_diff(ap, zero) * norm_diff(ap, v1) * norm_diff(ap, v2));
  }
  if (g == 0)
    throw PreconditionError("degenerate: every norm vanishes, the candidate set is unbounded; "
                            "supply more coefficients");
  std::vector<u64> out;
  for (auto& p : prime_factors_mpz(g)) {
    if (p <= k + 1) continue;
    if (!p.fits_ulong_p() || p > mpz_class("4611686018427387904"))
      throw PreconditionError("candidate prime " + p.get_str() + " is too large to process");
    u64 l = p.get_ui();
    if (phi_divisible(f.N, l)) continue;
    out.push_back(l);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<u64> candidate_primes_big(const NewformData& f) {
  std::vector<u64> out;
  for (auto& [e1, e2] : r_neps(f.N, f.eps))
    for (u64 l : candidate_primes_big(f, e1, e2)) out.push_back(l);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<u64> small_primes(u64 N, int k) {
  std::vector<u64> out = primes_upto((u64)k + 1);
  for (u64 p : prime_divisors(N)) out.push_back(p);
  u64 ph = euler_phi(N);
  if (ph > 1)
    for (u64 p : prime_divisors(ph)) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

u64 coefficient_budget(const NewformData& f, const CheckOptions& opt) {
  u64 need = 2;
  for (u64 l : small_primes(f.N, f.k))
    for (auto& P : factor_rational_prime(f.K, l))
      for (auto& q : r_nkeps(f, P)) need = std::max(need, floor_rat(small_bound(f, q, l, opt.conservative)));
  for (auto& [e1, e2] : r_neps(f.N, f.eps)) {
    need = std::max(need, floor_rat(big_bound(f, e1, e2)));
    for (u64 p : prime_divisors(f.N)) need = std::max(need, p);
  }
  return need;
}

std::string ReducibleWitness::decomposition() const {
  return char_term(l, q.m1, q.e1) + " + " + char_term(l, q.m2, q.e2);
}

std::vector<ReducibleWitness> reducible_set(const NewformData& f, const ReducibleOptions& opt,
                                            std::vector<CheckTrace>* trace) {
  u64 need = coefficient_budget(f, opt.check);
  check_budget(f, need);

  struct Task {
    PrimePtr P;
    bool big;
  };
  std::vector<Task> tasks;
  auto within = [&](u64 l) { return opt.max_ell == 0 || l <= opt.max_ell; };
  for (u64 l : small_primes(f.N, f.k))
    if (within(l))
      for (auto& P : factor_rational_prime(f.K, l)) tasks.push_back({P, false});
  for (u64 l : candidate_primes_big(f))
    if (within(l))
      for (auto& P : factor_rational_prime(f.K, l)) tasks.push_back({P, true});

  auto pairs = r_neps(f.N, f.eps);
  std::vector<std::optional<ReducibleWitness>> found(tasks.size());
  std::vector<std::vector<CheckTrace>> traces(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::vector<int> kinds(tasks.size(), 0);
  std::vector<u64> needs(tasks.size(), 0);

  auto work = [&](size_t i) {
    const Task& t = tasks[i];
    auto* tr = trace ? &traces[i] : nullptr;
    try {
      if (!t.big) {
        for (auto& q : r_nkeps(f, t.P))
          if ((found[i] = check_reducible_small(f, t.P, q, opt.check, tr))) break;
      } else {
        for (auto& [e1, e2] : pairs)
          if ((found[i] = check_reducible_big(f, t.P, e1, e2, opt.check, tr))) break;
      }
    } catch (const InsufficientCoefficients& e) {
      kinds[i] = 3;
      needs[i] = e.required;
    } catch (const Error& e) {
      kinds[i] = 4;
      errors[i] = e.what();
    }
  };

  unsigned jobs = std::max(1u, opt.jobs);
  if (jobs == 1) {
    for (size_t i = 0; i < tasks.size(); ++i) work(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (size_t i; (i = next++) < tasks.size();) work(i);
      });
    for (auto& th : pool) th.join();
  }

  for (size_t i = 0; i < tasks.size(); ++i) {
    if (kinds[i] == 3) throw InsufficientCoefficients(needs[i], f.nmax());
    if (kinds[i] == 4) throw InvariantError(errors[i]);
  }
  std::vector<ReducibleWitness> out;
  for (size_t i = 0; i < tasks.size(); ++i) {
    if (found[i]) out.push_back(*found[i]);
    if (trace)
      for (auto& t : traces[i]) trace->push_back(std::move(t));
  }
  std::stable_sort(out.begin(), out.end(), [](const ReducibleWitness& a, const ReducibleWitness& b) {
    if (a.l != b.l) return a.l < b.l;
    return a.lambda->display < b.lambda->display;
  });
  return out;
}

std::vector<BoundCandidate> red_bound_candidates(u64 N, int k, const DirichletChar& eps) {
  std::map<u64, std::string> why;
  auto add = [&](u64 l, const std::string& s) { why.emplace(l, s); };
  for (u64 l : primes_upto((u64)k + 1)) add(l, "l <= k+1");
  for (u64 l : prime_divisors(N)) add(l, "l | N");
  if (euler_phi(N) > 1)
    for (u64 l : prime_divisors(euler_phi(N))) add(l, "l | phi(N)");
  auto add_norm = [&](const Rat& n, const std::string& s) {
    if (n == 0) return;
    mpz_class m = num_abs(n);
    if (m == 1) return;
    for (auto& p : prime_factors_mpz(m)) {
      if (!p.fits_ulong_p()) throw PreconditionError("bound prime " + p.get_str() + " too large");
      add(p.get_ui(), s);
    }
  };
  for (auto& [e1, e2] : r_neps(N, eps)) {
    std::string pr = "(" + char_name(e1) + "," + char_name(e2) + ")";
    DirichletChar psi = (e1.inverse() * e2).primitive_part();
    add_norm(cyc_norm(gen_bernoulli((unsigned)k, psi)), "B_{k," + char_name(psi) + "} for " + pr);
    DirichletChar psi2 = (e1 * e2.inverse()).primitive_part();
    u64 c0 = psi2.conductor();
    for (u64 p : prime_divisors(e1.conductor() * e2.conductor())) {
      if (c0 % p == 0) continue;
      mpz_class t;
      mpz_ui_pow_ui(t.get_mpz_t(), p, (unsigned long)k);
      CycNum x = CycNum::from_rat(1, Rat(t)) - psi2.value((i64)p);
      add_norm(cyc_norm(x), "p^k - " + char_name(psi2) + "(p) at p=" + std::to_string(p) + " for " + pr);
    }
  }
  std::vector<BoundCandidate> out;
  for (auto& [l, s] : why) out.push_back({l, s});
  return out;
}

namespace {

// The bound is max(T, E) with T = (2 (N k/3 (2 loglog N + 12/5))^{(k-1)/2})^d
// and E = (2 N^{(k-1)/2} 5/2 N^{(k-1)/2})^d = (5 N^{k-1})^d an integer.
// T is evaluated with every operation rounded in direction rnd.
void dihedral_T(mpfr_t out, u64 N, int k, int d, mpfr_rnd_t rnd) {
  mpfr_prec_t pr = mpfr_get_prec(out);
  mpfr_t b, c;
  mpfr_inits2(pr, b, c, (mpfr_ptr)0);
  mpz_class Nz(std::to_string(N));
  mpfr_set_z(b, Nz.get_mpz_t(), rnd);
  mpfr_log(b, b, rnd);
  mpfr_log(b, b, rnd);  // negative for N = 2, still monotone
  mpfr_mul_ui(b, b, 2, rnd);
  Rat tf(12, 5);
  mpfr_set_q(c, tf.get_mpq_t(), rnd);
  mpfr_add(b, b, c, rnd);
  mpfr_mul_ui(b, b, (unsigned long)k, rnd);
  mpfr_mul_z(b, b, Nz.get_mpz_t(), rnd);
  mpfr_div_ui(b, b, 3, rnd);
  mpfr_sqrt(b, b, rnd);
  mpfr_pow_ui(b, b, (unsigned long)(k - 1), rnd);
  mpfr_mul_ui(b, b, 2, rnd);
  mpfr_pow_ui(out, b, (unsigned long)d, rnd);
  mpfr_clears(b, c, (mpfr_ptr)0);
}

}  // namespace

DihedralBound dihedral_bound(u64 N, int k, int degree, bool cm) {
  if (N == 0 || k < 2 || degree < 1) throw PreconditionError("dihedral_bound: N >= 1, k >= 2, degree >= 1");
  DihedralBound D;
  if (N == 1) {
    D.finite = true;
    D.kmax = (u64)k;
    D.extra = {(u64)(2 * k - 1), (u64)(2 * k - 3)};
    return D;
  }
  if (cm) {
    D.applicable = false;
    D.note = "CM form: the dihedral bound does not apply";
    return D;
  }
  mpz_class E, Nz(std::to_string(N));
  mpz_pow_ui(E.get_mpz_t(), Nz.get_mpz_t(), (unsigned long)(k - 1));
  E *= 5;
  mpz_pow_ui(E.get_mpz_t(), E.get_mpz_t(), (unsigned long)degree);
  // T is transcendental, so at enough precision either E separates from it or
  // both ceilings of the enclosure agree
  for (mpfr_prec_t pr = 128;; pr *= 2) {
    mpfr_t lo, hi;
    mpfr_inits2(pr, lo, hi, (mpfr_ptr)0);
    dihedral_T(lo, N, k, degree, MPFR_RNDD);
    dihedral_T(hi, N, k, degree, MPFR_RNDU);
    mpz_class clo, chi;
    mpfr_get_z(clo.get_mpz_t(), lo, MPFR_RNDU);
    mpfr_get_z(chi.get_mpz_t(), hi, MPFR_RNDU);
    bool below = mpfr_cmp_z(hi, E.get_mpz_t()) <= 0, above = mpfr_cmp_z(lo, E.get_mpz_t()) > 0;
    mpfr_clears(lo, hi, (mpfr_ptr)0);
    if (below) {
      D.bound = E;
      return D;
    }
    if (above && clo == chi) {
      D.bound = chi;
      return D;
    }
    if (pr > 1 << 16) throw InvariantError("dihedral_bound: precision exhausted");
  }
}

bool ExoticBound::contains(u64 l) const {
  if (l <= threshold) return true;
  return std::find(level_primes.begin(), level_primes.end(), l) != level_primes.end();
}

ExoticBound exotic_bound(u64 N, int k) {
  if (N == 0 || k < 1) throw PreconditionError("exotic_bound: N >= 1, k >= 1");
  ExoticBound E;
  E.threshold = (u64)(4 * k - 3);
  E.level_primes = prime_divisors(N);
  return E;
}

BoundReport bound_report(u64 N, int k, const DirichletChar& eps, int degree, bool cm) {
  BoundReport R;
  R.reducible = red_bound_candidates(N, k, eps);
  if (degree < 1 && N >= 2 && !cm) {
    R.dihedral.applicable = false;
    R.dihedral.note = "needs the degree of K_f";
  } else {
    R.dihedral = dihedral_bound(N, k, std::max(degree, 1), cm);
  }
  R.exotic = exotic_bound(N, k);
  return R;
}

}  // namespace mfred
