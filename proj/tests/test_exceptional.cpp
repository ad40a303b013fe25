#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "mfred/exceptional.hpp"
#include "mfred/specialvals.hpp"

using namespace mfred;

namespace {

const NewformData& form(const std::string& name) {
  static std::map<std::string, NewformData> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, load_newform(std::string(MFRED_DATA_DIR) + "/" + name + ".txt")).first;
  return it->second;
}

std::set<std::string> strs(const std::vector<Quadruple>& v) {
  std::set<std::string> s;
  for (auto& q : v) s.insert(q.str());
  return s;
}

GF::E int_pow(const ResidueContext& C, u64 n, int m) { return C.F.pow(C.from_int((i64)n), (u64)m); }

// chi_l^m1 e1 + chi_l^m2 e2 evaluated at Frob_p, reduced at C
GF::E eis_trace(const ResidueContext& C, const Quadruple& q, u64 p) {
  return C.F.add(C.F.mul(C.reduce(q.e1.value((i64)p)), int_pow(C, p, q.m1)),
                 C.F.mul(C.reduce(q.e2.value((i64)p)), int_pow(C, p, q.m2)));
}

// does a_p = trace at every prime p <= pmax not dividing N l r
bool congruent_upto(const NewformData& f, const ResidueContext& C, const Quadruple& q, int r, u64 pmax) {
  for (u64 p : primes_upto(pmax)) {
    if (f.N % p == 0 || p == C.l || r % p == 0) continue;
    if (C.reduce(f.a[p]) != eis_trace(C, q, p)) return false;
  }
  return true;
}

// R_{N,k,eps}(lambda) straight from the definition: every pair of primitive
// characters of conductor dividing the prime-to-l part of N and every (m1, m2),
// with the determinant identity tested at all n prime to N l up to N l.
std::set<std::string> brute_r(const NewformData& f, const PrimePtr& P) {
  const u64 l = P->l;
  const u64 Nl = prime_to_part(f.N, l);
  std::set<std::string> out;
  auto ok_char = [&](const DirichletChar& e) { return e.order() % l != 0 && e.conductor() % l != 0; };
  for (u64 c1 : divisors(Nl))
    for (u64 c2 : divisors(Nl / c1))
      for (auto& e1 : enumerate_primitive(c1))
        for (auto& e2 : enumerate_primitive(c2)) {
          if (!ok_char(e1) || !ok_char(e2)) continue;
          bool val_ok = true;
          for (u64 p : prime_divisors(f.N))
            if (p != l && valuation(f.N, p) - valuation(c1 * c2, p) > 2) val_ok = false;
          if (!val_ok) continue;
          CycNum sgn = e1.value(-1) * e2.value(-1);
          auto places = compatible_places(f, P, e1, e2);
          for (int m1 = 0; m1 < std::max<int>((int)l - 1, 1); ++m1)
            for (int m2 = m1; m2 < std::max<int>((int)l - 1, 1); ++m2) {
              if (l > 2) {
                if (sgn != CycNum::from_rat(sgn.n, (m1 + m2) % 2 ? 1 : -1)) continue;
              }
              Quadruple q{e1, e2, m1, m2};
              // the verdict must not depend on the place
              int hits = 0;
              for (auto& C : places) {
                bool det = true;
                for (u64 n = 1; n <= f.N * l && det; ++n) {
                  if (gcd_u64(n, f.N * l) != 1) continue;
                  GF::E lhs = C.F.mul(C.F.mul(C.reduce(e1.value((i64)n)), C.reduce(e2.value((i64)n))),
                                      int_pow(C, n, m1 + m2));
                  GF::E rhs = C.F.mul(C.reduce(f.eps_value((i64)n)), int_pow(C, n, f.k - 1));
                  det = lhs == rhs;
                }
                hits += det;
              }
              REQUIRE((hits == 0 || hits == (int)places.size()));
              if (hits) out.insert(q.str());
            }
        }
  return out;
}

std::vector<std::string> summary(const std::vector<ReducibleWitness>& ws) {
  std::vector<std::string> s;
  for (auto& w : ws)
    s.push_back(w.lambda->display + " " + w.q.str() + " " + rat_str(w.B) + " " + std::to_string(w.place) +
                (w.big ? " big" : " small"));
  return s;
}

}  // namespace

TEST_CASE("quadruple text") {
  auto q = parse_quadruple("eps7(6),1,1,1");
  CHECK(q.e1 == DirichletChar::conrey(7, 6));
  CHECK(q.e2.is_trivial());
  CHECK(q.m1 == 1);
  CHECK(parse_quadruple(" (1, eps7(4), 0, 0) ").str() == "(1,eps7(4),0,0)");
  CHECK(parse_quadruple("7.3,1,0,6") == parse_quadruple("eps7(3),1,0,6"));
  CHECK_THROWS(parse_quadruple("1,1,0"));
  CHECK_THROWS(parse_quadruple("1,1,x,0"));
  CHECK(char_term(5, 1, DirichletChar::conrey(7, 3)) == "chi_5*eps7(3)");
  CHECK(char_term(7, 0, DirichletChar::trivial(1)) == "1");
  CHECK(char_term(43, 6, DirichletChar::trivial(1)) == "chi_43^6");
}

TEST_CASE("R sets at level 7") {
  const auto& f1 = form("7.7.b.a");
  const auto& f2 = form("7.7.b.b");
  auto R = [&](const NewformData& f, const std::string& ideal) { return strs(r_nkeps(f, find_prime(f.K, ideal))); };
  CHECK(R(f1, "(2)") == std::set<std::string>{"(1,eps7(4),0,0)", "(eps7(4),1,0,0)"});
  CHECK(R(f1, "(7,t-3)") == std::set<std::string>{"(1,1,0,1)", "(1,1,2,5)", "(1,1,3,4)"});
  CHECK(R(f1, "(7,t+2)") == std::set<std::string>{"(1,1,0,5)", "(1,1,1,4)", "(1,1,2,3)"});
  CHECK(R(f2, "(3,x^2+1)") ==
        std::set<std::string>{"(1,eps7(6),0,0)", "(eps7(6),1,0,0)", "(1,eps7(6),1,1)", "(eps7(6),1,1,1)"});
  // 3 is ramified in Q(t): (3) = (3,t+1)^2
  CHECK(R(f1, "(3,t+1)") == R(f2, "(3,x^2+1)"));
}

TEST_CASE("R sets agree with the definition") {
  for (auto name : {"7.7.b.a", "7.7.b.b", "35.4.a"}) {
    const auto& f = form(name);
    for (u64 l : {2, 3, 5, 7, 11, 13})
      for (auto& P : factor_rational_prime(f.K, l)) {
        INFO(name << " " << P->display);
        auto rs = r_nkeps(f, P);
        CHECK(strs(rs) == brute_r(f, P));
        for (auto& q : rs) {
          CHECK(q.e1.is_primitive());
          CHECK(q.e2.is_primitive());
          CHECK(q.e1.order() % l != 0);
          CHECK(q.e2.order() % l != 0);
          CHECK((f.N % (q.e1.conductor() * q.e2.conductor())) == 0);
          CHECK(q.m1 <= q.m2);
        }
      }
  }
}

TEST_CASE("R for large l keeps the (0, k-1) pairs of R_{N,eps}") {
  const auto& f1 = form("7.7.b.a");
  auto pairs = r_neps(7, f1.eps);
  REQUIRE(pairs.size() == 2);
  for (u64 l : {43, 97, 101})
    for (auto& P : factor_rational_prime(f1.K, l)) {
      std::set<std::string> top, want;
      for (auto& q : r_nkeps(f1, P))
        if (q.m1 == 0 && q.m2 == f1.k - 1 && (q.e1 * q.e2).same_primitive(f1.eps)) top.insert(q.str());
      for (auto& [a, b] : pairs) want.insert(Quadruple{a, b, 0, f1.k - 1}.str());
      CHECK(top == want);
    }
  CHECK(r_neps(35, DirichletChar::trivial(35)).size() == 1);
}

TEST_CASE("Eisenstein data for a quadruple") {
  auto e74 = DirichletChar::conrey(7, 4);
  auto one = DirichletChar::trivial(1);
  auto s = eisenstein_setup({one, e74, 0, 0}, 2);
  CHECK(s.kprime == 2);
  CHECK(s.r == 4);
  CHECK(s.M == 28);
  s = eisenstein_setup({one, one, 3, 4}, 7);
  CHECK(s.kprime == 2);
  CHECK(s.r == 4);
  s = eisenstein_setup({one, one, 1, 4}, 7);
  CHECK(s.kprime == 4);
  CHECK(s.r == 1);
  CHECK(s.M == 1);
  s = eisenstein_setup({one, one, 0, 3}, 5);
  CHECK(s.r == 4);
  s = eisenstein_setup({one, one, 0, 6}, 43);
  CHECK(s.kprime == 7);
  CHECK(s.r == 1);

  const auto& f1 = form("7.7.b.a");
  CHECK(n_prime(f1, 1) == 7);
  CHECK(n_prime(f1, 4) == 28);
  NewformData g = f1;
  g.N = 14;
  CHECK(n_prime(g, 4) == 28);
  g.a[2] = NFElem::from_rat(g.K, 0);
  CHECK(n_prime(g, 4) == 14);
}

TEST_CASE("Sturm bounds of the level 7 branches") {
  const auto& f1 = form("7.7.b.a");
  auto one = DirichletChar::trivial(1);
  auto e73 = DirichletChar::conrey(7, 3);
  int r;
  u64 Np;
  CHECK(small_bound(f1, {one, e73, 1, 1}, 5, false) == Rat(26, 3));
  CHECK(small_bound(f1, {one, one, 1, 4}, 7, false, &r) == Rat(20, 3));
  CHECK(r == 1);
  CHECK(small_bound(f1, {one, one, 2, 5}, 7, false) == Rat(26, 3));
  CHECK(small_bound(f1, {one, DirichletChar::conrey(7, 4), 0, 0}, 2, false, &r, &Np) == Rat(40));
  CHECK(r == 4);
  CHECK(Np == 28);
  // the conservative Sturm weight can only grow
  for (auto q : r_nkeps(f1, find_prime(f1.K, "(7,t-3)")))
    CHECK(small_bound(f1, q, 7, true) >= small_bound(f1, q, 7, false));
  CHECK(big_bound(f1, one, e73, &r) == Rat(14, 3));
  CHECK(r == 1);
}

TEST_CASE("individual checks") {
  const auto& f1 = form("7.7.b.a");
  // (3,t+1): every quadruple fails
  auto P3 = find_prime(f1.K, "(3,t+1)");
  for (auto& q : r_nkeps(f1, P3)) CHECK_FALSE(check_reducible_small(f1, P3, q).has_value());
  auto P5 = find_prime(f1.K, "(5)");
  auto w = check_reducible_small(f1, P5, parse_quadruple("1,eps7(3),1,1"));
  REQUIRE(w.has_value());
  CHECK(w->decomposition() == "chi_5 + chi_5*eps7(3)");
  CHECK(w->B == Rat(26, 3));
  CHECK_FALSE(check_reducible_small(f1, P5, parse_quadruple("1,eps7(3),3,3")).has_value());

  const auto& f2 = form("7.7.b.b");
  auto P = find_prime(f2.K, "(3,x^2+1)");
  w = check_reducible_small(f2, P, parse_quadruple("eps7(6),1,1,1"));
  REQUIRE(w.has_value());
  CHECK(w->B == Rat(22, 3));

  std::vector<CheckTrace> tr;
  CHECK_FALSE(check_reducible_small(f1, P3, r_nkeps(f1, P3)[0], {}, &tr).has_value());
  REQUIRE(!tr.empty());
  CHECK_FALSE(tr[0].passed);
}

TEST_CASE("candidate primes for the large route") {
  CHECK(candidate_primes_big(form("7.7.b.a")) == std::vector<u64>{43});
  CHECK(candidate_primes_big(form("7.7.b.b")) == std::vector<u64>{97, 3919});
  CHECK(candidate_primes_big(form("35.4.a")).empty());
  // union over the pairs
  for (auto name : {"7.7.b.a", "7.7.b.b"}) {
    const auto& f = form(name);
    std::set<u64> u;
    for (auto& [a, b] : r_neps(f.N, f.eps))
      for (u64 l : candidate_primes_big(f, a, b)) {
        CHECK(l > (u64)f.k + 1);
        CHECK(f.N * euler_phi(f.N) % l != 0);
        u.insert(l);
      }
    auto all = candidate_primes_big(f);
    CHECK(std::set<u64>(all.begin(), all.end()) == u);
  }
}

TEST_CASE("the two routes agree on large primes") {
  for (auto [name, l] : std::vector<std::pair<std::string, u64>>{{"7.7.b.a", 43}, {"7.7.b.b", 97}}) {
    const auto& f = form(name);
    for (auto& P : factor_rational_prime(f.K, l))
      for (auto& [a, b] : r_neps(f.N, f.eps)) {
        Quadruple q{a, b, 0, f.k - 1};
        auto rs = r_nkeps(f, P);
        REQUIRE(std::find(rs.begin(), rs.end(), q) != rs.end());
        INFO(P->display << " " << q.str());
        CHECK(check_reducible_small(f, P, q).has_value() == check_reducible_big(f, P, a, b).has_value());
      }
  }
}

TEST_CASE("witnesses hold far beyond the Sturm bound") {
  for (auto name : {"7.7.b.a", "7.7.b.b"}) {
    const auto& f = form(name);
    auto ws = reducible_set(f);
    REQUIRE(!ws.empty());
    for (auto& w : ws) {
      INFO(name << " " << w.lambda->display << " " << w.q.str());
      auto C = compatible_places(f, w.lambda, w.q.e1, w.q.e2);
      REQUIRE(w.place < (int)C.size());
      CHECK(w.nplaces == (int)C.size());
      u64 twice = 2 * floor_rat(w.B);
      CHECK(twice <= f.nmax());
      CHECK(congruent_upto(f, C[w.place], w.q, w.r, twice));
      CHECK(congruent_upto(f, C[w.place], w.q, w.r, f.nmax()));
    }
  }
}

TEST_CASE("the verdict at each prime ideal does not depend on the place") {
  for (auto name : {"7.7.b.a", "7.7.b.b", "35.4.a"}) {
    const auto& f = form(name);
    std::set<std::string> found;
    for (auto& w : reducible_set(f))
      if (!w.big) found.insert(w.lambda->display);
    for (u64 l : small_primes(f.N, f.k))
      for (auto& P : factor_rational_prime(f.K, l)) {
        auto rs = r_nkeps(f, P);
        std::set<size_t> nplaces;
        std::vector<bool> any;
        for (auto& q : rs) {
          auto C = compatible_places(f, P, q.e1, q.e2);
          int r = eisenstein_setup(q, l).r;
          if (any.size() < C.size()) any.resize(C.size(), false);
          for (size_t i = 0; i < C.size(); ++i)
            if (congruent_upto(f, C[i], q, r, f.nmax())) any[i] = true;
        }
        INFO(name << " " << P->display);
        bool red = found.count(P->display) > 0;
        for (size_t i = 0; i < any.size(); ++i) CHECK(any[i] == red);
      }
  }
}

TEST_CASE("reducible sets") {
  auto ideals = [](const std::vector<ReducibleWitness>& ws) {
    std::vector<std::string> s;
    for (auto& w : ws) s.push_back(w.lambda->display + " " + w.decomposition());
    return s;
  };
  CHECK(ideals(reducible_set(form("7.7.b.a"))) ==
        std::vector<std::string>{"(2) 1 + eps7(4)", "(5) chi_5 + chi_5*eps7(3)", "(7,t+2) chi_7 + chi_7^4",
                                 "(7,t-3) chi_7^2 + chi_7^5", "(43,t+6) eps7(3) + chi_43^6",
                                 "(43,t-7) 1 + chi_43^6*eps7(3)"});
  CHECK(reducible_set(form("35.4.a")).empty());
  auto f2 = reducible_set(form("7.7.b.b"));
  CHECK(f2.size() == 10);

  // max_ell drops the large route
  ReducibleOptions o;
  o.max_ell = 7;
  CHECK(reducible_set(form("7.7.b.a"), o).size() == 4);
  // first place only: same ideals
  o = {};
  o.check.all_places = false;
  CHECK(ideals(reducible_set(form("7.7.b.b"), o)) == ideals(f2));
  o = {};
  o.check.conservative = true;
  CHECK(ideals(reducible_set(form("7.7.b.b"), o)) == ideals(f2));
}

TEST_CASE("parallel runs are deterministic") {
  for (auto name : {"7.7.b.a", "7.7.b.b", "35.4.a"}) {
    auto ref = summary(reducible_set(form(name)));
    for (unsigned j : {2u, 3u, 8u}) {
      ReducibleOptions o;
      o.jobs = j;
      CHECK(summary(reducible_set(form(name), o)) == ref);
    }
  }
}

TEST_CASE("coefficient budget") {
  const auto& f = form("35.4.a");
  CHECK(coefficient_budget(f) == 408);
  CheckOptions c;
  c.conservative = true;
  CHECK(coefficient_budget(f, c) > 408);
  NewformData g = f;
  g.a.resize(301);
  try {
    reducible_set(g);
    FAIL("expected InsufficientCoefficients");
  } catch (const InsufficientCoefficients& e) {
    CHECK(e.required == 408);
    CHECK(e.available == 300);
  }
  CHECK(coefficient_budget(form("7.7.b.a")) <= 600);
}

TEST_CASE("reducibility bound candidates") {
  auto ls = [](const std::vector<BoundCandidate>& v) {
    std::set<u64> s;
    for (auto& c : v) s.insert(c.l);
    return s;
  };
  CHECK(ls(red_bound_candidates(35, 4, DirichletChar::trivial(35))) == std::set<u64>{2, 3, 5, 7});
  // numerator of B_12 = -691/2730
  CHECK(gen_bernoulli(12, DirichletChar::trivial(1)).to_rat() == ratio(-691, 2730));
  auto s1 = ls(red_bound_candidates(1, 12, DirichletChar::trivial(1)));
  CHECK(s1.count(691));
  CHECK(*s1.rbegin() == 691);
  auto eps = DirichletChar::conrey(7, 3);
  auto s7 = ls(red_bound_candidates(7, 7, eps));
  for (auto name : {"7.7.b.a", "7.7.b.b"})
    for (auto& w : reducible_set(form(name))) CHECK(s7.count(w.l));
  for (u64 l : {2, 3, 5, 7}) CHECK(s7.count(l));
  for (auto& c : red_bound_candidates(7, 7, eps)) CHECK(is_prime_u64(c.l));
}

TEST_CASE("dihedral bound") {
  for (int k = 2; k <= 12; ++k) {
    auto d = dihedral_bound(1, k, 1);
    CHECK(d.finite);
    CHECK(d.kmax == (u64)k);
    CHECK(d.extra == std::vector<u64>{(u64)(2 * k - 1), (u64)(2 * k - 3)});
  }
  auto d12 = dihedral_bound(1, 12, 3);
  CHECK(d12.extra == std::vector<u64>{23, 21});

  // (5 N^{k-1})^d dominates here
  CHECK(dihedral_bound(7, 7, 2).bound == mpz_class("346032180025"));
  CHECK(mpz_class(5 * 117649) * mpz_class(5 * 117649) == mpz_class("346032180025"));
  CHECK_FALSE(dihedral_bound(7, 7, 2, true).applicable);

  for (int k = 2; k <= 14; ++k)
    for (int d = 1; d <= 3; ++d) {
      CHECK(dihedral_bound(2, k, d).bound <= dihedral_bound(3, k, d).bound);
      CHECK(dihedral_bound(5, k, d).bound <= dihedral_bound(5, k + 1, d).bound);
      CHECK(dihedral_bound(5, k, d).bound <= dihedral_bound(5, k, d + 1).bound);
    }

  // long double evaluation of the displayed formula
  for (u64 N : {2, 3, 4, 10, 50, 1000})
    for (int k : {2, 5, 12, 20, 30})
      for (int d : {1, 2}) {
        long double s = std::pow((long double)N, (k - 1) / 2.0L);
        long double b = std::pow((long double)k / 3 * (2 * std::log(std::log((long double)N)) + 2.4L), (k - 1) / 2.0L);
        long double v = std::pow(2 * s * std::max(b, 2.5L * s), (long double)d);
        mpz_class got = dihedral_bound(N, k, d).bound;
        long double g = got.get_d();
        INFO(N << " " << k << " " << d);
        CHECK(std::fabs(g - v) <= 1e-12L * v + 1);
      }
}

TEST_CASE("exotic bound") {
  auto e = exotic_bound(35, 4);
  CHECK(e.threshold == 13);
  CHECK(e.contains(13));
  CHECK_FALSE(e.contains(17));
  CHECK(e.contains(7));
  e = exotic_bound(11, 2);
  std::vector<u64> in;
  for (u64 l : primes_upto(100))
    if (e.contains(l)) in.push_back(l);
  CHECK(in == std::vector<u64>{2, 3, 5, 11});
  e = exotic_bound(7, 7);
  CHECK(e.threshold == 25);
  CHECK(e.contains(23));
  CHECK_FALSE(e.contains(29));
  CHECK(e.contains(7));

  auto r = bound_report(35, 4, DirichletChar::trivial(35), 0);
  CHECK_FALSE(r.dihedral.applicable);
  r = bound_report(35, 4, DirichletChar::trivial(35), 2);
  CHECK(r.dihedral.applicable);
}
