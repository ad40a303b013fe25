#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include <random>

#include "mfred/cyclo.hpp"
#include "mfred/ff.hpp"
#include "mfred/intfactor.hpp"
#include "mfred/numfield.hpp"
#include "mfred/poly.hpp"

using namespace mfred;

namespace {

QPoly P(const std::string& s, const std::string& v = "x") { return parse_poly(s, v); }

// Sylvester determinant by fraction-free elimination over Q.
Rat sylvester_res(const QPoly& a, const QPoly& b) {
  int m = a.deg(), n = b.deg();
  int N = m + n;
  RatMat s(N, std::vector<Rat>(N, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[i][i + j] = a.c[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[n + i][i + j] = b.c[n - j];
  Rat det = 1;
  for (int c = 0; c < N; ++c) {
    int r = c;
    while (r < N && s[r][c] == 0) ++r;
    if (r == N) return 0;
    if (r != c) {
      std::swap(s[r], s[c]);
      det = -det;
    }
    det *= s[c][c];
    for (int i = c + 1; i < N; ++i) {
      Rat t = s[i][c] / s[c][c];
      for (int j = c; j < N; ++j) s[i][j] -= t * s[c][j];
    }
  }
  return det;
}

FpPoly fp_random(std::mt19937_64& rng, u64 p, int deg) {
  FpPoly a(deg + 1);
  for (auto& x : a) x = rng() % p;
  a[deg] = 1 + rng() % (p - 1);
  return a;
}

// Irreducible iff no monic divisor of degree 1..deg/2 (brute force).
bool brute_irreducible(const FpPoly& f, u64 p) {
  int n = (int)f.size() - 1;
  for (int d = 1; 2 * d <= n; ++d) {
    FpPoly g(d + 1, 0);
    g[d] = 1;
    while (true) {
      if (fp_mod(f, g, p).empty()) return false;
      int i = 0;
      while (i < d && ++g[i] == p) g[i++] = 0;
      if (i == d) break;
    }
  }
  return n >= 1;
}

}  // namespace

TEST_CASE("rational parsing and normalisation") {
  CHECK(parse_rat("6/4") == Rat(3, 2));
  CHECK(parse_rat("-3") == Rat(-3));
  CHECK_THROWS_AS(parse_rat("1/0"), DataError);
  CHECK_THROWS_AS(parse_rat("x"), DataError);
  Rat r = parse_rat("10/-4");
  CHECK(r.get_den() > 0);
}

TEST_CASE("polynomial parse and print") {
  CHECK(P("x^2+1") == QPoly({1, 0, 1}));
  CHECK(P("t-5", "t") == QPoly({-5, 1}));
  CHECK(P("3/2*x^3 - x") == QPoly({0, -1, 0, Rat(3, 2)}));
  CHECK(P("-x") == QPoly({0, -1}));
  CHECK(P("x^2 + 2x + 1") == QPoly({1, 2, 1}));
  for (const char* s : {"x^4+2*x^2+4", "-x^3+1/2", "x-1", "7"}) CHECK(P(P(s).str()) == P(s));
  CHECK_THROWS_AS(P("x^^2"), DataError);
}

TEST_CASE("division and gcd") {
  QPoly a = P("x^5-3x^2+x-7"), b = P("2x^2+1");
  QPoly q, r;
  divmod(a, b, q, r);
  CHECK(q * b + r == a);
  CHECK(r.deg() < b.deg());
  CHECK(gcd(P("x^2-1"), P("x^2+2x+1")) == P("x+1"));
}

TEST_CASE("resultant agrees with Sylvester determinant") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    std::vector<Rat> a(1 + rng() % 6), b(1 + rng() % 6);
    for (auto& x : a) x = ratio((long)(rng() % 21) - 10, 1 + rng() % 3);
    for (auto& x : b) x = ratio((long)(rng() % 21) - 10, 1 + rng() % 3);
    a.back() = 1 + rng() % 4;
    b.back() = -(1 + (long)(rng() % 4));
    QPoly A(a), B(b);
    if (A.deg() < 1 || B.deg() < 1) continue;
    CHECK(resultant(A, B) == sylvester_res(A, B));
  }
  CHECK(discriminant(P("x^2-2")) == 8);
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == P("x-1"));
  CHECK(cyclotomic_poly(6) == P("x^2-x+1"));
  CHECK(cyclotomic_poly(4) == P("x^2+1"));
  for (u64 n = 1; n <= 60; ++n) {
    QPoly prod = QPoly::constant(1);
    for (u64 d : divisors(n)) prod = prod * cyclotomic_poly(d);
    QPoly xn = QPoly::monomial(n) - QPoly::constant(1);
    CHECK(prod == xn);
    CHECK((xn % cyclotomic_poly(n)).is_zero());
    CHECK(cyclotomic_poly(n).deg() == (int)euler_phi(n));
  }
}

TEST_CASE("factorisation mod l: fixed cases") {
  auto f = poly_factor_mod(P("x^4+2x^2+4"), 7);
  REQUIRE(f.size() == 4);
  std::vector<FpPoly> want = {{1, 1}, {2, 1}, {5, 1}, {6, 1}};  // x+1, x+2, x-2, x-1
  std::vector<FpPoly> got;
  for (auto& [g, m] : f) {
    CHECK(m == 1);
    got.push_back(g);
  }
  std::sort(got.begin(), got.end());
  CHECK(got == want);

  auto g = poly_factor_mod(P("x^2-x+1"), 2);
  REQUIRE(g.size() == 1);
  CHECK(g[0].first.size() == 3);

  auto h = poly_factor_mod(P("x-1"), 5);
  REQUIRE(h.size() == 1);
  CHECK(h[0].first == FpPoly{4, 1});

  CHECK_THROWS_AS(poly_factor_mod(P("7x^2+1"), 7), PreconditionError);
  auto sq = poly_factor_mod(P("x^4+2x^2+4"), 2);  // x^4 mod 2
  REQUIRE(sq.size() == 1);
  CHECK(sq[0].second == 4);
}

TEST_CASE("factorisation mod l: random re-multiplication") {
  std::mt19937_64 rng(5);
  for (u64 p : {2, 3, 5, 7, 13}) {
    for (int t = 0; t < 40; ++t) {
      int deg = 1 + rng() % 12;
      FpPoly a = fp_random(rng, p, deg);
      // sprinkle repeated factors
      if (t % 3 == 0) a = fp_mul(a, fp_mul(FpPoly{rng() % p, 1}, FpPoly{rng() % p, 1}, p), p);
      if (t % 5 == 0) a = fp_mul(a, a, p);
      GF F = GF::prime(p);
      auto fac = gp_factor(F, gp_from_fp(F, a));
      FpPoly prod{1};
      std::vector<FpPoly> seen;
      for (auto& [g, m] : fac) {
        FpPoly h;
        for (auto& e : g.c) h.push_back(e[0]);
        CHECK(h.back() == 1);
        if (h.size() <= 5) CHECK(brute_irreducible(h, p));
        for (auto& s : seen) CHECK(s != h);
        seen.push_back(h);
        for (int i = 0; i < m; ++i) prod = fp_mul(prod, h, p);
      }
      CHECK(prod == fp_monic(a, p));
    }
  }
}

TEST_CASE("extension fields") {
  for (u64 p : {2, 3, 7}) {
    for (int d : {2, 3, 4}) {
      FpPoly m = find_irreducible(p, d);
      CHECK(brute_irreducible(m, p));
      GF F(p, m);
      std::mt19937_64 rng(p * 10 + d);
      for (int t = 0; t < 20; ++t) {
        GF::E a = F.random(rng), b = F.random(rng), c = F.random(rng);
        CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        if (!F.is_zero(a)) CHECK(F.mul(a, F.inv(a)) == F.one());
        CHECK(F.pow(a, F.order()) == a);
        CHECK(F.frob(F.pth_root(a)) == a);
      }
      u64 q = F.order().get_ui();
      if (q <= 500) {
        // x^(q-1) - 1 splits completely into distinct linear factors
        GFPoly f;
        f.c.assign(q - 1, F.zero());
        f.c[0] = F.neg(F.one());
        f.c.push_back(F.one());
        CHECK(gp_roots(F, f).size() == q - 1);
      } else {
        // product of distinct random linear factors
        std::vector<GF::E> rs;
        GFPoly f{{F.one()}};
        while (rs.size() < 30) {
          GF::E r = F.random(rng);
          if (std::find(rs.begin(), rs.end(), r) != rs.end()) continue;
          rs.push_back(r);
          f = gp_mul(F, f, GFPoly{{F.neg(r), F.one()}});
        }
        auto roots = gp_roots(F, f);
        CHECK(roots.size() == 30);
        for (auto& r : roots) CHECK(std::find(rs.begin(), rs.end(), r) != rs.end());
      }
    }
  }
}

TEST_CASE("linear algebra mod p") {
  u64 p = 7;
  FpMat m = {{1, 2, 3, 4}, {2, 4, 6, 1}, {0, 0, 1, 5}};
  FpMat k = fp_kernel(m, 4, p);
  CHECK(k.size() == 2);  // second row is twice the first mod 7
  for (auto& v : k)
    for (auto& row : m) {
      u64 s = 0;
      for (int j = 0; j < 4; ++j) s = (s + row[j] * v[j]) % p;
      CHECK(s == 0);
    }
  auto x = fp_solve(m, {1, 2, 3}, 4, p);
  REQUIRE(x);
  for (size_t i = 0; i < m.size(); ++i) {
    u64 s = 0;
    for (int j = 0; j < 4; ++j) s = (s + m[i][j] * (*x)[j]) % p;
    CHECK(s == std::vector<u64>{1, 2, 3}[i]);
  }
  CHECK_FALSE(fp_solve(FpMat{{1, 1}, {1, 1}}, {0, 1}, 2, p));
}

TEST_CASE("cyclotomic numbers") {
  CycNum z9 = CycNum::zeta(9, 1), z6 = CycNum::zeta(6, 1);
  CHECK(cyc_norm(CycNum::one(9) - z9) == 3);
  CHECK(cyc_norm(CycNum::one(6) - z6) == 1);
  CHECK(cyc_norm(CycNum::zero(5)) == 0);
  CHECK(pow(z9, 9) == CycNum::one(9));
  CHECK(pow(z6, 3) == CycNum::from_rat(1, -1));
  CHECK(CycNum::zeta(4, 1).lift(12) == CycNum::zeta(12, 3));
  CHECK(CycNum::zeta(7, 3).conj() * CycNum::zeta(7, 3) == CycNum::one(7));
  CHECK(CycNum::zeta(3, 1) + CycNum::zeta(3, 2) == CycNum::from_rat(1, -1));

  std::mt19937_64 rng(3);
  for (int t = 0; t < 80; ++t) {
    u64 n = 1 + rng() % 20;
    CycNum a = CycNum::zero(n), b = CycNum::zero(n);
    for (auto& x : a.c) x = ratio((long)(rng() % 9) - 4, 1 + rng() % 2);
    for (auto& x : b.c) x = Rat((long)(rng() % 9) - 4);
    CHECK(cyc_norm(a * b) == cyc_norm(a) * cyc_norm(b));
    // norm from the charpoly agrees with the resultant
    QPoly cp = cyc_charpoly(a);
    Rat nrm = (a.phi() % 2) ? -cp.c[0] : cp.c[0];
    CHECK(nrm == cyc_norm(a));
  }
}

TEST_CASE("number fields") {
  auto K = NumberField::make(P("t^2-t+1", "t"), RatMat{{1, 0}, {0, 1}}, "t");
  NFElem th = NFElem::gen(K);
  CHECK(th.charpoly() == P("x^2-x+1"));
  NFElem a2 = Rat(12) * th;
  CHECK(a2.charpoly() == P("x^2-12x+144"));
  CHECK(a2.norm() == 144);
  CHECK(NFElem::from_rat(K, 5).charpoly() == P("x^2-10x+25"));

  RatMat W = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, Rat(1, 2), 0}, {0, 0, 0, Rat(1, 2)}};
  auto L = NumberField::make(P("x^4+2x^2+4"), W, "x");
  CHECK(L->mt[2][2][0] == -1);  // (x^2/2)^2 = x^4/4 = -x^2/2 - 1
  CHECK(L->mt[2][2][2] == -1);
  RatMat bad = {{1, 0}, {0, Rat(1, 2)}};
  CHECK_THROWS_AS(NumberField::make(P("x^2+1"), bad, "x"), DataError);

  // Cayley-Hamilton on random elements of random fields
  std::mt19937_64 rng(17);
  for (int t = 0; t < 40; ++t) {
    int d = 1 + rng() % 6;
    std::vector<Rat> g(d + 1);
    for (auto& x : g) x = (long)(rng() % 11) - 5;
    g[d] = 1;
    RatMat I(d, std::vector<Rat>(d, Rat(0)));
    for (int i = 0; i < d; ++i) I[i][i] = 1;
    auto F = NumberField::make(QPoly(g), I, "t");
    std::vector<Rat> v(d);
    for (auto& x : v) x = ratio((long)(rng() % 13) - 6, 1 + rng() % 3);
    NFElem x(F, v);
    QPoly cp = x.charpoly();
    RatMat M = x.mult_matrix();
    RatMat acc(d, std::vector<Rat>(d, Rat(0)));
    for (int k = cp.deg(); k >= 0; --k) {
      RatMat nx(d, std::vector<Rat>(d, Rat(0)));
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          for (int l = 0; l < d; ++l) nx[i][j] += acc[i][l] * M[l][j];
          if (i == j) nx[i][j] += cp.c[k];
        }
      acc = nx;
    }
    for (auto& row : acc)
      for (auto& e : row) CHECK(e == 0);
    // evaluating g at the generator gives zero
    NFElem gth = NFElem::from_rat(F, 0);
    for (int k = d; k >= 0; --k) gth = gth * NFElem::gen(F) + NFElem::from_rat(F, g[k]);
    CHECK(gth.is_zero());
  }
}

TEST_CASE("resultant norms over a compositum") {
  auto K = NumberField::make(P("t^2-t+1", "t"), RatMat{{1, 0}, {0, 1}}, "t");
  NFElem th = NFElem::gen(K);
  // theta is a primitive 6th root of unity: theta - zeta_6 vanishes under one pairing
  CHECK(res_norm(th, CycNum::zeta(6, 1)) == 0);
  CHECK(res_norm(th, CycNum::from_rat(1, 0)) == th.norm());
  CHECK(res_norm(NFElem::from_rat(K, 3), CycNum::from_rat(1, 1)) == 4);
}

TEST_CASE("integer factorisation") {
  auto f = factor_mpz(mpz_class("1000000016000000063"));  // (10^9+7)(10^9+9)
  REQUIRE(f.size() == 2);
  CHECK(f[0].first == mpz_class("1000000007"));
  CHECK(f[1].first == mpz_class("1000000009"));
  mpz_class n = mpz_class(2) * 2 * 3 * 97 * 3919 * mpz_class("18446744073709551557");
  mpz_class back = 1;
  for (auto& [p, e] : factor_mpz(-n)) {
    CHECK(mpz_probab_prime_p(p.get_mpz_t(), 30) > 0);
    for (int i = 0; i < e; ++i) back *= p;
  }
  CHECK(back == n);
  CHECK_THROWS_AS(factor_mpz(0), PreconditionError);
}
