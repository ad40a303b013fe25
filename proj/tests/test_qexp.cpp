#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mfred/qexp.hpp"
#include "mfred/specialvals.hpp"

using namespace mfred;

namespace {

struct EisData {
  int k;
  DirichletChar e1, e2;
};

// (k, e1, e2) with primitive characters, c1 c2 <= maxlev, k <= maxk, parity ok;
// the (2, 1, 1) pair only through the level-p forms.
std::vector<EisData> eis_grid(u64 maxlev, int maxk) {
  std::vector<EisData> out;
  std::vector<DirichletChar> prims;
  for (u64 c = 1; c <= maxlev; ++c)
    for (auto& x : enumerate_primitive(c)) prims.push_back(x);
  for (int k = 1; k <= maxk; ++k)
    for (auto& a : prims)
      for (auto& b : prims) {
        if (a.modulus() * b.modulus() > maxlev) continue;
        if ((a.is_even() == b.is_even()) != (k % 2 == 0)) continue;
        if (k == 2 && a.is_trivial() && b.is_trivial()) continue;
        out.push_back({k, a, b});
      }
  for (u64 p : primes_upto(maxlev)) out.push_back({2, DirichletChar::trivial(1), DirichletChar::trivial(p)});
  return out;
}

// direct divisor sum with character values multiplied as cyclotomic numbers
CycNum sigma_oracle(int k, const DirichletChar& e1, const DirichletChar& e2, u64 n) {
  CycNum s = CycNum::zero(1);
  for (u64 d : divisors(n)) {
    mpz_class dk;
    mpz_ui_pow_ui(dk.get_mpz_t(), d, k - 1);
    s = s + Rat(dk) * (e1.value((i64)(n / d)) * e2.value((i64)d));
  }
  return s;
}

// coefficientwise (1 - eps X + delta X^2)(V_p) applied to a coefficient list
std::vector<CycNum> apply_poly_vp(const std::vector<CycNum>& a, u64 p, const CycNum& eps,
                                  const CycNum& delta) {
  std::vector<CycNum> r(a.size());
  for (size_t n = 0; n < a.size(); ++n) {
    CycNum v = a[n];
    if (n % p == 0) v = v - eps * a[n / p];
    if (n % (p * p) == 0) v = v + delta * a[n / (p * p)];
    r[n] = v;
  }
  return r;
}

CycNum pk1(u64 p, int k) {
  mpz_class t;
  mpz_ui_pow_ui(t.get_mpz_t(), p, k - 1);
  return CycNum::from_rat(1, Rat(t));
}

}  // namespace

TEST_CASE("Eisenstein coefficients") {
  auto one = DirichletChar::trivial(1);
  QExp E4 = eisenstein(4, one, one, 10);
  CHECK(E4.a[0] == CycNum::from_rat(1, Rat(1, 240)));
  CHECK(E4.a[2] == CycNum::from_rat(1, 9));
  QExp E25 = eisenstein(2, one, DirichletChar::trivial(5), 10);
  CHECK(E25.a[0] == CycNum::from_rat(1, Rat(1, 6)));
  CHECK(E25.N == 5);
  CHECK(E25.a[5] == CycNum::from_rat(1, 1));
  CHECK_THROWS_AS(eisenstein(3, one, one, 10), PreconditionError);
  CHECK_THROWS_AS(eisenstein(2, one, one, 10), PreconditionError);
  CHECK_THROWS_AS(eisenstein(2, one, DirichletChar::conrey(8, 5).induce(24), 10),
                  PreconditionError);

  for (auto& [k, a, b] : eis_grid(12, 6)) {
    QExp E = eisenstein(k, a, b, 40);
    CHECK(E.N == a.modulus() * b.modulus());
    for (u64 n = 1; n < 40; ++n) CHECK(E.a[n] == sigma_oracle(k, a, b, n));
    for (u64 p : primes_upto(39)) CHECK(E.a[p] == a.value((i64)p) + pk1(p, k) * b.value((i64)p));
  }
}

TEST_CASE("E_2 and theta") {
  QExp E = e2(20);
  CHECK(E.quasi);
  CHECK(E.a[0] == CycNum::from_rat(1, Rat(-1, 24)));
  CHECK(E.a[1] == CycNum::one(1));
  CHECK(E.a[6] == CycNum::from_rat(1, 12));
  QExp t = theta(E);
  CHECK(t.a[1] == CycNum::one(1));
  CHECK(t.a[2] == CycNum::from_rat(1, 6));
  CHECK(theta(qexp_constant(CycNum::one(1), 10)).a[0].is_zero());

  QExp g = eisenstein(3, DirichletChar::trivial(1), DirichletChar::conrey(4, 3), 30);
  CHECK(same_coeffs(theta(v_op(2, g)), CycNum::from_rat(1, 2) * v_op(2, theta(g))));
}

TEST_CASE("V, U and S operators") {
  auto one = DirichletChar::trivial(1);
  QExp g = eisenstein(5, DirichletChar::conrey(3, 2), one, 50);
  for (u64 p : {2, 3, 5, 7}) {
    QExp v = v_op(p, g);
    CHECK(v.prec() == g.prec() * p);
    QExp uv = u_op(p, v);
    CHECK(uv.prec() == g.prec());
    CHECK(same_coeffs(uv, g));
    CHECK(u_op(p, g).prec() == g.prec() / p);
    CHECK(same_coeffs(s_op(p, CycNum::zero(1), g), g));
    CycNum b = CycNum::zeta(3, 1);
    QExp s = s_op(p, b, g);
    CHECK(s.a[p] == g.a[p] - b);
    CHECK(s.N == g.N * p);
  }
}

TEST_CASE("Hecke eigenvalues of Eisenstein series") {
  auto grid = eis_grid(12, 8);
  for (auto& [k, a, b] : grid) {
    QExp E = eisenstein(k, a, b, 100 * 13);
    for (u64 p : primes_upto(13)) {
      QExp g = E.truncate(100 * p);
      QExp t = hecke_tp(p, g);
      REQUIRE(t.prec() == 100);
      CycNum lam = a.value((i64)p) + pk1(p, k) * b.value((i64)p);
      bool ok = true;
      for (size_t n = 0; n < 100; ++n) ok = ok && t.a[n] == lam * g.a[n];
      CHECK_MESSAGE(ok, "k=" << k << " " << a.label() << " " << b.label() << " p=" << p);
    }
  }
  CHECK(grid.size() > 100);
}

TEST_CASE("Hecke operator decomposition") {
  auto one = DirichletChar::trivial(1);
  DirichletChar e = DirichletChar::conrey(5, 2);
  QExp g = eisenstein(3, one, e, 400);  // level 5, odd character
  for (u64 p : {2, 3, 7}) {
    // T_p on V_p g with the level of g
    QExp h = v_op(p, g.truncate(50));
    h.N = g.N;
    h.chi = g.chi;
    QExp lhs = hecke_tp(p, h);
    CycNum c = pk1(p, 3) * e.value((i64)p);
    QExp rhs = g.truncate(50) + c * v_op(p, v_op(p, g.truncate(50)));
    REQUIRE(lhs.prec() == 50);
    CHECK(same_coeffs(lhs, rhs));
    // literal U_p + p^{k-1} eps(p) V_p
    QExp direct = u_op(p, g.truncate(50 * p)) + c * v_op(p, g.truncate(50));
    CHECK(same_coeffs(hecke_tp(p, g.truncate(50 * p)), direct));
  }
  QExp z = qexp_constant(CycNum::zero(1), 30, 4);
  QExp tz = hecke_tp(2, z);
  for (auto& x : tz.a) CHECK(x.is_zero());
}

TEST_CASE("Rankin-Cohen bracket") {
  auto one = DirichletChar::trivial(1);
  QExp E4 = eisenstein(4, one, one, 10), E6 = eisenstein(6, one, one, 10);
  CHECK(same_coeffs(rankin_cohen(E4, E4), qexp_constant(CycNum::zero(1), 10)));
  // direct oracle on rationals
  std::vector<Rat> a(10), b(10), want(10, Rat(0));
  for (int n = 0; n < 10; ++n) {
    a[n] = E4.a[n].to_rat();
    b[n] = E6.a[n].to_rat();
  }
  for (int i = 0; i < 10; ++i)
    for (int j = 0; i + j < 10; ++j) want[i + j] += 4 * a[i] * j * b[j] - 6 * b[j] * i * a[i];
  QExp rc = rankin_cohen(E4, E6);
  CHECK(rc.k == 12);
  for (int n = 0; n < 10; ++n) CHECK(rc.a[n] == CycNum::from_rat(1, want[n]));
  // [1, h] with the weight 0 constant 1 vanishes
  QExp c1 = qexp_constant(CycNum::one(1), 10, 0);
  for (auto& x : rankin_cohen(c1, E6).a) CHECK(x.is_zero());

  // bilinear and antisymmetric in equal weight
  DirichletChar x5 = DirichletChar::conrey(5, 4);
  QExp f = eisenstein(4, one, one, 30), g = eisenstein(4, x5, x5, 30);
  QExp h = eisenstein(4, DirichletChar::conrey(5, 2), DirichletChar::conrey(5, 3), 30);
  CHECK(same_coeffs(rankin_cohen(f, g), CycNum::from_rat(1, -1) * rankin_cohen(g, f)));
  CycNum s = CycNum::zeta(4, 1);
  CHECK(same_coeffs(rankin_cohen(f + s * g, h), rankin_cohen(f, h) + s * rankin_cohen(g, h)));
}

TEST_CASE("modify on E_2") {
  QExp E = e2(200);
  for (u64 p : {2, 3, 5, 7}) {
    QExp a = modify(E, {{p, CycNum::one(1)}});
    CHECK_FALSE(a.quasi);
    CHECK(a.N == p);
    CHECK(a.a[p] == CycNum::one(1));
    for (u64 r : primes_upto(60))
      if (r != p) CHECK(a.a[r] == CycNum::from_rat(1, (long)r + 1));
    CHECK(same_coeffs(a, eisenstein(2, DirichletChar::trivial(1), DirichletChar::trivial(p), 200)));
    QExp b = modify(E, {{p, CycNum::zero(1)}});
    CHECK(b.a[p].is_zero());
    CHECK(b.N == p * p);
  }
  // several primes, against the E_2 polynomial: S_p(p) is 1 - pX, S_p(1) is 1 - X
  QExp m = modify(E, {{2, CycNum::zero(1)}, {3, CycNum::one(1)}, {5, CycNum::from_rat(1, 5)}});
  std::vector<CycNum> w = E.a;
  w = apply_poly_vp(w, 2, CycNum::from_rat(1, 3), CycNum::from_rat(1, 2));
  w = apply_poly_vp(w, 3, CycNum::from_rat(1, 3), CycNum::zero(1));
  w = apply_poly_vp(w, 5, CycNum::one(1), CycNum::zero(1));
  bool ok = true;
  for (size_t n = 0; n < 200; ++n) ok = ok && m.a[n] == w[n];
  CHECK(ok);
  CHECK(same_coeffs(modify(E, {}), E));
  CHECK_THROWS_AS(modify(E, {{3, CycNum::from_rat(1, 3)}}), PreconditionError);
}

TEST_CASE("modify against polynomials in V_p and the constant term") {
  auto pr = primes_upto(7);
  int checked = 0;
  for (auto& [k, e1, e2] : eis_grid(8, 6)) {
    if (k < 2 || !e1.is_primitive() || !e2.is_primitive()) continue;
    QExp E = eisenstein(k, e1, e2, 200);
    std::vector<u64> P;
    for (u64 p : pr)
      if (E.N % p) P.push_back(p);
    // subsets of size <= 2
    std::vector<std::vector<u64>> subsets{{}};
    for (size_t i = 0; i < P.size(); ++i) {
      subsets.push_back({P[i]});
      for (size_t j = i + 1; j < P.size(); ++j) subsets.push_back({P[i], P[j]});
    }
    for (auto& S : subsets) {
      // every choice of b_p in {0, e1(p), p^{k-1} e2(p)}
      size_t total = 1;
      for (size_t i = 0; i < S.size(); ++i) total *= 3;
      for (size_t code = 0; code < total; ++code) {
        std::map<u64, CycNum> b;
        std::vector<CycNum> w = E.a;
        size_t c = code;
        for (u64 p : S) {
          int choice = c % 3;
          c /= 3;
          CycNum one_p = e1.value((i64)p), two_p = pk1(p, k) * e2.value((i64)p);
          CycNum eps, delta;
          if (choice == 0) {
            b[p] = CycNum::zero(1);
            eps = one_p + two_p;
            delta = one_p * two_p;
          } else if (choice == 1) {
            b[p] = one_p;
            eps = two_p;
            delta = CycNum::zero(1);
          } else {
            b[p] = two_p;
            eps = one_p;
            delta = CycNum::zero(1);
          }
          w = apply_poly_vp(w, p, eps, delta);
        }
        if (k == 2 && e1.is_trivial() && e2.is_trivial()) continue;
        QExp m = modify(E, b);
        bool ok = true;
        for (size_t n = 0; n < 200; ++n) ok = ok && m.a[n] == w[n];
        CHECK_MESSAGE(ok, k << " " << e1.label() << " " << e2.label() << " code " << code);
        for (auto& [p, bp] : b) CHECK(m.a[p] == bp);
        CHECK(modified_constant(k, e1, e2, b) == m.a[0]);
        ++checked;
      }
    }
  }
  CHECK(checked > 100);
  // explicit cases
  auto one = DirichletChar::trivial(1);
  DirichletChar x4 = DirichletChar::conrey(4, 3);
  CHECK(modified_constant(3, x4, one, {{3, CycNum::one(1)}}).is_zero());
  CHECK(modified_constant(4, one, one, {{5, CycNum::zero(1)}}).is_zero());
  CycNum want = (Rat(-1, 8) * gen_bernoulli(4, one)) * CycNum::from_rat(1, 1 - 27);
  CHECK(modified_constant(4, one, one, {{3, CycNum::one(1)}}) == want);
}
