#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mfred/dirichlet.hpp"

using namespace mfred;

namespace {

// Smallest d | q such that chi is trivial on units = 1 mod d.
u64 brute_conductor(const DirichletChar& chi) {
  u64 q = chi.modulus();
  for (u64 d : divisors(q)) {
    bool ok = true;
    for (u64 n = 1; n < q && ok; n += d)
      if (gcd_u64(n, q) == 1 && chi.value((i64)n) != CycNum::one(1)) ok = false;
    if (ok) return d;
  }
  return q;
}

bool is_pow_of(u64 n, u64 l) {
  while (n % l == 0) n /= l;
  return n == 1;
}

}  // namespace

TEST_CASE("values") {
  DirichletChar e = DirichletChar::conrey(7, 3);
  CHECK(e.value(-1) == CycNum::from_rat(1, -1));
  CHECK(e.value(3) == CycNum::zeta(6, 1));
  CHECK(e.value(14).is_zero());
  CHECK(DirichletChar::trivial(1).value(12345) == CycNum::one(1));
  DirichletChar chi4 = DirichletChar::conrey(4, 3);
  CHECK(chi4.value(3) == CycNum::from_rat(1, -1));
  CHECK(chi4.value(2).is_zero());
  CHECK(e.order() == 6);
}

TEST_CASE("Conrey conventions") {
  CHECK_FALSE(DirichletChar::conrey(8, 3).is_even());
  CHECK(DirichletChar::conrey(8, 3).conductor() == 8);
  CHECK(DirichletChar::conrey(8, 5).is_even());
  CHECK(DirichletChar::conrey(8, 5).conductor() == 8);
  CHECK(DirichletChar::conrey(8, 7).conductor() == 4);
  CHECK(DirichletChar::conrey(9, 4).order() == 3);
  CHECK(DirichletChar::conrey(9, 8).conductor() == 3);
  CHECK(DirichletChar::conrey(5, 2).order() == 4);
  CHECK_FALSE(DirichletChar::conrey(5, 2).is_even());
  CHECK_THROWS_AS(DirichletChar::conrey(12, 4), PreconditionError);
  for (u64 q = 1; q <= 100; ++q)
    for (u64 a = 1; a <= q; ++a) {
      if (gcd_u64(a, q) != 1) continue;
      DirichletChar c = DirichletChar::conrey(q, a);
      CHECK(c.conrey_index() == (q == 1 ? 1 : a % q));
      // Conrey reciprocity: chi_a(b) = chi_b(a)
      for (u64 b = 1; b < q; b += 7)
        if (gcd_u64(b, q) == 1)
          CHECK(c.value((i64)b) == DirichletChar::conrey(q, b).value((i64)a));
    }
}

TEST_CASE("conductors and primitive parts") {
  CHECK(DirichletChar::trivial(12).conductor() == 1);
  CHECK(DirichletChar::conrey(7, 3).conductor() == 7);
  for (auto& c : enumerate_chars(9))
    if (c.order() == 3) CHECK(c.conductor() == 9);
  for (u64 q = 1; q <= 64; ++q)
    for (auto& c : enumerate_chars(q)) {
      CHECK(c.conductor() == brute_conductor(c));
      DirichletChar p = c.primitive_part();
      CHECK(p.modulus() == c.conductor());
      CHECK(p.is_primitive());
      CHECK(p.induce(q) == c);
    }
}

TEST_CASE("p-parts") {
  DirichletChar c = DirichletChar::conrey(12, 11);
  CHECK(c.p_part(2) == DirichletChar::conrey(4, 3));
  CHECK(c.p_part(3) == DirichletChar::conrey(3, 2));
  CHECK(DirichletChar::conrey(7, 3).p_part(2) == DirichletChar::trivial(1));
  CHECK(DirichletChar::trivial(30).p_part(5) == DirichletChar::trivial(5));
  for (u64 q = 1; q <= 100; ++q)
    for (auto& chi : enumerate_chars(q)) {
      DirichletChar prod = DirichletChar::trivial(1);
      for (u64 p : prime_divisors(q)) prod = prod * chi.p_part(p);
      CHECK(prod.induce(q) == chi);
    }
}

TEST_CASE("multiplicativity and orthogonality") {
  std::mt19937_64 rng(2);
  for (u64 q = 1; q <= 100; ++q) {
    auto cs = enumerate_chars(q);
    CHECK(cs.size() == euler_phi(q));
    for (int t = 0; t < 10; ++t) {
      const auto& chi = cs[rng() % cs.size()];
      i64 m = (i64)(rng() % 1000) - 500, n = (i64)(rng() % 1000);
      CHECK(chi.value(m * n) == chi.value(m) * chi.value(n));
    }
    if (q <= 60)
      for (auto& chi : cs) {
        CycNum s = CycNum::zero(chi.exponent());
        for (u64 n = 0; n < q; ++n) s = s + chi.value((i64)n);
        if (chi.is_trivial())
          CHECK(s == CycNum::from_rat(1, euler_phi(q)));
        else
          CHECK(s.is_zero());
      }
  }
}

TEST_CASE("Teichmueller components") {
  DirichletChar e = DirichletChar::conrey(7, 3);
  CHECK(teichmueller_component(e, 2).first == DirichletChar::conrey(7, 4));
  CHECK(teichmueller_component(e, 3).first == DirichletChar::conrey(7, 6));
  CHECK(teichmueller_component(e, 5).first == e);
  for (u64 q = 1; q <= 60; ++q)
    for (auto& chi : enumerate_chars(q))
      for (u64 l : {2, 3, 5, 7}) {
        auto [a, b] = teichmueller_component(chi, l);
        CHECK(a.order() % l != 0);
        CHECK(is_pow_of(b.order(), l));
        CHECK(a * b == chi);
      }
}

TEST_CASE("primitive pairs") {
  auto r35 = enumerate_primitive_pairs(35, DirichletChar::trivial(35));
  REQUIRE(r35.size() == 1);
  CHECK(r35[0].first.is_trivial());
  CHECK(r35[0].second.is_trivial());

  auto r7 = enumerate_primitive_pairs(7, DirichletChar::conrey(7, 3));
  REQUIRE(r7.size() == 2);
  CHECK(r7[0].first == DirichletChar::trivial(1));
  CHECK(r7[0].second == DirichletChar::conrey(7, 3));
  CHECK(r7[1].first == DirichletChar::conrey(7, 3));
  CHECK(r7[1].second == DirichletChar::trivial(1));

  CHECK(enumerate_primitive_pairs(1, DirichletChar::trivial(1)).size() == 1);

  // swap symmetry
  for (u64 N : {12, 36, 45, 63, 100})
    for (auto& eps : enumerate_chars(N)) {
      auto ps = enumerate_primitive_pairs(N, eps);
      for (auto& [a, b] : ps) {
        bool found = false;
        for (auto& [c, d] : ps)
          if (c == b && d == a) found = true;
        CHECK(found);
        CHECK((a * b).same_primitive(eps));
        CHECK(N % (a.conductor() * b.conductor()) == 0);
      }
    }
}

TEST_CASE("parsing") {
  CHECK(parse_char("eps7(6)") == DirichletChar::conrey(7, 6));
  CHECK(parse_char("35.1") == DirichletChar::trivial(35));
  CHECK(parse_char("1") == DirichletChar::trivial(1));
  CHECK(DirichletChar::conrey(7, 3).label() == "7.3");
  CHECK_THROWS_AS(parse_char("eps7"), DataError);
  CHECK_THROWS_AS(parse_char("12.4"), DataError);
}
