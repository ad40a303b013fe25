#include "mfred/specialvals.hpp"

#include <map>
#include <mutex>

namespace mfred {

namespace {
std::mutex g_mu;
std::vector<Rat> g_bern{Rat(1)};

Rat binom(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rat(r);
}
}  // namespace

Rat bernoulli_number(unsigned j) {
  std::lock_guard<std::mutex> lk(g_mu);
  // sum_{i=0}^{n} C(n+1, i) B_i = 0
  while (g_bern.size() <= j) {
    unsigned n = g_bern.size();
    Rat s = 0;
    for (unsigned i = 0; i < n; ++i) s += binom(n + 1, i) * g_bern[i];
    g_bern.push_back(-s / (long)(n + 1));
  }
  return g_bern[j];
}

QPoly bernoulli_poly(unsigned m) {
  std::vector<Rat> c(m + 1);
  for (unsigned j = 0; j <= m; ++j) c[m - j] = binom(m, j) * bernoulli_number(j);
  return QPoly(c);
}

CycNum gen_bernoulli(unsigned m, const DirichletChar& chi) {
  u64 c = chi.modulus(), e = chi.exponent(), o = chi.order();
  QPoly B = bernoulli_poly(m);
  // grouped by the value chi(a) = e(j/o)
  std::vector<Rat> by_angle(o, Rat(0));
  for (u64 a = 1; a <= c; ++a) {
    auto x = chi.expo((i64)a);
    if (!x) continue;
    by_angle[*x / (e / o)] += B.eval(ratio((long)a, (long)c));
  }
  mpz_class cm;
  mpz_ui_pow_ui(cm.get_mpz_t(), c, m == 0 ? 0 : m - 1);
  Rat scale = m == 0 ? Rat(1) / Rat((long)c) : Rat(cm);
  CycNum r = CycNum::zero(o);
  for (u64 j = 0; j < o; ++j)
    if (by_angle[j] != 0) r = r + (scale * by_angle[j]) * CycNum::zeta(o, (i64)j);
  return r;
}

u64 von_staudt_denominator(unsigned m) {
  if (m < 2 || m % 2) throw PreconditionError("von Staudt-Clausen needs an even m >= 2");
  u64 d = 1;
  for (u64 l : primes_upto(m + 1))
    if (m % (l - 1) == 0) d *= l;
  return d;
}

CycNum gauss_sum(const DirichletChar& chi) {
  if (!chi.is_primitive()) throw PreconditionError("Gauss sum needs a primitive character");
  u64 c = chi.modulus(), o = chi.order(), e = chi.exponent();
  u64 L = lcm_u64(c, o);
  std::vector<mpz_class> s(L, 0);
  for (u64 n = 1; n <= c; ++n) {
    auto x = chi.expo((i64)n);
    if (!x) continue;
    // chi(n) = e(x/e) = e(x'/o)
    u64 xp = *x / (e / o);
    s[(xp * (L / o) + n * (L / c)) % L] += 1;
  }
  return CycNum::from_exponent_sums(L, s);
}

}  // namespace mfred
