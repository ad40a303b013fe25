#include "mfred/intfactor.hpp"

#include <algorithm>
#include <map>

namespace mfred {

namespace {

bool is_probable_prime(const mpz_class& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

// Brent's cycle variant with batched gcds; f(x) = x^2 + c.
mpz_class brent(const mpz_class& n, unsigned long c) {
  mpz_class y = 2, x, ys, q = 1, g = 1, t;
  const unsigned long m = 128;
  unsigned long r = 1;
  auto f = [&](mpz_class& v) {
    v = v * v + c;
    v %= n;
  };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      unsigned long lim = std::min(m, r - k);
      for (unsigned long i = 0; i < lim; ++i) {
        f(y);
        t = x - y;
        q = (q * abs(t)) % n;
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
    if (r > (1UL << 26)) return 0;
  }
  if (g == n) {
    do {
      f(ys);
      t = x - ys;
      g = gcd(abs(t), n);
    } while (g == 1);
  }
  return g;
}

void split(const mpz_class& n, std::map<mpz_class, int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out[n]++;
    return;
  }
  for (unsigned long c = 1; c < 64; ++c) {
    mpz_class g = brent(n, c);
    if (g != 0 && g != n && g != 1) {
      split(g, out);
      split(n / g, out);
      return;
    }
  }
  throw InvariantError("integer factorization failed for " + n.get_str());
}

}  // namespace

std::vector<std::pair<mpz_class, int>> factor_mpz(const mpz_class& n0) {
  if (n0 == 0) throw PreconditionError("cannot factor zero");
  mpz_class n = abs(n0);
  std::map<mpz_class, int> out;
  for (unsigned long p = 2; p <= 1000000; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      int e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++e;
      }
      out[mpz_class(p)] = e;
    }
    if (n == 1) break;
    if (mpz_class(p) * p > n) {
      out[n]++;
      n = 1;
      break;
    }
  }
  split(n, out);
  return {out.begin(), out.end()};
}

std::vector<mpz_class> prime_factors_mpz(const mpz_class& n) {
  std::vector<mpz_class> r;
  for (auto& [p, e] : factor_mpz(n)) r.push_back(p);
  return r;
}

}  // namespace mfred
