#include "mfred/common.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <tuple>

namespace mfred {

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }
u64 lcm_u64(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((unsigned __int128)a * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 m) {
  i64 t = 0, nt = 1;
  i64 r = (i64)m, nr = (i64)(a % m);
  while (nr) {
    i64 q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw PreconditionError("invmod: not invertible");
  return (u64)(t < 0 ? t + (i64)m : t);
}

i64 mod_floor(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

std::vector<std::pair<u64, int>> factor_u64(u64 n) {
  std::vector<std::pair<u64, int>> out;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (auto& [p, e] : factor_u64(n)) out.push_back(p);
  return out;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> ds{1};
  for (auto& [p, e] : factor_u64(n)) {
    size_t s = ds.size();
    u64 pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < s; ++j) ds.push_back(ds[j] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

std::vector<u64> primes_upto(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<bool> comp(n + 1, false);
  for (u64 i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= n; j += i) comp[j] = true;
  }
  return out;
}

u64 euler_phi(u64 n) {
  u64 r = n;
  for (auto& [p, e] : factor_u64(n)) r = r / p * (p - 1);
  return r;
}

int valuation(u64 n, u64 p) {
  if (n == 0) return 1 << 20;
  int v = 0;
  while (n % p == 0) n /= p, ++v;
  return v;
}

u64 ipow(u64 b, unsigned e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

u64 prime_to_part(u64 n, u64 p) {
  while (n % p == 0) n /= p;
  return n;
}

u64 multiplicative_order(u64 a, u64 m) {
  if (m == 1) return 1;
  if (gcd_u64(a, m) != 1) throw PreconditionError("multiplicative_order: not a unit");
  u64 o = euler_phi(m);
  for (auto& [q, e] : factor_u64(o)) {
    for (int i = 0; i < e && o % q == 0 && powmod(a, o / q, m) == 1; ++i) o /= q;
  }
  return o;
}

u64 primitive_root_prime_power(u64 p, int) {
  // the least primitive root mod p^2 generates mod every power of p
  u64 mod = p * p;
  u64 phi = mod / p * (p - 1);
  auto qs = prime_divisors(phi);
  for (u64 g = 2; g < mod; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (u64 q : qs)
      if (powmod(g, phi / q, mod) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw InvariantError("no primitive root");
}

u64 floor_rat(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  if (q < 0) return 0;
  return q.get_ui();
}

std::string rat_str(const Rat& r) { return r.get_str(); }

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw DataError("empty rational");
  Rat r;
  for (char c : s)
    if (!(std::isdigit((unsigned char)c) || c == '-' || c == '/' || c == '+'))
      throw DataError("malformed rational '" + s + "'");
  std::string t = s[0] == '+' ? s.substr(1) : s;
  if (r.set_str(t, 10) != 0) throw DataError("malformed rational '" + s + "'");
  if (r.get_den() == 0) throw DataError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace mfred
