#include "mfred/cyclo.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "mfred/numfield.hpp"

namespace mfred {

namespace {

std::mutex g_mu;
std::map<u64, QPoly> g_phi;

struct PowTable {
  u64 n, phi;
  std::vector<std::vector<mpz_class>> z;  // z[j] = coordinates of zeta^j, j < n
};
std::map<u64, std::shared_ptr<const PowTable>> g_tab;

QPoly cyclo_locked(u64 n) {
  auto it = g_phi.find(n);
  if (it != g_phi.end()) return it->second;
  // x^n - 1 divided by Phi_d for proper divisors d
  QPoly r = QPoly::monomial(n) - QPoly::constant(1);
  for (u64 d : divisors(n))
    if (d != n) r = r / cyclo_locked(d);
  g_phi[n] = r;
  return r;
}

std::shared_ptr<const PowTable> table(u64 n) {
  std::lock_guard<std::mutex> lk(g_mu);
  auto it = g_tab.find(n);
  if (it != g_tab.end()) return it->second;
  QPoly ph = cyclo_locked(n);
  auto t = std::make_shared<PowTable>();
  t->n = n;
  t->phi = ph.deg();
  std::vector<mpz_class> cur(t->phi, 0);
  cur[0] = 1;
  for (u64 j = 0; j < n; ++j) {
    t->z.push_back(cur);
    // multiply by z and reduce with the monic Phi_n
    mpz_class top = cur[t->phi - 1];
    for (u64 i = t->phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (u64 i = 0; i < t->phi; ++i) cur[i] -= top * mpz_class(ph.c[i].get_num());
  }
  g_tab[n] = t;
  return t;
}

}  // namespace

QPoly cyclotomic_poly(u64 n) {
  if (n == 0) throw PreconditionError("cyclotomic_poly: n must be positive");
  std::lock_guard<std::mutex> lk(g_mu);
  return cyclo_locked(n);
}

CycNum CycNum::zero(u64 n) {
  CycNum r;
  r.n = n;
  r.c.assign(euler_phi(n), Rat(0));
  return r;
}

CycNum CycNum::from_rat(u64 n, const Rat& q) {
  CycNum r = zero(n);
  r.c[0] = q;
  return r;
}

CycNum CycNum::zeta(u64 n, i64 j) {
  auto t = table(n);
  CycNum r;
  r.n = n;
  const auto& v = t->z[(u64)mod_floor(j, (i64)n)];
  r.c.assign(v.begin(), v.end());
  return r;
}

CycNum CycNum::from_exponent_sums(u64 n, const std::vector<mpz_class>& s) {
  auto t = table(n);
  std::vector<mpz_class> acc(t->phi, 0);
  for (u64 j = 0; j < n && j < s.size(); ++j) {
    if (s[j] == 0) continue;
    if (j < t->phi) {
      acc[j] += s[j];
      continue;
    }
    const auto& v = t->z[j];
    for (u64 i = 0; i < t->phi; ++i)
      if (v[i] != 0) acc[i] += s[j] * v[i];
  }
  CycNum r;
  r.n = n;
  r.c.assign(acc.begin(), acc.end());
  return r;
}

bool CycNum::is_zero() const {
  for (auto& x : c)
    if (x != 0) return false;
  return true;
}

bool CycNum::is_rational() const {
  for (size_t i = 1; i < c.size(); ++i)
    if (c[i] != 0) return false;
  return true;
}

Rat CycNum::to_rat() const {
  if (!is_rational()) throw PreconditionError("cyclotomic number is not rational");
  return c[0];
}

CycNum CycNum::lift(u64 m) const {
  if (m == n) return *this;
  if (m % n) throw PreconditionError("CycNum::lift: order does not divide target");
  if (is_rational()) return from_rat(m, c[0]);
  auto t = table(m);
  u64 step = m / n;
  CycNum r = zero(m);
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    const auto& v = t->z[(i * step) % m];
    for (u64 k = 0; k < t->phi; ++k)
      if (v[k] != 0) r.c[k] += c[i] * v[k];
  }
  return r;
}

CycNum CycNum::galois(u64 a) const {
  if (gcd_u64(a % n, n) != 1 && n > 1) throw PreconditionError("galois: exponent not a unit");
  if (is_rational()) return *this;
  auto t = table(n);
  CycNum r = zero(n);
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    const auto& v = t->z[mulmod(i, a % n, n)];
    for (u64 k = 0; k < t->phi; ++k)
      if (v[k] != 0) r.c[k] += c[i] * v[k];
  }
  return r;
}

CycNum CycNum::conj() const { return galois(n - 1 == 0 ? 1 : n - 1); }

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& x : r.c) x = -x;
  return r;
}

CycNum operator+(const CycNum& a, const CycNum& b) {
  if (a.n != b.n) {
    u64 m = lcm_u64(a.n, b.n);
    return a.lift(m) + b.lift(m);
  }
  CycNum r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

CycNum operator-(const CycNum& a, const CycNum& b) { return a + (-b); }

CycNum operator*(const Rat& s, const CycNum& a) {
  CycNum r = a;
  for (auto& x : r.c) x *= s;
  return r;
}

CycNum operator*(const CycNum& a, const CycNum& b) {
  if (a.n != b.n) {
    u64 m = lcm_u64(a.n, b.n);
    return a.lift(m) * b.lift(m);
  }
  if (a.is_rational()) return a.c[0] * b;
  if (b.is_rational()) return b.c[0] * a;
  u64 n = a.n;
  auto t = table(n);
  size_t ph = a.c.size();
  std::vector<Rat> prod(2 * ph - 1, Rat(0));
  for (size_t i = 0; i < ph; ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < ph; ++j)
      if (b.c[j] != 0) prod[i + j] += a.c[i] * b.c[j];
  }
  CycNum r = CycNum::zero(n);
  for (size_t e = 0; e < prod.size(); ++e) {
    if (prod[e] == 0) continue;
    if (e < ph) {
      r.c[e] += prod[e];
      continue;
    }
    const auto& v = t->z[e % n];
    for (size_t k = 0; k < ph; ++k)
      if (v[k] != 0) r.c[k] += prod[e] * v[k];
  }
  return r;
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.n == b.n) return a.c == b.c;
  u64 m = lcm_u64(a.n, b.n);
  return a.lift(m).c == b.lift(m).c;
}

std::string CycNum::str() const {
  if (is_rational()) return c[0].get_str();
  return QPoly(c).str("z" + std::to_string(n));
}

CycNum pow(const CycNum& a, u64 e) {
  CycNum r = CycNum::one(a.n), b = a;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Rat cyc_norm(const CycNum& x) {
  if (x.is_zero()) return 0;
  if (x.n <= 2) return x.c[0];
  return resultant(cyclotomic_poly(x.n), x.as_poly());
}

QPoly cyc_charpoly(const CycNum& x) {
  size_t ph = x.c.size();
  RatMat m(ph, std::vector<Rat>(ph, Rat(0)));
  for (size_t j = 0; j < ph; ++j) {
    CycNum col = x * CycNum::zeta(x.n, (i64)j);
    for (size_t i = 0; i < ph; ++i) m[i][j] = col.c[i];
  }
  return charpoly_matrix(m);
}

}  // namespace mfred
