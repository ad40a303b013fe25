#include "mfred/poly.hpp"

#include <cctype>
#include <sstream>

namespace mfred {

QPoly QPoly::monomial(size_t d, const Rat& a) {
  std::vector<Rat> v(d + 1, Rat(0));
  v[d] = a;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Rat QPoly::eval(const Rat& x) const {
  Rat r = 0;
  for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  Rat inv = 1 / lc();
  return inv * *this;
}

QPoly QPoly::derivative() const {
  std::vector<Rat> v;
  for (size_t i = 1; i < c.size(); ++i) v.push_back(c[i] * (int)i);
  return QPoly(std::move(v));
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rat> v(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) v[i] += b.c[i];
  return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& x : r.c) x = -x;
  return r;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  std::vector<Rat> v(a.c.size() + b.c.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
  }
  return QPoly(std::move(v));
}

QPoly operator*(const Rat& s, const QPoly& a) {
  if (s == 0) return QPoly();
  QPoly r = a;
  for (auto& x : r.c) x *= s;
  return r;
}

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  r = a;
  if (a.deg() < b.deg()) {
    q = QPoly();
    return;
  }
  std::vector<Rat> qc(a.deg() - b.deg() + 1, Rat(0));
  Rat inv = 1 / b.lc();
  while (!r.is_zero() && r.deg() >= b.deg()) {
    int s = r.deg() - b.deg();
    Rat t = r.lc() * inv;
    qc[s] = t;
    for (int i = 0; i <= b.deg(); ++i) r.c[s + i] -= t * b.c[i];
    r.c.pop_back();
    r.trim();
  }
  q = QPoly(std::move(qc));
}

QPoly operator%(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  divmod(a, b, q, r);
  return r;
}

QPoly operator/(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  divmod(a, b, q, r);
  return q;
}

QPoly gcd(const QPoly& a0, const QPoly& b0) {
  QPoly a = a0, b = b0;
  while (!b.is_zero()) {
    QPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Euclid over Q:
//   res(a,b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} res(b, r),  r = a mod b.
namespace {
// primitive integer polynomial and the rational factor removed: a = s * A
std::vector<mpz_class> integralize(const QPoly& a, Rat& s) {
  mpz_class den = 1, g = 0;
  for (auto& x : a.c) den = lcm(den, mpz_class(x.get_den()));
  std::vector<mpz_class> r(a.c.size());
  for (size_t i = 0; i < r.size(); ++i) {
    r[i] = a.c[i].get_num() * (den / a.c[i].get_den());
    g = gcd(g, r[i]);
  }
  for (auto& x : r) x /= g;
  s = Rat(g, den);
  s.canonicalize();
  return r;
}

u64 res_mod_p(std::vector<u64> a, std::vector<u64> b, u64 p) {
  auto trim = [](std::vector<u64>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  u64 acc = 1;
  while (true) {
    if (b.empty()) return 0;
    size_t da = a.size() - 1, db = b.size() - 1;
    if (db == 0) return mulmod(acc, powmod(b[0], da, p), p);
    // r = a mod b
    u64 inv = invmod(b.back(), p);
    std::vector<u64> r = a;
    for (size_t i = r.size(); i-- > db;) {
      u64 q = mulmod(r[i], inv, p);
      if (!q) continue;
      for (size_t j = 0; j <= db; ++j) {
        u64 t = mulmod(q, b[j], p);
        u64& x = r[i - db + j];
        x = x >= t ? x - t : x + p - t;
      }
    }
    r.resize(db);
    trim(r);
    if (r.empty()) return 0;
    size_t dr = r.size() - 1;
    if ((da & 1) && (db & 1)) acc = acc ? p - acc : 0;
    acc = mulmod(acc, powmod(b.back(), da - dr, p), p);
    a = std::move(b);
    b = std::move(r);
  }
}
}  // namespace

// Multi-modular: Res of the primitive integer parts modulo 62-bit primes up to
// the Hadamard bound, then rescaled.
Rat resultant(const QPoly& a0, const QPoly& b0) {
  if (a0.is_zero() || b0.is_zero()) return 0;
  int da = a0.deg(), db = b0.deg();
  if (da == 0 && db == 0) return 1;
  Rat sa, sb;
  auto A = integralize(a0, sa), B = integralize(b0, sb);
  Rat scale = 1;
  for (int i = 0; i < db; ++i) scale *= sa;
  for (int i = 0; i < da; ++i) scale *= sb;
  auto norm2 = [](const std::vector<mpz_class>& v) {
    mpz_class s = 0;
    for (auto& x : v) s += x * x;
    return s;
  };
  // |Res|^2 <= |A|^(2 db) |B|^(2 da)
  mpz_class na = norm2(A), nb = norm2(B), bound2, t;
  mpz_pow_ui(bound2.get_mpz_t(), na.get_mpz_t(), db);
  mpz_pow_ui(t.get_mpz_t(), nb.get_mpz_t(), da);
  bound2 *= t;
  mpz_class bound = sqrt(bound2) + 1;
  mpz_class M = 1, R = 0;
  mpz_class pz = mpz_class(1) << 62;
  while (M <= 2 * bound) {
    do pz -= 1;
    while (!mpz_probab_prime_p(pz.get_mpz_t(), 30));
    u64 p = pz.get_ui();
    mpz_class lca = A.back() % p, lcb = B.back() % p;
    if (lca == 0 || lcb == 0) continue;
    std::vector<u64> ap(A.size()), bp(B.size());
    for (size_t i = 0; i < A.size(); ++i) {
      mpz_class r = A[i] % p;
      if (r < 0) r += p;
      ap[i] = r.get_ui();
    }
    for (size_t i = 0; i < B.size(); ++i) {
      mpz_class r = B[i] % p;
      if (r < 0) r += p;
      bp[i] = r.get_ui();
    }
    u64 rp = res_mod_p(ap, bp, p);
    // CRT: R <- R + M * ((rp - R) / M mod p)
    mpz_class d = (mpz_class(rp) - R) % p;
    if (d < 0) d += p;
    mpz_class mi;
    mpz_class pp(p);
    mpz_invert(mi.get_mpz_t(), mpz_class(M % pp).get_mpz_t(), pp.get_mpz_t());
    d = d * mi % pp;
    R += M * d;
    M *= pp;
  }
  if (R > M / 2) R -= M;
  return scale * Rat(R);
}

Rat discriminant(const QPoly& a) {
  int n = a.deg();
  Rat r = resultant(a, a.derivative()) / a.lc();
  if ((n * (n - 1) / 2) & 1) r = -r;
  return r;
}

std::string QPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    Rat a = c[i];
    bool neg = a < 0;
    if (neg) a = -a;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? "-" : "+");
    first = false;
    if (i == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

namespace {
struct PolyParser {
  const std::string& s;
  const std::string& var;
  size_t i = 0;
  void ws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw DataError("cannot parse polynomial '" + s + "': " + why);
  }
  Rat number() {
    size_t st = i;
    while (i < s.size() && (std::isdigit((unsigned char)s[i]) || s[i] == '/')) ++i;
    if (st == i) fail("expected number");
    return parse_rat(s.substr(st, i - st));
  }
  QPoly term() {
    ws();
    Rat coef = 1;
    bool have = false;
    if (i < s.size() && std::isdigit((unsigned char)s[i])) {
      coef = number();
      have = true;
      ws();
      if (i < s.size() && s[i] == '*') {
        ++i;
        ws();
      } else if (!(i < s.size() && s.compare(i, var.size(), var) == 0)) {
        return QPoly::constant(coef);
      }
    }
    if (s.compare(i, var.size(), var) == 0) {
      i += var.size();
      ws();
      size_t e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        ws();
        Rat ex = number();
        if (ex.get_den() != 1 || ex < 0) fail("bad exponent");
        e = ex.get_num().get_ui();
      }
      return QPoly::monomial(e, coef);
    }
    if (have) return QPoly::constant(coef);
    fail("unexpected character");
  }
  QPoly parse() {
    QPoly acc;
    ws();
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
    acc = neg ? -term() : term();
    while (true) {
      ws();
      if (i >= s.size()) break;
      if (s[i] != '+' && s[i] != '-') fail("expected + or -");
      bool n = s[i++] == '-';
      QPoly t = term();
      acc = n ? acc - t : acc + t;
    }
    return acc;
  }
};
}  // namespace

QPoly parse_poly(const std::string& s, const std::string& var) {
  PolyParser p{s, var};
  return p.parse();
}

}  // namespace mfred
