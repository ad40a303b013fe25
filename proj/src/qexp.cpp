#include "mfred/qexp.hpp"

#include "mfred/specialvals.hpp"

namespace mfred {

namespace {

// chi(n) = e(x / L) for L a multiple of ord chi
std::optional<u64> expo_in(const DirichletChar& chi, i64 n, u64 L) {
  auto x = chi.expo(n);
  if (!x) return std::nullopt;
  u64 e = chi.exponent(), o = chi.order();
  return (*x / (e / o)) * (L / o) % L;
}

CycNum value_in(const DirichletChar& chi, i64 n, u64 L) {
  auto x = expo_in(chi, n, L);
  if (!x) return CycNum::zero(L);
  return CycNum::zeta(L, (i64)*x);
}

mpz_class pow_ui(u64 b, unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

QExp with_coeffs(const QExp& meta, std::vector<CycNum> a) {
  QExp r = meta;
  r.a = std::move(a);
  return r;
}

// common field for two series
void align(QExp& f, QExp& g) {
  u64 m = lcm_u64(f.L, g.L);
  f = f.lift(m);
  g = g.lift(m);
}

}  // namespace

const CycNum& QExp::coeff(u64 n) const {
  if (n >= a.size()) throw InsufficientCoefficients(n + 1, a.size());
  return a[n];
}

CycNum QExp::char_at(u64 p) const {
  if (N % p == 0) return CycNum::zero(L);
  return value_in(chi, (i64)p, lcm_u64(L, chi.order()));
}

QExp QExp::lift(u64 m) const {
  if (m == L) return *this;
  QExp r = *this;
  r.L = m;
  for (auto& x : r.a) x = x.lift(m);
  return r;
}

QExp QExp::truncate(size_t n) const {
  if (n > a.size()) throw InsufficientCoefficients(n, a.size());
  QExp r = *this;
  r.a.resize(n);
  return r;
}

QExp qexp_constant(const CycNum& c, size_t prec, int k) {
  QExp r;
  r.k = k;
  r.L = c.n;
  r.a.assign(prec, CycNum::zero(c.n));
  if (prec) r.a[0] = c;
  return r;
}

QExp eisenstein(int k, const DirichletChar& e1, const DirichletChar& e2, size_t prec) {
  if (k < 1) throw PreconditionError("Eisenstein series need k >= 1");
  bool even = e1.is_even() == e2.is_even();
  if (even != (k % 2 == 0)) throw PreconditionError("Eisenstein series: parity mismatch");
  bool e2case = k == 2 && e1.is_trivial() && e2.is_trivial();
  if (e2case) {
    if (e1.modulus() != 1 || !is_prime_u64(e2.modulus()))
      throw PreconditionError("E_2^{1,1}: need conductors 1 and a prime");
  } else if (!e1.is_primitive() || !e2.is_primitive()) {
    throw PreconditionError("Eisenstein series need primitive characters");
  }
  u64 L = lcm_u64(e1.order(), e2.order());
  QExp r;
  r.k = k;
  r.N = e1.modulus() * e2.modulus();
  r.chi = (e1 * e2).induce(r.N);
  r.L = L;
  // sigma via a sieve over (d, n/d), grouped by root of unity
  std::vector<std::vector<mpz_class>> s(prec);
  for (u64 d = 1; d < prec; ++d) {
    auto x2 = expo_in(e2, (i64)d, L);
    if (!x2) continue;
    mpz_class dk = pow_ui(d, k - 1);
    for (u64 m = 1; d * m < prec; ++m) {
      auto x1 = expo_in(e1, (i64)m, L);
      if (!x1) continue;
      auto& v = s[d * m];
      if (v.empty()) v.assign(L, 0);
      v[(*x1 + *x2) % L] += dk;
    }
  }
  r.a.assign(prec, CycNum::zero(L));
  for (u64 n = 1; n < prec; ++n)
    if (!s[n].empty()) r.a[n] = CycNum::from_exponent_sums(L, s[n]);
  if (prec) {
    CycNum c = CycNum::zero(L);
    if (e2case) {
      c = CycNum::from_rat(L, Rat((long)e2.modulus() - 1) / 24);
    } else if ((k >= 2 && !e1.is_trivial()) ||
               (k == 1 && !e1.is_trivial() && !e2.is_trivial())) {
      // zero
    } else {
      DirichletChar prod = e1 * e2;
      c = (Rat(-1) / (2 * k)) * gen_bernoulli(k, prod).lift(L);
    }
    r.a[0] = c;
  }
  return r;
}

QExp e2(size_t prec) {
  QExp r;
  r.k = 2;
  r.quasi = true;
  r.a.assign(prec, CycNum::zero(1));
  if (prec) r.a[0] = CycNum::from_rat(1, Rat(-1, 24));
  for (u64 d = 1; d < prec; ++d)
    for (u64 n = d; n < prec; n += d) r.a[n].c[0] += (long)d;
  return r;
}

QExp theta(const QExp& g) {
  std::vector<CycNum> a(g.prec());
  for (size_t n = 0; n < a.size(); ++n) a[n] = Rat((long)n) * g.a[n];
  QExp r = with_coeffs(g, std::move(a));
  r.k = g.k + 2;
  return r;
}

QExp v_op(u64 n, const QExp& g) {
  if (n == 0) throw PreconditionError("V_0 is undefined");
  size_t prec = g.prec() * n;
  std::vector<CycNum> a(prec, CycNum::zero(g.L));
  for (size_t m = 0; m < g.prec(); ++m) a[m * n] = g.a[m];
  QExp r = with_coeffs(g, std::move(a));
  r.N = g.N * n;
  r.chi = g.chi.induce(r.N);
  return r;
}

QExp u_op(u64 p, const QExp& g) {
  size_t prec = g.prec() / p;
  std::vector<CycNum> a(prec);
  for (size_t m = 0; m < prec; ++m) a[m] = g.a[m * p];
  return with_coeffs(g, std::move(a));
}

QExp s_op(u64 p, const CycNum& b, const QExp& g) {
  if (b.is_zero()) return g;
  QExp r = g - b * v_op(p, g);
  r.N = g.N * p;
  r.chi = g.chi.induce(r.N);
  return r;
}

QExp hecke_tp(u64 p, const QExp& g) {
  QExp u = u_op(p, g);
  CycNum c = Rat(pow_ui(p, g.k - 1)) * g.char_at(p);
  if (c.is_zero()) return u;
  QExp r = u + c * v_op(p, g);
  r.N = g.N;
  r.chi = g.chi;
  return r;
}

QExp operator+(const QExp& f0, const QExp& g0) {
  QExp f = f0, g = g0;
  align(f, g);
  size_t prec = std::min(f.prec(), g.prec());
  std::vector<CycNum> a(prec);
  for (size_t n = 0; n < prec; ++n) a[n] = f.a[n] + g.a[n];
  QExp r = with_coeffs(f, std::move(a));
  if (f.N != g.N) {
    r.N = lcm_u64(f.N, g.N);
    r.chi = f.chi.induce(lcm_u64(f.chi.modulus(), g.chi.modulus()));
  }
  r.quasi = f.quasi || g.quasi;
  return r;
}

QExp operator*(const CycNum& s, const QExp& g) {
  QExp r = g.lift(lcm_u64(g.L, s.n));
  CycNum t = s.lift(r.L);
  for (auto& x : r.a) x = t * x;
  return r;
}

QExp operator-(const QExp& f, const QExp& g) { return f + CycNum::from_rat(1, -1) * g; }

QExp operator*(const QExp& f0, const QExp& g0) {
  QExp f = f0, g = g0;
  align(f, g);
  size_t prec = std::min(f.prec(), g.prec());
  std::vector<CycNum> a(prec, CycNum::zero(f.L));
  for (size_t i = 0; i < prec; ++i) {
    if (f.a[i].is_zero()) continue;
    for (size_t j = 0; i + j < prec; ++j)
      if (!g.a[j].is_zero()) a[i + j] = a[i + j] + f.a[i] * g.a[j];
  }
  QExp r = with_coeffs(f, std::move(a));
  r.k = f.k + g.k;
  r.N = lcm_u64(f.N, g.N);
  r.chi = (f.chi * g.chi).induce(r.N);
  r.quasi = f.quasi || g.quasi;
  return r;
}

bool same_coeffs(const QExp& f, const QExp& g) {
  size_t prec = std::min(f.prec(), g.prec());
  for (size_t n = 0; n < prec; ++n)
    if (f.a[n] != g.a[n]) return false;
  return true;
}

QExp rankin_cohen(const QExp& g, const QExp& h) {
  QExp r = CycNum::from_rat(1, g.k) * (g * theta(h)) - CycNum::from_rat(1, h.k) * (h * theta(g));
  r.k = g.k + h.k + 2;
  return r;
}

namespace {

// one step of g_P^b at p for an eigenform g
QExp modify_at(const QExp& g, u64 p, const CycNum& b) {
  CycNum ap = g.coeff(p);
  CycNum delta = Rat(pow_ui(p, g.k - 1)) * g.char_at(p);
  if (b == ap) return g;
  CycNum hp = b * b - ap * b + delta;
  if (hp.is_zero()) return s_op(p, ap - b, g);
  if (!b.is_zero()) throw PreconditionError("modify: b_p is not 0, a_p or a Hecke root");
  // Id - a_p V_p + delta V_p^2
  QExp v1 = v_op(p, g);
  QExp r = g - ap * v1 + delta * v_op(p, v1);
  r.N = g.N * p * p;
  r.chi = g.chi.induce(r.N);
  return r;
}

}  // namespace

QExp modify(const QExp& g, const std::map<u64, CycNum>& b) {
  QExp r = g;
  std::map<u64, CycNum> rest = b;
  if (g.quasi && !rest.empty()) {
    auto it = rest.begin();
    while (it != rest.end() && !(it->second.is_zero() || it->second == CycNum::one(1))) ++it;
    if (it == rest.end()) throw PreconditionError("modify: E_2 needs some b_p in {0, 1}");
    u64 p = it->first;
    bool zero = it->second.is_zero();
    rest.erase(it);
    r = s_op(p, CycNum::from_rat(1, (long)p), r);
    r.N = p;
    r.chi = DirichletChar::trivial(p);
    if (zero) {
      r = s_op(p, CycNum::one(1), r);
      r.N = p * p;
      r.chi = DirichletChar::trivial(p * p);
    }
    r.quasi = false;
  }
  for (auto& [p, bp] : rest) r = modify_at(r, p, bp);
  return r;
}

CycNum modified_constant(int k, const DirichletChar& e1, const DirichletChar& e2,
                         const std::map<u64, CycNum>& b) {
  if (!e1.is_trivial()) return CycNum::zero(1);
  CycNum c = (Rat(-1) / (2 * k)) * gen_bernoulli(k, e2);
  for (auto& [p, bp] : b) {
    CycNum t = Rat(pow_ui(p, k - 1)) * value_in(e2, (i64)p, e2.order());
    c = c * bp * (bp - t);
  }
  return c;
}

}  // namespace mfred
