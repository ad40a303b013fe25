#include "mfred/ff.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace mfred {

namespace {
u64 addm(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return s >= p ? s - p : s;
}
u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

mpz_class mpz_pow(u64 p, unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

u64 seed_of(const std::vector<u64>& v) {
  u64 h = 0x9e3779b97f4a7c15ULL;
  for (u64 x : v) h = (h ^ x) * 0x100000001b3ULL + (h >> 29);
  return h;
}
}  // namespace

// ---- F_p[x] ----

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = addm(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, p);
  fp_trim(r);
  return r;
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = subm(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, p);
  fp_trim(r);
  return r;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = addm(r[i + j], mulmod(a[i], b[j], p), p);
  }
  fp_trim(r);
  return r;
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& m, u64 p) {
  if (m.empty()) throw PreconditionError("fp_mod by zero");
  FpPoly r = a;
  fp_trim(r);
  u64 inv = invmod(m.back(), p);
  int dm = (int)m.size() - 1;
  while ((int)r.size() - 1 >= dm && !r.empty()) {
    int s = (int)r.size() - 1 - dm;
    u64 t = mulmod(r.back(), inv, p);
    for (int i = 0; i <= dm; ++i) r[s + i] = subm(r[s + i], mulmod(t, m[i], p), p);
    fp_trim(r);
  }
  return r;
}

FpPoly fp_monic(const FpPoly& a, u64 p) {
  if (a.empty()) return a;
  u64 inv = invmod(a.back(), p);
  FpPoly r = a;
  for (auto& x : r) x = mulmod(x, inv, p);
  return r;
}

FpPoly fp_from_qpoly(const QPoly& a, u64 p) {
  FpPoly r;
  mpz_class P(std::to_string(p));
  for (const Rat& c : a.c) {
    mpz_class den = c.get_den();
    if (den % P == 0) throw IntegralityError("coefficient not integral at " + std::to_string(p));
    mpz_class inv, n = c.get_num();
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
    mpz_class v = n * inv;
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), P.get_mpz_t());
    r.push_back(v.get_ui());
  }
  fp_trim(r);
  return r;
}

std::string fp_str(const FpPoly& a, const std::string& var) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = a.size(); i-- > 0;) {
    if (!a[i]) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || a[i] != 1) os << a[i];
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

// ---- GF ----

GF::GF(u64 p_, FpPoly modulus) : p(p_), mod(std::move(modulus)) {
  fp_trim(mod);
  if (mod.size() < 2) throw PreconditionError("GF modulus must have positive degree");
  mod = fp_monic(mod, p);
  d = (int)mod.size() - 1;
}

mpz_class GF::order() const { return mpz_pow(p, d); }

GF::E GF::one() const {
  E r(d, 0);
  r[0] = 1 % p;
  return r;
}

GF::E GF::from_int(i64 a) const {
  E r(d, 0);
  r[0] = (u64)mod_floor(a % (i64)p, (i64)p);
  return r;
}

GF::E GF::from_fp(const FpPoly& a) const {
  FpPoly r = fp_mod(a, mod, p);
  r.resize(d, 0);
  return r;
}

GF::E GF::gen() const { return from_fp(FpPoly{0, 1}); }

bool GF::is_zero(const E& a) const {
  for (u64 x : a)
    if (x) return false;
  return true;
}

GF::E GF::add(const E& a, const E& b) const {
  E r(d);
  for (int i = 0; i < d; ++i) r[i] = addm(a[i], b[i], p);
  return r;
}

GF::E GF::sub(const E& a, const E& b) const {
  E r(d);
  for (int i = 0; i < d; ++i) r[i] = subm(a[i], b[i], p);
  return r;
}

GF::E GF::neg(const E& a) const { return sub(zero(), a); }

GF::E GF::scale(const E& a, u64 s) const {
  E r(d);
  s %= p;
  for (int i = 0; i < d; ++i) r[i] = mulmod(a[i], s, p);
  return r;
}

GF::E GF::mul(const E& a, const E& b) const {
  if (d == 1) return E{mulmod(a[0], b[0], p)};
  std::vector<u64> t(2 * d - 1, 0);
  for (int i = 0; i < d; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < d; ++j) t[i + j] = addm(t[i + j], mulmod(a[i], b[j], p), p);
  }
  // mod is monic
  for (int k = 2 * d - 2; k >= d; --k) {
    u64 c = t[k];
    if (!c) continue;
    for (int i = 0; i < d; ++i) t[k - d + i] = subm(t[k - d + i], mulmod(c, mod[i], p), p);
    t[k] = 0;
  }
  t.resize(d);
  return t;
}

GF::E GF::pow(const E& a, const mpz_class& e) const {
  if (e < 0) return pow(inv(a), -e);
  E r = one();
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = mul(r, r);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, a);
  }
  return r;
}

GF::E GF::inv(const E& a) const {
  if (is_zero(a)) throw PreconditionError("GF inverse of zero");
  return pow(a, order() - 2);
}

GF::E GF::pth_root(const E& a) const { return pow(a, mpz_pow(p, d - 1)); }

GF::E GF::random(std::mt19937_64& rng) const {
  E r(d);
  std::uniform_int_distribution<u64> dist(0, p - 1);
  for (auto& x : r) x = dist(rng);
  return r;
}

std::string GF::str(const E& a, const std::string& var) const {
  FpPoly t = a;
  fp_trim(t);
  return fp_str(t, var);
}

// ---- GF[x] ----

void gp_trim(const GF& F, GFPoly& a) {
  while (!a.c.empty() && F.is_zero(a.c.back())) a.c.pop_back();
}

GFPoly gp_add(const GF& F, const GFPoly& a, const GFPoly& b) {
  GFPoly r;
  size_t n = std::max(a.c.size(), b.c.size());
  r.c.resize(n, F.zero());
  for (size_t i = 0; i < n; ++i) {
    if (i < a.c.size()) r.c[i] = F.add(r.c[i], a.c[i]);
    if (i < b.c.size()) r.c[i] = F.add(r.c[i], b.c[i]);
  }
  gp_trim(F, r);
  return r;
}

GFPoly gp_sub(const GF& F, const GFPoly& a, const GFPoly& b) {
  GFPoly r;
  size_t n = std::max(a.c.size(), b.c.size());
  r.c.resize(n, F.zero());
  for (size_t i = 0; i < n; ++i) {
    if (i < a.c.size()) r.c[i] = F.add(r.c[i], a.c[i]);
    if (i < b.c.size()) r.c[i] = F.sub(r.c[i], b.c[i]);
  }
  gp_trim(F, r);
  return r;
}

GFPoly gp_mul(const GF& F, const GFPoly& a, const GFPoly& b) {
  GFPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, F.zero());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (F.is_zero(a.c[i])) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
  }
  gp_trim(F, r);
  return r;
}

void gp_divmod(const GF& F, const GFPoly& a, const GFPoly& b, GFPoly& q, GFPoly& r) {
  if (b.is_zero()) throw PreconditionError("GF polynomial division by zero");
  r = a;
  gp_trim(F, r);
  q.c.clear();
  if (r.deg() < b.deg()) return;
  q.c.assign(r.deg() - b.deg() + 1, F.zero());
  GF::E inv = F.inv(b.c.back());
  while (!r.is_zero() && r.deg() >= b.deg()) {
    int s = r.deg() - b.deg();
    GF::E t = F.mul(r.c.back(), inv);
    q.c[s] = t;
    for (int i = 0; i <= b.deg(); ++i) r.c[s + i] = F.sub(r.c[s + i], F.mul(t, b.c[i]));
    gp_trim(F, r);
  }
  gp_trim(F, q);
}

GFPoly gp_mod(const GF& F, const GFPoly& a, const GFPoly& b) {
  GFPoly q, r;
  gp_divmod(F, a, b, q, r);
  return r;
}

GFPoly gp_div(const GF& F, const GFPoly& a, const GFPoly& b) {
  GFPoly q, r;
  gp_divmod(F, a, b, q, r);
  return q;
}

GFPoly gp_monic(const GF& F, const GFPoly& a) {
  if (a.is_zero()) return a;
  GF::E inv = F.inv(a.c.back());
  GFPoly r = a;
  for (auto& x : r.c) x = F.mul(x, inv);
  return r;
}

GFPoly gp_gcd(const GF& F, const GFPoly& a0, const GFPoly& b0) {
  GFPoly a = a0, b = b0;
  gp_trim(F, a);
  gp_trim(F, b);
  while (!b.is_zero()) {
    GFPoly r = gp_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return gp_monic(F, a);
}

GFPoly gp_derivative(const GF& F, const GFPoly& a) {
  GFPoly r;
  for (size_t i = 1; i < a.c.size(); ++i) r.c.push_back(F.scale(a.c[i], i));
  gp_trim(F, r);
  return r;
}

GFPoly gp_powmod(const GF& F, const GFPoly& base, const mpz_class& e, const GFPoly& m) {
  GFPoly r;
  r.c.push_back(F.one());
  r = gp_mod(F, r, m);
  GFPoly b = gp_mod(F, base, m);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = gp_mod(F, gp_mul(F, r, r), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = gp_mod(F, gp_mul(F, r, b), m);
  }
  return r;
}

GF::E gp_eval(const GF& F, const GFPoly& a, const GF::E& x) {
  GF::E r = F.zero();
  for (size_t i = a.c.size(); i-- > 0;) r = F.add(F.mul(r, x), a.c[i]);
  return r;
}

GFPoly gp_from_fp(const GF& F, const FpPoly& a) {
  GFPoly r;
  for (u64 c : a) r.c.push_back(F.from_int((i64)(c % F.p)));
  gp_trim(F, r);
  return r;
}

GFPoly gp_linear(const GF& F, const GF::E& root) {
  GFPoly r;
  r.c = {F.neg(root), F.one()};
  return r;
}

namespace {

bool gp_is_one(const GFPoly& a) { return a.deg() == 0; }

void square_free(const GF& F, const GFPoly& f, int mult, std::vector<std::pair<GFPoly, int>>& out) {
  if (f.deg() < 1) return;
  GFPoly c = gp_gcd(F, f, gp_derivative(F, f));
  GFPoly w = gp_div(F, f, c);
  int i = 1;
  while (!gp_is_one(w)) {
    GFPoly y = gp_gcd(F, w, c);
    GFPoly fac = gp_div(F, w, y);
    if (fac.deg() > 0) out.push_back({gp_monic(F, fac), i * mult});
    w = y;
    c = gp_div(F, c, y);
    ++i;
  }
  if (c.deg() > 0) {
    // c is a p-th power
    GFPoly r;
    for (int j = 0; j <= c.deg(); j += (int)F.p) r.c.push_back(F.pth_root(c.c[j]));
    square_free(F, r, mult * (int)F.p, out);
  }
}

std::vector<std::pair<GFPoly, int>> distinct_degree(const GF& F, GFPoly f) {
  std::vector<std::pair<GFPoly, int>> out;
  mpz_class q = F.order();
  GFPoly x;
  x.c = {F.zero(), F.one()};
  GFPoly h = gp_mod(F, x, f);
  for (int i = 1; 2 * i <= f.deg(); ++i) {
    h = gp_powmod(F, h, q, f);
    GFPoly g = gp_gcd(F, f, gp_sub(F, h, x));
    if (g.deg() > 0) {
      out.push_back({g, i});
      f = gp_div(F, f, g);
      h = gp_mod(F, h, f);
    }
  }
  if (f.deg() > 0) out.push_back({gp_monic(F, f), f.deg()});
  return out;
}

void equal_degree(const GF& F, const GFPoly& f, int r, std::mt19937_64& rng,
                  std::vector<GFPoly>& out) {
  if (f.deg() == r) {
    out.push_back(f);
    return;
  }
  mpz_class qr;
  mpz_pow_ui(qr.get_mpz_t(), F.order().get_mpz_t(), r);
  while (true) {
    GFPoly a;
    for (int i = 0; i < f.deg(); ++i) a.c.push_back(F.random(rng));
    gp_trim(F, a);
    if (a.deg() < 1) continue;
    GFPoly b;
    if (F.p == 2) {
      // absolute trace down to F_2
      int n = F.d * r;
      GFPoly t = a, s = a;
      for (int i = 1; i < n; ++i) {
        t = gp_mod(F, gp_mul(F, t, t), f);
        s = gp_add(F, s, t);
      }
      b = s;
    } else {
      b = gp_powmod(F, a, (qr - 1) / 2, f);
      GFPoly one;
      one.c.push_back(F.one());
      b = gp_sub(F, b, one);
    }
    GFPoly g = gp_gcd(F, f, b);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      equal_degree(F, g, r, rng, out);
      equal_degree(F, gp_monic(F, gp_div(F, f, g)), r, rng, out);
      return;
    }
  }
}

std::vector<u64> flatten(const GFPoly& a) {
  std::vector<u64> v;
  for (auto& e : a.c) v.insert(v.end(), e.begin(), e.end());
  return v;
}

}  // namespace

std::vector<std::pair<GFPoly, int>> gp_factor(const GF& F, const GFPoly& a0) {
  GFPoly a = a0;
  gp_trim(F, a);
  if (a.is_zero()) throw PreconditionError("cannot factor the zero polynomial");
  std::vector<u64> key = flatten(a);
  key.push_back(F.p);
  std::mt19937_64 rng(seed_of(key));

  std::vector<std::pair<GFPoly, int>> sf, out;
  square_free(F, gp_monic(F, a), 1, sf);
  for (auto& [g, m] : sf) {
    for (auto& [h, r] : distinct_degree(F, g)) {
      std::vector<GFPoly> parts;
      equal_degree(F, h, r, rng, parts);
      for (auto& p : parts) out.push_back({p, m});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first.deg() != y.first.deg()) return x.first.deg() < y.first.deg();
    std::vector<u64> fx = flatten(x.first), fy = flatten(y.first);
    std::reverse(fx.begin(), fx.end());
    std::reverse(fy.begin(), fy.end());
    return fx < fy;
  });
  return out;
}

std::vector<GF::E> gp_roots(const GF& F, const GFPoly& a) {
  std::vector<GF::E> out;
  for (auto& [g, m] : gp_factor(F, a))
    if (g.deg() == 1) out.push_back(F.neg(g.c[0]));
  return out;
}

std::vector<std::pair<FpPoly, int>> poly_factor_mod(const QPoly& a, u64 l) {
  FpPoly r = fp_from_qpoly(a, l);
  if ((int)r.size() - 1 != a.deg())
    throw PreconditionError("leading coefficient vanishes mod " + std::to_string(l));
  GF F = GF::prime(l);
  std::vector<std::pair<FpPoly, int>> out;
  for (auto& [g, m] : gp_factor(F, gp_from_fp(F, r))) {
    FpPoly h;
    for (auto& e : g.c) h.push_back(e[0]);
    out.push_back({h, m});
  }
  return out;
}

bool fp_is_irreducible(const FpPoly& a0, u64 p) {
  FpPoly a = a0;
  fp_trim(a);
  int n = (int)a.size() - 1;
  if (n < 1) return false;
  if (n == 1) return true;
  GF F = GF::prime(p);
  GFPoly f = gp_monic(F, gp_from_fp(F, a));
  GFPoly x;
  x.c = {F.zero(), F.one()};
  GFPoly h = x;
  mpz_class P(std::to_string(p));
  for (int i = 1; 2 * i <= n; ++i) {
    h = gp_powmod(F, h, P, f);
    if (gp_gcd(F, f, gp_sub(F, h, x)).deg() > 0) return false;
  }
  return true;
}

FpPoly find_irreducible(u64 p, int d) {
  if (d < 1) throw PreconditionError("find_irreducible: degree must be positive");
  FpPoly c(d + 1, 0);
  c[d] = 1;
  while (true) {
    if (fp_is_irreducible(c, p)) return c;
    // next in lexicographic order, most significant = c[d-1]
    int i = 0;
    while (i < d && ++c[i] == p) c[i++] = 0;
    if (i == d) throw InvariantError("no irreducible polynomial found");
  }
}

// ---- linear algebra ----

std::vector<int> fp_rref(FpMat& m, u64 p) {
  std::vector<int> piv;
  if (m.empty()) return piv;
  int rows = (int)m.size(), cols = (int)m[0].size();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int s = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] % p) {
        s = i;
        break;
      }
    if (s < 0) continue;
    std::swap(m[r], m[s]);
    u64 inv = invmod(m[r][c], p);
    for (auto& x : m[r]) x = mulmod(x, inv, p);
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      u64 t = m[i][c];
      for (int j = 0; j < cols; ++j) m[i][j] = subm(m[i][j], mulmod(t, m[r][j], p), p);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

FpMat fp_kernel(const FpMat& m0, int ncols, u64 p) {
  FpMat m = m0;
  for (auto& row : m) row.resize(ncols, 0);
  std::vector<int> piv = fp_rref(m, p);
  std::vector<bool> is_piv(ncols, false);
  for (int c : piv) is_piv[c] = true;
  FpMat out;
  for (int f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    std::vector<u64> v(ncols, 0);
    v[f] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = (p - m[i][f] % p) % p;
    out.push_back(v);
  }
  return out;
}

std::optional<std::vector<u64>> fp_solve(const FpMat& m0, const std::vector<u64>& b, int ncols,
                                         u64 p) {
  FpMat m = m0;
  for (size_t i = 0; i < m.size(); ++i) {
    m[i].resize(ncols, 0);
    m[i].push_back(b[i] % p);
  }
  std::vector<int> piv = fp_rref(m, p);
  if (!piv.empty() && piv.back() == ncols) return std::nullopt;
  std::vector<u64> x(ncols, 0);
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = m[i][ncols];
  return x;
}

}  // namespace mfred
