#include "mfred/residues.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

namespace mfred {

namespace {

using Vec = std::vector<u64>;

// O/lO with the multiplication table of the integral basis
struct Algebra {
  const NumberField* K;
  u64 l;
  int d;
  std::vector<std::vector<Vec>> mt;  // mt[i][j] = omega_i omega_j mod l

  Algebra(const NumberField& k, u64 l_) : K(&k), l(l_), d(k.d) {
    mt.assign(d, std::vector<Vec>(d, Vec(d, 0)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int t = 0; t < d; ++t) {
          mpz_class r = k.mt[i][j][t] % mpz_class(l);
          if (r < 0) r += l;
          mt[i][j][t] = r.get_ui();
        }
  }
  Vec unit() const {
    Vec v(d, 0);
    v[0] = 1 % l;
    return v;
  }
  Vec mul(const Vec& a, const Vec& b) const {
    Vec r(d, 0);
    for (int i = 0; i < d; ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < d; ++j) {
        if (!b[j]) continue;
        u64 c = mulmod(a[i], b[j], l);
        const Vec& m = mt[i][j];
        for (int t = 0; t < d; ++t)
          if (m[t]) r[t] = (r[t] + mulmod(c, m[t], l)) % l;
      }
    }
    return r;
  }
  Vec add(const Vec& a, const Vec& b) const {
    Vec r(d);
    for (int i = 0; i < d; ++i) r[i] = (a[i] + b[i]) % l;
    return r;
  }
  Vec scale(const Vec& a, u64 s) const {
    Vec r(d);
    for (int i = 0; i < d; ++i) r[i] = mulmod(a[i], s % l, l);
    return r;
  }
  Vec pow(Vec b, mpz_class e) const {
    Vec r = unit();
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
};

int rank_of(FpMat m, u64 l) {
  if (m.empty()) return 0;
  return (int)fp_rref(m, l).size();
}

// reduced basis of the row span
FpMat span_basis(FpMat m, u64 l) {
  if (m.empty()) return m;
  auto piv = fp_rref(m, l);
  m.resize(piv.size());
  return m;
}

bool in_span(const FpMat& basis, const Vec& v, u64 l) {
  FpMat m = basis;
  m.push_back(v);
  return rank_of(m, l) == (int)basis.size();
}

FpMat transpose(const FpMat& m, int rows, int cols) {
  FpMat t(cols, Vec(rows, 0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

// {x : x M = 0} for a d x d matrix M acting on row vectors
FpMat left_kernel(const FpMat& M, int d, u64 l) { return fp_kernel(transpose(M, d, d), d, l); }

FpMat matmul(const FpMat& a, const FpMat& b, u64 l) {
  int n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  FpMat r(n, Vec(m, 0));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (!a[i][t]) continue;
      for (int j = 0; j < m; ++j) r[i][j] = (r[i][j] + mulmod(a[i][t], b[t][j], l)) % l;
    }
  return r;
}

// Minimal polynomial of y in the algebra with identity one, modulo the
// subspace U: monic coefficients, lowest first.
FpPoly minpoly_mod(const Algebra& A, const Vec& one, const Vec& y, const FpMat& U) {
  std::vector<Vec> pw{one};
  while (true) {
    Vec next = A.mul(pw.back(), y);
    // solve next = sum c_i pw_i + u
    FpMat cols;
    for (auto& v : pw) cols.push_back(v);
    for (auto& u : U) cols.push_back(u);
    int nc = cols.size();
    FpMat m = transpose(cols, nc, A.d);
    auto sol = fp_solve(m, next, nc, A.l);
    if (sol) {
      FpPoly h(pw.size() + 1, 0);
      for (size_t i = 0; i < pw.size(); ++i) h[i] = (A.l - (*sol)[i]) % A.l;
      h[pw.size()] = 1;
      return h;
    }
    pw.push_back(next);
  }
}

Vec random_in(const FpMat& basis, const Algebra& A, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> dist(0, A.l - 1);
  Vec v(A.d, 0);
  for (auto& b : basis) v = A.add(v, A.scale(b, dist(rng)));
  return v;
}

Vec to_mod_l(const std::vector<Rat>& w, u64 l) {
  Vec v(w.size());
  for (size_t i = 0; i < w.size(); ++i) {
    mpz_class den = w[i].get_den();
    if (den % l == 0) throw IntegralityError("element is not l-integral");
    mpz_class r = w[i].get_num() % mpz_class(l);
    if (r < 0) r += l;
    mpz_class inv;
    mpz_class lz(l);
    mpz_invert(inv.get_mpz_t(), mpz_class(den % lz).get_mpz_t(), lz.get_mpz_t());
    v[i] = mpz_class(r * inv % lz).get_ui();
  }
  return v;
}

std::string sym_poly_str(const FpPoly& h, u64 l, const std::string& var) {
  std::vector<Rat> c(h.size());
  for (size_t i = 0; i < h.size(); ++i) {
    i64 v = (i64)h[i];
    if (2 * h[i] > l) v -= (i64)l;
    c[i] = Rat((long)v);
  }
  return QPoly(c).str(var);
}

QPoly sym_lift(const FpPoly& h, u64 l) {
  std::vector<Rat> c(h.size());
  for (size_t i = 0; i < h.size(); ++i) {
    i64 v = (i64)h[i];
    if (2 * h[i] > l) v -= (i64)l;
    c[i] = Rat((long)v);
  }
  return QPoly(c);
}

struct Local {
  Vec e;
  FpMat comp, rad;  // bases of eA and of its radical
};

}  // namespace

namespace {
std::vector<PrimePtr> factor_uncached(const NFPtr& K, u64 l);
}

// cached so that a prime has one identity per field
std::vector<PrimePtr> factor_rational_prime(const NFPtr& K, u64 l) {
  if (!is_prime_u64(l)) throw PreconditionError("factor_rational_prime: l must be prime");
  static std::mutex mu;
  static std::map<std::pair<const NumberField*, u64>, std::pair<NFPtr, std::vector<PrimePtr>>>
      cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find({K.get(), l});
    if (it != cache.end()) return it->second.second;
  }
  auto r = factor_uncached(K, l);
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.try_emplace({K.get(), l}, K, r).first;
  return it->second.second;
}

namespace {
std::vector<PrimePtr> factor_uncached(const NFPtr& K, u64 l) {
  Algebra A(*K, l);
  int d = A.d;
  std::mt19937_64 rng(l * 1000003ULL + d);

  // Frobenius on row vectors
  FpMat Fr(d);
  for (int i = 0; i < d; ++i) {
    Vec w(d, 0);
    w[i] = 1;
    Fr[i] = A.pow(w, mpz_class(std::to_string(l)));
  }
  FpMat Fj = Fr;
  mpz_class q = l;
  while (q < d) {
    Fj = matmul(Fj, Fr, l);
    q *= l;
  }
  FpMat R = span_basis(left_kernel(Fj, d, l), l);
  FpMat FmI = Fr;
  for (int i = 0; i < d; ++i) FmI[i][i] = (FmI[i][i] + l - 1) % l;
  FpMat S = span_basis(left_kernel(FmI, d, l), l);

  // split the identity into primitive idempotents using Frobenius-fixed elements
  std::vector<Vec> todo{A.unit()}, idems;
  while (!todo.empty()) {
    Vec e = todo.back();
    todo.pop_back();
    FpMat eS;
    for (auto& s : S) eS.push_back(A.mul(e, s));
    eS = span_basis(eS, l);
    if (eS.size() <= 1) {
      idems.push_back(e);
      continue;
    }
    while (true) {
      Vec z = random_in(eS, A, rng);
      FpPoly m = minpoly_mod(A, e, z, {});
      if (m.size() <= 2) continue;
      // roots in F_l; m splits with distinct roots since eS is reduced
      std::vector<u64> roots;
      for (u64 r = 0; r < l && roots.size() + 1 < m.size(); ++r) {
        u64 v = 0;
        for (size_t i = m.size(); i-- > 0;) v = (mulmod(v, r, l) + m[i]) % l;
        if (!v) roots.push_back(r);
      }
      MFRED_CHECK(roots.size() + 1 == m.size(), "idempotent split: minimal polynomial not split");
      for (u64 r : roots) {
        Vec num = e;
        u64 den = 1;
        for (u64 s : roots) {
          if (s == r) continue;
          Vec t = A.add(z, A.scale(e, l - s));
          num = A.mul(num, t);
          den = mulmod(den, (r + l - s) % l, l);
        }
        todo.push_back(A.scale(num, invmod(den, l)));
      }
      break;
    }
  }

  std::vector<Local> locs;
  for (auto& e : idems) {
    Local L;
    L.e = e;
    FpMat comp;
    for (int i = 0; i < d; ++i) {
      Vec w(d, 0);
      w[i] = 1;
      comp.push_back(A.mul(e, w));
    }
    L.comp = span_basis(comp, l);
    FpMat rad;
    for (auto& r : R) rad.push_back(A.mul(e, r));
    L.rad = span_basis(rad, l);
    locs.push_back(L);
  }

  // theta in omega coordinates
  std::vector<Rat> th(d, Rat(0));
  if (d > 1) th[1] = 1;
  else th[0] = -K->g.c[0];
  Vec theta = to_mod_l(NFElem(K, th).to_omega(), l);

  std::vector<std::shared_ptr<PrimeIdeal>> out;
  for (auto& L : locs) {
    auto P = std::make_shared<PrimeIdeal>();
    P->K = K;
    P->l = l;
    int n = L.comp.size();
    P->f = n - (int)L.rad.size();
    P->e = n / P->f;
    MFRED_CHECK(P->e * P->f == n, "local component dimension is not e*f");
    P->idem = L.e;
    P->rad = L.rad;
    FpMat r2;
    for (auto& a : L.rad)
      for (auto& b : L.rad) r2.push_back(A.mul(a, b));
    P->rad2 = span_basis(r2, l);

    Vec y = A.mul(L.e, theta);
    FpPoly h = minpoly_mod(A, L.e, y, L.rad);
    P->theta_gen = (int)h.size() - 1 == P->f;
    P->var = P->theta_gen ? K->var : "w";
    while ((int)h.size() - 1 != P->f) {
      y = random_in(L.comp, A, rng);
      h = minpoly_mod(A, L.e, y, L.rad);
    }
    P->F = GF(l, h);
    // omega_k = sum c_j y^j mod rad
    FpMat cols;
    Vec pw = L.e;
    for (int j = 0; j < P->f; ++j) {
      cols.push_back(pw);
      pw = A.mul(pw, y);
    }
    for (auto& u : L.rad) cols.push_back(u);
    int nc = cols.size();
    FpMat m = transpose(cols, nc, d);
    for (int k = 0; k < d; ++k) {
      Vec w(d, 0);
      w[k] = 1;
      auto sol = fp_solve(m, A.mul(L.e, w), nc, l);
      MFRED_CHECK(sol.has_value(), "residue map: basis element outside the component");
      FpPoly c(sol->begin(), sol->begin() + P->f);
      P->omega_img.push_back(P->F.from_fp(c));
    }
    out.push_back(P);
  }

  // two-element display
  int np = out.size();
  auto residue_zero = [&](const PrimeIdeal& P, const Vec& v) {
    GF::E s = P.F.zero();
    for (int k = 0; k < d; ++k)
      if (v[k]) s = P.F.add(s, P.F.scale(P.omega_img[k], v[k]));
    return P.F.is_zero(s);
  };
  auto generates = [&](size_t i, const QPoly& hq) {
    std::vector<Rat> c = (hq % K->g).c;
    c.resize(d, Rat(0));
    Vec v = to_mod_l(NFElem(K, c).to_omega(), l);
    for (size_t j = 0; j < out.size(); ++j) {
      bool z = residue_zero(*out[j], v);
      if (j != i && z) return false;
      if (j == i && !z) return false;
    }
    if (out[i]->e >= 2) {
      Vec ev = A.mul(out[i]->idem, v);
      if (in_span(out[i]->rad2, ev, l)) return false;
    }
    return true;
  };
  for (size_t i = 0; i < out.size(); ++i) {
    auto& P = *out[i];
    if (np == 1 && P.e == 1) {
      P.display = "(" + std::to_string(l) + ")";
      continue;
    }
    // the minimal polynomial of theta first
    std::vector<FpPoly> cands{minpoly_mod(A, P.idem, A.mul(P.idem, theta), P.rad)};
    // then monic polynomials by degree and symmetric coefficient size
    int budget = 20000;
    for (int deg = 1; deg < d && budget > 0; ++deg) {
      u64 total = 1;
      bool big = false;
      for (int j = 0; j < deg; ++j) {
        if (total > (u64)budget / l) big = true;
        total *= l;
        if (big) break;
      }
      u64 cnt = big ? (u64)budget : total;
      for (u64 code = 0; code < cnt; ++code) {
        FpPoly h(deg + 1, 0);
        h[deg] = 1;
        u64 c = code;
        for (int j = 0; j < deg; ++j) {
          h[j] = c % l;
          c /= l;
        }
        cands.push_back(h);
      }
      budget -= (int)cnt;
    }
    for (auto& h : cands) {
      QPoly hq = sym_lift(h, l);
      if (generates(i, hq)) {
        P.two_elt = hq;
        P.display = "(" + std::to_string(l) + "," + sym_poly_str(h, l, K->var) + ")";
        break;
      }
    }
    if (P.display.empty()) {
      std::ostringstream os;
      os << "(" << l << ";e=" << P.e << ",f=" << P.f << ";idem=";
      for (int k = 0; k < d; ++k) os << (k ? "," : "") << P.idem[k];
      os << ")";
      P.display = os.str();
    }
  }
  // deterministic order: residue degree, then the display generator
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    if (a->f != b->f) return a->f < b->f;
    auto key = [](const PrimeIdeal& P) {
      std::vector<i64> k;
      for (size_t i = P.two_elt.c.size(); i-- > 0;) k.push_back(P.two_elt.c[i].get_num().get_si());
      return k;
    };
    auto ka = key(*a), kb = key(*b);
    if (ka.size() != kb.size()) return ka.size() < kb.size();
    // constant term first by absolute value, negative before positive
    for (size_t i = ka.size(); i-- > 0;) {
      i64 x = ka[i], y = kb[i];
      if (std::llabs(x) != std::llabs(y)) return std::llabs(x) < std::llabs(y);
      if (x != y) return x < y;
    }
    return a->display < b->display;
  });
  std::vector<PrimePtr> res;
  for (size_t i = 0; i < out.size(); ++i) {
    out[i]->index = i;
    out[i]->nprimes = np;
    res.push_back(out[i]);
  }
  return res;
}
}  // namespace

GF::E reduce_nf(const NFElem& x, const PrimeIdeal& P) {
  const NumberField& K = *P.K;
  int d = K.d;
  u64 l = P.l;
  std::vector<Rat> w = x.to_omega();
  mpz_class den = 1;
  for (auto& c : w) den = lcm(den, mpz_class(c.get_den()));
  int v = 0;
  mpz_class lz(l), dp = den;
  while (dp % lz == 0) {
    dp /= lz;
    ++v;
  }
  Vec red;
  if (v == 0) {
    red = to_mod_l(w, l);
  } else {
    // x = y / (l^v dp): lift the idempotent to O/l^{v+1} and divide E y by l^v
    mpz_class mod;
    mpz_pow_ui(mod.get_mpz_t(), lz.get_mpz_t(), v + 1);
    auto mulz = [&](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
      std::vector<mpz_class> r(d, 0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          if (a[i] == 0 || b[j] == 0) continue;
          mpz_class c = a[i] * b[j];
          for (int t = 0; t < d; ++t) r[t] += c * K.mt[i][j][t];
        }
      for (auto& z : r) {
        z %= mod;
        if (z < 0) z += mod;
      }
      return r;
    };
    std::vector<mpz_class> E(d);
    for (int i = 0; i < d; ++i) E[i] = P.idem[i];
    for (int it = 0; it < 64; ++it) {
      auto E2 = mulz(E, E), E3 = mulz(E2, E);
      std::vector<mpz_class> N(d);
      for (int i = 0; i < d; ++i) {
        N[i] = (3 * E2[i] - 2 * E3[i]) % mod;
        if (N[i] < 0) N[i] += mod;
      }
      if (N == E) break;
      E = N;
    }
    std::vector<mpz_class> y(d);
    for (int i = 0; i < d; ++i) y[i] = w[i].get_num() * (den / w[i].get_den());
    auto z = mulz(E, y);
    mpz_class lv;
    mpz_pow_ui(lv.get_mpz_t(), lz.get_mpz_t(), v);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), mpz_class(dp % lz).get_mpz_t(), lz.get_mpz_t());
    red.assign(d, 0);
    for (int i = 0; i < d; ++i) {
      if (z[i] % lv != 0) throw IntegralityError("element is not integral at " + P.display);
      mpz_class t = (z[i] / lv) % lz * inv % lz;
      red[i] = t.get_ui();
    }
  }
  GF::E s = P.F.zero();
  for (int k = 0; k < d; ++k)
    if (red[k]) s = P.F.add(s, P.F.scale(P.omega_img[k], red[k]));
  return s;
}

bool in_ideal(const NFElem& x, const PrimeIdeal& P) { return P.F.is_zero(reduce_nf(x, P)); }

PrimePtr find_prime(const NFPtr& K, const std::string& ideal) {
  std::string s;
  for (char c : ideal)
    if (!isspace((unsigned char)c)) s += c;
  if (s.size() < 3 || s.front() != '(' || s.back() != ')')
    throw DataError("ideal must look like (l) or (l,h): " + ideal);
  s = s.substr(1, s.size() - 2);
  auto comma = s.find(',');
  std::string ls = s.substr(0, comma);
  u64 l;
  try {
    l = std::stoull(ls);
  } catch (...) {
    throw DataError("bad prime in ideal: " + ideal);
  }
  if (!is_prime_u64(l)) throw DataError("ideal: " + ls + " is not prime");
  auto primes = factor_rational_prime(K, l);
  std::string listing;
  for (auto& P : primes) listing += (listing.empty() ? "" : ", ") + P->display;
  if (comma == std::string::npos) {
    if (primes.size() == 1 && primes[0]->e == 1) return primes[0];
    throw DataError("ideal (" + ls + ") is not prime in this field; primes above " + ls + ": " + listing);
  }
  QPoly h = parse_poly(s.substr(comma + 1), K->var);
  std::vector<Rat> c = (h % K->g).c;
  c.resize(K->d, Rat(0));
  NFElem pi(K, c);
  // (l, pi) = P iff pi lies in P only, with valuation 1 when ramified
  for (auto& P : primes) {
    bool ok = true;
    for (auto& Q : primes) {
      bool z = in_ideal(pi, *Q);
      if ((Q == P) != z) ok = false;
    }
    if (ok && P->e >= 2) {
      Algebra A(*K, l);
      Vec v = to_mod_l(pi.to_omega(), l);
      if (in_span(P->rad2, A.mul(P->idem, v), l)) ok = false;
    }
    if (ok) return P;
  }
  throw DataError("ideal " + ideal + " is not a prime of this field; primes above " + ls + ": " + listing);
}

PrimePtr rational_prime(u64 l) {
  static std::mutex mu;
  static std::map<u64, PrimePtr> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(l);
  if (it != cache.end()) return it->second;
  auto P = factor_rational_prime(NumberField::rationals(), l)[0];
  cache[l] = P;
  return P;
}

GF::E ResidueContext::embed(const GF::E& a) const {
  GF::E s = F.zero();
  for (size_t j = 0; j < a.size(); ++j)
    if (a[j]) s = F.add(s, F.scale(gen_pows[j], a[j]));
  return s;
}

GF::E ResidueContext::reduce(const NFElem& x) const { return embed(reduce_nf(x, *P)); }

GF::E ResidueContext::root(u64 n, i64 a) const {
  u64 np = prime_to_part(n, l), ls = n / np;
  if (M % np) throw PreconditionError("root of unity order not covered by the place");
  u64 u = np == 1 ? 0 : invmod(ls % np, np);
  u64 ex = np == 1 ? 0 : mulmod((u64)mod_floor(a, (i64)np), u, np) * (M / np) % M;
  return F.pow(W, ex);
}

GF::E ResidueContext::reduce(const CycNum& x) const {
  GF::E s = F.zero();
  for (size_t i = 0; i < x.c.size(); ++i) {
    if (x.c[i] == 0) continue;
    Vec c = to_mod_l({x.c[i]}, l);
    s = F.add(s, F.scale(root(x.n, (i64)i), c[0]));
  }
  return s;
}

std::string ResidueContext::str(const GF::E& a) const {
  if (F.d == P->F.d) {
    // express back in the residue generator of P
    FpMat cols;
    for (auto& g : gen_pows) cols.push_back(g);
    int nc = cols.size();
    FpMat m = transpose(cols, nc, F.d);
    auto sol = fp_solve(m, a, nc, l);
    if (sol) return P->str(*sol);
  }
  return F.str(a, "a");
}

namespace {

ResidueContext base_context(const PrimePtr& P, u64 mprime) {
  ResidueContext C;
  C.P = P;
  C.l = P->l;
  u64 L = P->f;
  if (mprime > 1) L = lcm_u64(L, multiplicative_order(P->l % mprime, mprime));
  if ((int)L == P->f) {
    C.F = P->F;
    C.gen_img = P->F.gen();
  } else {
    C.F = GF(P->l, find_irreducible(P->l, (int)L));
    GFPoly h = gp_from_fp(C.F, P->F.mod);
    auto roots = gp_roots(C.F, h);
    MFRED_CHECK(!roots.empty(), "residue field does not embed");
    C.gen_img = roots.front();
  }
  C.gen_pows.push_back(C.F.one());
  for (int j = 1; j < P->f; ++j) C.gen_pows.push_back(C.F.mul(C.gen_pows.back(), C.gen_img));
  C.M = mprime;
  return C;
}

}  // namespace

std::vector<GF::E> embed_roots(u64 m, const PrimePtr& P) {
  u64 mp = prime_to_part(m, P->l);
  ResidueContext C = base_context(P, mp);
  std::vector<GF::E> out;
  if (mp == 1) return {C.F.one()};
  // one element of exact order mp, then its unit powers
  mpz_class q1 = C.F.order() - 1;
  mpz_class co = q1 / mp;
  std::mt19937_64 rng(P->l * 7919 + mp);
  GF::E w0;
  auto fac = prime_divisors(mp);
  while (true) {
    GF::E r = C.F.random(rng);
    if (C.F.is_zero(r)) continue;
    w0 = C.F.pow(r, co);
    bool exact = true;
    for (u64 p : fac)
      if (C.F.pow(w0, mp / p) == C.F.one()) exact = false;
    if (exact) break;
  }
  for (u64 j = 1; j < mp; ++j)
    if (gcd_u64(j, mp) == 1) out.push_back(C.F.pow(w0, j));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ResidueContext> residue_contexts(
    const PrimePtr& P, u64 m, const std::function<bool(const ResidueContext&)>& accept) {
  u64 mp = prime_to_part(m, P->l);
  ResidueContext base = base_context(P, mp);
  std::vector<ResidueContext> out;
  for (auto& w : embed_roots(m, P)) {
    ResidueContext C = base;
    C.W = w;
    if (!accept || accept(C)) out.push_back(C);
  }
  return out;
}

}  // namespace mfred
