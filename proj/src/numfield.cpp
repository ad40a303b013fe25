#include "mfred/numfield.hpp"

namespace mfred {

QPoly charpoly_matrix(const RatMat& a) {
  size_t n = a.size();
  std::vector<Rat> cs(n + 1, Rat(0));
  cs[n] = 1;
  RatMat m(n, std::vector<Rat>(n, Rat(0)));
  for (size_t k = 1; k <= n; ++k) {
    // m <- a*m + c_{n-k+1} I
    RatMat am(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i)
      for (size_t l = 0; l < n; ++l) {
        if (a[i][l] == 0) continue;
        for (size_t j = 0; j < n; ++j) am[i][j] += a[i][l] * m[l][j];
      }
    for (size_t i = 0; i < n; ++i) am[i][i] += cs[n - k + 1];
    m = std::move(am);
    Rat tr = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t l = 0; l < n; ++l) tr += a[i][l] * m[l][i];
    cs[n - k] = -tr / (int)k;
  }
  return QPoly(cs);
}

RatMat mat_inverse(const RatMat& a) {
  size_t n = a.size();
  RatMat m(n, std::vector<Rat>(2 * n, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n + i] = 1;
  }
  for (size_t c = 0; c < n; ++c) {
    size_t s = c;
    while (s < n && m[s][c] == 0) ++s;
    if (s == n) throw PreconditionError("singular matrix");
    std::swap(m[s], m[c]);
    Rat inv = 1 / m[c][c];
    for (auto& x : m[c]) x *= inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      Rat t = m[i][c];
      for (size_t j = 0; j < 2 * n; ++j) m[i][j] -= t * m[c][j];
    }
  }
  RatMat r(n, std::vector<Rat>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r[i][j] = m[i][n + j];
  return r;
}

namespace {
std::vector<Rat> mulmod_g(const std::vector<Rat>& a, const std::vector<Rat>& b, const QPoly& g) {
  size_t d = g.deg();
  QPoly p = QPoly(a) * QPoly(b);
  p = p % g;
  std::vector<Rat> r(d, Rat(0));
  for (size_t i = 0; i < p.c.size(); ++i) r[i] = p.c[i];
  return r;
}

std::vector<Rat> row_times(const std::vector<Rat>& x, const RatMat& m) {
  size_t n = m.empty() ? 0 : m[0].size();
  std::vector<Rat> r(n, Rat(0));
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) r[j] += x[i] * m[i][j];
  }
  return r;
}
}  // namespace

NFPtr NumberField::make(const QPoly& g, const RatMat& W, const std::string& var) {
  if (g.deg() < 1) throw DataError("defining polynomial must have positive degree");
  if (g.lc() != 1) throw DataError("defining polynomial must be monic");
  for (auto& c : g.c)
    if (c.get_den() != 1) throw DataError("defining polynomial must have integer coefficients");
  auto K = std::make_shared<NumberField>();
  K->g = g;
  K->d = g.deg();
  K->var = var;
  if ((int)W.size() != K->d) throw DataError("integral basis has wrong size");
  for (auto& row : W)
    if ((int)row.size() != K->d) throw DataError("integral basis row has wrong length");
  K->W = W;
  for (int j = 0; j < K->d; ++j)
    if (W[0][j] != (j == 0 ? 1 : 0)) throw DataError("first integral basis element must be 1");
  try {
    K->Winv = mat_inverse(W);
  } catch (const PreconditionError&) {
    throw DataError("integral basis matrix is singular");
  }
  int d = K->d;
  K->mt.assign(d, std::vector<std::vector<mpz_class>>(d, std::vector<mpz_class>(d)));
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      std::vector<Rat> w = row_times(mulmod_g(W[i], W[j], g), K->Winv);
      for (int k = 0; k < d; ++k) {
        if (w[k].get_den() != 1)
          throw DataError("integral basis is not closed under multiplication");
        K->mt[i][j][k] = K->mt[j][i][k] = w[k].get_num();
      }
    }
  return K;
}

NFPtr NumberField::rationals() {
  static NFPtr q = make(QPoly::x(), RatMat{{Rat(1)}}, "t");
  return q;
}

NFElem::NFElem(NFPtr k, std::vector<Rat> coords) : K(std::move(k)), c(std::move(coords)) {
  if ((int)c.size() > K->d) {
    QPoly p = QPoly(c) % K->g;
    c = p.c;
  }
  c.resize(K->d, Rat(0));
}

NFElem NFElem::from_rat(NFPtr k, const Rat& r) {
  std::vector<Rat> v(k->d, Rat(0));
  v[0] = r;
  return NFElem(k, v);
}

NFElem NFElem::gen(NFPtr k) {
  if (k->d == 1) return NFElem(k, (QPoly::x() % k->g).c);
  std::vector<Rat> v(k->d, Rat(0));
  v[1] = 1;
  return NFElem(k, v);
}

NFElem NFElem::from_omega(NFPtr k, const std::vector<Rat>& w) {
  auto& W = k->W;
  return NFElem(k, row_times(w, W));
}

bool NFElem::is_zero() const {
  for (auto& x : c)
    if (x != 0) return false;
  return true;
}

bool NFElem::is_rational() const {
  for (size_t i = 1; i < c.size(); ++i)
    if (c[i] != 0) return false;
  return true;
}

std::vector<Rat> NFElem::to_omega() const { return row_times(c, K->Winv); }

RatMat NFElem::mult_matrix() const {
  int d = K->d;
  RatMat m(d, std::vector<Rat>(d, Rat(0)));
  std::vector<Rat> col = c;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) m[i][j] = col[i];
    std::vector<Rat> th(d, Rat(0));
    if (d > 1) th[1] = 1;
    else th[0] = -K->g.c[0];
    col = mulmod_g(col, th, K->g);
  }
  return m;
}

QPoly NFElem::charpoly() const { return charpoly_matrix(mult_matrix()); }

Rat NFElem::norm() const {
  QPoly p = charpoly();
  return (K->d % 2) ? -p.c[0] : p.c[0];
}

Rat NFElem::trace() const { return -charpoly().coeff(K->d - 1); }

NFElem NFElem::operator-() const {
  NFElem r = *this;
  for (auto& x : r.c) x = -x;
  return r;
}

NFElem operator+(const NFElem& a, const NFElem& b) {
  NFElem r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

NFElem operator-(const NFElem& a, const NFElem& b) { return a + (-b); }

NFElem operator*(const NFElem& a, const NFElem& b) {
  if (a.K->d == 1) return NFElem(a.K, {a.c[0] * b.c[0]});
  return NFElem(a.K, mulmod_g(a.c, b.c, a.K->g));
}

NFElem operator*(const Rat& s, const NFElem& a) {
  NFElem r = a;
  for (auto& x : r.c) x *= s;
  return r;
}

std::string NFElem::str() const { return QPoly(c).str(K->var); }

NFElem pow(const NFElem& a, u64 e) {
  NFElem r = NFElem::from_rat(a.K, 1), b = a;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Rat res_norm(const NFElem& a, const CycNum& c) {
  return resultant(a.charpoly(), cyc_charpoly(c));
}

}  // namespace mfred
