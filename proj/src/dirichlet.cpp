#include "mfred/dirichlet.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>

namespace mfred {

namespace {

std::mutex g_mu;
std::map<u64, std::shared_ptr<const UnitGroup>> g_groups;
std::map<u64, std::vector<DirichletChar>> g_prim;

// n = r mod pe, n = 1 mod q/pe
u64 crt_local(u64 r, u64 pe, u64 q) {
  u64 rest = q / pe;
  if (rest == 1) return r % q;
  // n = 1 + rest * t, need 1 + rest*t = r mod pe
  u64 inv = invmod(rest % pe, pe);
  u64 t = mulmod((r + pe - 1 % pe) % pe, inv, pe);
  return (1 + rest * t) % q;
}

}  // namespace

std::shared_ptr<const UnitGroup> UnitGroup::get(u64 q) {
  if (q == 0) throw PreconditionError("modulus must be positive");
  {
    std::lock_guard<std::mutex> lk(g_mu);
    auto it = g_groups.find(q);
    if (it != g_groups.end()) return it->second;
  }
  auto G = std::make_shared<UnitGroup>();
  G->q = q;
  for (auto& [p, e] : factor_u64(q)) {
    u64 pe = ipow(p, e);
    if (p == 2) {
      if (e == 1) continue;
      G->gens.push_back(crt_local(pe - 1, pe, q));
      G->ord.push_back(2);
      G->prime.push_back(2);
      G->local.push_back(pe - 1);
      if (e >= 3) {
        G->gens.push_back(crt_local(5, pe, q));
        G->ord.push_back(pe / 4);
        G->prime.push_back(2);
        G->local.push_back(5);
      }
    } else {
      u64 g = primitive_root_prime_power(p, e) % pe;
      G->gens.push_back(crt_local(g, pe, q));
      G->ord.push_back(pe / p * (p - 1));
      G->prime.push_back(p);
      G->local.push_back(g);
    }
  }
  for (u64 o : G->ord) G->exponent = lcm_u64(G->exponent, o);
  // discrete logarithm table by walking all exponent vectors
  G->dlog.assign(q, {});
  G->unit.assign(q, 0);
  size_t k = G->gens.size();
  std::vector<u64> t(k, 0);
  while (true) {
    u64 n = 1 % q;
    for (size_t i = 0; i < k; ++i) n = mulmod(n, powmod(G->gens[i], t[i], q), q);
    G->dlog[n] = t;
    G->unit[n] = 1;
    size_t i = 0;
    while (i < k && ++t[i] == G->ord[i]) t[i++] = 0;
    if (i == k) break;
  }
  std::lock_guard<std::mutex> lk(g_mu);
  g_groups[q] = G;
  return G;
}

void DirichletChar::finish() {
  const UnitGroup& G = *G_;
  order_ = 1;
  for (size_t i = 0; i < x_.size(); ++i) {
    x_[i] %= G.ord[i];
    order_ = lcm_u64(order_, G.ord[i] / gcd_u64(x_[i], G.ord[i]));
  }
  cond_ = 1;
  for (auto& [p, e] : factor_u64(q_)) {
    if (p == 2) {
      if (e == 1) continue;
      size_t i = std::find(G.prime.begin(), G.prime.end(), 2) - G.prime.begin();
      u64 xm1 = x_[i];
      u64 o5 = 1;
      if (e >= 3) o5 = G.ord[i + 1] / gcd_u64(x_[i + 1], G.ord[i + 1]);
      if (o5 > 1) {
        int v = 0;
        while ((1ULL << v) < o5) ++v;
        cond_ *= 1ULL << (2 + v);
      } else if (xm1) {
        cond_ *= 4;
      }
    } else {
      size_t i = std::find(G.prime.begin(), G.prime.end(), p) - G.prime.begin();
      u64 o = G.ord[i] / gcd_u64(x_[i], G.ord[i]);
      if (o > 1) cond_ *= ipow(p, 1 + valuation(o, p));
    }
  }
}

DirichletChar DirichletChar::from_exponents(u64 q, std::vector<u64> x) {
  DirichletChar c;
  c.q_ = q;
  c.G_ = UnitGroup::get(q);
  if (x.size() != c.G_->gens.size()) throw PreconditionError("exponent vector has wrong length");
  c.x_ = std::move(x);
  c.finish();
  return c;
}

DirichletChar DirichletChar::trivial(u64 q) {
  auto G = UnitGroup::get(q);
  return from_exponents(q, std::vector<u64>(G->gens.size(), 0));
}

DirichletChar DirichletChar::conrey(u64 q, u64 a) {
  if (gcd_u64(a % q, q) != 1 && q > 1)
    throw PreconditionError("Conrey index " + std::to_string(a) + " is not a unit mod " +
                            std::to_string(q));
  auto G = UnitGroup::get(q);
  std::vector<u64> x(G->gens.size(), 0);
  for (auto& [p, e] : factor_u64(q)) {
    u64 pe = ipow(p, e);
    const auto& t = G->dlog[crt_local(a % pe, pe, q)];
    for (size_t i = 0; i < x.size(); ++i)
      if (G->prime[i] == p) x[i] = t[i];
  }
  return from_exponents(q, x);
}

DirichletChar DirichletChar::from_angles(u64 q, const std::function<Rat(u64)>& angle) {
  auto G = UnitGroup::get(q);
  std::vector<u64> x(G->gens.size());
  for (size_t i = 0; i < x.size(); ++i) {
    Rat a = angle(G->gens[i]) * (long)G->ord[i];
    if (a.get_den() != 1) throw PreconditionError("character angle incompatible with generator order");
    mpz_class v = a.get_num();
    mpz_class o(std::to_string(G->ord[i]));
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), o.get_mpz_t());
    x[i] = v.get_ui();
  }
  return from_exponents(q, x);
}

std::optional<u64> DirichletChar::expo(i64 n) const {
  u64 r = (u64)mod_floor(n, (i64)q_);
  if (!G_->unit[r]) return std::nullopt;
  const auto& t = G_->dlog[r];
  u64 e = G_->exponent, a = 0;
  for (size_t i = 0; i < t.size(); ++i) a = (a + mulmod(x_[i] * (e / G_->ord[i]) % e, t[i], e)) % e;
  return a;
}

std::optional<Rat> DirichletChar::angle(i64 n) const {
  auto a = expo(n);
  if (!a) return std::nullopt;
  return ratio((long)*a, (long)G_->exponent);
}

CycNum DirichletChar::value(i64 n) const {
  auto a = expo(n);
  if (!a) return CycNum::zero(G_->exponent);
  return CycNum::zeta(G_->exponent, (i64)*a);
}

bool DirichletChar::is_even() const { return *expo(-1) == 0; }

u64 DirichletChar::conrey_index() const {
  u64 a = 1 % q_;
  for (auto& [p, e] : factor_u64(q_)) {
    u64 pe = ipow(p, e);
    u64 loc = 1 % pe;
    for (size_t i = 0; i < x_.size(); ++i)
      if (G_->prime[i] == p) loc = mulmod(loc, powmod(G_->local[i], x_[i], pe), pe);
    a = mulmod(a, crt_local(loc, pe, q_), q_);
  }
  return q_ == 1 ? 1 : a;
}

std::string DirichletChar::label() const {
  return std::to_string(q_) + "." + std::to_string(conrey_index());
}

DirichletChar DirichletChar::primitive_part() const {
  if (cond_ == q_) return *this;
  u64 c = cond_;
  return from_angles(c, [&](u64 h) {
    u64 n = h;
    while (gcd_u64(n, q_) != 1) n += c;
    return *angle((i64)n);
  });
}

DirichletChar DirichletChar::p_part(u64 p) const {
  int v = valuation(q_, p);
  if (v == 0) return trivial(1);
  u64 pe = ipow(p, v);
  return from_angles(pe, [&](u64 h) { return *angle((i64)crt_local(h, pe, q_)); });
}

DirichletChar DirichletChar::inverse() const {
  std::vector<u64> x(x_.size());
  for (size_t i = 0; i < x.size(); ++i) x[i] = (G_->ord[i] - x_[i]) % G_->ord[i];
  return from_exponents(q_, x);
}

DirichletChar DirichletChar::power(i64 s) const {
  std::vector<u64> x(x_.size());
  for (size_t i = 0; i < x.size(); ++i)
    x[i] = (u64)mod_floor((i64)((__int128)x_[i] * s % (i64)G_->ord[i]), (i64)G_->ord[i]);
  return from_exponents(q_, x);
}

DirichletChar DirichletChar::induce(u64 m) const {
  if (m % q_) throw PreconditionError("induce: modulus does not divide target");
  if (m == q_) return *this;
  return from_angles(m, [&](u64 h) { return *angle((i64)(h % q_)); });
}

DirichletChar operator*(const DirichletChar& a, const DirichletChar& b) {
  u64 m = lcm_u64(a.q_, b.q_);
  return DirichletChar::from_angles(m, [&](u64 h) {
    Rat s = *a.angle((i64)(h % a.q_)) + *b.angle((i64)(h % b.q_));
    return s;
  });
}

bool DirichletChar::same_primitive(const DirichletChar& o) const {
  return primitive_part() == o.primitive_part();
}

std::vector<DirichletChar> enumerate_chars(u64 q) {
  auto G = UnitGroup::get(q);
  std::vector<DirichletChar> out;
  size_t k = G->gens.size();
  std::vector<u64> t(k, 0);
  while (true) {
    out.push_back(DirichletChar::from_exponents(q, t));
    size_t i = 0;
    while (i < k && ++t[i] == G->ord[i]) t[i++] = 0;
    if (i == k) break;
  }
  std::sort(out.begin(), out.end(), [](const DirichletChar& a, const DirichletChar& b) {
    return a.conrey_index() < b.conrey_index();
  });
  return out;
}

std::vector<DirichletChar> enumerate_primitive(u64 c) {
  {
    std::lock_guard<std::mutex> lk(g_mu);
    auto it = g_prim.find(c);
    if (it != g_prim.end()) return it->second;
  }
  std::vector<DirichletChar> out;
  for (auto& ch : enumerate_chars(c))
    if (ch.is_primitive()) out.push_back(ch);
  std::lock_guard<std::mutex> lk(g_mu);
  g_prim[c] = out;
  return out;
}

std::pair<DirichletChar, DirichletChar> teichmueller_component(const DirichletChar& chi, u64 l) {
  u64 o = chi.order();
  u64 op = prime_to_part(o, l);
  u64 ol = o / op;
  u64 s;
  if (ol == 1)
    s = 1;
  else if (op == 1)
    s = 0;
  else
    s = (ol * invmod(ol % op, op)) % o;
  DirichletChar pp = chi.power((i64)s);
  return {pp, chi * pp.inverse()};
}

std::vector<std::pair<DirichletChar, DirichletChar>> enumerate_primitive_pairs(
    u64 N, const DirichletChar& target, const std::function<bool(const DirichletChar&)>& pred,
    u64 exempt) {
  std::vector<std::pair<DirichletChar, DirichletChar>> out;
  for (u64 c1 : divisors(N)) {
    for (const DirichletChar& e1 : enumerate_primitive(c1)) {
      if (pred && !pred(e1)) continue;
      DirichletChar e2 = (target * e1.inverse()).primitive_part();
      u64 c2 = e2.conductor();
      if (N % (c1 * c2)) continue;
      u64 rest = N / (c1 * c2);
      bool ok = true;
      for (u64 p : prime_divisors(rest))
        if (p != exempt && valuation(rest, p) > 2) ok = false;
      if (!ok || (pred && !pred(e2))) continue;
      out.push_back({e1, e2});
    }
  }
  return out;
}

DirichletChar parse_char(const std::string& s0) {
  std::string s;
  for (char c : s0)
    if (!std::isspace((unsigned char)c)) s += c;
  auto num = [&](const std::string& t) -> u64 {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
      throw DataError("malformed character '" + s0 + "'");
    return std::stoull(t);
  };
  try {
    if (s == "1") return DirichletChar::trivial(1);
    if (s.rfind("eps", 0) == 0) {
      size_t lp = s.find('('), rp = s.find(')');
      if (lp == std::string::npos || rp != s.size() - 1)
        throw DataError("malformed character '" + s0 + "'");
      return DirichletChar::conrey(num(s.substr(3, lp - 3)), num(s.substr(lp + 1, rp - lp - 1)));
    }
    size_t dot = s.find('.');
    if (dot == std::string::npos) throw DataError("malformed character '" + s0 + "'");
    return DirichletChar::conrey(num(s.substr(0, dot)), num(s.substr(dot + 1)));
  } catch (const PreconditionError& e) {
    throw DataError(e.what());
  }
}

}  // namespace mfred
