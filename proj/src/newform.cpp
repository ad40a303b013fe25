#include "mfred/newform.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace mfred {

namespace {

struct LineReader {
  std::istream& in;
  std::string source;
  int lineno = 0;
  std::vector<std::string> comments;

  // next non-empty, non-comment line split into tokens; empty at EOF
  std::vector<std::string> next() {
    std::string line;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      if (line[first] == '#') {
        comments.push_back(line.substr(first));
        continue;
      }
      std::istringstream ss(line);
      std::vector<std::string> tok;
      for (std::string t; ss >> t;) tok.push_back(t);
      return tok;
    }
    return {};
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw DataError(source + ":" + std::to_string(lineno) + ": " + msg);
  }

  std::vector<std::string> expect(const std::string& key, size_t min_args) {
    auto t = next();
    if (t.empty()) fail("unexpected end of file, expected '" + key + "'");
    if (t[0] != key) fail("expected '" + key + "', found '" + t[0] + "'");
    if (t.size() < min_args + 1) fail("'" + key + "' needs " + std::to_string(min_args) + " values");
    return t;
  }

  u64 to_u64(const std::string& s) const {
    try {
      size_t pos;
      unsigned long long v = std::stoull(s, &pos);
      if (pos != s.size() || s[0] == '-') throw 0;
      return v;
    } catch (...) {
      fail("not a non-negative integer: " + s);
    }
  }

  Rat to_rat(const std::string& s) const {
    try {
      return parse_rat(s);
    } catch (const DataError&) {
      fail("not a rational number: " + s);
    }
  }

  // "<n> : c_1 ... c_d" starting at token i
  std::vector<Rat> coords(const std::vector<std::string>& t, size_t i, int d) const {
    if (t.size() != i + 1 + (size_t)d || t[i] != ":")
      fail("expected ':' followed by " + std::to_string(d) + " coordinates");
    std::vector<Rat> c;
    for (size_t j = i + 1; j < t.size(); ++j) c.push_back(to_rat(t[j]));
    return c;
  }
};

bool integral_vec(const std::vector<Rat>& v) {
  for (auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

// x has multiplicative order exactly n
bool has_order(const NFElem& x, u64 n) {
  NFElem one = NFElem::from_rat(x.K, 1);
  if (!(pow(x, n) == one)) return false;
  for (u64 p : prime_divisors(n))
    if (pow(x, n / p) == one) return false;
  return true;
}

}  // namespace

const NFElem& NewformData::coeff(u64 n) const {
  if (n >= a.size()) throw InsufficientCoefficients(n, nmax());
  return a[n];
}

NFElem NewformData::eps_value(i64 n) const {
  u64 q = eps.modulus();
  const UnitGroup& G = eps.group();
  if (gcd_u64((u64)mod_floor(n, (i64)N), N) != 1) return NFElem::from_rat(K, 0);
  u64 r = (u64)mod_floor(n, (i64)q);
  NFElem v = NFElem::from_rat(K, 1);
  for (size_t i = 0; i < G.gens.size(); ++i) v = v * pow(chargen[i], G.dlog[r][i]);
  return v;
}

NewformData parse_newform(std::istream& in, const std::string& source) {
  LineReader rd{in, source, 0, {}};
  NewformData f;
  auto t = rd.expect("format", 1);
  f.format = (int)rd.to_u64(t[1]);
  if (f.format != 1) rd.fail("unsupported format version " + t[1]);
  f.label = rd.expect("label", 1)[1];
  f.N = rd.to_u64(rd.expect("level", 1)[1]);
  if (f.N == 0) rd.fail("level must be positive");
  f.k = (int)rd.to_u64(rd.expect("weight", 1)[1]);
  if (f.k < 1) rd.fail("weight must be positive");

  std::string lab = rd.expect("character", 1)[1];
  auto dot = lab.find('.');
  if (dot == std::string::npos) rd.fail("character must be a Conrey label q.a");
  u64 q = rd.to_u64(lab.substr(0, dot)), ca = rd.to_u64(lab.substr(dot + 1));
  if (q == 0 || f.N % q != 0) rd.fail("character modulus must divide the level");
  try {
    f.eps = DirichletChar::conrey(q, ca);
  } catch (const Error& e) {
    rd.fail(std::string("bad character label: ") + e.what());
  }

  t = rd.expect("field", 2);
  std::vector<Rat> g;
  for (size_t i = 1; i < t.size(); ++i) g.push_back(rd.to_rat(t[i]));
  int d = (int)g.size() - 1;
  std::string var = rd.expect("var", 1)[1];
  t = rd.expect("basis", 1);
  if ((int)rd.to_u64(t[1]) != d) rd.fail("basis size must equal the field degree");
  RatMat W;
  for (int i = 0; i < d; ++i) {
    auto row = rd.next();
    if ((int)row.size() != d) rd.fail("basis row needs " + std::to_string(d) + " entries");
    std::vector<Rat> r;
    for (auto& s : row) r.push_back(rd.to_rat(s));
    W.push_back(r);
  }
  try {
    f.K = NumberField::make(QPoly(g), W, var);
  } catch (const DataError& e) {
    rd.fail(e.what());
  }

  const UnitGroup& G = f.eps.group();
  t = rd.expect("chargens", 1);
  if (rd.to_u64(t[1]) != G.gens.size())
    rd.fail("character mod " + std::to_string(q) + " needs " + std::to_string(G.gens.size()) +
            " generator values");
  for (size_t i = 0; i < G.gens.size(); ++i) {
    auto row = rd.next();
    if (row.empty()) rd.fail("missing generator value");
    if (rd.to_u64(row[0]) != G.gens[i])
      rd.fail("generator " + std::to_string(i + 1) + " must be " + std::to_string(G.gens[i]));
    f.chargen.push_back(NFElem(f.K, rd.coords(row, 1, d)));
  }

  u64 nmax = rd.to_u64(rd.expect("nmax", 1)[1]);
  for (u64 n = 0; n <= nmax; ++n) {
    auto row = rd.next();
    if (row.empty()) rd.fail("unexpected end of file, nmax is " + std::to_string(nmax) + " but a_" + std::to_string(n) + " is missing");
    if (row.size() < 2 || row[0] != "a") rd.fail("expected coefficient line 'a " + std::to_string(n) + " : ...'");
    if (rd.to_u64(row[1]) != n) rd.fail("coefficients must be listed in order, expected a " + std::to_string(n));
    f.a.push_back(NFElem(f.K, rd.coords(row, 2, d)));
  }
  if (!rd.next().empty()) rd.fail("trailing data after the last coefficient");
  f.notes = rd.comments;
  validate_newform(f);
  return f;
}

NewformData load_newform(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open newform file " + path);
  return parse_newform(in, path);
}

void write_newform(const NewformData& f, std::ostream& out) {
  auto coords = [&](const NFElem& x) {
    std::string s = ":";
    for (auto& c : x.c) s += " " + rat_str(c);
    return s;
  };
  for (auto& n : f.notes) out << n << "\n";
  out << "format " << f.format << "\n";
  out << "label " << f.label << "\n";
  out << "level " << f.N << "\n";
  out << "weight " << f.k << "\n";
  out << "character " << f.eps.label() << "\n";
  out << "field";
  std::vector<Rat> g = f.K->g.c;
  for (auto& c : g) out << " " << rat_str(c);
  out << "\nvar " << f.K->var << "\n";
  out << "basis " << f.K->d << "\n";
  for (auto& row : f.K->W) {
    for (size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << rat_str(row[j]);
    out << "\n";
  }
  const UnitGroup& G = f.eps.group();
  out << "chargens " << G.gens.size() << "\n";
  for (size_t i = 0; i < G.gens.size(); ++i) out << G.gens[i] << " " << coords(f.chargen[i]) << "\n";
  out << "nmax " << f.nmax() << "\n";
  for (size_t n = 0; n < f.a.size(); ++n) out << "a " << n << " " << coords(f.a[n]) << "\n";
}

void validate_newform(const NewformData& f) {
  auto fail = [&](const std::string& m) { throw DataError(f.label + ": " + m); };
  if (f.a.size() < 2) fail("at least a_0 and a_1 are required");
  NFPtr K = f.K;
  if (!(f.a[1] == NFElem::from_rat(K, 1))) fail("a_1 must be 1");
  if (!f.a[0].is_zero()) fail("a_0 must be 0 for a cusp form");
  for (size_t n = 0; n < f.a.size(); ++n)
    if (!integral_vec(f.a[n].to_omega())) fail("a_" + std::to_string(n) + " is not integral");

  // character values: roots of unity of the orders prescribed by the label
  const UnitGroup& G = f.eps.group();
  if (f.chargen.size() != G.gens.size()) fail("wrong number of character generator values");
  for (size_t i = 0; i < G.gens.size(); ++i) {
    u64 o = G.ord[i] / gcd_u64(G.ord[i], f.eps.exps()[i]);
    if (!has_order(f.chargen[i], o))
      fail("character value at " + std::to_string(G.gens[i]) + " is not a root of unity of order " +
           std::to_string(o) + " as the label " + f.eps.label() + " requires");
  }
  if (f.eps.is_even() != (f.k % 2 == 0)) fail("character parity does not match the weight");

  // multiplicativity on coprime pairs, and the Hecke recursion at p^2
  std::mt19937_64 rng(f.N * 1000 + f.k);
  u64 nm = f.nmax();
  int done = 0;
  for (int tries = 0; tries < 2000 && done < 20 && nm >= 6; ++tries) {
    u64 m = 2 + rng() % (nm / 2 - 1), n = 2 + rng() % (nm / 2 - 1);
    if (m * n > nm || gcd_u64(m, n) != 1) continue;
    if (!(f.a[m * n] == f.a[m] * f.a[n]))
      fail("a_" + std::to_string(m * n) + " != a_" + std::to_string(m) + " a_" + std::to_string(n));
    ++done;
  }
  for (u64 p : primes_upto(nm)) {
    if (p * p > nm) break;
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, f.k - 1);
    NFElem want = f.a[p] * f.a[p] - Rat(pk) * f.eps_value((i64)p);
    if (!(f.a[p * p] == want))
      fail("a_" + std::to_string(p * p) + " does not satisfy the Hecke relation with the character");
  }
}

}  // namespace mfred
