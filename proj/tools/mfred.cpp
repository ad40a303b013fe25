// mfred: reducible residual representations of newforms, and the bounds
// for dihedral and exotic projective images.
#include <iostream>

#include "CLI11.hpp"
#include "mfred/exceptional.hpp"
#include "mfred/qexp.hpp"
#include "mfred/report.hpp"
#include "mfred/specialvals.hpp"
#include "mfred/thetasturm.hpp"

using namespace mfred;

namespace {

struct Globals {
  std::string emit = "table";
  unsigned jobs = 1;
  bool conservative = false;
  std::string places = "all";
  bool trace = false;
};

CheckOptions check_options(const Globals& g) {
  if (g.places != "all" && g.places != "first") throw PreconditionError("--places must be all or first");
  CheckOptions o;
  o.conservative = g.conservative;
  o.all_places = g.places == "all";
  return o;
}

int cmd_reducible(const Globals& g, const std::string& path, u64 max_ell) {
  NewformData f = load_newform(path);
  ReducibleOptions o;
  o.check = check_options(g);
  o.max_ell = max_ell;
  o.jobs = std::max(1u, g.jobs);
  std::vector<CheckTrace> trace;
  auto ws = reducible_set(f, o, g.trace ? &trace : nullptr);
  std::cout << render_reducible(f, ws, g.trace ? &trace : nullptr, parse_emit(g.emit));
  return 0;
}

struct BoundArgs {
  std::string path;
  u64 level = 0;
  int weight = 0;
  std::string chr = "1";
  int degree = 0;
  bool cm = false;
};

int cmd_bounds(const Globals& g, const BoundArgs& a) {
  BoundInput in;
  if (!a.path.empty()) {
    NewformData f = load_newform(a.path);
    in.N = f.N;
    in.k = f.k;
    in.eps = f.eps;
    in.degree = f.K->d;
  } else {
    if (a.level == 0 || a.weight == 0) throw PreconditionError("bounds needs a newform file or --level and --weight");
    in.N = a.level;
    in.k = a.weight;
    in.eps = parse_char(a.chr);
    if (in.N % in.eps.modulus() != 0) throw PreconditionError("character modulus must divide the level");
    in.eps = in.eps.induce(in.N);
  }
  if (a.degree > 0) in.degree = a.degree;
  in.cm = a.cm;
  std::cout << render_bounds(in, bound_report(in.N, in.k, in.eps, in.degree, in.cm), parse_emit(g.emit));
  return 0;
}

int cmd_check(const Globals& g, const std::string& path, const std::string& ideal, const std::string& quad) {
  NewformData f = load_newform(path);
  PrimePtr P = find_prime(f.K, ideal);
  Quadruple q = parse_quadruple(quad);
  auto rs = r_nkeps(f, P);
  if (std::find(rs.begin(), rs.end(), q) == rs.end())
    throw PreconditionError(q.str() + " is not in R at " + P->display);
  CheckOptions o = check_options(g);
  std::vector<CheckTrace> trace;
  // the big route only covers (0, k-1) with e1 e2 = eps; the small route is
  // valid for every l
  auto sp = small_primes(f.N, f.k);
  bool big = std::find(sp.begin(), sp.end(), P->l) == sp.end() && q.m1 == 0 && q.m2 == f.k - 1 &&
             (q.e1 * q.e2).same_primitive(f.eps);
  auto w = big ? check_reducible_big(f, P, q.e1, q.e2, o, g.trace ? &trace : nullptr)
               : check_reducible_small(f, P, q, o, g.trace ? &trace : nullptr);
  Emit e = parse_emit(g.emit);
  std::cout << render_check(P->display, q, w, e);
  if (g.trace) std::cout << render_trace(trace, e);
  return 0;
}

struct RsetArgs {
  std::string path;
  u64 level = 0;
  int weight = 0;
  std::string chr = "1";
  std::string ideal;
};

int cmd_rset(const Globals& g, const RsetArgs& a) {
  if (a.ideal.empty()) throw PreconditionError("rset needs --ideal");
  std::vector<Quadruple> rs;
  PrimePtr P;
  if (!a.path.empty()) {
    NewformData f = load_newform(a.path);
    P = find_prime(f.K, a.ideal);
    rs = r_nkeps(f, P);
  } else {
    if (a.level == 0 || a.weight == 0) throw PreconditionError("rset needs a newform file or --level and --weight");
    DirichletChar eps = parse_char(a.chr);
    if (a.level % eps.modulus() != 0) throw PreconditionError("character modulus must divide the level");
    eps = eps.induce(a.level);
    CharField cf = character_field(eps);
    P = find_prime(cf.K, a.ideal);
    rs = r_nkeps(a.level, a.weight, eps, cf.gens, P);
  }
  std::cout << render_rset(P->display, P->l, rs, parse_emit(g.emit));
  return 0;
}

struct SturmArgs {
  u64 level = 1;
  int weight = 2;
  u64 ell = 0;
  int kf = 0, mf = 0, kg = 0, mg = 0;
};

int cmd_sturm(const SturmArgs& a) {
  std::cout << "B(" << a.level << "," << a.weight << ") = " << rat_str(sturm_bound(a.level, a.weight)) << "\n";
  if (a.ell) {
    auto s = sturm_params(a.kf, a.mf, a.kg, a.mg, a.ell, a.level);
    std::cout << "l=" << a.ell << " (k_f,m_f)=(" << a.kf << "," << a.mf << ") (k_g,m_g)=(" << a.kg << "," << a.mg
              << "): a=" << s.a << " b=" << s.b << " k~=" << s.k << " B=" << rat_str(s.B) << "\n";
  } else {
    std::cout << "(a,b) by l for (k_f,m_f) = (" << a.weight << ",1) against (2,1):\n";
    for (u64 l : {2, 3, 5, 7, 11, 13}) {
      auto s = sturm_params(a.weight, 1, 2, 1, l, a.level);
      std::cout << "  l=" << l << " a=" << s.a << " b=" << s.b << " k~=" << s.k << " B=" << rat_str(s.B) << "\n";
    }
  }
  return 0;
}

int cmd_bernoulli(unsigned m, const std::string& chr) {
  DirichletChar chi = parse_char(chr);
  CycNum b = gen_bernoulli(m, chi);
  std::cout << "B_{" << m << "," << chi.label() << "} = " << b.str() << "\n";
  if (b.n > 2) std::cout << "norm = " << rat_str(cyc_norm(b)) << "\n";
  return 0;
}

int cmd_gauss(const std::string& chr) {
  DirichletChar chi = parse_char(chr);
  if (chi.conductor() != chi.modulus()) throw PreconditionError("gauss sums are taken for primitive characters");
  CycNum w = gauss_sum(chi);
  std::cout << "W(" << chi.label() << ") = " << w.str() << "\n";
  std::cout << "W * conj(W) = " << (w * w.conj()).str() << "\n";
  std::cout << "norm = " << rat_str(cyc_norm(w)) << "\n";
  return 0;
}

int cmd_eisenstein(int k, const std::string& c1, const std::string& c2, size_t prec) {
  DirichletChar e1 = parse_char(c1), e2 = parse_char(c2);
  QExp E = eisenstein(k, e1, e2, prec);
  // one line per coefficient: power-basis coordinates in Q(zeta_L)
  std::cout << "eisenstein weight " << k << " chars " << e1.label() << " " << e2.label() << " level " << E.N
            << " zeta " << E.L << " prec " << E.prec() << "\n";
  for (size_t n = 0; n < E.prec(); ++n) {
    std::cout << "a " << n << " :";
    for (auto& c : E.a[n].c) std::cout << " " << rat_str(c);
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mfred: exceptional primes of newforms"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--emit", g.emit, "table or json")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--jobs", g.jobs, "worker threads");
  app.add_flag("--conservative", g.conservative, "Sturm weight with max(m1,m2)");
  app.add_option("--places", g.places, "all or first")->check(CLI::IsMember({"all", "first"}));
  app.add_flag("--trace", g.trace, "print every congruence row");

  std::string path;
  u64 max_ell = 0;
  auto* red = app.add_subcommand("reducible", "reducible residual representations of a newform");
  red->add_option("newform", path, "newform file")->required();
  red->add_option("--max-ell", max_ell, "skip residue characteristics above this");

  BoundArgs ba;
  auto* bounds = app.add_subcommand("bounds", "candidate primes for reducible, dihedral and exotic images");
  bounds->add_option("newform", ba.path, "newform file");
  bounds->add_option("--level", ba.level);
  bounds->add_option("--weight", ba.weight);
  bounds->add_option("--char", ba.chr, "Conrey label q.a");
  bounds->add_option("--degree", ba.degree, "[K_f:Q]");
  bounds->add_flag("--cm", ba.cm);

  std::string ideal, quad;
  auto* check = app.add_subcommand("check", "test one quadruple at one prime ideal");
  check->add_option("newform", path, "newform file")->required();
  check->add_option("--ideal", ideal, "e.g. (3,x^2+1)")->required();
  check->add_option("--quad", quad, "e1,e2,m1,m2")->required();

  RsetArgs ra;
  auto* rset = app.add_subcommand("rset", "the quadruples to test at a prime ideal");
  rset->add_option("newform", ra.path, "newform file");
  rset->add_option("--level", ra.level);
  rset->add_option("--weight", ra.weight);
  rset->add_option("--char", ra.chr, "Conrey label q.a");
  rset->add_option("--ideal", ra.ideal, "prime ideal of K_f, or of Q(eps) in the variable z");

  SturmArgs sa;
  auto* sturm = app.add_subcommand("sturm", "Sturm bounds");
  sturm->add_option("--level", sa.level);
  sturm->add_option("--weight", sa.weight);
  sturm->add_option("--ell", sa.ell);
  sturm->add_option("--kf", sa.kf);
  sturm->add_option("--mf", sa.mf);
  sturm->add_option("--kg", sa.kg);
  sturm->add_option("--mg", sa.mg);

  unsigned bm = 1;
  std::string bchr = "1";
  auto* bern = app.add_subcommand("bernoulli", "generalized Bernoulli number");
  bern->add_option("-m", bm)->required();
  bern->add_option("--char", bchr);

  std::string gchr;
  auto* gauss = app.add_subcommand("gauss", "Gauss sum of a primitive character");
  gauss->add_option("--char", gchr)->required();

  int ek = 2;
  std::string ec1 = "1", ec2 = "1";
  size_t eprec = 20;
  auto* eis = app.add_subcommand("eisenstein", "q-expansion of an Eisenstein series");
  eis->add_option("--weight", ek)->required();
  eis->add_option("--chi1", ec1);
  eis->add_option("--chi2", ec2);
  eis->add_option("--prec", eprec);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*red) return cmd_reducible(g, path, max_ell);
    if (*bounds) return cmd_bounds(g, ba);
    if (*check) return cmd_check(g, path, ideal, quad);
    if (*rset) return cmd_rset(g, ra);
    if (*sturm) return cmd_sturm(sa);
    if (*bern) return cmd_bernoulli(bm, bchr);
    if (*gauss) return cmd_gauss(gchr);
    if (*eis) return cmd_eisenstein(ek, ec1, ec2, eprec);
  } catch (const InsufficientCoefficients& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
