#include "mfred/thetasturm.hpp"

#include <mpfr.h>

namespace mfred {

namespace {

DirichletChar one() { return DirichletChar::trivial(1); }

ThetaLiftForm make(const CycNum& s, QExp E, std::string row) {
  ThetaLiftForm r;
  r.A = s * E;
  r.k = r.A.k;
  r.chi = r.A.chi;
  r.row = std::move(row);
  return r;
}

CycNum rat(const Rat& x) { return CycNum::from_rat(1, x); }

u64 least_prime_divisor(u64 N, const std::function<bool(u64)>& ok) {
  for (u64 p : prime_divisors(N))
    if (ok(p)) return p;
  return 0;
}

}  // namespace

bool is_bad(u64 l, u64 N) {
  if (l == 2) return N == 1;
  if (l != 3) return false;
  for (u64 p : prime_divisors(N))
    if (p % 9 != 1) return false;
  return true;
}

ThetaLiftForm select_A(u64 l, u64 N, size_t prec, const ResidueContext* place) {
  if (!is_prime_u64(l) || N == 0) throw PreconditionError("select_A: l prime, N >= 1");
  if (l >= 5) {
    if (N % l != 0)
      return make(rat(-2 * (long)l), eisenstein((int)l - 1, one(), one(), prec), "-2l*E_{l-1}");
    if (!place || place->M % (l - 1) != 0)
      throw PreconditionError("select_A: a place with M divisible by l-1 is required");
    // chi_L: the character mod l whose value at the generator reduces to it
    const UnitGroup& G = *UnitGroup::get(l);
    GF::E g = place->from_int((i64)G.gens[0]);
    i64 a = -1;
    for (u64 j = 0; j + 1 < l && a < 0; ++j)
      if (place->root(l - 1, (i64)j) == g) a = (i64)j;
    if (a < 0) throw InvariantError("select_A: no Teichmueller lift found");
    DirichletChar chiL = DirichletChar::from_exponents(l, {(u64)a});
    return make(rat(2 * (long)l), eisenstein(1, one(), chiL.inverse(), prec),
                "2l*E_1^{1,chi_L^-1}");
  }
  if (l == 2) {
    if (N % 4 == 0)
      return make(rat(4), eisenstein(1, one(), DirichletChar::conrey(4, 3), prec), "4*E_1^{1,chi_4}");
    if (u64 p = least_prime_divisor(N, [](u64 q) { return q != 2; })) {
      int m = valuation(p - 1, 2);
      u64 o = u64(1) << m;
      DirichletChar chi = DirichletChar::from_exponents(p, {(p - 1) / o});
      return make(CycNum::zeta(o, 1) - CycNum::one(o), eisenstein(1, one(), chi, prec),
                  "(zeta-1)*E_1^{1,chi_N}");
    }
    if (N == 2)
      return make(rat(24), eisenstein(2, one(), DirichletChar::trivial(2), prec), "24*E_2^{1,1_(2)}");
    return make(rat(240), eisenstein(4, one(), one(), prec), "240*E_4");
  }
  // l = 3
  if (N % 3 == 0)
    return make(rat(6), eisenstein(1, one(), DirichletChar::conrey(3, 2), prec), "6*E_1^{1,chi_3}");
  if (u64 p = least_prime_divisor(N, [](u64 q) { return q % 3 == 2; }))
    return make(rat(ratio(24, (long)p - 1)), eisenstein(2, one(), DirichletChar::trivial(p), prec),
                "24/(p-1)*E_2^{1,1_(p)}");
  // 3 exactly divides p - 1
  if (u64 p = least_prime_divisor(N, [](u64 q) { return q % 9 == 4 || q % 9 == 7; })) {
    DirichletChar chi = DirichletChar::from_exponents(p, {(p - 1) / 3});
    QExp D = eisenstein(2, one(), chi, prec) - eisenstein(2, chi, one(), prec);
    return make(rat(ratio(3, (long)p - 1)), D, "3/(p-1)*(E_2^{1,chi}-E_2^{chi,1})");
  }
  return make(rat(240), eisenstein(4, one(), one(), prec), "240*E_4");
}

ThetaLiftForm bad_pair_alternate(size_t prec) {
  return make(rat(-504), eisenstein(6, one(), one(), prec), "-504*E_6");
}

bool verify_A_congruence(const ThetaLiftForm& A, u64 l, size_t prec, const ResidueContext* place) {
  std::vector<ResidueContext> own;
  if (!place) {
    own = residue_contexts(rational_prime(l), A.A.L);
    place = &own.at(0);
  }
  if (prec > A.A.prec()) throw InsufficientCoefficients(prec, A.A.prec());
  const GF& F = place->F;
  if (prec > 0 && place->reduce(A.A.a[0]) != F.one()) return false;
  for (size_t n = 1; n < prec; ++n)
    if (!F.is_zero(place->reduce(A.A.a[n]))) return false;
  return true;
}

SturmParams sturm_params(int kf, int mf, int kg, int mg, u64 l, u64 N) {
  SturmParams s;
  bool bad = is_bad(l, N);
  s.a = (bad && mod_floor(kf + 2 * mf - kg - 2 * mg - 2, 4) == 0) ? 4 : 0;
  if (l == 2 && N == 2)
    s.b = 4;
  else if (N % l == 0)
    s.b = 3;
  else if (bad)
    s.b = 6;
  else
    s.b = (int)l + 1;
  s.k = s.a + std::max(kf + s.b * mf, kg + s.b * mg);
  s.B = sturm_bound(N, (u64)s.k);
  return s;
}

Rat sturm_bound(u64 N, u64 k) {
  Rat B(mpz_class(std::to_string(N)) * mpz_class(std::to_string(k)), 12);
  B.canonicalize();
  for (u64 p : prime_divisors(N)) B *= ratio((long)p + 1, (long)p);
  return B;
}

bool loglog_upper(u64 n) {
  if (n < 2) throw PreconditionError("loglog_upper: n >= 2");
  Rat lhs(1);
  for (u64 p : prime_divisors(n)) lhs *= ratio((long)p + 1, (long)p);
  // lower bound for 2 log log n + 12/5; every step rounds down and log is increasing
  mpfr_t x, c;
  mpfr_inits2(128, x, c, (mpfr_ptr)0);
  mpz_class nz(std::to_string(n));
  mpfr_set_z(x, nz.get_mpz_t(), MPFR_RNDD);
  mpfr_log(x, x, MPFR_RNDD);
  mpfr_log(x, x, MPFR_RNDD);
  mpfr_mul_ui(x, x, 2, MPFR_RNDD);
  Rat twelve_fifths(12, 5);
  mpfr_set_q(c, twelve_fifths.get_mpq_t(), MPFR_RNDD);
  mpfr_add(x, x, c, MPFR_RNDD);
  bool ok = mpfr_cmp_q(x, lhs.get_mpq_t()) >= 0;
  mpfr_clears(x, c, (mpfr_ptr)0);
  return ok;
}

}  // namespace mfred
