#pragma once
#include <string>

#include "mfred/qexp.hpp"
#include "mfred/residues.hpp"

namespace mfred {

// A form congruent to 1 at a place above l, used to raise weights in the
// theta-operator argument. Weight k, level A.N, character chi.
struct ThetaLiftForm {
  QExp A;
  int k = 0;
  DirichletChar chi;
  std::string row;  // the construction used, e.g. "-2l*E_{l-1}"
};

bool is_bad(u64 l, u64 N);

// The lowest weight construction for (l, N). When l >= 5 divides N the
// character depends on the place: pass a context whose M is a multiple of
// l-1 (PreconditionError otherwise).
ThetaLiftForm select_A(u64 l, u64 N, size_t prec, const ResidueContext* place = nullptr);

// -504 E_6, the alternate for bad pairs
ThetaLiftForm bad_pair_alternate(size_t prec);

// a_0 = 1 and a_n = 0 mod the place for 1 <= n < prec. With no place given,
// the first place above l for the coefficient field is used. A coefficient
// that is not integral at the place raises IntegralityError.
bool verify_A_congruence(const ThetaLiftForm& A, u64 l, size_t prec,
                         const ResidueContext* place = nullptr);

struct SturmParams {
  int a = 0, b = 0, k = 0;
  Rat B;  // sturm_bound(N, k)
};

// N is the common level of the two forms
SturmParams sturm_params(int kf, int mf, int kg, int mg, u64 l, u64 N);

// N k / 12 prod_{p | N} (1 + 1/p)
Rat sturm_bound(u64 N, u64 k);

// prod_{p | n} (1 + 1/p) <= 2 log log n + 2.4, with the right side bounded
// below by outward rounding. n >= 2.
bool loglog_upper(u64 n);

}  // namespace mfred
