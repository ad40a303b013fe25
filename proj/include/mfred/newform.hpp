#pragma once
#include <iosfwd>
#include <string>
#include <vector>

#include "mfred/dirichlet.hpp"
#include "mfred/numfield.hpp"

namespace mfred {

// A newform f in S_k(N, eps) given by its coefficients a_0 .. a_nmax in K_f.
// The file format is described in docs/newform-format.md.
struct NewformData {
  int format = 1;
  std::string label;
  u64 N = 1;
  int k = 2;
  DirichletChar eps;
  NFPtr K;
  std::vector<NFElem> chargen;  // eps at the generators of (Z/qZ)^x, q = modulus
  std::vector<NFElem> a;
  std::vector<std::string> notes;  // comment lines, kept for the round trip

  u64 nmax() const { return a.empty() ? 0 : a.size() - 1; }
  const NFElem& coeff(u64 n) const;  // InsufficientCoefficients past nmax
  NFElem eps_value(i64 n) const;     // 0 when gcd(n, N) > 1
};

NewformData parse_newform(std::istream& in, const std::string& source = "<input>");
NewformData load_newform(const std::string& path);
void write_newform(const NewformData& f, std::ostream& out);

// Structural checks run by the loaders; DataError with a specific message.
void validate_newform(const NewformData& f);

}  // namespace mfred
