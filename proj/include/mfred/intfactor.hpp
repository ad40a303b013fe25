#pragma once
#include <utility>
#include <vector>

#include "mfred/common.hpp"

namespace mfred {

// Factor |n| (n != 0): trial division to 10^6, then Pollard-Brent. Throws
// InvariantError if a composite cofactor resists the rho stage.
std::vector<std::pair<mpz_class, int>> factor_mpz(const mpz_class& n);
std::vector<mpz_class> prime_factors_mpz(const mpz_class& n);

}  // namespace mfred
