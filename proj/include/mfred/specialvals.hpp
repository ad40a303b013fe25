#pragma once
#include "mfred/common.hpp"
#include "mfred/cyclo.hpp"
#include "mfred/dirichlet.hpp"
#include "mfred/poly.hpp"

namespace mfred {

// Classical B_j with B_1 = -1/2; cached, thread-safe.
Rat bernoulli_number(unsigned j);
QPoly bernoulli_poly(unsigned m);

// B_{m,chi} = c^{m-1} sum_{a=1}^{c} chi(a) B_m(a/c), c = modulus of chi as given.
// With this convention B_{1,1} = +1/2. The value lies in Q(zeta_{ord chi}).
CycNum gen_bernoulli(unsigned m, const DirichletChar& chi);

// Product of primes l with (l-1) | m; m even and >= 2.
u64 von_staudt_denominator(unsigned m);

// sum_{n=1}^{c} chi(n) e(n/c) in Q(zeta_{lcm(c, ord chi)}); chi primitive.
CycNum gauss_sum(const DirichletChar& chi);

}  // namespace mfred
