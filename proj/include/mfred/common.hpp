#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace mfred {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using Rat = mpq_class;

// Error taxonomy. The CLI maps these onto exit codes 2/3/4.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};
struct IntegralityError : Error {
  using Error::Error;
};
struct InvariantError : Error {
  using Error::Error;
};
struct InsufficientCoefficients : Error {
  InsufficientCoefficients(u64 need, u64 have)
      : Error("need more coefficients: bound " + std::to_string(need) + " exceeds nmax " +
              std::to_string(have)),
        required(need), available(have) {}
  u64 required, available;
};

#define MFRED_CHECK(cond, msg)                         \
  do {                                                 \
    if (!(cond)) throw ::mfred::InvariantError(msg);   \
  } while (0)

// small integer helpers
u64 gcd_u64(u64 a, u64 b);
u64 lcm_u64(u64 a, u64 b);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
u64 invmod(u64 a, u64 m);  // throws if not invertible
i64 mod_floor(i64 a, i64 m);
bool is_prime_u64(u64 n);
std::vector<std::pair<u64, int>> factor_u64(u64 n);
std::vector<u64> prime_divisors(u64 n);
std::vector<u64> divisors(u64 n);
std::vector<u64> primes_upto(u64 n);
u64 euler_phi(u64 n);
int valuation(u64 n, u64 p);
u64 ipow(u64 b, unsigned e);
u64 prime_to_part(u64 n, u64 p);  // n with all factors p removed
u64 multiplicative_order(u64 a, u64 m);
u64 primitive_root_prime_power(u64 p, int e);  // least generator, p odd
u64 floor_rat(const Rat& r);                   // floor of a non-negative rational

// mpq_class(n, d) does not canonicalize; use this instead.
inline Rat ratio(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r);
Rat parse_rat(const std::string& s);  // "a" or "a/b"; throws DataError

}  // namespace mfred
