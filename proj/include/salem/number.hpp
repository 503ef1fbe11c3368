#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace salem {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;
__extension__ typedef __int128 Int128;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A bounded search ran out of budget before finding a witness.
class SearchExhausted : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (JSON documents, decimal strings).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Decimal parsing is strict: optional sign, digits, nothing else.
Int parse_int(std::string_view text);
// Accepts "n" or "n/d" with d != 0; result is canonical.
Rat parse_rat(std::string_view text);

std::string to_string(const Int& value);
// "n" when the denominator is one, otherwise "n/d" in lowest terms.
std::string to_string(const Rat& value);

inline Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& value) { return value.get_den() == 1; }

Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);
// Representative of a modulo m in [0, |m|).
Int mod_floor(const Int& a, const Int& m);
Int floor(const Rat& value);
Int ceil(const Rat& value);

Int abs(const Int& value);
Rat abs(const Rat& value);
int sign(const Int& value);
int sign(const Rat& value);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int pow(const Int& base, unsigned long exponent);
Int isqrt(const Int& value);
bool is_square(const Int& value);

// Modular inverse; throws PreconditionError when gcd(a, m) != 1.
Int inverse_mod(const Int& a, const Int& m);
Int pow_mod(const Int& base, const Int& exponent, const Int& modulus);
// Some r with r^2 = a mod p^e for an odd prime p and a prime to p, or -1
// when a is not a square.
Int sqrt_mod_prime_power(const Int& a, const Int& p, unsigned e);

// Strong probable-prime test (BPSW in current GMP, deterministic below 2^64).
bool is_prime(const Int& n);
Int next_prime(const Int& n);

// Multiplicity of the prime p in n (n != 0).
unsigned valuation(const Int& n, const Int& p);

using Factorization = std::vector<std::pair<Int, unsigned>>;
// Prime factorisation of |n| by trial division and Pollard-Brent rho,
// sorted by prime. factor_integer(1) is empty.
Factorization factor_integer(const Int& n);
IntVector prime_divisors(const Int& n);

// Largest-power decomposition used by the square-class tests.
struct SquareFreeSplit {
  Int square_root;  // largest s with s^2 | n
  Int squarefree;   // n / s^2, carries the sign of n
};
SquareFreeSplit squarefree_split(const Int& n);

}  // namespace salem
