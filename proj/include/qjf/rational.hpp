#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace qjf {

// Exact rational scalar.  All arithmetic in the library is exact; no floating
// point anywhere.
using Rat = mpq_class;

// Parse "a/b" or "a" (optional sign, arbitrary precision).  Throws
// std::invalid_argument on malformed input.
Rat rat_from_string(const std::string& s);

// Canonical emission: always "a/b" with the denominator explicit, e.g. "3/1".
std::string rat_to_string(const Rat& r);

// r^e for integer e (negative allowed, r nonzero then).
Rat rat_pow(const Rat& r, long e);

bool rat_is_integer(const Rat& r);
long rat_to_long(const Rat& r);  // requires integral value in range

Rat factorial_rat(unsigned long n);

// B_0 .. B_nmax in the convention with B_1 = -1/2 (generating function
// z/(e^z - 1)).  The symmetrized convention used by the hyperbolic-cotangent
// expansion only differs by B_1 = 0; callers adjust that one entry.
std::vector<Rat> bernoulli_numbers(unsigned long nmax);

// sigma_k(n) = sum of d^k over positive divisors d of n; n >= 1.
Rat divisor_power_sum(long k, long n);

std::vector<long> divisors(long n);  // ascending, n >= 1
long mobius_mu(long n);              // n >= 1
long gcd_long(long a, long b);       // gcd(|a|, |b|), gcd(0,0) = 0

}  // namespace qjf
