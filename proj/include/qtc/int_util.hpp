#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

namespace qtc {

using Int = mpz_class;
using Rat = mpq_class;

Int isqrt(const Int& n); // floor(sqrt(n)), n >= 0

bool is_square(const Int& n);
bool is_square(const Int& n, Int& root);

// Square root of a nonnegative rational if it exists.
std::optional<Rat> rat_sqrt(const Rat& q);

bool is_prime(const Int& n);

// kronecker symbol (a|n)
int kronecker(const Int& a, const Int& n);

// Prime factorization of |n|, n != 0, sorted by prime.
// Trial division below 2^16, then Brent-Pollard rho.
std::vector<std::pair<Int, unsigned>> factor(const Int& n);

std::vector<Int> divisors(const Int& n); // positive divisors of |n|, ascending

bool is_squarefree(const Int& n);

// x^2 = a (mod p), p odd prime, (a|p) = 1. Tonelli-Shanks.
Int sqrt_mod_p(const Int& a, const Int& p);

bool is_fundamental_discriminant(const Int& d);

// All fundamental discriminants with |d| <= bound, ascending by (|d|, sign).
std::vector<Int> fundamental_discriminants(const Int& bound);

// Squarefree kernel of |n| (product of primes dividing n once).
Int squarefree_part(const Int& n);

// Discriminant of Q(sqrt(m)), m squarefree != 0, 1.
Int discriminant_of_sqrt(const Int& m);

} // namespace qtc
