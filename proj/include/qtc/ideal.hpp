#pragma once

#include <span>
#include <string>
#include <vector>

#include "qtc/quad.hpp"

namespace qtc {

// Integral ideal in HNF [a, b + c*w]: a > 0, c > 0, c | a, c | b, 0 <= b < a.
// Norm = a*c. Equality is structural.
class QuadIdeal {
  public:
    static QuadIdeal ring_of_integers(const QuadField& K);
    static QuadIdeal principal(const QuadElement& alpha); // alpha integral, nonzero
    static QuadIdeal from_generators(const QuadField& K, std::span<const QuadElement> gens);
    static QuadIdeal from_hnf(const QuadField& K, Int a, Int b, Int c);

    const QuadField& field() const { return K_; }
    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }
    Int norm() const { return a_ * c_; }
    bool is_one() const { return a_ == 1 && c_ == 1; }

    QuadElement basis_first() const;  // a
    QuadElement basis_second() const; // b + c*w

    QuadIdeal operator*(const QuadIdeal& o) const;
    QuadIdeal conj() const;
    QuadIdeal pow(unsigned e) const;
    Int content() const { return c_; } // largest rational integer divisor n with I = n*I'

    bool contains(const QuadElement& alpha) const; // alpha integral
    bool divides(const QuadIdeal& other) const;    // I | J  <=>  J subset of I
    bool operator==(const QuadIdeal& o) const {
        return K_ == o.K_ && a_ == o.a_ && b_ == o.b_ && c_ == o.c_;
    }
    bool operator!=(const QuadIdeal& o) const { return !(*this == o); }
    bool operator<(const QuadIdeal& o) const; // by (norm, a, b, c)

    std::string label() const; // "a:b:c"

  private:
    QuadIdeal(QuadField K, Int a, Int b, Int c);
    QuadField K_;
    Int a_, b_, c_;
};

enum class SplittingType { Split, Inert, Ramified };

struct PrimeAbove {
    QuadIdeal ideal;
    Int p;
    int e; // ramification index
    int f; // residue degree
};

SplittingType splitting_type(const QuadField& K, const Int& p);
std::vector<PrimeAbove> primes_above(const QuadField& K, const Int& p);

// Prime factorization of a nonzero integral ideal, factors sorted.
std::vector<std::pair<QuadIdeal, int>> factor_ideal(const QuadIdeal& I);

// v_P(I), I nonzero integral, P prime.
int valuation(const QuadIdeal& P, const QuadIdeal& I);

// v_P(alpha) for alpha in K^*, possibly negative.
int valuation(const QuadIdeal& P, const QuadElement& alpha);

} // namespace qtc
