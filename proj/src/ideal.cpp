#include "qtc/ideal.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

#include "qtc/errors.hpp"

namespace qtc {

QuadIdeal::QuadIdeal(QuadField K, Int a, Int b, Int c)
    : K_(std::move(K)), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}

QuadIdeal QuadIdeal::ring_of_integers(const QuadField& K) { return {K, 1, 0, 1}; }

QuadIdeal QuadIdeal::from_hnf(const QuadField& K, Int a, Int b, Int c) {
    require(sgn(a) > 0 && sgn(c) > 0, "HNF: a, c > 0");
    b %= a;
    if (sgn(b) < 0) b += a;
    QuadIdeal I(K, std::move(a), std::move(b), std::move(c));
    require(I.a_ % I.c_ == 0 && I.b_ % I.c_ == 0, "HNF: c | a, c | b");
    // module closed under multiplication by w: a*c | Nm(b + c*w)
    Int nm = I.b_ * I.b_ + K.omega_trace() * I.b_ * I.c_ + K.omega_norm() * I.c_ * I.c_;
    require(nm % (I.a_ * I.c_) == 0, "HNF: not an O_K-module");
    return I;
}

QuadIdeal QuadIdeal::from_generators(const QuadField& K, std::span<const QuadElement> gens) {
    // Z-span of {g_i, g_i * w}; two-column HNF accumulated pairwise.
    // Vectors are (x, y) coordinates over the basis (1, w).
    Int A = 0;      // gcd of x-parts with y = 0
    Int B = 0, C = 0; // current (B + C*w) row, C = gcd of y-parts
    auto absorb = [&](Int x, Int y) {
        if (sgn(y) < 0) { x = -x; y = -y; }
        if (sgn(y) == 0) {
            mpz_gcd(A.get_mpz_t(), A.get_mpz_t(), x.get_mpz_t());
            return;
        }
        if (sgn(C) == 0) {
            B = std::move(x);
            C = std::move(y);
            return;
        }
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), C.get_mpz_t(), y.get_mpz_t());
        Int B2 = s * B + t * x;
        Int elim = (y / g) * B - (C / g) * x; // y-part cancels
        mpz_gcd(A.get_mpz_t(), A.get_mpz_t(), elim.get_mpz_t());
        B = std::move(B2);
        C = std::move(g);
    };
    const Int& t = K.omega_trace();
    const Int& n = K.omega_norm();
    for (const auto& g : gens) {
        require(g.is_integral(), "from_generators: non-integral generator");
        Int x = g.x().get_num(), y = g.y().get_num();
        absorb(x, y);
        // g*w = -n*y + (x + t*y) w
        absorb(-n * y, x + t * y);
    }
    require(sgn(A) != 0 && sgn(C) != 0, "from_generators: zero ideal");
    if (sgn(A) < 0) A = -A;
    B %= A;
    if (sgn(B) < 0) B += A;
    return from_hnf(K, A, B, C);
}

QuadIdeal QuadIdeal::principal(const QuadElement& alpha) {
    require(!alpha.is_zero(), "principal ideal of zero");
    std::array<QuadElement, 1> gens{alpha};
    return from_generators(alpha.field(), gens);
}

QuadElement QuadIdeal::basis_first() const { return QuadElement::from_integers(K_, a_, 0); }
QuadElement QuadIdeal::basis_second() const { return QuadElement::from_integers(K_, b_, c_); }

QuadIdeal QuadIdeal::operator*(const QuadIdeal& o) const {
    require(K_ == o.K_, "ideal field mismatch");
    std::array<QuadElement, 4> gens{
        basis_first() * o.basis_first(),
        basis_first() * o.basis_second(),
        basis_second() * o.basis_first(),
        basis_second() * o.basis_second(),
    };
    return from_generators(K_, gens);
}

QuadIdeal QuadIdeal::conj() const {
    std::array<QuadElement, 2> gens{basis_first(), basis_second().conj()};
    return from_generators(K_, gens);
}

QuadIdeal QuadIdeal::pow(unsigned e) const {
    QuadIdeal r = ring_of_integers(K_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        if (e >>= 1) b = b * b;
    }
    return r;
}

bool QuadIdeal::contains(const QuadElement& alpha) const {
    if (!alpha.is_integral()) return false;
    Int x = alpha.x().get_num(), y = alpha.y().get_num();
    if (y % c_ != 0) return false;
    return (x - (y / c_) * b_) % a_ == 0;
}

bool QuadIdeal::divides(const QuadIdeal& other) const {
    require(K_ == other.K_, "ideal field mismatch");
    return contains(other.basis_first()) && contains(other.basis_second());
}

bool QuadIdeal::operator<(const QuadIdeal& o) const {
    Int n1 = norm(), n2 = o.norm();
    if (n1 != n2) return n1 < n2;
    if (a_ != o.a_) return a_ < o.a_;
    if (b_ != o.b_) return b_ < o.b_;
    return c_ < o.c_;
}

std::string QuadIdeal::label() const {
    std::ostringstream os;
    os << a_.get_str() << ":" << b_.get_str() << ":" << c_.get_str();
    return os.str();
}

SplittingType splitting_type(const QuadField& K, const Int& p) {
    if (!is_prime(p)) throw std::domain_error("splitting_type: p not prime");
    if (K.disc() % p == 0) return SplittingType::Ramified;
    return kronecker(K.disc(), p) == 1 ? SplittingType::Split : SplittingType::Inert;
}

std::vector<PrimeAbove> primes_above(const QuadField& K, const Int& p) {
    SplittingType st = splitting_type(K, p);
    const Int& d = K.disc();
    auto prime_at_root = [&](const Int& r) {
        // (p, w - r)
        std::array<QuadElement, 2> gens{QuadElement::from_integers(K, p, 0),
                                        QuadElement::from_integers(K, -r, 1)};
        return QuadIdeal::from_generators(K, gens);
    };
    std::vector<PrimeAbove> out;
    switch (st) {
    case SplittingType::Inert:
        out.push_back({QuadIdeal::principal(QuadElement::from_integers(K, p, 0)), p, 1, 2});
        break;
    case SplittingType::Ramified: {
        Int r;
        if (p == 2) {
            // d = 4m; x^2 - m mod 2 has double root m mod 2
            Int m = d / 4;
            r = ((m % 2) + 2) % 2;
        } else if (mpz_odd_p(d.get_mpz_t())) {
            // x^2 - x + (1-d)/4 = (x - 1/2)^2 mod p
            r = (p + 1) / 2;
        } else {
            r = 0; // x^2 - m = x^2 mod p since p | m
        }
        out.push_back({prime_at_root(r), p, 2, 1});
        break;
    }
    case SplittingType::Split: {
        Int r1, r2;
        if (p == 2) {
            // d = 1 mod 8: x^2 - x + (1-d)/4 = x(x-1) mod 2
            r1 = 0;
            r2 = 1;
        } else if (mpz_odd_p(d.get_mpz_t())) {
            Int s = sqrt_mod_p(d, p);
            Int inv2 = (p + 1) / 2;
            r1 = (1 + s) % p * inv2 % p;
            r2 = (1 - s + p) % p * inv2 % p;
        } else {
            Int m = d / 4;
            r1 = sqrt_mod_p(m, p);
            r2 = (p - r1) % p;
        }
        QuadIdeal P1 = prime_at_root(r1), P2 = prime_at_root(r2);
        if (P2 < P1) std::swap(P1, P2);
        out.push_back({P1, p, 1, 1});
        out.push_back({P2, p, 1, 1});
        break;
    }
    }
    return out;
}

int valuation(const QuadIdeal& P, const QuadIdeal& I) {
    require(sgn(I.norm()) > 0, "valuation of zero ideal");
    int v = 0;
    QuadIdeal Pk = P;
    while (Pk.divides(I)) {
        ++v;
        Pk = Pk * P;
    }
    return v;
}

int valuation(const QuadIdeal& P, const QuadElement& alpha) {
    require(!alpha.is_zero(), "valuation of zero");
    const QuadField& K = alpha.field();
    Int den = 1;
    mpz_lcm(den.get_mpz_t(), alpha.x().get_den().get_mpz_t(), alpha.y().get_den().get_mpz_t());
    QuadElement num = alpha * Rat(den);
    int v = valuation(P, QuadIdeal::principal(num));
    if (den != 1) v -= valuation(P, QuadIdeal::principal(QuadElement::from_integers(K, den, 0)));
    return v;
}

std::vector<std::pair<QuadIdeal, int>> factor_ideal(const QuadIdeal& I) {
    require(sgn(I.norm()) > 0, "factor_ideal: zero ideal");
    std::vector<std::pair<QuadIdeal, int>> out;
    if (I.is_one()) return out;
    for (const auto& [p, e] : factor(I.norm())) {
        (void)e;
        for (const auto& pa : primes_above(I.field(), p)) {
            int v = valuation(pa.ideal, I);
            if (v > 0) out.emplace_back(pa.ideal, v);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    return out;
}

} // namespace qtc
