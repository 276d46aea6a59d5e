#include <doctest.h>

#include <random>

#include "qtc/ideal.hpp"

using namespace qtc;

namespace {

QuadIdeal remultiply(const QuadField& K, const std::vector<std::pair<QuadIdeal, int>>& fac) {
    QuadIdeal r = QuadIdeal::ring_of_integers(K);
    for (const auto& [P, e] : fac) r = r * P.pow(unsigned(e));
    return r;
}

} // namespace

TEST_CASE("splitting examples") {
    CHECK(splitting_type(QuadField::of(Int(5)), Int(2)) == SplittingType::Inert);
    CHECK(splitting_type(QuadField::of(Int(-4)), Int(2)) == SplittingType::Ramified);
    CHECK(splitting_type(QuadField::of(Int(5)), Int(11)) == SplittingType::Split);
    CHECK(splitting_type(QuadField::of(Int(-3)), Int(7)) == SplittingType::Split);
    CHECK_THROWS_AS(splitting_type(QuadField::of(Int(5)), Int(6)), std::domain_error);
}

TEST_CASE("primes above p multiply to (p)") {
    std::vector<Int> ps{2, 3, 5, 7, 11, 13, 17, 97};
    for (Int d : {Int(-3), Int(-4), Int(5), Int(8), Int(-20), Int(40), Int(-23), Int(401)}) {
        QuadField K = QuadField::of(d);
        for (const Int& p : ps) {
            auto pas = primes_above(K, p);
            QuadIdeal prod = QuadIdeal::ring_of_integers(K);
            int ef = 0;
            for (const auto& pa : pas) {
                prod = prod * pa.ideal.pow(unsigned(pa.e));
                ef += pa.e * pa.f;
            }
            CHECK(ef == 2);
            CHECK(prod == QuadIdeal::principal(QuadElement::from_integers(K, p, 0)));
            CHECK(prod.norm() == p * p);
        }
    }
}

TEST_CASE("prime ideal norms match residue degrees") {
    for (Int d : {Int(-4), Int(5), Int(-24), Int(13)}) {
        QuadField K = QuadField::of(d);
        for (Int p : {Int(2), Int(3), Int(5), Int(7), Int(31)}) {
            for (const auto& pa : primes_above(K, p)) {
                Int expect;
                mpz_pow_ui(expect.get_mpz_t(), p.get_mpz_t(), pa.f);
                CHECK(pa.ideal.norm() == expect);
            }
        }
    }
}

TEST_CASE("gaussian integer factorizations") {
    QuadField K = QuadField::of(Int(-4)); // w = i
    // (2) = (1+i)^2 up to unit
    auto f2 = factor_ideal(QuadIdeal::principal(QuadElement::from_integers(K, 2, 0)));
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].second == 2);
    CHECK(f2[0].first.norm() == 2);
    // (3) inert, norm 9
    auto f3 = factor_ideal(QuadIdeal::principal(QuadElement::from_integers(K, 3, 0)));
    REQUIRE(f3.size() == 1);
    CHECK(f3[0].second == 1);
    CHECK(f3[0].first.norm() == 9);
    // (5) = (2+i)(2-i)
    auto f5 = factor_ideal(QuadIdeal::principal(QuadElement::from_integers(K, 5, 0)));
    REQUIRE(f5.size() == 2);
    CHECK(f5[0].second == 1);
    CHECK(f5[1].second == 1);
    CHECK(f5[0].first.norm() == 5);
    CHECK(f5[1].first.norm() == 5);
    CHECK(f5[0].first != f5[1].first);
    // (2+i) itself has norm 5
    CHECK(QuadIdeal::principal(QuadElement::from_integers(K, 2, 1)).norm() == 5);
}

TEST_CASE("norm is multiplicative over random ideals") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long> coord(-40, 40);
    std::vector<Int> discs;
    for (const Int& d : fundamental_discriminants(Int(500))) discs.push_back(d);
    std::uniform_int_distribution<size_t> pick(0, discs.size() - 1);
    int done = 0;
    while (done < 200) {
        QuadField K = QuadField::of(discs[pick(rng)]);
        QuadElement a = QuadElement::from_integers(K, coord(rng), coord(rng));
        QuadElement b = QuadElement::from_integers(K, coord(rng), coord(rng));
        if (a.is_zero() || b.is_zero()) continue;
        if (abs(a.norm().get_num()) > 10000 || abs(b.norm().get_num()) > 10000) continue;
        QuadIdeal I = QuadIdeal::principal(a), J = QuadIdeal::principal(b);
        CHECK((I * J).norm() == I.norm() * J.norm());
        CHECK(I.norm() == abs(a.norm().get_num()));
        ++done;
    }
}

TEST_CASE("factor_ideal remultiplies to the input") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long> coord(-25, 25);
    for (Int d : {Int(-4), Int(-20), Int(5), Int(40), Int(-23), Int(60)}) {
        QuadField K = QuadField::of(d);
        int done = 0;
        while (done < 40) {
            QuadElement a = QuadElement::from_integers(K, coord(rng), coord(rng));
            if (a.is_zero()) continue;
            if (abs(a.norm().get_num()) > 10000) continue;
            QuadIdeal I = QuadIdeal::principal(a);
            auto fac = factor_ideal(I);
            CHECK(remultiply(K, fac) == I);
            for (const auto& [P, e] : fac) {
                CHECK(e >= 1);
                CHECK(factor(P.norm()).size() == 1); // norm is a prime power
            }
            ++done;
        }
    }
}

TEST_CASE("ideal valuations and containment") {
    QuadField K = QuadField::of(Int(-4));
    auto pa = primes_above(K, Int(2))[0].ideal; // (1+i)
    QuadElement z = QuadElement::from_integers(K, 4, 4); // 4(1+i): v = 2*2 + 1 = 5
    CHECK(valuation(pa, QuadIdeal::principal(z)) == 5);
    QuadElement half(K, Rat(1, 2), Rat(1, 2));
    CHECK(valuation(pa, half) == -1); // (1+i)/2 = (1+i)^{-1} * unit
    CHECK(pa.contains(QuadElement::from_integers(K, 1, 1)));
    CHECK_FALSE(pa.contains(QuadElement::one(K)));
}

TEST_CASE("conjugate ideal") {
    QuadField K = QuadField::of(Int(-20));
    auto ps = primes_above(K, Int(3)); // split
    REQUIRE(ps.size() == 2);
    CHECK(ps[0].ideal.conj() == ps[1].ideal);
    CHECK(ps[0].ideal * ps[0].ideal.conj() ==
          QuadIdeal::principal(QuadElement::from_integers(K, 3, 0)));
}
