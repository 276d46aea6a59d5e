#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qtc/quad.hpp"

using namespace qtc;

TEST_CASE("fundamental discriminant recognition") {
    CHECK(is_fundamental_discriminant(Int(-3)));
    CHECK(is_fundamental_discriminant(Int(-4)));
    CHECK(is_fundamental_discriminant(Int(5)));
    CHECK(is_fundamental_discriminant(Int(8)));
    CHECK(is_fundamental_discriminant(Int(-8)));
    CHECK(is_fundamental_discriminant(Int(12)));
    CHECK_FALSE(is_fundamental_discriminant(Int(1)));
    CHECK_FALSE(is_fundamental_discriminant(Int(0)));
    CHECK_FALSE(is_fundamental_discriminant(Int(2)));
    CHECK_FALSE(is_fundamental_discriminant(Int(3)));
    CHECK_FALSE(is_fundamental_discriminant(Int(4)));
    CHECK_FALSE(is_fundamental_discriminant(Int(-12))); // -12/4 = -3 = 1 mod 4
    CHECK_FALSE(is_fundamental_discriminant(Int(45)));  // 45 = 9*5 not squarefree
}

TEST_CASE("fundamental_discriminants listing") {
    CHECK(fundamental_discriminants(Int(1)).empty());
    auto ds = fundamental_discriminants(Int(10));
    std::vector<Int> expect{-3, -4, 5, -7, -8, 8};
    CHECK(ds == expect);

    // window property: X vs X-1 differ only in |d| = X
    for (long X : {8L, 12L, 24L, 40L}) {
        auto big = fundamental_discriminants(Int(X));
        auto small = fundamental_discriminants(Int(X - 1));
        CHECK(big.size() >= small.size());
        for (size_t i = small.size(); i < big.size(); ++i) CHECK(abs(big[i]) == X);
    }
}

TEST_CASE("fundamental discriminant density near 6/pi^2") {
    const long X = 1000000;
    auto ds = fundamental_discriminants(Int(X));
    // |d| <= X counts both signs; density of fundamental discriminants among
    // integers in [-X, X] is 6/pi^2 * ... : count / (2X) vs 3/pi^2, i.e.
    // count / X vs 6/pi^2
    double ratio = double(ds.size()) / double(X);
    double target = 6.0 / (3.14159265358979323846 * 3.14159265358979323846);
    CHECK(std::abs(ratio - target) / target < 0.01);
}

TEST_CASE("element arithmetic basics") {
    QuadField K = QuadField::of(Int(5));
    QuadElement w = QuadElement::omega(K); // (1+sqrt5)/2
    CHECK(w.trace() == Rat(1));
    CHECK(w.norm() == Rat(-1));
    QuadElement s = QuadElement::sqrt_disc(K);
    CHECK(s * s == QuadElement::from_integers(K, 5, 0));
    CHECK(w.conj() + w == QuadElement::one(K));
    CHECK((w * w.conj()).x() == Rat(-1));

    QuadField KI = QuadField::of(Int(-4));
    QuadElement i = QuadElement::omega(KI);
    CHECK(i * i == -QuadElement::one(KI));
    CHECK(i.norm() == Rat(1));
    CHECK(i.inverse() == -i);
}

TEST_CASE("conjugation involution and multiplicativity of norms") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long> coord(-20, 20);
    for (Int d : {Int(-4), Int(5), Int(-20), Int(40), Int(-23), Int(8)}) {
        QuadField K = QuadField::of(d);
        for (int iter = 0; iter < 50; ++iter) {
            QuadElement a = QuadElement::from_integers(K, coord(rng), coord(rng));
            QuadElement b = QuadElement::from_integers(K, coord(rng), coord(rng));
            CHECK(a.conj().conj() == a);
            CHECK((a * b).norm() == a.norm() * b.norm());
            CHECK((a * b).conj() == a.conj() * b.conj());
            CHECK(a.trace() == a.conj().trace());
            if (!a.is_zero()) CHECK(a * a.inverse() == QuadElement::one(K));
        }
    }
}

TEST_CASE("embedding signs") {
    QuadField K = QuadField::of(Int(8));
    QuadElement eps = QuadElement::from_integers(K, 1, 1); // 1 + sqrt2
    CHECK(eps.embedding_sign() == 1);
    CHECK(eps.embedding_sign(true) == -1); // 1 - sqrt2 < 0
    CHECK((-eps).embedding_sign() == -1);
    QuadElement two = QuadElement::from_integers(K, 2, 0);
    CHECK(two.embedding_sign() == 1);
    CHECK(two.embedding_sign(true) == 1);
}

TEST_CASE("sqrt_in_field examples") {
    QuadField K = QuadField::of(Int(8)); // Q(sqrt2), w = sqrt2
    // 3 + 2 sqrt2 = (1 + sqrt2)^2
    auto r = sqrt_in_field(QuadElement::from_integers(K, 3, 2));
    REQUIRE(r.has_value());
    CHECK(*r == QuadElement::from_integers(K, 1, 1));
    // -1 is not a square in a real field
    CHECK_FALSE(sqrt_in_field(QuadElement::from_integers(K, -1, 0)).has_value());
    // d is a square: sqrt(8) = 2w
    auto r8 = sqrt_in_field(QuadElement::from_integers(K, 8, 0));
    REQUIRE(r8.has_value());
    CHECK(*r8 == QuadElement::from_integers(K, 0, 2));

    QuadField KI = QuadField::of(Int(-4));
    auto ri = sqrt_in_field(QuadElement::omega(KI) * Rat(2)); // 2i = (1+i)^2
    REQUIRE(ri.has_value());
    CHECK(*ri == QuadElement::from_integers(KI, 1, 1));
}

TEST_CASE("sqrt_in_field round-trips on random squares") {
    std::mt19937_64 rng(987);
    std::uniform_int_distribution<long> coord(-15, 15);
    for (Int d : {Int(-3), Int(-4), Int(5), Int(12), Int(-20), Int(193)}) {
        QuadField K = QuadField::of(d);
        for (int iter = 0; iter < 40; ++iter) {
            QuadElement b = QuadElement::from_integers(K, coord(rng), coord(rng));
            if (b.is_zero()) continue;
            auto g = sqrt_in_field(b * b);
            REQUIRE(g.has_value());
            CHECK(*g * *g == b * b);
        }
    }
}

TEST_CASE("square class predicate") {
    QuadField K = QuadField::of(Int(5));
    QuadElement a = QuadElement::from_integers(K, 2, 1);
    QuadElement c = QuadElement::from_integers(K, 3, -2);
    CHECK(same_square_class(a, a * c * c));
    // sqrt(d) has norm -d < 0, so it is not a square in a real field
    CHECK_FALSE(same_square_class(a, a * QuadElement::sqrt_disc(K)));
    // but d = (sqrt d)^2 is, so multiplying by d keeps the class
    CHECK(same_square_class(a, a * QuadElement::from_integers(K, 5, 0)));
}
