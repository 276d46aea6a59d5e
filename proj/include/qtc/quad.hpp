#pragma once

#include <memory>
#include <optional>
#include <string>

#include "qtc/int_util.hpp"

namespace qtc {

// Fundamental discriminant: d = 1 mod 4 squarefree, or 4m with m = 2,3 mod 4
// squarefree; d != 0, 1.
class FundDisc {
  public:
    explicit FundDisc(Int d);
    const Int& value() const { return d_; }
    bool operator==(const FundDisc& o) const { return d_ == o.d_; }

  private:
    Int d_;
};

// Q(sqrt(d)) with integral basis {1, w}, w = (1+sqrt(d))/2 for odd d,
// w = sqrt(d/4) for even d. Handles are interned per d and cheap to copy.
class QuadField {
  public:
    static QuadField of(const Int& d);
    static QuadField of(const FundDisc& d) { return of(d.value()); }

    const Int& disc() const { return data_->d; }
    const Int& omega_trace() const { return data_->t; } // Tr(w)
    const Int& omega_norm() const { return data_->n; }  // Nm(w)
    int r1() const { return sgn(data_->d) > 0 ? 2 : 0; }
    int r2() const { return sgn(data_->d) > 0 ? 0 : 1; }
    bool is_real() const { return sgn(data_->d) > 0; }

    bool operator==(const QuadField& o) const { return data_->d == o.data_->d; }
    bool operator!=(const QuadField& o) const { return !(*this == o); }

  private:
    struct Data {
        Int d, t, n;
    };
    explicit QuadField(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    std::shared_ptr<const Data> data_;
};

// x + y*w with rational coordinates.
class QuadElement {
  public:
    QuadElement(QuadField K, Rat x, Rat y);
    static QuadElement from_integers(QuadField K, const Int& x, const Int& y);
    static QuadElement zero(QuadField K) { return {K, Rat(0), Rat(0)}; }
    static QuadElement one(QuadField K) { return {K, Rat(1), Rat(0)}; }
    static QuadElement omega(QuadField K) { return {K, Rat(0), Rat(1)}; }
    static QuadElement sqrt_disc(QuadField K); // sqrt(d) = 2w - Tr(w)

    const QuadField& field() const { return K_; }
    const Rat& x() const { return x_; }
    const Rat& y() const { return y_; }

    bool is_zero() const { return sgn(x_) == 0 && sgn(y_) == 0; }
    bool is_rational() const { return sgn(y_) == 0; }
    bool is_integral() const;

    QuadElement conj() const;
    Rat norm() const;  // x^2 + t xy + n y^2
    Rat trace() const; // 2x + t y

    QuadElement operator-() const { return {K_, -x_, -y_}; }
    QuadElement operator+(const QuadElement& o) const;
    QuadElement operator-(const QuadElement& o) const;
    QuadElement operator*(const QuadElement& o) const;
    QuadElement operator*(const Rat& c) const { return {K_, x_ * c, y_ * c}; }
    QuadElement inverse() const;
    QuadElement operator/(const QuadElement& o) const { return *this * o.inverse(); }
    QuadElement pow(unsigned long e) const;

    bool operator==(const QuadElement& o) const;
    bool operator!=(const QuadElement& o) const { return !(*this == o); }

    // sign under the embedding with sqrt(d) > 0 (sigma = false) or its
    // conjugate (sigma = true); real fields only
    int embedding_sign(bool sigma = false) const;

    std::string str() const;

  private:
    QuadField K_;
    Rat x_, y_;
};

// Deterministic square root in K: nonnegative first coordinate, ties by
// nonnegative second. Returns nothing if alpha is not a square.
std::optional<QuadElement> sqrt_in_field(const QuadElement& alpha);

inline bool is_square_in_field(const QuadElement& alpha) {
    return alpha.is_zero() || sqrt_in_field(alpha).has_value();
}

// alpha/beta is a square in K (alpha, beta nonzero)
bool same_square_class(const QuadElement& a, const QuadElement& b);

} // namespace qtc
