#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "qtc/ideal.hpp"

namespace qtc {

namespace config {
// class_group works by exhaustive form enumeration; fails loudly past this
long class_group_capacity();
void set_class_group_capacity(long cap);
} // namespace config

// Class group of O_K computed from reduced binary quadratic forms
// (exhaustive enumeration; cycles of indefinite forms for d > 0).
class ClassGroup {
  public:
    static std::shared_ptr<const ClassGroup> of(const QuadField& K);

    const QuadField& field() const { return K_; }
    const Int& h() const { return h_; }

    // n_1 >= n_2 >= ..., n_{i+1} | n_i, product = h
    const std::vector<Int>& elementary_divisors() const { return divisors_; }
    const std::vector<QuadIdeal>& generator_ideals() const { return gen_ideals_; }

    // exponent vector of [I] w.r.t. the generators
    std::vector<long> dlog(const QuadIdeal& I) const;
    bool is_principal(const QuadIdeal& I) const;

    // exact generator of a principal ideal (via representations of +-1 by the
    // associated form); nullopt if I is not principal
    std::optional<QuadElement> principal_generator(const QuadIdeal& I) const;

    // ideal c with a * c^2 principal, if the class of a is a square
    std::optional<QuadIdeal> sqrt_class_cofactor(const QuadIdeal& a) const;

    int two_rank() const;
    // ideals whose classes generate Cl[2] independently
    std::vector<QuadIdeal> two_torsion_ideals() const;

  private:
    ClassGroup() = default;
    struct Impl;
    std::shared_ptr<Impl> impl_;
    QuadField K_ = QuadField::of(Int(5)); // overwritten by of()
    Int h_;
    std::vector<Int> divisors_;
    std::vector<QuadIdeal> gen_ideals_;
    friend struct ClassGroupBuilder;
};

// torsion order w and, for real fields, the fundamental unit
struct UnitGroup {
    QuadField K;
    int torsion_order;                // 2, 4 (d=-4), 6 (d=-3)
    std::optional<QuadElement> eps;   // real case: eps > 1, from the CF cycle

    static UnitGroup of(const QuadField& K);
};

QuadElement fundamental_unit(const QuadField& K); // requires d > 0

// 2-Selmer group {beta in K*/(K*)^2 : (beta) is an ideal square}.
// basis = units-mod-squares part followed by one lift per 2-torsion class.
struct Selmer2 {
    QuadField K;
    std::vector<QuadElement> basis;

    QuadElement element(unsigned mask) const; // product over set bits
    size_t rank() const { return basis.size(); }

    static Selmer2 of(const QuadField& K);
};

} // namespace qtc
