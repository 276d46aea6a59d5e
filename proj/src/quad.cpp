#include "qtc/quad.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "qtc/errors.hpp"

namespace qtc {

FundDisc::FundDisc(Int d) : d_(std::move(d)) {
    if (!is_fundamental_discriminant(d_))
        throw std::domain_error("not a fundamental discriminant: " + d_.get_str());
}

QuadField QuadField::of(const Int& d) {
    static std::mutex mu;
    static std::map<Int, std::shared_ptr<const Data>> table;
    std::lock_guard<std::mutex> lock(mu);
    auto it = table.find(d);
    if (it == table.end()) {
        FundDisc check(d); // validates
        auto data = std::make_shared<Data>();
        data->d = d;
        if (mpz_odd_p(d.get_mpz_t())) {
            data->t = 1;
            data->n = (1 - d) / 4;
        } else {
            data->t = 0;
            data->n = -d / 4;
        }
        it = table.emplace(d, std::move(data)).first;
    }
    return QuadField(it->second);
}

QuadElement::QuadElement(QuadField K, Rat x, Rat y)
    : K_(std::move(K)), x_(std::move(x)), y_(std::move(y)) {
    x_.canonicalize();
    y_.canonicalize();
}

QuadElement QuadElement::from_integers(QuadField K, const Int& x, const Int& y) {
    return {std::move(K), Rat(x), Rat(y)};
}

QuadElement QuadElement::sqrt_disc(QuadField K) {
    Rat t(K.omega_trace());
    return {K, -t, Rat(2)};
}

bool QuadElement::is_integral() const {
    return x_.get_den() == 1 && y_.get_den() == 1;
}

QuadElement QuadElement::conj() const {
    // sigma(w) = t - w
    return {K_, x_ + Rat(K_.omega_trace()) * y_, -y_};
}

Rat QuadElement::norm() const {
    return x_ * x_ + Rat(K_.omega_trace()) * x_ * y_ + Rat(K_.omega_norm()) * y_ * y_;
}

Rat QuadElement::trace() const { return 2 * x_ + Rat(K_.omega_trace()) * y_; }

QuadElement QuadElement::operator+(const QuadElement& o) const {
    require(K_ == o.K_, "element field mismatch");
    return {K_, x_ + o.x_, y_ + o.y_};
}

QuadElement QuadElement::operator-(const QuadElement& o) const {
    require(K_ == o.K_, "element field mismatch");
    return {K_, x_ - o.x_, y_ - o.y_};
}

QuadElement QuadElement::operator*(const QuadElement& o) const {
    require(K_ == o.K_, "element field mismatch");
    // w^2 = t*w - n
    Rat t(K_.omega_trace()), n(K_.omega_norm());
    Rat yy = y_ * o.y_;
    return {K_, x_ * o.x_ - n * yy, x_ * o.y_ + y_ * o.x_ + t * yy};
}

QuadElement QuadElement::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    Rat nm = norm();
    QuadElement c = conj();
    return {K_, c.x() / nm, c.y() / nm};
}

QuadElement QuadElement::pow(unsigned long e) const {
    QuadElement r = one(K_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool QuadElement::operator==(const QuadElement& o) const {
    return K_ == o.K_ && x_ == o.x_ && y_ == o.y_;
}

int QuadElement::embedding_sign(bool sigma) const {
    require(K_.is_real(), "embedding_sign on imaginary field");
    if (is_zero()) return 0;
    // value = (p + q sqrt(d)) / 2 with p = 2x + t y, q = +-y
    Rat p = trace();
    Rat q = sigma ? Rat(-y_) : y_;
    int sp = sgn(p), sq = sgn(q);
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    // opposite signs: compare p^2 with q^2 d
    Rat diff = p * p - q * q * Rat(K_.disc());
    int c = sgn(diff);
    return c == 0 ? 0 : (c > 0 ? sp : sq);
}

std::string QuadElement::str() const {
    std::ostringstream os;
    os << x_.get_str();
    if (sgn(y_) != 0) os << (sgn(y_) > 0 ? "+" : "") << y_.get_str() << "*w";
    return os.str();
}

namespace {

// smallest canonical choice per the deterministic-sign rule
QuadElement canonical_sign(QuadElement b) {
    int sx = sgn(b.x()), sy = sgn(b.y());
    if (sx < 0 || (sx == 0 && sy < 0)) return -b;
    return b;
}

} // namespace

std::optional<QuadElement> sqrt_in_field(const QuadElement& alpha) {
    if (alpha.is_zero()) throw std::domain_error("sqrt_in_field: zero");
    const QuadField& K = alpha.field();
    const Rat& x = alpha.x();
    const Rat& y = alpha.y();
    Rat t(K.omega_trace());
    Rat d(K.disc());
    auto check = [&](const QuadElement& b) -> std::optional<QuadElement> {
        if (b * b == alpha) return canonical_sign(b);
        return std::nullopt;
    };
    if (sgn(y) == 0) {
        // beta rational: x = u^2, or beta = v*sqrt(d): x = v^2 d / 4
        if (auto u = rat_sqrt(x)) {
            if (auto r = check(QuadElement(K, *u, Rat(0)))) return r;
        }
        if (auto v2 = rat_sqrt(4 * x / d)) {
            // beta = v*sqrt(d)/2 = v*(2w - t)/2
            Rat v = *v2;
            if (auto r = check(QuadElement(K, -t * v / 2, v))) return r;
        }
        return std::nullopt;
    }
    // beta = u + v w, v != 0: v^2 = (Tr(alpha) +- 2 s)/d with s^2 = Nm(alpha)
    auto s_opt = rat_sqrt(alpha.norm());
    if (!s_opt) return std::nullopt;
    Rat tr = alpha.trace();
    for (int sign : {+1, -1}) {
        Rat w = (tr + Rat(sign) * 2 * (*s_opt)) / d;
        auto v_opt = rat_sqrt(w);
        if (!v_opt || sgn(*v_opt) == 0) continue;
        const Rat& v = *v_opt;
        Rat u = (y / v - t * v) / 2;
        if (auto r = check(QuadElement(K, u, v))) return r;
    }
    return std::nullopt;
}

bool same_square_class(const QuadElement& a, const QuadElement& b) {
    require(!a.is_zero() && !b.is_zero(), "square class of zero");
    return is_square_in_field(a * b); // a/b square iff a*b square
}

} // namespace qtc
