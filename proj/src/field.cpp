#include "btg/field.hpp"

#include <stdexcept>

namespace btg {

RatFunc::RatFunc(std::uint64_t p) : num_(p, {}), den_(FpPoly::constant(p, 1)) {}

RatFunc::RatFunc(FpPoly num, FpPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.prime() != den_.prime()) throw FieldMismatch("numerator and denominator over different F_p");
    if (den_.is_zero()) throw std::domain_error("zero denominator in F_p(t)");
    canonicalize();
}

RatFunc::RatFunc(FpPoly num) : RatFunc(num, FpPoly::constant(num.prime(), 1)) {}

void RatFunc::canonicalize() {
    const auto p = num_.prime();
    if (num_.is_zero()) {
        den_ = FpPoly::constant(p, 1);
        return;
    }
    FpPoly g = gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    const auto inv = mod_inverse(den_.lead(), p);
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
}

Field Field::function(std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
    return {Kind::Function, p};
}

std::string Field::to_string() const {
    return is_rational() ? std::string("Q") : "F_" + std::to_string(p) + "(t)";
}

FieldElement::FieldElement(mpq_class q) : v_(std::move(q)) {
    std::get<mpq_class>(v_).canonicalize();
}

FieldElement FieldElement::from_int(const Field& field, long n) {
    if (field.is_rational()) return FieldElement(mpq_class(n));
    return FieldElement(RatFunc(FpPoly::constant(field.p, n)));
}

FieldElement FieldElement::variable(std::uint64_t p) { return FieldElement(RatFunc(FpPoly::variable(p))); }

Field FieldElement::field() const {
    if (is_rational()) return Field::rational();
    return Field{Field::Kind::Function, function().prime()};
}

const mpq_class& FieldElement::rational() const {
    if (!is_rational()) throw FieldMismatch("expected a rational, got an element of F_p(t)");
    return std::get<mpq_class>(v_);
}

const RatFunc& FieldElement::function() const {
    if (is_rational()) throw FieldMismatch("expected an element of F_p(t), got a rational");
    return std::get<RatFunc>(v_);
}

bool FieldElement::is_zero() const {
    if (is_rational()) return sgn(rational()) == 0;
    return function().is_zero();
}

bool FieldElement::is_one() const {
    if (is_rational()) return rational() == 1;
    return function().num().is_one() && function().den().is_one();
}

namespace {

void same_field(const FieldElement& x, const FieldElement& y) {
    if (x.field() != y.field()) {
        throw FieldMismatch("arithmetic between " + x.field().to_string() + " and " + y.field().to_string());
    }
}

}  // namespace

FieldElement FieldElement::operator-() const {
    if (is_rational()) return FieldElement(mpq_class(-rational()));
    const auto& f = function();
    return FieldElement(RatFunc(-f.num(), f.den()));
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (is_rational()) return FieldElement(mpq_class(1 / rational()));
    const auto& f = function();
    return FieldElement(RatFunc(f.den(), f.num()));
}

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
    same_field(x, y);
    if (x.is_rational()) return FieldElement(mpq_class(x.rational() + y.rational()));
    const auto& a = x.function();
    const auto& b = y.function();
    if (a.den() == b.den()) return FieldElement(RatFunc(a.num() + b.num(), a.den()));
    return FieldElement(RatFunc(a.num() * b.den() + b.num() * a.den(), a.den() * b.den()));
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) { return x + (-y); }

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
    same_field(x, y);
    if (x.is_rational()) return FieldElement(mpq_class(x.rational() * y.rational()));
    const auto& a = x.function();
    const auto& b = y.function();
    return FieldElement(RatFunc(a.num() * b.num(), a.den() * b.den()));
}

FieldElement operator/(const FieldElement& x, const FieldElement& y) { return x * y.inverse(); }

bool operator==(const FieldElement& x, const FieldElement& y) {
    if (x.field() != y.field()) return false;
    if (x.is_rational()) return x.rational() == y.rational();
    return x.function() == y.function();
}

FieldElement FieldElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement result = one(field());
    FieldElement base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

std::string FieldElement::to_string() const {
    if (is_rational()) return rational().get_str();
    const auto& f = function();
    if (f.den().is_one()) return f.num().to_string();
    return "(" + f.num().to_string() + ")/(" + f.den().to_string() + ")";
}

void FieldElement::append_key(std::string& out) const {
    if (is_rational()) {
        out += rational().get_str(36);
    } else {
        const auto& f = function();
        for (auto c : f.num().coeffs()) {
            out += std::to_string(c);
            out += ',';
        }
        out += '/';
        for (auto c : f.den().coeffs()) {
            out += std::to_string(c);
            out += ',';
        }
    }
    out += ';';
}

RatFunc invert_variable(const RatFunc& f) {
    // f(1/t) = t^(deg den - deg num) * rev(num) / rev(den)
    const auto p = f.prime();
    if (f.is_zero()) return f;
    const long shift = f.den().degree() - f.num().degree();
    FpPoly num = f.num().reversed();
    FpPoly den = f.den().reversed();
    if (shift > 0) num = num * FpPoly::monomial(p, 1, static_cast<std::size_t>(shift));
    if (shift < 0) den = den * FpPoly::monomial(p, 1, static_cast<std::size_t>(-shift));
    return RatFunc(num, den);
}

}  // namespace btg
