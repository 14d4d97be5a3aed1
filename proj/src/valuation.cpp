#include "btg/valuation.hpp"

#include <stdexcept>

namespace btg {

long ValInt::value() const {
    if (infinite_) throw std::domain_error("finite value requested of +inf");
    return value_;
}

Valuation Valuation::p_adic(const mpz_class& p) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) {
        throw std::invalid_argument("p-adic valuation needs a prime, got " + p.get_str());
    }
    Valuation v;
    v.kind_ = Kind::PAdic;
    v.prime_ = p;
    return v;
}

Valuation Valuation::poly_adic(const FpPoly& pi) {
    if (!pi.is_monic() || !is_irreducible(pi)) {
        throw std::invalid_argument("polynomial valuation needs a monic irreducible, got " + pi.to_string());
    }
    Valuation v;
    v.kind_ = Kind::PolyAdic;
    v.pi_ = pi;
    v.char_ = pi.prime();
    return v;
}

Valuation Valuation::at_infinity(std::uint64_t p) {
    Valuation v;
    v.kind_ = Kind::Infinity;
    v.char_ = Field::function(p).p;
    return v;
}

Field Valuation::field() const {
    if (kind_ == Kind::PAdic) return Field::rational();
    return Field{Field::Kind::Function, char_};
}

bool operator==(const Valuation& x, const Valuation& y) {
    if (x.kind_ != y.kind_) return false;
    switch (x.kind_) {
        case Valuation::Kind::PAdic: return x.prime_ == y.prime_;
        case Valuation::Kind::PolyAdic: return x.pi_ == y.pi_;
        case Valuation::Kind::Infinity: return x.char_ == y.char_;
    }
    return false;
}

bool operator<(const Valuation& x, const Valuation& y) {
    if (x.kind_ != y.kind_) return x.kind_ < y.kind_;
    switch (x.kind_) {
        case Valuation::Kind::PAdic: return x.prime_ < y.prime_;
        case Valuation::Kind::PolyAdic: return x.pi_ < y.pi_;
        case Valuation::Kind::Infinity: return x.char_ < y.char_;
    }
    return false;
}

std::string Valuation::to_string() const {
    switch (kind_) {
        case Kind::PAdic: return prime_.get_str() + "-adic";
        case Kind::PolyAdic: return "(" + pi_.to_string() + ")-adic over F_" + std::to_string(char_);
        case Kind::Infinity: return "degree at infinity over F_" + std::to_string(char_);
    }
    return {};
}

long integer_valuation(const mpz_class& n, const mpz_class& p) {
    if (sgn(n) == 0) throw std::domain_error("integer valuation of zero");
    mpz_class rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

namespace {

void check(const FieldElement& x, const Valuation& v) {
    if (!v.accepts(x)) {
        throw FieldMismatch("valuation " + v.to_string() + " applied to an element of " + x.field().to_string());
    }
}

}  // namespace

ValInt val(const FieldElement& x, const Valuation& v) {
    check(x, v);
    if (x.is_zero()) return ValInt::infinity();
    switch (v.kind()) {
        case Valuation::Kind::PAdic: {
            const auto& q = x.rational();
            return integer_valuation(q.get_num(), v.prime()) - integer_valuation(q.get_den(), v.prime());
        }
        case Valuation::Kind::PolyAdic: {
            const auto& f = x.function();
            return multiplicity(f.num(), v.pi()) - multiplicity(f.den(), v.pi());
        }
        case Valuation::Kind::Infinity: {
            const auto& f = x.function();
            return f.den().degree() - f.num().degree();
        }
    }
    return {};
}

FieldElement uniformizer(const Valuation& v) {
    switch (v.kind()) {
        case Valuation::Kind::PAdic: return FieldElement(mpq_class(v.prime()));
        case Valuation::Kind::PolyAdic: return FieldElement(RatFunc(v.pi()));
        case Valuation::Kind::Infinity: return FieldElement::variable(v.field().p).inverse();
    }
    return {};
}

FieldElement uniformizer_power(const Valuation& v, long k) { return uniformizer(v).pow(k); }

namespace {

// c * pi^-k where c = num * den^-1 mod pi^n and pi does not divide den.
RatFunc reduce_poly(const RatFunc& w, const FpPoly& pi, long n, long k) {
    const auto p = pi.prime();
    FpPoly modulus = FpPoly::constant(p, 1);
    for (long i = 0; i < n; ++i) modulus = modulus * pi;
    FpPoly c = (w.num() * invmod(w.den(), modulus)) % modulus;
    FpPoly pik = FpPoly::constant(p, 1);
    for (long i = 0; i < k; ++i) pik = pik * pi;
    return RatFunc(c, pik);
}

RatFunc reduce_at(const RatFunc& b, const FpPoly& pi, long a) {
    const auto p = pi.prime();
    const long vb = multiplicity(b.num(), pi) - multiplicity(b.den(), pi);
    const long k = std::max(0L, -vb);
    FpPoly pik = FpPoly::constant(p, 1);
    for (long i = 0; i < k; ++i) pik = pik * pi;
    RatFunc w(b.num() * pik, b.den());
    return reduce_poly(w, pi, a + k, k);
}

}  // namespace

FieldElement reduce_mod_power(const FieldElement& b, long a, const Valuation& v) {
    check(b, v);
    const ValInt vb = val(b, v);
    if (vb >= ValInt(a)) return FieldElement::zero(v.field());
    const long k = std::max(0L, -vb.value());
    const long n = a + k;
    switch (v.kind()) {
        case Valuation::Kind::PAdic: {
            mpz_class pk, modulus;
            mpz_pow_ui(pk.get_mpz_t(), v.prime().get_mpz_t(), static_cast<unsigned long>(k));
            mpz_pow_ui(modulus.get_mpz_t(), v.prime().get_mpz_t(), static_cast<unsigned long>(n));
            mpq_class w = b.rational() * pk;
            w.canonicalize();
            mpz_class den_inv;
            mpz_invert(den_inv.get_mpz_t(), w.get_den().get_mpz_t(), modulus.get_mpz_t());
            mpz_class c = w.get_num() * den_inv;
            mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
            return FieldElement(mpq_class(c, pk));
        }
        case Valuation::Kind::PolyAdic:
            return FieldElement(reduce_at(b.function(), v.pi(), a));
        case Valuation::Kind::Infinity: {
            const auto p = v.field().p;
            RatFunc flipped = invert_variable(b.function());
            return FieldElement(invert_variable(reduce_at(flipped, FpPoly::variable(p), a)));
        }
    }
    return {};
}

}  // namespace btg
