#pragma once

#include <compare>
#include <string>

#include <gmpxx.h>

#include "btg/field.hpp"

namespace btg {

/// An integer or +infinity (the valuation of zero).
class ValInt {
public:
    constexpr ValInt(long n = 0) noexcept : value_(n), infinite_(false) {}
    static constexpr ValInt infinity() noexcept {
        ValInt v;
        v.infinite_ = true;
        return v;
    }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    /// Finite value; throws std::domain_error on infinity.
    long value() const;

    friend constexpr ValInt operator+(ValInt x, ValInt y) noexcept {
        if (x.infinite_ || y.infinite_) return infinity();
        return ValInt(x.value_ + y.value_);
    }
    friend constexpr bool operator==(ValInt x, ValInt y) noexcept {
        return x.infinite_ == y.infinite_ && (x.infinite_ || x.value_ == y.value_);
    }
    friend constexpr std::strong_ordering operator<=>(ValInt x, ValInt y) noexcept {
        if (x.infinite_ || y.infinite_) return x.infinite_ <=> y.infinite_;
        return x.value_ <=> y.value_;
    }

    std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

private:
    long value_;
    bool infinite_;
};

inline ValInt min(ValInt x, ValInt y) noexcept { return x <= y ? x : y; }

/// Discrete rank-one valuation on Q (p-adic) or F_p(t) (at a monic
/// irreducible polynomial, or the degree valuation at infinity).
class Valuation {
public:
    enum class Kind { PAdic, PolyAdic, Infinity };

    static Valuation p_adic(const mpz_class& p);
    static Valuation poly_adic(const FpPoly& pi);
    static Valuation at_infinity(std::uint64_t p);

    Kind kind() const noexcept { return kind_; }
    /// Prime of a p-adic valuation.
    const mpz_class& prime() const noexcept { return prime_; }
    /// Monic irreducible of a polynomial valuation.
    const FpPoly& pi() const noexcept { return pi_; }
    /// Field on which the valuation is defined.
    Field field() const;

    bool accepts(const FieldElement& x) const { return x.field() == field(); }

    friend bool operator==(const Valuation& x, const Valuation& y);
    friend bool operator<(const Valuation& x, const Valuation& y);

    std::string to_string() const;

private:
    Valuation() = default;
    Kind kind_ = Kind::PAdic;
    mpz_class prime_;
    FpPoly pi_;
    std::uint64_t char_ = 0;
};

/// Exponent of the prime in a nonzero integer (|n| > 0).
long integer_valuation(const mpz_class& n, const mpz_class& p);

ValInt val(const FieldElement& x, const Valuation& v);
/// p, pi, or 1/t.
FieldElement uniformizer(const Valuation& v);
/// uniformizer(v)^k for any integer k.
FieldElement uniformizer_power(const Valuation& v, long k);

/// Canonical representative of b modulo pi^a A_v, where A_v is the valuation
/// ring. The result r satisfies val(b - r) >= a, and equals 0 or has the form
/// c * pi^-k with k = max(0, -val(b)) and c a reduced digit block of
/// a + k digits.
FieldElement reduce_mod_power(const FieldElement& b, long a, const Valuation& v);

}  // namespace btg
