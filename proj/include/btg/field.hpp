#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "btg/polynomial.hpp"

namespace btg {

/// Raised when two values from different coefficient fields meet, or a value
/// is paired with a valuation of the wrong kind.
class FieldMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Element of F_p(t) in lowest terms with a monic denominator.
class RatFunc {
public:
    explicit RatFunc(std::uint64_t p);  // zero
    RatFunc(FpPoly num, FpPoly den);
    explicit RatFunc(FpPoly num);

    std::uint64_t prime() const noexcept { return num_.prime(); }
    const FpPoly& num() const noexcept { return num_; }
    const FpPoly& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }

    friend bool operator==(const RatFunc&, const RatFunc&) = default;

private:
    void canonicalize();
    FpPoly num_;
    FpPoly den_;
};

/// The two supported coefficient fields: Q, or F_p(t) for a prime p.
struct Field {
    enum class Kind { Rational, Function };
    Kind kind = Kind::Rational;
    std::uint64_t p = 0;  // characteristic for Function

    static Field rational() { return {Kind::Rational, 0}; }
    static Field function(std::uint64_t p);

    bool is_rational() const noexcept { return kind == Kind::Rational; }
    friend bool operator==(const Field&, const Field&) = default;
    std::string to_string() const;
};

/// Exact scalar of Q or F_p(t). Values are always canonical, so structural
/// equality is field equality.
class FieldElement {
public:
    FieldElement() : v_(mpq_class(0)) {}
    FieldElement(mpq_class q);
    FieldElement(RatFunc f) : v_(std::move(f)) {}

    /// Integer n read in `field`.
    static FieldElement from_int(const Field& field, long n);
    static FieldElement zero(const Field& field) { return from_int(field, 0); }
    static FieldElement one(const Field& field) { return from_int(field, 1); }
    /// The element t of F_p(t).
    static FieldElement variable(std::uint64_t p);

    Field field() const;
    bool is_rational() const noexcept { return std::holds_alternative<mpq_class>(v_); }
    const mpq_class& rational() const;
    const RatFunc& function() const;

    bool is_zero() const;
    bool is_one() const;

    FieldElement operator-() const;
    FieldElement inverse() const;
    friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator/(const FieldElement& x, const FieldElement& y);
    FieldElement& operator+=(const FieldElement& y) { return *this = *this + y; }
    FieldElement& operator-=(const FieldElement& y) { return *this = *this - y; }
    FieldElement& operator*=(const FieldElement& y) { return *this = *this * y; }

    friend bool operator==(const FieldElement& x, const FieldElement& y);

    /// Integer power; negative exponents invert.
    FieldElement pow(long e) const;

    /// "a/b" for rationals; "(num)/(den)" in t for function-field elements.
    std::string to_string() const;
    /// Injective text key, used for hashing canonical forms.
    void append_key(std::string& out) const;

private:
    std::variant<mpq_class, RatFunc> v_;
};

/// The automorphism t -> 1/t of F_p(t).
RatFunc invert_variable(const RatFunc& f);

}  // namespace btg
