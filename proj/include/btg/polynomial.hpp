#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace btg {

/// Polynomial over the prime field F_p, coefficients stored least-degree-first
/// with trailing zeros stripped (the zero polynomial has no coefficients).
class FpPoly {
public:
    FpPoly() = default;
    FpPoly(std::uint64_t p, std::vector<std::int64_t> coeffs);

    static FpPoly constant(std::uint64_t p, std::int64_t c);
    static FpPoly monomial(std::uint64_t p, std::uint64_t c, std::size_t degree);
    /// The polynomial t.
    static FpPoly variable(std::uint64_t p);

    std::uint64_t prime() const noexcept { return p_; }
    const std::vector<std::uint64_t>& coeffs() const noexcept { return c_; }

    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    /// Degree; -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    std::uint64_t lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
    std::uint64_t coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }

    FpPoly monic() const;
    /// Coefficients reversed: t^deg * f(1/t).
    FpPoly reversed() const;

    friend FpPoly operator+(const FpPoly& x, const FpPoly& y);
    friend FpPoly operator-(const FpPoly& x, const FpPoly& y);
    friend FpPoly operator*(const FpPoly& x, const FpPoly& y);
    FpPoly operator-() const;
    FpPoly scaled(std::uint64_t s) const;

    friend bool operator==(const FpPoly& x, const FpPoly& y) = default;
    /// Total order: by degree, then coefficients from the top down.
    friend bool operator<(const FpPoly& x, const FpPoly& y);

    std::string to_string(char var = 't') const;

private:
    void strip();

    std::uint64_t p_ = 2;
    std::vector<std::uint64_t> c_;

    friend std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
};

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
bool is_prime_u64(std::uint64_t n);

/// Quotient and remainder; throws std::domain_error on division by zero.
std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
FpPoly operator/(const FpPoly& a, const FpPoly& b);
FpPoly operator%(const FpPoly& a, const FpPoly& b);

/// Monic gcd (zero only if both inputs are zero).
FpPoly gcd(const FpPoly& a, const FpPoly& b);
/// Extended gcd: returns (g, s, u) with s*a + u*b = g, g monic.
std::tuple<FpPoly, FpPoly, FpPoly> xgcd(const FpPoly& a, const FpPoly& b);

FpPoly powmod(FpPoly base, std::uint64_t e, const FpPoly& modulus);
/// Inverse of a modulo m; throws if gcd(a, m) != 1.
FpPoly invmod(const FpPoly& a, const FpPoly& m);

/// Rabin's irreducibility test.
bool is_irreducible(const FpPoly& f);

/// Multiplicity of the irreducible pi in f (f nonzero).
long multiplicity(FpPoly f, const FpPoly& pi);

/// Distinct monic irreducible divisors of a nonzero polynomial, sorted.
std::vector<FpPoly> irreducible_divisors(const FpPoly& f);

}  // namespace btg
