#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "btg/bt_tree.hpp"
#include "btg/field.hpp"
#include "btg/matgroup.hpp"
#include "btg/valuation.hpp"

namespace btg::testing {

inline FieldElement q(const std::string& s) { return FieldElement(mpq_class(s)); }
inline FieldElement q(long n) { return FieldElement(mpq_class(n)); }

/// Rational matrix from "a/b" strings or integers.
inline Mat2 mq(const std::string& a, const std::string& b, const std::string& c, const std::string& d) {
    return Mat2(q(a), q(b), q(c), q(d));
}
inline Mat2 mq(long a, long b, long c, long d) { return Mat2(q(a), q(b), q(c), q(d)); }

/// Polynomial element of F_p(t) from low-to-high coefficients.
inline FieldElement fp(std::uint64_t p, std::vector<std::int64_t> coeffs) {
    return FieldElement(RatFunc(FpPoly(p, std::move(coeffs))));
}
inline FieldElement fp(std::uint64_t p, std::vector<std::int64_t> num, std::vector<std::int64_t> den) {
    return FieldElement(RatFunc(FpPoly(p, std::move(num)), FpPoly(p, std::move(den))));
}

inline Valuation padic(long p) { return Valuation::p_adic(mpz_class(p)); }

/// Seeded generator of random field elements and matrices.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    FieldElement rational(long height) {
        long den = integer(1, height);
        return FieldElement(mpq_class(integer(-height, height), den));
    }
    FieldElement nonzero_rational(long height) {
        for (;;) {
            auto x = rational(height);
            if (!x.is_zero()) return x;
        }
    }
    FieldElement poly(std::uint64_t p, int max_degree) {
        std::vector<std::int64_t> c(static_cast<std::size_t>(integer(0, max_degree) + 1));
        for (auto& x : c) x = integer(0, static_cast<long>(p) - 1);
        return FieldElement(RatFunc(FpPoly(p, c)));
    }
    FieldElement ratfunc(std::uint64_t p, int max_degree) {
        for (;;) {
            auto den = poly(p, max_degree);
            if (!den.is_zero()) return poly(p, max_degree) / den;
        }
    }
    FieldElement element(const Field& f, long height, int max_degree = 3) {
        return f.is_rational() ? rational(height) : ratfunc(f.p, max_degree);
    }
    Mat2 matrix(const Field& f, long height, int max_degree = 3) {
        for (;;) {
            auto a = element(f, height, max_degree), b = element(f, height, max_degree),
                 c = element(f, height, max_degree), d = element(f, height, max_degree);
            if (!(a * d - b * c).is_zero()) return Mat2(a, b, c, d);
        }
    }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Random vertex: image of the base vertex under a random matrix.
inline Vertex random_vertex(const BruhatTitsTree& tree, Sampler& s, long height = 50) {
    return tree.vertex_from_matrix(s.matrix(tree.valuation().field(), height));
}

}  // namespace btg::testing
