#include <doctest.h>

#include "btg/matgroup.hpp"
#include "support.hpp"

using namespace btg;
using namespace btg::testing;

TEST_CASE("commutator and basic products") {
    const Mat2 x = mq(1, 1, 0, 1), y = mq(1, 0, 1, 1);
    // x y x^-1 by hand: [[2,1],[1,1]] [[1,-1],[0,1]]
    CHECK(conjugate(x, y) == mq(2, -1, 1, 0));
    CHECK(trace(conjugate(x, y)) == q(2));
    // Full commutator x y x^-1 y^-1: [[2,-1],[1,0]] [[1,0],[-1,1]]
    CHECK(commutator(x, y) == mq(3, -1, 1, 0));
    CHECK(trace(commutator(x, y)) == q(3));
    CHECK(inverse(mq(2, 0, 0, 1)) == mq("1/2", "0", "0", "1"));
    CHECK(trace(mq(0, -1, 1, 0)) == q(0));
    CHECK(det(mq(2, 3, 1, 4)) == q(5));
    CHECK(power(mq(1, 1, 0, 1), -3) == mq(1, -3, 0, 1));
}

TEST_CASE("construction invariants") {
    CHECK_THROWS_AS(mq(1, 2, 2, 4), std::domain_error);
    CHECK_THROWS_AS(Mat2(q(1), fp(2, {1}), q(0), q(1)), FieldMismatch);
    CHECK_THROWS_AS(GeneratorSet({}), std::invalid_argument);
    CHECK_THROWS_AS(GeneratorSet({mq(1, 1, 0, 1), Mat2::identity(Field::function(2))}), FieldMismatch);
    CHECK_THROWS_AS(GeneratorSet({mq(1, 1, 0, 1)}, {"x", "y"}), std::invalid_argument);
    CHECK_THROWS_AS(GeneratorSet({mq(1, 1, 0, 1), mq(2, 0, 0, 1)}, {"x", "x"}), std::invalid_argument);
}

TEST_CASE("evaluate_word") {
    const GeneratorSet s({mq(2, 0, 0, 1), mq(1, 1, 0, 1)}, {"t", "a"});
    CHECK(evaluate_word(s, GroupWord()).is_identity());
    CHECK(evaluate_word(s, GroupWord({{0, 1}, {0, -1}})).is_identity());
    CHECK(evaluate_word(s, GroupWord({{1, 1}, {0, 1}, {1, -1}})) == mq(2, -1, 0, 1));
    CHECK_THROWS_AS(evaluate_word(s, GroupWord({{2, 1}})), std::out_of_range);
}

TEST_CASE("word rendering and parsing") {
    const GeneratorSet s({mq(2, 0, 0, 1), mq(1, 1, 0, 1)}, {"t", "a"});
    const GroupWord w({{1, 1}, {0, 1}, {1, -1}});
    CHECK(s.render(w) == "a*t*a^-1");
    CHECK(s.parse_word("a*t*a^-1") == w);
    CHECK(s.parse_word("a t a^-1") == w);
    CHECK(s.parse_word("t^3").length() == 3);
    CHECK(s.parse_word("a^-2") == GroupWord({{1, -1}, {1, -1}}));
    CHECK(s.parse_word("1").empty());
    CHECK(s.render(GroupWord()) == "1");
    CHECK(w.inverse() == GroupWord({{1, 1}, {0, -1}, {1, -1}}));
    CHECK_THROWS_AS(s.parse_word("a*b"), std::invalid_argument);
}

TEST_CASE("projective canonical form") {
    CHECK(projective_canonical(mq(2, 0, 0, 2)).is_identity());
    CHECK(projective_canonical(mq(0, -3, 3, 0)) == mq(0, 1, -1, 0));
    CHECK(projective_canonical(mq(4, 2, 0, 2)) == mq("1", "1/2", "0", "1/2"));
}

TEST_CASE("projective canonical form is scale invariant") {
    Sampler s(21);
    for (const Field& f : {Field::rational(), Field::function(3)}) {
        for (int i = 0; i < 100; ++i) {
            const Mat2 x = s.matrix(f, 20);
            const FieldElement lambda = f.is_rational() ? s.nonzero_rational(20) : s.ratfunc(3, 3);
            if (lambda.is_zero()) continue;
            CHECK(projective_canonical(lambda * x) == projective_canonical(x));
        }
    }
}

TEST_CASE("determinant is multiplicative and trace is a class function") {
    Sampler s(22);
    for (const Field& f : {Field::rational(), Field::function(2), Field::function(5)}) {
        for (int i = 0; i < 100; ++i) {
            const Mat2 x = s.matrix(f, 30), y = s.matrix(f, 30);
            CHECK(det(x * y) == det(x) * det(y));
            CHECK(trace(x * y * inverse(x)) == trace(y));
            CHECK((x * inverse(x)).is_identity());
        }
    }
}

TEST_CASE("finite order and ellipticity examples") {
    CHECK(is_finite_order(mq(0, -1, 1, 0)));
    CHECK_FALSE(is_finite_order(mq(1, 1, 0, 1)));
    CHECK_FALSE(is_finite_order(mq("2", "0", "0", "1/2")));
    CHECK(is_finite_order(mq(0, 1, 1, 0)));
    CHECK(is_finite_order(mq(3, 0, 0, 3)));
    CHECK_THROWS_AS(is_finite_order(Mat2::identity(Field::function(2))), FieldMismatch);

    CHECK(is_elliptic_moebius(mq(0, -1, 1, 0)));
    CHECK_FALSE(is_elliptic_moebius(mq("2", "0", "0", "1/2")));
    CHECK_FALSE(is_elliptic_moebius(mq(1, 1, 0, 1)));
    CHECK_THROWS_AS(is_elliptic_moebius(mq(0, 1, 1, 0)), std::invalid_argument);
}

TEST_CASE("finite-order test agrees with explicit powers on small integer matrices") {
    // Oracle: x^k is scalar for some 1 <= k <= 12.
    int checked = 0;
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b)
            for (long c = -2; c <= 2; ++c)
                for (long d = -2; d <= 2; ++d) {
                    const long dt = a * d - b * c;
                    if (dt != 1 && dt != -1) continue;
                    const Mat2 x = mq(a, b, c, d);
                    bool oracle = false;
                    Mat2 acc = x;
                    for (int k = 1; k <= 12 && !oracle; ++k) {
                        oracle = acc.is_scalar();
                        acc = acc * x;
                    }
                    CAPTURE(x.to_string());
                    CHECK(is_finite_order(x) == oracle);
                    ++checked;
                }
    CHECK(checked > 100);
}

TEST_CASE("matrices over F_2(t)") {
    const auto t = FieldElement::variable(2);
    const Field f = Field::function(2);
    const Mat2 a(t, FieldElement::zero(f), FieldElement::zero(f), FieldElement::one(f));
    const Mat2 u = Mat2::from_ints(f, 1, 1, 0, 1);
    // char 2: u has order 2 and trace 0
    CHECK((u * u).is_identity());
    CHECK(trace(u).is_zero());
    CHECK(conjugate(u, a) == Mat2(t, t + FieldElement::one(f), FieldElement::zero(f), FieldElement::one(f)));
}
