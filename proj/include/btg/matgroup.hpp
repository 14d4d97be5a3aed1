#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "btg/field.hpp"

namespace btg {

/// Invertible 2x2 matrix over Q or F_p(t), row-major [[a, b], [c, d]].
class Mat2 {
public:
    /// Throws std::domain_error if singular, FieldMismatch if entries disagree.
    Mat2(FieldElement a, FieldElement b, FieldElement c, FieldElement d);

    static Mat2 identity(const Field& field);
    static Mat2 scalar(const FieldElement& lambda);
    static Mat2 diagonal(const FieldElement& x, const FieldElement& y);
    /// Integer entries read in `field`.
    static Mat2 from_ints(const Field& field, long a, long b, long c, long d);

    const FieldElement& a() const noexcept { return e_[0]; }
    const FieldElement& b() const noexcept { return e_[1]; }
    const FieldElement& c() const noexcept { return e_[2]; }
    const FieldElement& d() const noexcept { return e_[3]; }
    const FieldElement& operator()(int row, int col) const noexcept { return e_[static_cast<std::size_t>(2 * row + col)]; }
    const std::array<FieldElement, 4>& entries() const noexcept { return e_; }
    Field field() const { return e_[0].field(); }

    bool is_scalar() const;
    bool is_identity() const;

    friend bool operator==(const Mat2&, const Mat2&) = default;

    /// Exact injective encoding of the entries.
    std::string key() const;
    std::string to_string() const;

private:
    std::array<FieldElement, 4> e_;
};

Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator*(const FieldElement& lambda, const Mat2& x);
FieldElement det(const Mat2& x);
FieldElement trace(const Mat2& x);
/// Adjugate over determinant.
Mat2 inverse(const Mat2& x);
/// x y x^-1 y^-1
Mat2 commutator(const Mat2& x, const Mat2& y);
/// x y x^-1
Mat2 conjugate(const Mat2& x, const Mat2& y);
/// Integer power; negative exponents invert.
Mat2 power(const Mat2& x, long e);

/// The representative of x's class modulo scalars whose first nonzero entry
/// (row-major) is 1.
Mat2 projective_canonical(const Mat2& x);

/// Finite order in PGL2 restricted to rational matrices: scalar, or
/// det 1 with trace in {-1, 0, 1}, or det -1 with trace 0.
/// Throws FieldMismatch for function-field input.
bool is_finite_order(const Mat2& x);

/// trace^2 < 4 det for a rational matrix with positive determinant.
/// Throws std::invalid_argument if det <= 0, FieldMismatch for F_p(t).
bool is_elliptic_moebius(const Mat2& x);

/// One letter of a group word: generator index and exponent +1 or -1.
struct Letter {
    std::size_t gen = 0;
    int exp = 1;
    friend bool operator==(const Letter&, const Letter&) = default;
};

/// Word over S u S^-1. Its length upper-bounds the S-length of its value.
class GroupWord {
public:
    GroupWord() = default;
    explicit GroupWord(std::vector<Letter> letters);

    static GroupWord generator(std::size_t i, int exp = 1) { return GroupWord({Letter{i, exp}}); }

    std::size_t length() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    const std::vector<Letter>& letters() const noexcept { return letters_; }

    GroupWord inverse() const;
    /// Word inverted when sign is -1.
    GroupWord signed_power(int sign) const { return sign < 0 ? inverse() : *this; }
    friend GroupWord operator*(const GroupWord& x, const GroupWord& y);
    friend bool operator==(const GroupWord&, const GroupWord&) = default;

private:
    std::vector<Letter> letters_;
};

/// Ordered, named, nonempty list of invertible matrices over one field.
class GeneratorSet {
public:
    /// Names default to a, b, c, ... when empty.
    GeneratorSet(std::vector<Mat2> gens, std::vector<std::string> names = {});

    std::size_t size() const noexcept { return gens_.size(); }
    const Mat2& operator[](std::size_t i) const { return gens_.at(i); }
    const Mat2& inverse_of(std::size_t i) const { return inverses_.at(i); }
    const std::vector<Mat2>& matrices() const noexcept { return gens_; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const Field& field() const noexcept { return field_; }

    /// The matrix of a letter.
    const Mat2& letter(const Letter& l) const { return l.exp > 0 ? gens_.at(l.gen) : inverses_.at(l.gen); }

    /// Names joined by '*', inverse letters suffixed with ^-1; "1" for the empty word.
    std::string render(const GroupWord& w) const;
    /// Parses render()'s syntax; also accepts whitespace separators and ^n powers.
    GroupWord parse_word(const std::string& text) const;

private:
    std::vector<Mat2> gens_;
    std::vector<Mat2> inverses_;
    std::vector<std::string> names_;
    Field field_;
};

/// Left-to-right product; the empty word gives the identity.
Mat2 evaluate_word(const GeneratorSet& s, const GroupWord& w);

}  // namespace btg
