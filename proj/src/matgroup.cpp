#include "btg/matgroup.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace btg {

Mat2::Mat2(FieldElement a, FieldElement b, FieldElement c, FieldElement d)
    : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {
    const Field f = e_[0].field();
    for (const auto& x : e_) {
        if (x.field() != f) throw FieldMismatch("matrix entries from different fields");
    }
    if ((e_[0] * e_[3] - e_[1] * e_[2]).is_zero()) {
        throw std::domain_error("singular matrix " + to_string());
    }
}

Mat2 Mat2::identity(const Field& field) { return from_ints(field, 1, 0, 0, 1); }

Mat2 Mat2::scalar(const FieldElement& lambda) {
    const auto zero = FieldElement::zero(lambda.field());
    return Mat2(lambda, zero, zero, lambda);
}

Mat2 Mat2::diagonal(const FieldElement& x, const FieldElement& y) {
    const auto zero = FieldElement::zero(x.field());
    return Mat2(x, zero, zero, y);
}

Mat2 Mat2::from_ints(const Field& field, long a, long b, long c, long d) {
    return Mat2(FieldElement::from_int(field, a), FieldElement::from_int(field, b), FieldElement::from_int(field, c),
                FieldElement::from_int(field, d));
}

bool Mat2::is_scalar() const { return b().is_zero() && c().is_zero() && a() == d(); }

bool Mat2::is_identity() const { return is_scalar() && a().is_one(); }

std::string Mat2::key() const {
    std::string out;
    for (const auto& x : e_) x.append_key(out);
    return out;
}

std::string Mat2::to_string() const {
    return "[[" + a().to_string() + ", " + b().to_string() + "], [" + c().to_string() + ", " + d().to_string() + "]]";
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return Mat2(x.a() * y.a() + x.b() * y.c(), x.a() * y.b() + x.b() * y.d(), x.c() * y.a() + x.d() * y.c(),
                x.c() * y.b() + x.d() * y.d());
}

Mat2 operator*(const FieldElement& lambda, const Mat2& x) {
    return Mat2(lambda * x.a(), lambda * x.b(), lambda * x.c(), lambda * x.d());
}

FieldElement det(const Mat2& x) { return x.a() * x.d() - x.b() * x.c(); }

FieldElement trace(const Mat2& x) { return x.a() + x.d(); }

Mat2 inverse(const Mat2& x) {
    const FieldElement r = det(x).inverse();
    return Mat2(r * x.d(), -(r * x.b()), -(r * x.c()), r * x.a());
}

Mat2 commutator(const Mat2& x, const Mat2& y) { return x * y * inverse(x) * inverse(y); }

Mat2 conjugate(const Mat2& x, const Mat2& y) { return x * y * inverse(x); }

Mat2 power(const Mat2& x, long e) {
    if (e < 0) return power(inverse(x), -e);
    Mat2 result = Mat2::identity(x.field());
    Mat2 base = x;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

Mat2 projective_canonical(const Mat2& x) {
    for (const auto& entry : x.entries()) {
        if (!entry.is_zero()) return entry.inverse() * x;
    }
    return x;  // unreachable: invertible matrices have a nonzero entry
}

bool is_finite_order(const Mat2& x) {
    if (!x.field().is_rational()) throw FieldMismatch("finite-order test is only available over Q");
    if (x.is_scalar()) return true;
    const mpq_class d = det(x).rational();
    const mpq_class t = trace(x).rational();
    if (d == 1) return t == -1 || t == 0 || t == 1;
    if (d == -1) return t == 0;
    return false;
}

bool is_elliptic_moebius(const Mat2& x) {
    if (!x.field().is_rational()) throw FieldMismatch("Moebius ellipticity test is only available over Q");
    const mpq_class d = det(x).rational();
    if (sgn(d) <= 0) throw std::invalid_argument("Moebius ellipticity needs det > 0");
    const mpq_class t = trace(x).rational();
    return t * t < 4 * d;
}

GroupWord::GroupWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
    for (const auto& l : letters_) {
        if (l.exp != 1 && l.exp != -1) throw std::invalid_argument("word exponents must be +1 or -1");
    }
}

GroupWord GroupWord::inverse() const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    for (auto& l : out) l.exp = -l.exp;
    return GroupWord(std::move(out));
}

GroupWord operator*(const GroupWord& x, const GroupWord& y) {
    std::vector<Letter> out = x.letters_;
    out.insert(out.end(), y.letters_.begin(), y.letters_.end());
    return GroupWord(std::move(out));
}

GeneratorSet::GeneratorSet(std::vector<Mat2> gens, std::vector<std::string> names)
    : gens_(std::move(gens)), names_(std::move(names)) {
    if (gens_.empty()) throw std::invalid_argument("generator set must be nonempty");
    field_ = gens_.front().field();
    for (const auto& g : gens_) {
        if (g.field() != field_) throw FieldMismatch("generators over different fields");
        inverses_.push_back(btg::inverse(g));
    }
    if (names_.empty()) {
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            names_.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "g" + std::to_string(i));
        }
    }
    if (names_.size() != gens_.size()) throw std::invalid_argument("generator names and matrices differ in count");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        const auto& n = names_[i];
        if (n.empty() || !std::isalpha(static_cast<unsigned char>(n[0]))) {
            throw std::invalid_argument("generator name must start with a letter: '" + n + "'");
        }
        for (char ch : n) {
            if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') {
                throw std::invalid_argument("generator name must be alphanumeric: '" + n + "'");
            }
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (names_[j] == n) throw std::invalid_argument("duplicate generator name '" + n + "'");
        }
    }
}

std::string GeneratorSet::render(const GroupWord& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (const auto& l : w.letters()) {
        if (!out.empty()) out += '*';
        out += names_.at(l.gen);
        if (l.exp < 0) out += "^-1";
    }
    return out;
}

GroupWord GeneratorSet::parse_word(const std::string& text) const {
    std::vector<Letter> letters;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*')) ++i;
    };
    skip();
    if (text.substr(i) == "1" || text.substr(i) == "e") return GroupWord();
    while (i < text.size()) {
        const std::size_t start = i;
        while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
        const std::string name = text.substr(start, i - start);
        std::size_t gen = names_.size();
        for (std::size_t j = 0; j < names_.size(); ++j) {
            if (names_[j] == name) gen = j;
        }
        if (gen == names_.size()) {
            throw std::invalid_argument("unknown generator '" + name + "' at position " + std::to_string(start) +
                                        " in word '" + text + "'");
        }
        long e = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            const std::size_t num_start = i;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            try {
                e = std::stol(text.substr(num_start, i - num_start));
            } catch (const std::exception&) {
                throw std::invalid_argument("bad exponent at position " + std::to_string(num_start) + " in word '" +
                                            text + "'");
            }
        }
        for (long k = 0; k < (e < 0 ? -e : e); ++k) letters.push_back(Letter{gen, e < 0 ? -1 : 1});
        skip();
    }
    return GroupWord(std::move(letters));
}

Mat2 evaluate_word(const GeneratorSet& s, const GroupWord& w) {
    Mat2 result = Mat2::identity(s.field());
    for (const auto& l : w.letters()) {
        if (l.gen >= s.size()) throw std::out_of_range("word letter index out of range");
        result = result * s.letter(l);
    }
    return result;
}

}  // namespace btg
