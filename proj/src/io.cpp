#include "btg/io.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

namespace btg::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

const Json& member(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing \"") + key + "\"");
    return *it;
}

long as_long(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<long>();
}

mpz_class as_mpz(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return mpz_class(j.get<long>());
    if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<unsigned long long>()));
    if (j.is_string()) {
        mpz_class z;
        if (z.set_str(j.get<std::string>(), 10) != 0) fail(where, "not an integer: \"" + j.get<std::string>() + "\"");
        return z;
    }
    fail(where, "expected an integer");
}

std::uint64_t as_char(const Json& j, const std::string& where) {
    const long p = as_long(j, where);
    if (p < 2 || p > (1L << 31) || !is_prime_u64(static_cast<std::uint64_t>(p))) {
        fail(where, "characteristic must be a prime below 2^31, got " + std::to_string(p));
    }
    return static_cast<std::uint64_t>(p);
}

FpPoly poly_from_coeffs(const Json& j, std::uint64_t p, const std::string& where) {
    if (!j.is_array()) fail(where, "expected a coefficient array");
    std::vector<std::int64_t> c;
    for (std::size_t i = 0; i < j.size(); ++i) c.push_back(as_long(j[i], where + "[" + std::to_string(i) + "]"));
    return FpPoly(p, std::move(c));
}

Json coeffs_json(const FpPoly& f) {
    Json out = Json::array();
    for (auto c : f.coeffs()) out.push_back(c);
    return out;
}

// Recursive-descent reader for polynomial text: terms like 3t^2, t, 5, 2*t.
class PolyText {
public:
    PolyText(const std::string& s, std::uint64_t p) : s_(s), p_(p) {}

    RatFunc ratfunc() {
        FpPoly num = group();
        FpPoly den = FpPoly::constant(p_, 1);
        skip();
        if (peek() == '/') {
            ++i_;
            den = group();
        }
        skip();
        if (i_ != s_.size()) error("unexpected '" + std::string(1, s_[i_]) + "'");
        if (den.is_zero()) error("zero denominator");
        return RatFunc(num, den);
    }

private:
    FpPoly group() {
        skip();
        if (peek() == '(') {
            ++i_;
            FpPoly f = poly();
            skip();
            if (peek() != ')') error("expected ')'");
            ++i_;
            return f;
        }
        return poly();
    }

    FpPoly poly() {
        FpPoly acc(p_, {});
        bool negative = false;
        skip();
        if (peek() == '-' || peek() == '+') negative = s_[i_++] == '-';
        for (;;) {
            FpPoly t = term();
            acc = negative ? acc - t : acc + t;
            skip();
            if (peek() != '+' && peek() != '-') break;
            negative = s_[i_++] == '-';
        }
        return acc;
    }

    FpPoly term() {
        skip();
        std::int64_t coeff = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = number();
            have_coeff = true;
            skip();
            if (peek() == '*') {
                ++i_;
                skip();
            }
        }
        if (peek() == 't') {
            ++i_;
            long e = 1;
            skip();
            if (peek() == '^') {
                ++i_;
                skip();
                e = static_cast<long>(number());
            }
            return FpPoly::monomial(p_, static_cast<std::uint64_t>(((coeff % static_cast<std::int64_t>(p_)))), e);
        }
        if (!have_coeff) error("expected a term");
        return FpPoly::constant(p_, coeff);
    }

    std::int64_t number() {
        const std::size_t start = i_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
        if (start == i_) error("expected a number");
        if (i_ - start > 18) error("number too large");
        return std::stoll(s_.substr(start, i_ - start));
    }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
    [[noreturn]] void error(const std::string& what) const {
        throw InputError("cannot parse \"" + s_ + "\" at offset " + std::to_string(i_) + ": " + what);
    }

    const std::string& s_;
    std::uint64_t p_;
    std::size_t i_ = 0;
};

std::string index_path(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(source + ": " + e.what() + " (byte " + std::to_string(e.byte) + ")");
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str(), path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Field parse_field(const Json& j) {
    const std::string where = "field";
    const Json& kind = member(j, "kind", where);
    if (kind == "rational") return Field::rational();
    if (kind == "function") return Field::function(as_char(member(j, "p", where), where + ".p"));
    fail(where, "kind must be \"rational\" or \"function\"");
}

FieldElement parse_element_text(const std::string& text, const Field& f) {
    if (f.is_rational()) {
        mpq_class q;
        std::string t;
        for (char c : text) {
            if (!std::isspace(static_cast<unsigned char>(c))) t += c;
        }
        if (!t.empty() && t[0] == '+') t.erase(0, 1);
        if (t.empty() || q.set_str(t, 10) != 0) {
            throw InputError("not a rational number: \"" + text + "\"");
        }
        if (q.get_den() == 0) throw InputError("zero denominator in \"" + text + "\"");
        return FieldElement(q);
    }
    return FieldElement(PolyText(text, f.p).ratfunc());
}

FieldElement parse_element(const Json& j, const Field& f, const std::string& where) {
    try {
        if (j.is_number_integer() || j.is_number_unsigned()) {
            const mpz_class z = as_mpz(j, where);
            if (f.is_rational()) return FieldElement(mpq_class(z));
            const mpz_class r = ((z % static_cast<unsigned long>(f.p)) + static_cast<unsigned long>(f.p)) %
                                static_cast<unsigned long>(f.p);
            return FieldElement::from_int(f, r.get_si());
        }
        if (j.is_string()) return parse_element_text(j.get<std::string>(), f);
        if (j.is_object() && !f.is_rational()) {
            if (j.contains("p") && as_long(j["p"], where + ".p") != static_cast<long>(f.p)) {
                fail(where, "characteristic does not match the field");
            }
            FpPoly num = poly_from_coeffs(member(j, "num", where), f.p, where + ".num");
            FpPoly den = j.contains("den") ? poly_from_coeffs(j["den"], f.p, where + ".den") : FpPoly::constant(f.p, 1);
            if (den.is_zero()) fail(where, "zero denominator");
            return FieldElement(RatFunc(num, den));
        }
    } catch (const InputError& e) {
        const std::string msg = e.what();
        if (msg.rfind(where, 0) == 0) throw;
        fail(where, msg);
    }
    fail(where, f.is_rational() ? "expected a rational as a string or integer"
                                : "expected an F_p(t) element as text, an integer or {\"num\",\"den\"}");
}

Mat2 parse_matrix(const Json& j, const Field& f, const std::string& where) {
    if (!j.is_array() || j.size() != 2) fail(where, "expected [[a, b], [c, d]]");
    std::vector<FieldElement> e;
    for (std::size_t r = 0; r < 2; ++r) {
        if (!j[r].is_array() || j[r].size() != 2) fail(index_path(where, r), "expected a row of two entries");
        for (std::size_t c = 0; c < 2; ++c) e.push_back(parse_element(j[r][c], f, index_path(index_path(where, r), c)));
    }
    try {
        return Mat2(e[0], e[1], e[2], e[3]);
    } catch (const std::domain_error& ex) {
        fail(where, ex.what());
    }
}

Valuation parse_valuation(const Json& j) {
    const std::string where = "valuation";
    const Json& kind = member(j, "kind", where);
    try {
        if (kind == "p-adic") {
            const mpz_class p = as_mpz(member(j, "p", where), where + ".p");
            return Valuation::p_adic(p);
        }
        if (kind == "poly") {
            const std::uint64_t p = as_char(member(j, "p", where), where + ".p");
            return Valuation::poly_adic(poly_from_coeffs(member(j, "pi", where), p, where + ".pi"));
        }
        if (kind == "infinity") return Valuation::at_infinity(as_char(member(j, "p", where), where + ".p"));
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
    fail(where, "kind must be \"p-adic\", \"poly\" or \"infinity\"");
}

Vertex parse_vertex(const Json& j, const BruhatTitsTree& tree, const std::string& where) {
    const long a = as_long(member(j, "a", where), where + ".a");
    const Field f = tree.valuation().field();
    const FieldElement b = parse_element(member(j, "b", where), f, where + ".b");
    const Mat2 m(uniformizer_power(tree.valuation(), a), b, FieldElement::zero(f), FieldElement::one(f));
    return tree.vertex_from_matrix(m);
}

GeneratorSet parse_generator_file(const Json& j) {
    const std::string where = "generators file";
    if (!j.is_object()) fail(where, "expected an object");
    if (auto it = j.find("schema"); it != j.end() && *it != kSchemaVersion) {
        fail(where, "unsupported schema " + it->dump());
    }
    const Field f = parse_field(member(j, "field", where));
    const Json& gens = member(j, "generators", where);
    if (!gens.is_array() || gens.empty()) fail(where, "\"generators\" must be a nonempty array");
    std::vector<Mat2> mats;
    for (std::size_t i = 0; i < gens.size(); ++i) mats.push_back(parse_matrix(gens[i], f, index_path("generators", i)));
    std::vector<std::string> names;
    if (auto it = j.find("names"); it != j.end()) {
        if (!it->is_array()) fail(where, "\"names\" must be an array of strings");
        for (std::size_t i = 0; i < it->size(); ++i) {
            if (!(*it)[i].is_string()) fail(index_path("names", i), "expected a string");
            names.push_back((*it)[i].get<std::string>());
        }
    }
    try {
        return GeneratorSet(std::move(mats), std::move(names));
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
}

Json to_json(const Field& f) {
    if (f.is_rational()) return {{"kind", "rational"}};
    return {{"kind", "function"}, {"p", f.p}};
}

Json to_json(const FieldElement& x) { return x.to_string(); }

Json to_json(const Mat2& m) { return Json::array({{to_json(m.a()), to_json(m.b())}, {to_json(m.c()), to_json(m.d())}}); }

Json to_json(const Valuation& v) {
    switch (v.kind()) {
        case Valuation::Kind::PAdic:
            if (v.prime().fits_slong_p()) return {{"kind", "p-adic"}, {"p", v.prime().get_si()}};
            return {{"kind", "p-adic"}, {"p", v.prime().get_str()}};
        case Valuation::Kind::PolyAdic:
            return {{"kind", "poly"}, {"p", v.field().p}, {"pi", coeffs_json(v.pi())}};
        case Valuation::Kind::Infinity: return {{"kind", "infinity"}, {"p", v.field().p}};
    }
    return nullptr;
}

Json to_json(const Vertex& x) { return {{"a", x.a}, {"b", x.b.to_string()}}; }

Json to_json(ValInt v) {
    if (v.is_infinite()) return "inf";
    return v.value();
}

Json to_json(const Bridge& b) {
    return {{"first", to_json(b.on_first)}, {"second", to_json(b.on_second)}, {"separation", b.separation}};
}

Json to_json(const Certificate& c) {
    Json j{{"kind", to_string(c.kind)},
           {"signs", to_string(c.signs)},
           {"depth", c.depth},
           {"words_checked", c.words_checked},
           {"translation_lengths", {c.length_first, c.length_second}},
           {"valid", c.valid()}};
    j["bridge"] = c.bridge ? to_json(*c.bridge) : Json(nullptr);
    return j;
}

Json to_json(const GeneratorSet& s) {
    Json gens = Json::array();
    for (const auto& m : s.matrices()) gens.push_back(to_json(m));
    return {{"schema", kSchemaVersion}, {"field", to_json(s.field())}, {"names", s.names()}, {"generators", gens}};
}

Json witness_json(const GeneratorSet& s, const WitnessReport& w) {
    return {{"valuation", to_json(w.valuation)},
            {"g_word", s.render(w.g_word)},
            {"s_word", s.render(w.s_word)},
            {"signs", {w.signs.first, w.signs.second}},
            {"first_word", s.render(w.first_word)},
            {"second_word", s.render(w.second_word)},
            {"first", to_json(evaluate_word(s, w.first_word))},
            {"second", to_json(evaluate_word(s, w.second_word))},
            {"lengths", {w.first_word.length(), w.second_word.length()}},
            {"lower_bound_exponent", w.lower_bound_exponent().get_str()},
            {"growth_lower_bound", format_rate(growth_lower_bound_from_witness(w))},
            {"certificate", to_json(w.certificate)}};
}

Json classification_json(const GeneratorSet& s, const ClassificationReport& r) {
    Json table = Json::array();
    for (const auto& row : r.table) {
        table.push_back({{"name", row.name},
                         {"trace_valuation", to_json(row.trace_valuation)},
                         {"det_valuation", to_json(row.det_valuation)},
                         {"translation_length", row.translation_length},
                         {"type", to_string(row.type)}});
    }
    Json j{{"valuation", to_json(r.valuation)}, {"outcome", to_string(r.outcome)}, {"table", table}};
    j["hyperbolic"] = r.hyperbolic ? Json(s.render(*r.hyperbolic)) : Json(nullptr);
    j["witness"] = r.witness ? witness_json(s, *r.witness) : Json(nullptr);
    return j;
}

Json ball_stats_json(const BallStats& st) {
    return {{"mode", to_string(st.mode)},
            {"radius", st.sizes.size() - 1},
            {"sizes", st.sizes},
            {"rate_estimates", st.rate_estimates}};
}

Json uf_check_json(const UfCheck& c) {
    Json rows = Json::array();
    for (const auto& r : c.rows) {
        Json row{{"k", r.k},
                 {"radius", r.radius},
                 {"required", r.required},
                 {"pair_values", r.pair_values},
                 {"values_in_ball", r.values_in_ball},
                 {"holds", r.holds}};
        row["ball_size"] = r.ball_size ? Json(*r.ball_size) : Json(nullptr);
        rows.push_back(std::move(row));
    }
    return {{"holds", c.holds()}, {"rows", rows}};
}

Json subgroup_json(const GeneratorSet& s, const SubgroupGenerators& sg, const FiniteImageSpec& spec) {
    Json words = Json::array();
    for (std::size_t i = 0; i < sg.words.size(); ++i) {
        words.push_back({{"word", s.render(sg.words[i])}, {"length", sg.words[i].length()}, {"matrix", to_json(sg.elements[i])}});
    }
    return {{"modulus", spec.modulus.get_str()},
            {"target", spec.target == FiniteImageSpec::Target::Kernel ? "kernel" : "elements"},
            {"image_order", sg.image_order},
            {"target_order", sg.target_order},
            {"index", sg.index},
            {"max_word_length", sg.max_word_length},
            {"exponent", sg.exponent().get_str()},
            {"strategy", to_string(sg.strategy)},
            {"generators", words}};
}

Json trace_json(const TraceReport& r) {
    Json traces = Json::array();
    for (const auto& t : r.traces) traces.push_back(to_json(t));
    Json per = Json::array();
    for (const auto& pv : r.per_valuation) {
        per.push_back({{"valuation", to_json(pv.valuation)}, {"min_trace_valuation", to_json(pv.min_trace_valuation)}});
    }
    return {{"radius", r.radius},
            {"traces", traces},
            {"count", r.traces.size()},
            {"previous_count", r.previous_count},
            {"stabilized", r.stabilized},
            {"per_valuation", per}};
}

}  // namespace btg::io
