#include "btg/witness.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "btg/growth.hpp"

namespace btg {

const char* const kIntegralCaseDiagnostic =
    "integral case: possibly conjugate to a subgroup of GL₂(O); UF undecided by this tool";
const char* const kFixedPointCaseDiagnostic =
    "fixed-point case: S ∪ S² is elliptic at every candidate place; see trace diagnostics";

namespace {

mpz_class pollard_rho(const mpz_class& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        mpz_class x = 2, y = 2, d = 1;
        auto step = [&](mpz_class& z) {
            z = z * z + c;
            mpz_mod(z.get_mpz_t(), z.get_mpz_t(), n.get_mpz_t());
        };
        while (d == 1) {
            step(x);
            step(y);
            step(y);
            mpz_class diff = abs(x - y);
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n) return d;
    }
}

void prime_factors(mpz_class n, std::set<mpz_class>& out) {
    n = abs(n);
    if (n <= 1) return;
    for (unsigned long p = 2; p < 1'000'000 && static_cast<mpz_class>(p) * p <= n; ++p) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out.insert(mpz_class(p));
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
        }
    }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) {
        out.insert(n);
        return;
    }
    const mpz_class d = pollard_rho(n);
    prime_factors(d, out);
    prime_factors(n / d, out);
}

void poly_factors(const FpPoly& f, std::set<FpPoly>& out) {
    if (f.degree() <= 0) return;
    for (auto& q : irreducible_divisors(f)) out.insert(std::move(q));
}

}  // namespace

std::vector<Valuation> candidate_valuations(const GeneratorSet& s) {
    std::vector<Valuation> out;
    if (s.field().is_rational()) {
        std::set<mpz_class> primes;
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (const Mat2* m : {&s[i], &s.inverse_of(i)}) {
                for (const auto& e : m->entries()) prime_factors(e.rational().get_den(), primes);
            }
            const mpq_class d = det(s[i]).rational();
            prime_factors(d.get_num(), primes);
            prime_factors(d.get_den(), primes);
        }
        for (const auto& p : primes) out.push_back(Valuation::p_adic(p));
        return out;
    }
    std::set<FpPoly> irreducibles;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (const Mat2* m : {&s[i], &s.inverse_of(i)}) {
            for (const auto& e : m->entries()) poly_factors(e.function().den(), irreducibles);
        }
        const RatFunc d = det(s[i]).function();
        poly_factors(d.num(), irreducibles);
        poly_factors(d.den(), irreducibles);
    }
    for (const auto& f : irreducibles) out.push_back(Valuation::poly_adic(f));
    out.push_back(Valuation::at_infinity(s.field().p));
    return out;
}

std::vector<ScanEntry> scan_order(const GeneratorSet& s) {
    std::vector<ScanEntry> out;
    out.reserve(s.size() * (s.size() + 1));
    for (std::size_t i = 0; i < s.size(); ++i) out.push_back({GroupWord::generator(i), s[i]});
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            out.push_back({GroupWord::generator(i) * GroupWord::generator(j), s[i] * s[j]});
        }
    }
    return out;
}

std::optional<GroupWord> find_hyperbolic(const GeneratorSet& s, const Valuation& v) {
    const BruhatTitsTree tree(v);
    for (const auto& e : scan_order(s)) {
        if (tree.is_hyperbolic(e.value)) return e.word;
    }
    return std::nullopt;
}

std::optional<GroupWord> find_axis_mover(const GeneratorSet& s, const Mat2& g, const Valuation& v) {
    const BruhatTitsTree tree(v);
    if (!tree.is_hyperbolic(g)) throw PreconditionError("find_axis_mover: g is not hyperbolic");
    for (const auto& e : scan_order(s)) {
        if (!tree.axis_equal(g, conjugate(e.value, g))) return e.word;
    }
    return std::nullopt;
}

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::AllElliptic: return "all-elliptic";
        case Outcome::CommonAxis: return "common-axis";
        case Outcome::Witness: return "witness";
    }
    return "?";
}

namespace {

WitnessResult witness_at(const GeneratorSet& s, const BruhatTitsTree& tree, int depth,
                         std::optional<GroupWord>* hyperbolic_out) {
    WitnessResult result;
    const auto g_word = find_hyperbolic(s, tree.valuation());
    if (hyperbolic_out) *hyperbolic_out = g_word;
    if (!g_word) return result;
    const Mat2 g = evaluate_word(s, *g_word);
    const auto s_word = find_axis_mover(s, g, tree.valuation());
    if (!s_word) {
        result.outcome = Outcome::CommonAxis;
        return result;
    }
    const Mat2 sv = evaluate_word(s, *s_word);
    const auto sel = lemma_pp_select(tree, g, conjugate(sv, g), depth);
    result.outcome = Outcome::Witness;
    result.report = WitnessReport{tree.valuation(),
                                  *g_word,
                                  *s_word,
                                  sel.signs,
                                  g_word->signed_power(sel.signs.first),
                                  *s_word * g_word->signed_power(sel.signs.second) * s_word->inverse(),
                                  sel.certificate};
    return result;
}

}  // namespace

WitnessResult uf_witness(const GeneratorSet& s, const Valuation& v, int depth) {
    const BruhatTitsTree tree(v);
    return witness_at(s, tree, depth, nullptr);
}

ClassificationReport classify(const GeneratorSet& s, const Valuation& v, int depth) {
    const BruhatTitsTree tree(v);
    ClassificationReport report{v, Outcome::AllElliptic, {}, std::nullopt, std::nullopt};
    for (const auto& e : scan_order(s)) {
        ElementRow row;
        row.name = s.render(e.word);
        row.word = e.word;
        row.trace_valuation = val(trace(e.value), v);
        row.det_valuation = val(det(e.value), v);
        row.translation_length = tree.translation_length(e.value);
        row.type = tree.classify(e.value);
        report.table.push_back(std::move(row));
    }
    WitnessResult r = witness_at(s, tree, depth, &report.hyperbolic);
    report.outcome = r.outcome;
    report.witness = std::move(r.report);
    return report;
}

const WitnessReport* GlobalClassification::first_witness() const {
    for (const auto& r : reports) {
        if (r.witness) return &*r.witness;
    }
    return nullptr;
}

GlobalClassification classify_all(const GeneratorSet& s, int depth) {
    GlobalClassification out;
    for (const auto& v : candidate_valuations(s)) out.reports.push_back(classify(s, v, depth));
    const bool all_elliptic = std::all_of(out.reports.begin(), out.reports.end(),
                                          [](const ClassificationReport& r) { return r.outcome == Outcome::AllElliptic; });
    if (all_elliptic) {
        out.diagnostic = s.field().is_rational() ? kIntegralCaseDiagnostic : kFixedPointCaseDiagnostic;
    }
    return out;
}

TraceReport trace_diagnostics(const GeneratorSet& s, int radius, std::vector<Valuation> valuations) {
    if (radius < 1 || radius > 6) throw std::invalid_argument("trace radius must lie in [1, 6]");
    if (valuations.empty()) valuations = candidate_valuations(s);
    const CayleyBall ball(s, radius, BallMode::GL, BallLimits::from_environment());
    TraceReport report;
    report.radius = radius;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < ball.size(); ++i) {
        const FieldElement tr = trace(ball.element(i));
        std::string key;
        tr.append_key(key);
        if (!seen.insert(key).second) continue;
        if (ball.length(i) < radius) ++report.previous_count;
        report.traces.push_back(tr);
    }
    report.stabilized = report.previous_count == report.traces.size();
    for (const auto& v : valuations) {
        ValInt m = ValInt::infinity();
        for (const auto& tr : report.traces) m = min(m, val(tr, v));
        report.per_valuation.push_back({v, m});
    }
    return report;
}

}  // namespace btg
