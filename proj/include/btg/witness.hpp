#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "btg/bt_tree.hpp"
#include "btg/matgroup.hpp"
#include "btg/pingpong.hpp"

namespace btg {

/// Places at which some generator or its inverse is non-integral or has a
/// non-unit determinant. Over Q these are primes in increasing order (empty
/// when every generator lies in GL2(Z)); over F_p(t) the finite places come
/// first, ordered by their irreducible, and the place at infinity is always
/// appended.
std::vector<Valuation> candidate_valuations(const GeneratorSet& s);

/// An element of S u S^2 and the word that produced it.
struct ScanEntry {
    GroupWord word;
    Mat2 value;
};

/// S in input order, then the products s_i s_j in row-major (i, j) order.
std::vector<ScanEntry> scan_order(const GeneratorSet& s);

/// First hyperbolic element of S u S^2 in scan order.
std::optional<GroupWord> find_hyperbolic(const GeneratorSet& s, const Valuation& v);

/// First s in S u S^2 (scan order) with s g s^-1 not sharing the axis of g.
/// Requires g hyperbolic at v.
std::optional<GroupWord> find_axis_mover(const GeneratorSet& s, const Mat2& g, const Valuation& v);

/// Two words of length <= 6 whose values freely generate a free semigroup:
/// first = g^e and second = s g^d s^-1 with (e, d) = signs.
struct WitnessReport {
    Valuation valuation;
    GroupWord g_word;
    GroupWord s_word;
    Signs signs;
    GroupWord first_word;
    GroupWord second_word;
    Certificate certificate;

    std::size_t max_length() const noexcept { return std::max(first_word.length(), second_word.length()); }
    /// 1 / max word length.
    mpq_class lower_bound_exponent() const { return mpq_class(1, static_cast<unsigned long>(max_length())); }
};

enum class Outcome { AllElliptic, CommonAxis, Witness };

const char* to_string(Outcome o);

/// One row of the per-element table over S u S^2.
struct ElementRow {
    std::string name;
    GroupWord word;
    ValInt trace_valuation;
    ValInt det_valuation;
    long translation_length = 0;
    IsometryType type = IsometryType::Elliptic;
};

struct ClassificationReport {
    Valuation valuation;
    Outcome outcome = Outcome::AllElliptic;
    std::vector<ElementRow> table;
    /// The hyperbolic element found, when there is one.
    std::optional<GroupWord> hyperbolic;
    std::optional<WitnessReport> witness;
};

struct WitnessResult {
    Outcome outcome = Outcome::AllElliptic;
    std::optional<WitnessReport> report;
};

/// Hyperbolic g from S u S^2, an axis mover s from S u S^2, and the
/// ping-pong selection for (g, s g s^-1).
WitnessResult uf_witness(const GeneratorSet& s, const Valuation& v, int depth = 12);

ClassificationReport classify(const GeneratorSet& s, const Valuation& v, int depth = 12);

struct GlobalClassification {
    std::vector<ClassificationReport> reports;
    /// Set when no candidate valuation shows an unbounded action.
    std::optional<std::string> diagnostic;

    /// The first witness over all reports, if any.
    const WitnessReport* first_witness() const;
};

extern const char* const kIntegralCaseDiagnostic;
extern const char* const kFixedPointCaseDiagnostic;

GlobalClassification classify_all(const GeneratorSet& s, int depth = 12);

/// Traces of the elements of the radius-R ball and their valuations.
struct TraceReport {
    int radius = 0;
    /// Distinct traces, in order of first appearance in the ball.
    std::vector<FieldElement> traces;
    std::size_t previous_count = 0;  // distinct traces at radius R - 1
    /// The trace set at radius R equals the one at radius R - 1.
    bool stabilized = false;
    struct PerValuation {
        Valuation valuation;
        ValInt min_trace_valuation;
    };
    std::vector<PerValuation> per_valuation;
};

/// R must lie in [1, 6]. Reports minimum trace valuations at the given
/// valuations (all candidate valuations when empty).
TraceReport trace_diagnostics(const GeneratorSet& s, int radius, std::vector<Valuation> valuations = {});

}  // namespace btg
