#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "btg/matgroup.hpp"
#include "btg/witness.hpp"

namespace btg {

/// A computation would exceed its configured radius or element cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BallLimits {
    long max_radius = 10;
    std::size_t max_elements = 10'000'000;

    /// Defaults, with max_elements taken from BTG_MAX_BALL when set.
    static BallLimits from_environment();
};

/// Elements are deduplicated exactly (GL) or modulo scalars (PGL).
enum class BallMode { GL, PGL };

const char* to_string(BallMode m);

/// Breadth-first ball in the Cayley graph of S u S^-1. Each element keeps a
/// shortest word; elements are ordered by length, then discovery order
/// (letters tried as s_0, s_0^-1, s_1, s_1^-1, ...).
class CayleyBall {
public:
    CayleyBall(const GeneratorSet& s, long radius, BallMode mode = BallMode::GL, BallLimits limits = {});

    long radius() const noexcept { return radius_; }
    BallMode mode() const noexcept { return mode_; }
    std::size_t size() const noexcept { return elements_.size(); }
    /// Cumulative sizes beta_0 .. beta_radius.
    const std::vector<std::uint64_t>& sizes() const noexcept { return sizes_; }

    const Mat2& element(std::size_t i) const { return elements_.at(i).value; }
    long length(std::size_t i) const { return elements_.at(i).length; }
    GroupWord word(std::size_t i) const;

    /// Dedup key under this ball's mode.
    std::string key_of(const Mat2& m) const;
    /// Index of m in the ball, if present.
    std::optional<std::size_t> find(const Mat2& m) const;

private:
    struct Node {
        Mat2 value;
        std::size_t parent;
        Letter letter;
        long length;
    };
    long radius_;
    BallMode mode_;
    std::vector<Node> elements_;
    std::vector<std::uint64_t> sizes_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Exact ball sizes beta_n(S) for n = 0..N and the estimates beta_n^(1/n).
struct BallStats {
    BallMode mode = BallMode::GL;
    std::vector<std::uint64_t> sizes;
    /// beta_n^(1/n) for n >= 1, fixed to 6 decimals.
    std::vector<std::string> rate_estimates;
};

BallStats ball_sizes(const GeneratorSet& s, long radius, BallMode mode = BallMode::GL, BallLimits limits = {});

/// Decimal string with 6 places.
std::string format_rate(double x);

/// 2^(1/m) for the witness's maximal word length m.
double growth_lower_bound_from_witness(const WitnessReport& w);

/// Per-k evidence that beta_{k m}(S) >= 2^(k+1) - 2.
struct UfRow {
    int k = 0;
    long radius = 0;
    std::uint64_t required = 0;
    /// Distinct values of positive words of length <= k in the witness pair.
    std::uint64_t pair_values = 0;
    /// Every such value was found in the computed ball.
    bool values_in_ball = false;
    /// Exact beta_{k m}(S), when within the caps.
    std::optional<std::uint64_t> ball_size;
    bool holds = false;
};

struct UfCheck {
    std::vector<UfRow> rows;
    bool holds() const;
};

/// Checks beta_{k m}(S) >= 2^(k+1) - 2 for k = 1..k_max. The pair's positive
/// words of length <= k have S-length <= k m, so counting their distinct
/// values bounds the ball from below; the ball itself is also enumerated when
/// it fits within the element cap.
UfCheck verify_uf_inequality(const GeneratorSet& s, const WitnessReport& w, int k_max, BallLimits limits = {});

/// Finite quotient used to pick a finite-index subgroup K: the reduction of
/// Gamma modulo q, and inside it either the scalar matrices (Kernel) or the
/// subgroup generated by an explicit element list.
struct FiniteImageSpec {
    enum class Target { Kernel, Elements };
    mpz_class modulus;
    Target target = Target::Kernel;
    std::vector<Mat2> elements;
};

struct SubgroupGenerators {
    enum class Strategy { Exhaustive, SchreierTransversal };
    std::uint64_t image_order = 0;
    std::uint64_t target_order = 0;  // order of image intersected with the target
    std::uint64_t index = 0;         // d
    long max_word_length = 0;        // 2d - 1
    Strategy strategy = Strategy::Exhaustive;
    std::vector<GroupWord> words;
    std::vector<Mat2> elements;

    /// 1/(2d - 1), the exponent in beta(Gamma) >= beta(K)^(1/(2d-1)).
    mpq_class exponent() const { return mpq_class(1, static_cast<unsigned long>(max_word_length)); }
};

const char* to_string(SubgroupGenerators::Strategy s);

/// Generators of K, the preimage of the target in Gamma, as words of length
/// <= 2d - 1 where d = [Gamma : K]. Enumerates the whole (2d-1)-ball when it
/// fits the caps; otherwise returns the Schreier generators u x rep(u x)^-1
/// over a breadth-first coset transversal, a subset of those words that
/// still generates K.
SubgroupGenerators subgroup_generators(const GeneratorSet& s, const FiniteImageSpec& spec, BallLimits limits = {});

/// Membership of g in K: entries reduce modulo q into the target.
bool in_finite_index_subgroup(const Mat2& g, const FiniteImageSpec& spec);

/// Cancels adjacent inverse letters.
GroupWord freely_reduced(const GroupWord& w);

}  // namespace btg
