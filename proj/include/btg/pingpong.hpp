#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "btg/bt_tree.hpp"
#include "btg/matgroup.hpp"

namespace btg {

/// Whether the free-semigroup oracle compares elements in PGL2 (modulo
/// scalars) or exactly in GL2.
enum class CompareMode { PGL, GL };

/// Two distinct positive words over {a, b} with equal values.
struct Collision {
    std::string first;
    std::string second;
};

struct OracleResult {
    std::size_t words_checked = 0;
    std::optional<Collision> collision;

    bool ok() const noexcept { return !collision.has_value(); }
};

/// Evaluates every nonempty positive word in {a, b} of length <= depth
/// (2^(depth+1) - 2 words) in length-then-lexicographic order, a < b, and
/// reports the first word whose value repeats an earlier one.
OracleResult oracle_free_semigroup(const Mat2& a, const Mat2& b, int depth, CompareMode mode = CompareMode::PGL);

/// Exponent signs applied to the pair (g, h).
struct Signs {
    int first = 1;
    int second = 1;
    friend bool operator==(const Signs&, const Signs&) = default;
};

std::string to_string(const Signs& s);

/// Evidence that (g^first, h^second) freely generate a free semigroup.
///
/// Geometric: the axes are disjoint, joined by the bridge [a1, a2] with
/// separation >= 1, and each signed element moves its bridge endpoint
/// straight away from the other axis. The ping-pong half-trees are the
/// vertices projecting onto the far side of each axis; they are never
/// materialized. Geometric certificates are also spot-checked by the oracle.
///
/// Empirical: the axes meet, and the oracle found no collision up to depth.
struct Certificate {
    enum class Kind { Geometric, Empirical };
    Kind kind = Kind::Empirical;
    Signs signs;
    long length_first = 0;
    long length_second = 0;
    std::optional<Bridge> bridge;
    int depth = 0;
    std::size_t words_checked = 0;

    bool valid() const noexcept;
};

const char* to_string(Certificate::Kind k);

/// The ping-pong lemma failed on input satisfying its hypotheses, which
/// points at a bug upstream.
class LemmaContradiction : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Signs for hyperbolic g, h with disjoint axes: rays start at the bridge
/// endpoints and run in each element's translation direction. Throws
/// PreconditionError if the axes meet.
Signs orient_for_disjoint_axes(const BruhatTitsTree& tree, const Mat2& g, const Mat2& h);

/// Whether g^signs.first and h^signs.second both move their bridge endpoint
/// directly away from the other axis.
bool moves_away_from_bridge(const BruhatTitsTree& tree, const Mat2& g, const Mat2& h, const Bridge& bridge,
                            const Signs& signs);

struct PingPongSelection {
    Signs signs;
    Certificate certificate;
};

/// Picks one of the four pairs {g^+-1, h^+-1} freely generating a free
/// semigroup. Requires hyperbolic g, h with distinct axes.
PingPongSelection lemma_pp_select(const BruhatTitsTree& tree, const Mat2& g, const Mat2& h, int depth = 12,
                                  CompareMode mode = CompareMode::PGL);

}  // namespace btg
