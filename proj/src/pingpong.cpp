#include "btg/pingpong.hpp"

#include <unordered_map>
#include <vector>

namespace btg {

OracleResult oracle_free_semigroup(const Mat2& a, const Mat2& b, int depth, CompareMode mode) {
    if (depth < 1) throw std::invalid_argument("oracle depth must be at least 1");
    if (depth > 24) throw std::invalid_argument("oracle depth above 24 is out of range");
    auto key_of = [mode](const Mat2& m) { return mode == CompareMode::PGL ? projective_canonical(m).key() : m.key(); };

    OracleResult result;
    std::unordered_map<std::string, std::string> seen;
    // Level k holds the words of length k in lexicographic order with their values.
    std::vector<std::pair<std::string, Mat2>> level{{"", Mat2::identity(a.field())}};
    for (int k = 1; k <= depth; ++k) {
        std::vector<std::pair<std::string, Mat2>> next;
        next.reserve(level.size() * 2);
        for (const auto& [word, value] : level) {
            for (int letter = 0; letter < 2; ++letter) {
                std::string w = word + (letter == 0 ? 'a' : 'b');
                Mat2 m = value * (letter == 0 ? a : b);
                ++result.words_checked;
                auto [it, inserted] = seen.emplace(key_of(m), w);
                if (!inserted) {
                    result.collision = Collision{it->second, std::move(w)};
                    return result;
                }
                next.emplace_back(std::move(w), std::move(m));
            }
        }
        level = std::move(next);
    }
    return result;
}

std::string to_string(const Signs& s) {
    return std::string(s.first > 0 ? "+" : "-") + (s.second > 0 ? "+" : "-");
}

const char* to_string(Certificate::Kind k) { return k == Certificate::Kind::Geometric ? "geometric" : "empirical"; }

bool Certificate::valid() const noexcept {
    if (depth < 1) return false;
    if (kind == Kind::Geometric) return bridge.has_value() && bridge->separation >= 1;
    return words_checked == (std::size_t{1} << (depth + 1)) - 2;
}

bool moves_away_from_bridge(const BruhatTitsTree& tree, const Mat2& g, const Mat2& h, const Bridge& bridge,
                            const Signs& signs) {
    const Mat2 gs = signs.first > 0 ? g : inverse(g);
    const Mat2 hs = signs.second > 0 ? h : inverse(h);
    const long sep = bridge.separation;
    return tree.distance(tree.act(gs, bridge.on_first), bridge.on_second) == sep + tree.translation_length(g) &&
           tree.distance(tree.act(hs, bridge.on_second), bridge.on_first) == sep + tree.translation_length(h);
}

Signs orient_for_disjoint_axes(const BruhatTitsTree& tree, const Mat2& g, const Mat2& h) {
    const Bridge b = tree.bridge(g, h);
    if (b.separation < 1) throw PreconditionError("orient_for_disjoint_axes: the axes intersect");
    // A_1^+ is the ray from a1 through g a1, A_2^+ the ray from a2 through h a2,
    // so each element translates toward the end of its own ray.
    const Signs s{1, 1};
    if (!moves_away_from_bridge(tree, g, h, b, s)) {
        throw LemmaContradiction("disjoint axes but an element moves its bridge endpoint toward the other axis");
    }
    return s;
}

PingPongSelection lemma_pp_select(const BruhatTitsTree& tree, const Mat2& g, const Mat2& h, int depth,
                                  CompareMode mode) {
    if (tree.axis_equal(g, h)) throw PreconditionError("lemma_pp_select: g and h share their axis");
    const Bridge b = tree.bridge(g, h);
    Certificate cert;
    cert.length_first = tree.translation_length(g);
    cert.length_second = tree.translation_length(h);
    cert.depth = depth;

    if (b.separation >= 1) {
        const Signs s = orient_for_disjoint_axes(tree, g, h);
        const OracleResult spot = oracle_free_semigroup(power(g, s.first), power(h, s.second), depth, mode);
        if (!spot.ok()) {
            throw LemmaContradiction("geometric ping-pong pair collides: " + spot.collision->first + " = " +
                                     spot.collision->second);
        }
        cert.kind = Certificate::Kind::Geometric;
        cert.signs = s;
        cert.bridge = b;
        cert.words_checked = spot.words_checked;
        return {s, cert};
    }

    for (const Signs s : {Signs{1, 1}, Signs{1, -1}, Signs{-1, 1}, Signs{-1, -1}}) {
        const OracleResult r = oracle_free_semigroup(power(g, s.first), power(h, s.second), depth, mode);
        if (r.ok()) {
            cert.kind = Certificate::Kind::Empirical;
            cert.signs = s;
            cert.words_checked = r.words_checked;
            return {s, cert};
        }
    }
    throw LemmaContradiction("all four sign pairs collide at depth " + std::to_string(depth) +
                             " for hyperbolic elements with distinct axes");
}

}  // namespace btg
