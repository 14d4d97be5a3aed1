#include "btg/growth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

namespace btg {

BallLimits BallLimits::from_environment() {
    BallLimits limits;
    if (const char* env = std::getenv("BTG_MAX_BALL")) {
        char* end = nullptr;
        const unsigned long long n = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || n == 0) {
            throw std::invalid_argument(std::string("BTG_MAX_BALL must be a positive integer, got '") + env + "'");
        }
        limits.max_elements = static_cast<std::size_t>(n);
    }
    return limits;
}

const char* to_string(BallMode m) { return m == BallMode::GL ? "GL" : "PGL"; }

CayleyBall::CayleyBall(const GeneratorSet& s, long radius, BallMode mode, BallLimits limits)
    : radius_(radius), mode_(mode) {
    if (radius < 0) throw std::invalid_argument("ball radius must be nonnegative");
    if (radius > limits.max_radius) {
        throw ResourceError("ball radius " + std::to_string(radius) + " exceeds the cap " +
                            std::to_string(limits.max_radius));
    }
    std::vector<Letter> letters;
    for (std::size_t i = 0; i < s.size(); ++i) {
        letters.push_back({i, 1});
        letters.push_back({i, -1});
    }
    const Mat2 id = Mat2::identity(s.field());
    elements_.push_back(Node{id, 0, Letter{}, 0});
    index_.emplace(key_of(id), 0);
    sizes_.push_back(1);
    std::size_t layer_begin = 0;
    for (long r = 1; r <= radius; ++r) {
        const std::size_t layer_end = elements_.size();
        for (std::size_t i = layer_begin; i < layer_end; ++i) {
            for (const auto& l : letters) {
                Mat2 m = elements_[i].value * s.letter(l);
                auto [it, inserted] = index_.emplace(key_of(m), elements_.size());
                if (!inserted) continue;
                if (elements_.size() >= limits.max_elements) {
                    throw ResourceError("ball exceeds the cap of " + std::to_string(limits.max_elements) +
                                        " elements at radius " + std::to_string(r));
                }
                elements_.push_back(Node{std::move(m), i, l, r});
            }
        }
        layer_begin = layer_end;
        sizes_.push_back(elements_.size());
    }
}

GroupWord CayleyBall::word(std::size_t i) const {
    std::vector<Letter> letters;
    while (i != 0) {
        const Node& n = elements_.at(i);
        letters.push_back(n.letter);
        i = n.parent;
    }
    std::reverse(letters.begin(), letters.end());
    return GroupWord(std::move(letters));
}

std::string CayleyBall::key_of(const Mat2& m) const {
    return mode_ == BallMode::GL ? m.key() : projective_canonical(m).key();
}

std::optional<std::size_t> CayleyBall::find(const Mat2& m) const {
    auto it = index_.find(key_of(m));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string format_rate(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

BallStats ball_sizes(const GeneratorSet& s, long radius, BallMode mode, BallLimits limits) {
    const CayleyBall ball(s, radius, mode, limits);
    BallStats stats;
    stats.mode = mode;
    stats.sizes = ball.sizes();
    for (std::size_t n = 1; n < stats.sizes.size(); ++n) {
        const double rate = std::exp(std::log(static_cast<double>(stats.sizes[n])) / static_cast<double>(n));
        stats.rate_estimates.push_back(format_rate(rate));
    }
    return stats;
}

double growth_lower_bound_from_witness(const WitnessReport& w) {
    const auto m = w.max_length();
    if (m == 0) throw std::invalid_argument("witness with empty words");
    return std::pow(2.0, 1.0 / static_cast<double>(m));
}

bool UfCheck::holds() const {
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const UfRow& r) { return r.holds; });
}

UfCheck verify_uf_inequality(const GeneratorSet& s, const WitnessReport& w, int k_max, BallLimits limits) {
    if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
    const long m = static_cast<long>(w.max_length());
    const Mat2 a = evaluate_word(s, w.first_word);
    const Mat2 b = evaluate_word(s, w.second_word);

    std::optional<CayleyBall> ball;
    try {
        BallLimits wide = limits;
        wide.max_radius = std::max(limits.max_radius, k_max * m);
        ball.emplace(s, k_max * m, BallMode::GL, wide);
    } catch (const ResourceError&) {
        // Too large to enumerate: the word count alone carries the bound.
    }

    UfCheck check;
    std::unordered_set<std::string> values;
    std::vector<Mat2> level{Mat2::identity(s.field())};
    bool all_in_ball = true;
    for (int k = 1; k <= k_max; ++k) {
        std::vector<Mat2> next;
        next.reserve(level.size() * 2);
        for (const auto& x : level) {
            for (const Mat2* letter : {&a, &b}) {
                Mat2 y = x * *letter;
                if (ball) {
                    const auto idx = ball->find(y);
                    all_in_ball = all_in_ball && idx && ball->length(*idx) <= k * m;
                }
                values.insert(y.key());
                next.push_back(std::move(y));
            }
        }
        level = std::move(next);

        UfRow row;
        row.k = k;
        row.radius = k * m;
        row.required = (std::uint64_t{1} << (k + 1)) - 2;
        row.pair_values = values.size();
        row.values_in_ball = ball.has_value() && all_in_ball;
        if (ball) row.ball_size = ball->sizes().at(static_cast<std::size_t>(k * m));
        row.holds = row.pair_values >= row.required && (!ball || (all_in_ball && *row.ball_size >= row.required));
        check.rows.push_back(row);
    }
    return check;
}

GroupWord freely_reduced(const GroupWord& w) {
    std::vector<Letter> out;
    for (const auto& l : w.letters()) {
        if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp) {
            out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return GroupWord(std::move(out));
}

const char* to_string(SubgroupGenerators::Strategy s) {
    return s == SubgroupGenerators::Strategy::Exhaustive ? "exhaustive" : "schreier-transversal";
}

namespace {

constexpr std::size_t kMaxImageOrder = 1'000'000;

using ModMat = std::array<std::int64_t, 4>;

struct ModArith {
    std::int64_t q;

    ModMat mul(const ModMat& x, const ModMat& y) const {
        auto m = [this](std::int64_t u, std::int64_t v) { return static_cast<std::int64_t>((__int128)u * v % q); };
        return {(m(x[0], y[0]) + m(x[1], y[2])) % q, (m(x[0], y[1]) + m(x[1], y[3])) % q,
                (m(x[2], y[0]) + m(x[3], y[2])) % q, (m(x[2], y[1]) + m(x[3], y[3])) % q};
    }
    ModMat identity() const { return {1 % q, 0, 0, 1 % q}; }
    bool is_scalar(const ModMat& x) const { return x[1] == 0 && x[2] == 0 && x[0] == x[3]; }
    std::int64_t det(const ModMat& x) const {
        const auto d = static_cast<std::int64_t>(((__int128)x[0] * x[3] - (__int128)x[1] * x[2]) % q);
        return d < 0 ? d + q : d;
    }

    std::int64_t reduce(const mpq_class& r) const {
        const mpz_class qq(static_cast<long>(q));
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), r.get_den().get_mpz_t(), qq.get_mpz_t()) == 0) {
            throw std::invalid_argument("denominator " + r.get_den().get_str() + " is not invertible modulo " +
                                        qq.get_str());
        }
        mpz_class v = r.get_num() * inv;
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), qq.get_mpz_t());
        return v.get_si();
    }

    ModMat reduce(const Mat2& g) const {
        if (!g.field().is_rational()) throw FieldMismatch("finite images are only available for rational matrices");
        ModMat out;
        for (std::size_t i = 0; i < 4; ++i) out[i] = reduce(g.entries()[i].rational());
        if (std::gcd(det(out), q) != 1) {
            throw std::invalid_argument("matrix " + g.to_string() + " is not invertible modulo " + std::to_string(q));
        }
        return out;
    }
};

// Closure of a finite set of invertible matrices modulo q under multiplication.
std::set<ModMat> closure(const ModArith& ar, const std::vector<ModMat>& gens) {
    std::set<ModMat> seen{ar.identity()};
    std::vector<ModMat> queue{ar.identity()};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (const auto& g : gens) {
            ModMat y = ar.mul(queue[i], g);
            if (seen.insert(y).second) {
                if (seen.size() > kMaxImageOrder) throw ResourceError("finite image exceeds 10^6 elements");
                queue.push_back(y);
            }
        }
    }
    return seen;
}

struct FiniteImage {
    ModArith ar;
    std::set<ModMat> image;
    std::set<ModMat> target;  // image intersected with the target subgroup

    bool in_target(const ModMat& x) const { return target.count(x) > 0; }
};

ModArith arithmetic_for(const FiniteImageSpec& spec) {
    if (spec.modulus < 2 || spec.modulus > mpz_class(1L << 31)) {
        throw std::invalid_argument("modulus must lie in [2, 2^31], got " + spec.modulus.get_str());
    }
    return ModArith{spec.modulus.get_si()};
}

FiniteImage build_image(const GeneratorSet& s, const FiniteImageSpec& spec) {
    FiniteImage fi{arithmetic_for(spec), {}, {}};
    std::vector<ModMat> gens;
    for (std::size_t i = 0; i < s.size(); ++i) {
        gens.push_back(fi.ar.reduce(s[i]));
        gens.push_back(fi.ar.reduce(s.inverse_of(i)));
    }
    fi.image = closure(fi.ar, gens);
    if (spec.target == FiniteImageSpec::Target::Kernel) {
        for (const auto& x : fi.image) {
            if (fi.ar.is_scalar(x)) fi.target.insert(x);
        }
    } else {
        std::vector<ModMat> tgens;
        for (const auto& e : spec.elements) tgens.push_back(fi.ar.reduce(e));
        for (const auto& x : closure(fi.ar, tgens)) {
            if (fi.image.count(x)) fi.target.insert(x);
        }
    }
    return fi;
}

}  // namespace

bool in_finite_index_subgroup(const Mat2& g, const FiniteImageSpec& spec) {
    const ModArith ar = arithmetic_for(spec);
    const ModMat x = ar.reduce(g);
    if (spec.target == FiniteImageSpec::Target::Kernel) return ar.is_scalar(x);
    std::vector<ModMat> tgens;
    for (const auto& e : spec.elements) tgens.push_back(ar.reduce(e));
    return closure(ar, tgens).count(x) > 0;
}

SubgroupGenerators subgroup_generators(const GeneratorSet& s, const FiniteImageSpec& spec, BallLimits limits) {
    const FiniteImage fi = build_image(s, spec);
    SubgroupGenerators out;
    out.image_order = fi.image.size();
    out.target_order = fi.target.size();
    out.index = out.image_order / out.target_order;
    out.max_word_length = 2 * static_cast<long>(out.index) - 1;

    std::unordered_set<std::string> seen;
    auto emit = [&](const GroupWord& w, const Mat2& value) {
        if (value.is_identity()) return;
        if (seen.insert(value.key()).second) {
            out.words.push_back(w);
            out.elements.push_back(value);
        }
    };

    if (out.max_word_length <= limits.max_radius) {
        try {
            const CayleyBall ball(s, out.max_word_length, BallMode::GL, limits);
            for (std::size_t i = 0; i < ball.size(); ++i) {
                if (fi.in_target(fi.ar.reduce(ball.element(i)))) emit(ball.word(i), ball.element(i));
            }
            out.strategy = SubgroupGenerators::Strategy::Exhaustive;
            return out;
        } catch (const ResourceError&) {
            seen.clear();
            out.words.clear();
            out.elements.clear();
        }
    }

    // Right cosets K x correspond to target-orbits target * image(x).
    auto coset_key = [&](const ModMat& x) {
        ModMat best = fi.ar.mul(*fi.target.begin(), x);
        for (const auto& t : fi.target) best = std::min(best, fi.ar.mul(t, x));
        return best;
    };
    std::vector<Letter> letters;
    for (std::size_t i = 0; i < s.size(); ++i) {
        letters.push_back({i, 1});
        letters.push_back({i, -1});
    }
    struct Coset {
        GroupWord rep;
        ModMat image;
    };
    std::vector<Coset> cosets{{GroupWord(), fi.ar.identity()}};
    std::map<ModMat, std::size_t> coset_index{{coset_key(fi.ar.identity()), 0}};
    for (std::size_t i = 0; i < cosets.size(); ++i) {
        for (const auto& l : letters) {
            const ModMat y = fi.ar.mul(cosets[i].image, fi.ar.reduce(s.letter(l)));
            if (coset_index.emplace(coset_key(y), cosets.size()).second) {
                cosets.push_back({cosets[i].rep * GroupWord({l}), y});
            }
        }
    }
    if (cosets.size() != out.index) throw std::logic_error("coset enumeration disagrees with the index");
    for (const auto& c : cosets) {
        for (const auto& l : letters) {
            const ModMat y = fi.ar.mul(c.image, fi.ar.reduce(s.letter(l)));
            const Coset& target_coset = cosets[coset_index.at(coset_key(y))];
            const GroupWord w = freely_reduced(c.rep * GroupWord({l}) * target_coset.rep.inverse());
            emit(w, evaluate_word(s, w));
        }
    }
    out.strategy = SubgroupGenerators::Strategy::SchreierTransversal;
    return out;
}

}  // namespace btg
