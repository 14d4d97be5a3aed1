#include "btg/bt_tree.hpp"

#include <deque>
#include <unordered_set>
#include <utility>

namespace btg {

std::string Vertex::key() const {
    std::string out = std::to_string(a) + '|';
    b.append_key(out);
    return out;
}

const char* to_string(IsometryType t) {
    switch (t) {
        case IsometryType::Elliptic: return "elliptic";
        case IsometryType::Hyperbolic: return "hyperbolic";
        case IsometryType::Inversion: return "inversion";
    }
    return "";
}

std::vector<FieldElement> residue_representatives(const Valuation& v) {
    constexpr std::uint64_t kMaxResidueField = 4096;
    std::vector<FieldElement> out;
    switch (v.kind()) {
        case Valuation::Kind::PAdic: {
            if (v.prime() > kMaxResidueField) throw std::invalid_argument("residue field too large to enumerate");
            const long p = v.prime().get_si();
            for (long r = 0; r < p; ++r) out.emplace_back(mpq_class(r));
            break;
        }
        case Valuation::Kind::Infinity: {
            const auto p = v.field().p;
            if (p > kMaxResidueField) throw std::invalid_argument("residue field too large to enumerate");
            for (std::uint64_t r = 0; r < p; ++r) out.push_back(FieldElement::from_int(v.field(), static_cast<long>(r)));
            break;
        }
        case Valuation::Kind::PolyAdic: {
            const auto p = v.field().p;
            const auto deg = static_cast<std::size_t>(v.pi().degree());
            std::uint64_t count = 1;
            for (std::size_t i = 0; i < deg; ++i) {
                count *= p;
                if (count > kMaxResidueField) throw std::invalid_argument("residue field too large to enumerate");
            }
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                std::vector<std::int64_t> coeffs(deg);
                std::uint64_t rest = idx;
                for (auto& c : coeffs) {
                    c = static_cast<std::int64_t>(rest % p);
                    rest /= p;
                }
                out.emplace_back(RatFunc(FpPoly(p, coeffs)));
            }
            break;
        }
    }
    return out;
}

BruhatTitsTree::BruhatTitsTree(Valuation v) : v_(std::move(v)), pi_(uniformizer(v_)) {
    try {
        residues_ = residue_representatives(v_);
    } catch (const std::invalid_argument&) {
        // Large residue field: everything but neighbor enumeration still works.
    }
}

Vertex BruhatTitsTree::base() const { return Vertex{0, FieldElement::zero(v_.field())}; }

Vertex BruhatTitsTree::vertex_from_matrix(const Mat2& m) const {
    // Columns (m00, m10) and (m01, m11). Column-reduce over A_v to upper triangular form.
    FieldElement x0 = m(0, 0), x1 = m(1, 0), y0 = m(0, 1), y1 = m(1, 1);
    if (val(x1, v_) < val(y1, v_)) {
        std::swap(x0, y0);
        std::swap(x1, y1);
    }
    // val(y1) <= val(x1) and y1 != 0, so x1/y1 lies in A_v.
    const FieldElement ratio = x1 / y1;
    const FieldElement top_left = (x0 - ratio * y0) / y1;
    const FieldElement top_right = y0 / y1;
    const long a = val(top_left, v_).value();
    return Vertex{a, reduce_mod_power(top_right, a, v_)};
}

Mat2 BruhatTitsTree::matrix_of(const Vertex& x) const {
    const Field f = v_.field();
    return Mat2(pi_.pow(x.a), x.b, FieldElement::zero(f), FieldElement::one(f));
}

long BruhatTitsTree::distance(const Vertex& x, const Vertex& y) const {
    const Mat2 m = inverse(matrix_of(x)) * matrix_of(y);
    ValInt lowest = ValInt::infinity();
    for (const auto& e : m.entries()) lowest = min(lowest, val(e, v_));
    return val(det(m), v_).value() - 2 * lowest.value();
}

Vertex BruhatTitsTree::act(const Mat2& g, const Vertex& x) const { return vertex_from_matrix(g * matrix_of(x)); }

long BruhatTitsTree::translation_length(const Mat2& g) const {
    const ValInt vt = val(trace(g), v_);
    if (vt.is_infinite()) return 0;
    const long vd = val(det(g), v_).value();
    return std::max(0L, vd - 2 * vt.value());
}

IsometryType BruhatTitsTree::classify(const Mat2& g) const {
    if (translation_length(g) > 0) return IsometryType::Hyperbolic;
    const long vd = val(det(g), v_).value();
    return (vd % 2 != 0) ? IsometryType::Inversion : IsometryType::Elliptic;
}

std::vector<Vertex> BruhatTitsTree::geodesic(const Vertex& x, const Vertex& y) const {
    const Field f = v_.field();
    const FieldElement zero = FieldElement::zero(f), one = FieldElement::one(f);
    const Mat2 mx = matrix_of(x);
    Mat2 m = inverse(mx) * matrix_of(y);

    // Smith reduction over A_v, tracking only the row operations L with L m R diagonal.
    int pr = 0, pc = 0;
    ValInt best = ValInt::infinity();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const ValInt vij = val(m(i, j), v_);
            if (vij < best) {
                best = vij;
                pr = i;
                pc = j;
            }
        }
    }
    if (pc == 1) m = m * Mat2(zero, one, one, zero);
    Mat2 left = Mat2::identity(f);
    if (pr == 1) {
        left = Mat2(zero, one, one, zero);
        m = left * m;
    }
    const Mat2 elim(one, zero, -(m(1, 0) / m(0, 0)), one);
    left = elim * left;
    const Mat2 basis = mx * inverse(left);

    const long d = distance(x, y);
    std::vector<Vertex> path;
    path.reserve(static_cast<std::size_t>(d) + 1);
    for (long k = 0; k <= d; ++k) {
        path.push_back(vertex_from_matrix(basis * Mat2::diagonal(one, pi_.pow(k))));
    }
    return path;
}

void BruhatTitsTree::require_hyperbolic(const Mat2& g, const char* what) const {
    if (!is_hyperbolic(g)) {
        throw PreconditionError(std::string(what) + ": element " + g.to_string() + " is not hyperbolic at " +
                                v_.to_string());
    }
}

Vertex BruhatTitsTree::project_to_axis(const Mat2& g, const Vertex& x) const {
    require_hyperbolic(g, "project_to_axis");
    const Vertex gx = act(g, x);
    const long disp = distance(x, gx);
    const long len = translation_length(g);
    const auto path = geodesic(x, gx);
    return path.at(static_cast<std::size_t>((disp - len) / 2));
}

Vertex BruhatTitsTree::point_on_axis(const Mat2& g) const { return project_to_axis(g, base()); }

AxisData BruhatTitsTree::axis(const Mat2& g) const { return AxisData{g, translation_length(g), point_on_axis(g)}; }

bool BruhatTitsTree::axis_equal(const Mat2& g, const Mat2& h) const {
    require_hyperbolic(g, "axis_equal");
    require_hyperbolic(h, "axis_equal");
    return commutator(g, h).is_scalar();
}

Bridge BruhatTitsTree::bridge(const Mat2& g, const Mat2& h) const {
    if (axis_equal(g, h)) throw PreconditionError("bridge: the two axes coincide");
    Vertex a1 = project_to_axis(g, point_on_axis(h));
    Vertex a2 = project_to_axis(h, a1);
    // In a tree the alternating projections settle after one round; the loop
    // guards against a broken projection rather than slow convergence.
    for (int round = 0; round < 8; ++round) {
        Vertex next = project_to_axis(g, a2);
        if (next == a1) return Bridge{a1, a2, distance(a1, a2)};
        a1 = std::move(next);
        a2 = project_to_axis(h, a1);
    }
    throw std::logic_error("bridge: alternating projections did not stabilize");
}

std::vector<Vertex> BruhatTitsTree::neighbors(const Vertex& x) const {
    const Field f = v_.field();
    const FieldElement zero = FieldElement::zero(f), one = FieldElement::one(f);
    if (residues_.empty()) throw std::invalid_argument("residue field of " + v_.to_string() + " too large to enumerate");
    const Mat2 mx = matrix_of(x);
    std::vector<Vertex> out;
    out.reserve(residues_.size() + 1);
    for (const auto& r : residues_) out.push_back(vertex_from_matrix(mx * Mat2(pi_, r, zero, one)));
    out.push_back(vertex_from_matrix(mx * Mat2(one, zero, zero, pi_)));
    return out;
}

std::vector<Vertex> BruhatTitsTree::ball(const Vertex& center, long radius) const {
    std::vector<Vertex> out{center};
    std::unordered_set<std::string> seen{center.key()};
    std::size_t layer_begin = 0;
    for (long r = 0; r < radius; ++r) {
        const std::size_t layer_end = out.size();
        for (std::size_t i = layer_begin; i < layer_end; ++i) {
            for (auto& n : neighbors(out[i])) {
                if (seen.insert(n.key()).second) out.push_back(std::move(n));
            }
        }
        layer_begin = layer_end;
    }
    return out;
}

}  // namespace btg
