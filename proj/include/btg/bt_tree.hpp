#pragma once

#include <string>
#include <vector>

#include "btg/matgroup.hpp"
#include "btg/valuation.hpp"

namespace btg {

/// Homothety class of a rank-2 lattice, stored as the canonical column basis
/// [[pi^a, b], [0, 1]] with b reduced modulo pi^a A_v.
struct Vertex {
    long a = 0;
    FieldElement b;

    friend bool operator==(const Vertex&, const Vertex&) = default;
    std::string key() const;
};

enum class IsometryType { Elliptic, Hyperbolic, Inversion };

const char* to_string(IsometryType t);

/// A hyperbolic element together with its translation length and one vertex
/// of its axis.
struct AxisData {
    Mat2 element;
    long translation_length;
    Vertex on_axis;
};

/// Shortest segment between two axes. separation == 0 means they meet.
struct Bridge {
    Vertex on_first;
    Vertex on_second;
    long separation;
};

/// Thrown when a tree operation's hyperbolicity or axis precondition fails.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The Bruhat-Tits tree X_v of GL2 over a valued field, in the lattice-class
/// model. All operations are exact.
class BruhatTitsTree {
public:
    explicit BruhatTitsTree(Valuation v);

    const Valuation& valuation() const noexcept { return v_; }

    /// Class of the standard lattice A_v^2.
    Vertex base() const;
    /// Class of the lattice spanned by the columns of m.
    Vertex vertex_from_matrix(const Mat2& m) const;
    /// Canonical basis matrix [[pi^a, b], [0, 1]].
    Mat2 matrix_of(const Vertex& x) const;

    long distance(const Vertex& x, const Vertex& y) const;
    Vertex act(const Mat2& g, const Vertex& x) const;
    long displacement(const Mat2& g, const Vertex& x) const { return distance(x, act(g, x)); }

    /// max(0, val(det g) - 2 val(trace g)).
    long translation_length(const Mat2& g) const;
    IsometryType classify(const Mat2& g) const;
    bool is_hyperbolic(const Mat2& g) const { return translation_length(g) > 0; }
    bool is_inversion(const Mat2& g) const { return classify(g) == IsometryType::Inversion; }

    /// Vertices from x to y inclusive, consecutive ones adjacent.
    std::vector<Vertex> geodesic(const Vertex& x, const Vertex& y) const;

    /// A vertex on the axis of a hyperbolic g (the projection of the base vertex).
    Vertex point_on_axis(const Mat2& g) const;
    AxisData axis(const Mat2& g) const;
    /// Nearest vertex of the axis of a hyperbolic g to x.
    Vertex project_to_axis(const Mat2& g, const Vertex& x) const;
    /// Whether hyperbolic g and h share their axis (their commutator is scalar).
    bool axis_equal(const Mat2& g, const Mat2& h) const;
    /// Closest pair of vertices between the axes of hyperbolic g and h with
    /// distinct axes, found by alternating projections.
    Bridge bridge(const Mat2& g, const Mat2& h) const;

    /// The q + 1 vertices adjacent to x.
    std::vector<Vertex> neighbors(const Vertex& x) const;
    /// All vertices within distance radius of center, in breadth-first order.
    std::vector<Vertex> ball(const Vertex& center, long radius) const;

private:
    void require_hyperbolic(const Mat2& g, const char* what) const;

    Valuation v_;
    FieldElement pi_;
    std::vector<FieldElement> residues_;
};

/// Representatives of the residue field A_v / pi A_v, as field elements.
std::vector<FieldElement> residue_representatives(const Valuation& v);

}  // namespace btg
