#include <doctest.h>

#include <unordered_map>

#include "btg/bt_tree.hpp"
#include "support.hpp"

using namespace btg;
using namespace btg::testing;

namespace {

// Minimum displacement of g over the union of two vertex balls.
long brute_translation_length(const BruhatTitsTree& tree, const Mat2& g, const std::vector<Vertex>& centers,
                              long radius) {
    long best = -1;
    for (const auto& c : centers) {
        for (const auto& x : tree.ball(c, radius)) {
            const long d = tree.displacement(g, x);
            if (best < 0 || d < best) best = d;
        }
    }
    return best;
}

Mat2 random_hyperbolic(const BruhatTitsTree& tree, Sampler& s, long height = 20) {
    for (;;) {
        Mat2 g = s.matrix(tree.valuation().field(), height, 2);
        if (tree.is_hyperbolic(g)) return g;
    }
}

std::vector<BruhatTitsTree> sample_trees() {
    return {BruhatTitsTree(padic(2)), BruhatTitsTree(padic(3)),
            BruhatTitsTree(Valuation::poly_adic(FpPoly(2, {0, 1}))), BruhatTitsTree(Valuation::at_infinity(2)),
            BruhatTitsTree(Valuation::poly_adic(FpPoly(3, {1, 0, 1})))};
}

// g + lambda I, which commutes with g; falls back to g when singular.
Mat2 shifted(const Mat2& g, const FieldElement& lambda) {
    try {
        return Mat2(g.a() + lambda, g.b(), g.c(), g.d() + lambda);
    } catch (const std::domain_error&) {
        return g;
    }
}

}  // namespace

TEST_CASE("vertex canonical forms") {
    const BruhatTitsTree tree(padic(3));
    CHECK(tree.vertex_from_matrix(mq(1, 0, 0, 1)) == tree.base());
    CHECK(tree.vertex_from_matrix(mq(3, 0, 0, 1)) == Vertex{1, q(0)});
    const Vertex v = tree.vertex_from_matrix(mq("1", "1/3", "0", "1"));
    CHECK(tree.distance(tree.base(), v) == 2);
    CHECK(v == (Vertex{0, q("1/3")}));
    // Homothety and change of basis leave the class alone.
    CHECK(tree.vertex_from_matrix(mq(6, 0, 0, 6)) == tree.base());
    CHECK(tree.vertex_from_matrix(mq(3, 0, 0, 1) * mq(2, 1, 1, 1)) == Vertex{1, q(0)});
}

TEST_CASE("vertex class is invariant under GL2(A_v) on the right and scalars") {
    Sampler s(31);
    for (const auto& tree : sample_trees()) {
        CAPTURE(tree.valuation().to_string());
        const Field f = tree.valuation().field();
        for (int i = 0; i < 60; ++i) {
            const Mat2 m = s.matrix(f, 40);
            Mat2 k = s.matrix(f, 10, 2);
            // Force k into GL2(A_v): integral entries, unit determinant.
            bool integral = true;
            for (const auto& e : k.entries()) integral = integral && val(e, tree.valuation()) >= ValInt(0);
            if (!integral || val(det(k), tree.valuation()) != ValInt(0)) continue;
            const FieldElement lambda = s.element(f, 9);
            if (lambda.is_zero()) continue;
            CHECK(tree.vertex_from_matrix(m * k) == tree.vertex_from_matrix(m));
            CHECK(tree.vertex_from_matrix(lambda * m) == tree.vertex_from_matrix(m));
        }
    }
}

TEST_CASE("distance examples") {
    for (long p : {2L, 3L, 5L}) {
        const BruhatTitsTree tree(padic(p));
        const Vertex o = tree.base();
        CHECK(tree.distance(o, o) == 0);
        CHECK(tree.distance(o, tree.vertex_from_matrix(mq(p, 0, 0, 1))) == 1);
        CHECK(tree.distance(o, tree.vertex_from_matrix(mq(p * p, 0, 0, 1))) == 2);
        const Vertex far = tree.vertex_from_matrix(Mat2(q(1), q(1) / q(p), q(0), q(1)));
        CHECK(tree.distance(o, far) == 2);
        CHECK(tree.geodesic(o, far).size() == 3);
    }
}

TEST_CASE("distance formula agrees with breadth-first search over neighbors") {
    Sampler s(32);
    for (const auto& tree : sample_trees()) {
        CAPTURE(tree.valuation().to_string());
        for (int i = 0; i < 4; ++i) {
            const Vertex x = random_vertex(tree, s);
            // Layered BFS: layer index is graph distance.
            std::unordered_map<std::string, long> layer{{x.key(), 0}};
            std::vector<Vertex> frontier{x};
            for (long r = 1; r <= 3; ++r) {
                std::vector<Vertex> next;
                for (const auto& u : frontier) {
                    const auto nbrs = tree.neighbors(u);
                    CHECK(nbrs.size() == tree.neighbors(tree.base()).size());
                    for (const auto& n : nbrs) {
                        CHECK(tree.distance(u, n) == 1);
                        if (layer.emplace(n.key(), r).second) next.push_back(n);
                    }
                }
                frontier = std::move(next);
            }
            for (const auto& y : tree.ball(x, 3)) CHECK(tree.distance(x, y) == layer.at(y.key()));
        }
    }
}

TEST_CASE("metric axioms and isometric action on random samples") {
    Sampler s(33);
    for (const auto& tree : sample_trees()) {
        CAPTURE(tree.valuation().to_string());
        const Field f = tree.valuation().field();
        for (int i = 0; i < 100; ++i) {
            const Vertex x = random_vertex(tree, s), y = random_vertex(tree, s), z = random_vertex(tree, s);
            const long dxy = tree.distance(x, y);
            CHECK(dxy >= 0);
            CHECK(dxy == tree.distance(y, x));
            CHECK((dxy == 0) == (x == y));
            CHECK(tree.distance(x, z) <= dxy + tree.distance(y, z));
            const Mat2 g = s.matrix(f, 30);
            CHECK(tree.distance(tree.act(g, x), tree.act(g, y)) == dxy);
        }
    }
}

TEST_CASE("action basics") {
    Sampler s(34);
    const BruhatTitsTree tree(padic(2));
    for (int i = 0; i < 50; ++i) {
        const Vertex x = random_vertex(tree, s);
        const Mat2 g = s.matrix(Field::rational(), 30);
        CHECK(tree.act(Mat2::identity(Field::rational()), x) == x);
        CHECK(tree.act(Mat2::scalar(s.nonzero_rational(30)), x) == x);
        CHECK(tree.act(g, tree.act(inverse(g), x)) == x);
        // Compatible with the lattice model.
        CHECK(tree.act(g, x) == tree.vertex_from_matrix(g * tree.matrix_of(x)));
    }
}

TEST_CASE("geodesics have the right length and unit steps") {
    Sampler s(35);
    for (const auto& tree : sample_trees()) {
        CAPTURE(tree.valuation().to_string());
        CHECK(tree.geodesic(tree.base(), tree.base()) == std::vector<Vertex>{tree.base()});
        for (int i = 0; i < 40; ++i) {
            const Vertex x = random_vertex(tree, s), y = random_vertex(tree, s);
            const auto path = tree.geodesic(x, y);
            const long d = tree.distance(x, y);
            REQUIRE(path.size() == static_cast<std::size_t>(d) + 1);
            CHECK(path.front() == x);
            CHECK(path.back() == y);
            for (std::size_t k = 0; k < path.size(); ++k) {
                CHECK(tree.distance(x, path[k]) == static_cast<long>(k));
                if (k > 0) CHECK(tree.distance(path[k - 1], path[k]) == 1);
            }
        }
    }
    const BruhatTitsTree t2(padic(2));
    const auto diag = t2.geodesic(t2.base(), t2.vertex_from_matrix(mq(4, 0, 0, 1)));
    REQUIRE(diag.size() == 3);
    CHECK(diag[1] == (Vertex{1, q(0)}));
    CHECK(diag[2] == (Vertex{2, q(0)}));
}

TEST_CASE("translation length examples") {
    const BruhatTitsTree t2(padic(2));
    CHECK(t2.translation_length(mq(2, 0, 0, 1)) == 1);
    CHECK(t2.translation_length(mq("2", "0", "0", "1/2")) == 2);
    CHECK(t2.translation_length(mq(0, -1, 1, 0)) == 0);
    CHECK(t2.translation_length(mq(1, 1, 0, 1)) == 0);
    const BruhatTitsTree t3(padic(3));
    CHECK(t3.translation_length(mq("3", "0", "0", "1/3")) == 2);
    CHECK(t3.translation_length(mq(1, 1, 0, 1)) == 0);
    // Brute-force oracle on the same examples.
    CHECK(brute_translation_length(t2, mq(2, 0, 0, 1), {t2.base()}, 4) == 1);
    CHECK(brute_translation_length(t2, mq("2", "0", "0", "1/2"), {t2.base()}, 4) == 2);
    CHECK(brute_translation_length(t3, mq("3", "0", "0", "1/3"), {t3.base()}, 4) == 2);
}

TEST_CASE("classification: hyperbolic, elliptic, inversion") {
    const BruhatTitsTree t2(padic(2));
    CHECK(t2.classify(mq(2, 0, 0, 1)) == IsometryType::Hyperbolic);
    CHECK(t2.classify(Mat2::identity(Field::rational())) == IsometryType::Elliptic);
    const Mat2 inv = mq(0, -2, 1, 0);
    CHECK(t2.classify(inv) == IsometryType::Inversion);
    CHECK(t2.is_inversion(inv));
    // No vertex within radius 5 of the base is fixed.
    for (const auto& x : t2.ball(t2.base(), 5)) CHECK(t2.displacement(inv, x) >= 1);
}

TEST_CASE("translation length equals brute-force minimum displacement") {
    Sampler s(36);
    for (const auto& tree : sample_trees()) {
        CAPTURE(tree.valuation().to_string());
        const long radius = tree.neighbors(tree.base()).size() > 4 ? 3 : 4;
        for (int i = 0; i < 15; ++i) {
            const Mat2 g = s.matrix(tree.valuation().field(), 20, 2);
            std::vector<Vertex> centers{tree.base()};
            if (tree.is_hyperbolic(g)) centers.push_back(tree.point_on_axis(g));
            const long ell = tree.translation_length(g);
            const long brute = brute_translation_length(tree, g, centers, radius);
            if (tree.is_inversion(g)) {
                CHECK(ell == 0);
                CHECK(brute == 1);
            } else {
                CHECK(ell == brute);
            }
        }
    }
}

TEST_CASE("translation length is a projective conjugacy invariant") {
    Sampler s(37);
    for (const auto& tree : sample_trees()) {
        const Field f = tree.valuation().field();
        for (int i = 0; i < 50; ++i) {
            const Mat2 g = s.matrix(f, 30), k = s.matrix(f, 30);
            const FieldElement lambda = s.element(f, 30);
            if (lambda.is_zero()) continue;
            CHECK(tree.translation_length(lambda * g) == tree.translation_length(g));
            CHECK(tree.translation_length(conjugate(k, g)) == tree.translation_length(g));
        }
    }
}

TEST_CASE("points on axes and projections") {
    const BruhatTitsTree t2(padic(2));
    const Mat2 g = mq(2, 0, 0, 1);
    CHECK(t2.point_on_axis(g) == t2.base());
    const Mat2 moved = mq(1, 1, 0, 1) * g * mq(1, -1, 0, 1);
    CHECK(t2.displacement(moved, t2.point_on_axis(moved)) == 1);

    const Vertex x = t2.vertex_from_matrix(mq("1", "1/2", "0", "1"));
    CHECK(t2.displacement(g, x) == 3);
    const Vertex px = t2.project_to_axis(g, x);
    CHECK(t2.distance(x, px) == 1);
    CHECK(t2.displacement(g, px) == 1);
    CHECK(t2.project_to_axis(g, px) == px);

    CHECK_THROWS_AS(t2.point_on_axis(mq(1, 1, 0, 1)), PreconditionError);
}

TEST_CASE("tree Pythagoras: displacement = length + 2 * distance to axis") {
    Sampler s(38);
    for (const auto& tree : sample_trees()) {
        CAPTURE(tree.valuation().to_string());
        for (int i = 0; i < 25; ++i) {
            const Mat2 g = random_hyperbolic(tree, s);
            const long ell = tree.translation_length(g);
            CHECK(tree.displacement(g, tree.point_on_axis(g)) == ell);
            const Vertex x = random_vertex(tree, s);
            const Vertex px = tree.project_to_axis(g, x);
            CHECK(tree.displacement(g, px) == ell);
            CHECK(tree.displacement(g, x) == ell + 2 * tree.distance(x, px));
            // No axis vertex in the neighborhood of px is closer to x.
            for (const auto& n : tree.neighbors(px)) {
                if (tree.displacement(g, n) == ell) CHECK(tree.distance(x, n) >= tree.distance(x, px));
            }
        }
    }
}

TEST_CASE("axis equality examples") {
    const BruhatTitsTree t2(padic(2));
    const Mat2 g = mq(2, 0, 0, 1), h = mq(2, -1, 0, 1);
    CHECK(t2.axis_equal(g, g * g));
    CHECK_FALSE(t2.axis_equal(g, h));
    // Cross-check: h moves some point of A_g by more than l(h).
    const Vertex on_g = t2.point_on_axis(g);
    const bool moved = t2.displacement(h, on_g) > t2.translation_length(h) ||
                       t2.displacement(h, t2.act(g, on_g)) > t2.translation_length(h) ||
                       t2.displacement(h, t2.act(inverse(g), on_g)) > t2.translation_length(h);
    CHECK(moved);
    const Mat2 k = mq("3", "0", "0", "1");  // commutes with g
    CHECK(t2.axis_equal(g, conjugate(k, g)));
    CHECK_THROWS_AS(t2.axis_equal(g, mq(1, 1, 0, 1)), PreconditionError);
}

TEST_CASE("axis equality agrees with displacement sampling") {
    Sampler s(39);
    for (const auto& tree : sample_trees()) {
        CAPTURE(tree.valuation().to_string());
        const Field f = tree.valuation().field();
        for (int i = 0; i < 25; ++i) {
            const Mat2 g = random_hyperbolic(tree, s);
            // Half the time use a commuting conjugator (a polynomial in g).
            const Mat2 k = (i % 2 == 0) ? s.matrix(f, 6, 1) : shifted(g, FieldElement::from_int(f, 1 + i));
            const Mat2 h = conjugate(k, g);
            const long ell = tree.translation_length(h);
            const Vertex x = tree.point_on_axis(g);
            const Vertex gx = tree.act(g, x);
            if (tree.axis_equal(g, h)) {
                CHECK(tree.displacement(h, x) == ell);
                CHECK(tree.displacement(h, gx) == ell);
            } else {
                // Distinct axes in a tree share at most a ray; a point of A_g
                // far enough along must leave A_h.
                bool off = false;
                Vertex y = x;
                for (int step = 0; step < 40 && !off; ++step) {
                    off = tree.displacement(h, y) > ell || tree.displacement(h, tree.act(power(g, -step), x)) > ell;
                    y = tree.act(g, y);
                }
                CHECK(off);
            }
        }
    }
}

namespace {

// Hyperbolic element with attracting/repelling fixed points given by the columns of basis.
Mat2 with_fixed_points(const Mat2& basis, long p) { return basis * mq(p, 0, 0, 1) * inverse(basis); }

}  // namespace

TEST_CASE("bridge between axes") {
    SUBCASE("axes crossing at the base vertex") {
        const BruhatTitsTree t3(padic(3));
        const Mat2 g = mq(3, 0, 0, 1);           // ends 0 and infinity
        const Mat2 h = with_fixed_points(mq(1, 1, 1, -1), 3);  // ends 1 and -1
        const Bridge b = t3.bridge(g, h);
        CHECK(b.separation == 0);
        CHECK(b.on_first == t3.base());
        CHECK(t3.bridge(h, g).separation == 0);
    }
    SUBCASE("axes sharing an end") {
        const BruhatTitsTree t2(padic(2));
        const Mat2 g = mq(2, 0, 0, 1);
        const Mat2 k = mq(1, 4, 0, 1);
        const Mat2 h = conjugate(k, g);
        const Bridge b = t2.bridge(g, h);
        CHECK(b.separation == 0);
        CHECK(t2.displacement(g, b.on_first) == t2.translation_length(g));
        CHECK(t2.displacement(h, b.on_second) == t2.translation_length(h));
    }
    SUBCASE("disjoint axes") {
        const BruhatTitsTree t2(padic(2));
        const Mat2 g = mq(2, 0, 0, 1);
        // Ends 1 and 5 agree modulo 4: the axis branches off two steps away.
        const Mat2 h = with_fixed_points(mq(1, 5, 1, 1), 2);
        const Bridge b = t2.bridge(g, h);
        CHECK(b.separation == 2);
        CHECK(t2.distance(b.on_first, b.on_second) == 2);
        CHECK(t2.displacement(g, b.on_first) == 1);
        CHECK(t2.displacement(h, b.on_second) == t2.translation_length(h));
        CHECK(t2.project_to_axis(g, b.on_second) == b.on_first);
        CHECK(t2.project_to_axis(h, b.on_first) == b.on_second);
        const Bridge swapped = t2.bridge(h, g);
        CHECK(swapped.separation == 2);
        CHECK(swapped.on_first == b.on_second);
    }
    SUBCASE("coinciding axes are rejected") {
        const BruhatTitsTree t2(padic(2));
        CHECK_THROWS_AS(t2.bridge(mq(2, 0, 0, 1), mq(4, 0, 0, 1)), PreconditionError);
    }
}

TEST_CASE("bridge endpoints lie on the axes for random pairs") {
    Sampler s(40);
    for (const auto& tree : sample_trees()) {
        CAPTURE(tree.valuation().to_string());
        for (int i = 0; i < 20; ++i) {
            const Mat2 g = random_hyperbolic(tree, s), h = random_hyperbolic(tree, s);
            if (tree.axis_equal(g, h)) continue;
            const Bridge b = tree.bridge(g, h);
            CHECK(tree.displacement(g, b.on_first) == tree.translation_length(g));
            CHECK(tree.displacement(h, b.on_second) == tree.translation_length(h));
            CHECK(tree.bridge(h, g).separation == b.separation);
            if (b.separation > 0) {
                // Every vertex strictly inside the bridge is off both axes.
                const auto path = tree.geodesic(b.on_first, b.on_second);
                for (std::size_t k = 1; k + 1 < path.size(); ++k) {
                    CHECK(tree.displacement(g, path[k]) > tree.translation_length(g));
                    CHECK(tree.displacement(h, path[k]) > tree.translation_length(h));
                }
            }
        }
    }
}
