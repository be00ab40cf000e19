#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "polyround/generators.hpp"
#include "polyround/polytope.hpp"
#include "test_util.hpp"

using namespace polyround;
using Catch::Approx;

TEST_CASE("normalize scales rows and offsets together") {
    Eigen::MatrixXd a(4, 2);
    a << 2, 0, 0, 2, -2, 0, 0, -2;
    const HPolytope p = normalize(a, Eigen::VectorXd::Constant(4, 2.0));
    CHECK((p.normals - testutil::unit_square().normals).cwiseAbs().maxCoeff() == 0.0);
    CHECK((p.offsets - Eigen::VectorXd::Ones(4)).cwiseAbs().maxCoeff() == 0.0);

    Eigen::MatrixXd r(1, 2);
    r << 3, 4;
    const HPolytope q = normalize(r, Eigen::VectorXd::Constant(1, 10.0));
    CHECK(q.normals(0, 0) == Approx(0.6).margin(1e-15));
    CHECK(q.normals(0, 1) == Approx(0.8).margin(1e-15));
    CHECK(q.offsets(0) == Approx(2.0).margin(1e-15));
}

TEST_CASE("normalize leaves unit rows essentially unchanged") {
    const HPolytope p = testutil::right_triangle();
    const HPolytope q = normalize(p);
    CHECK((p.normals - q.normals).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((p.offsets - q.offsets).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("normalize is idempotent on random inputs") {
    RandomStream rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 1 + static_cast<int>(rng.next_u64() % 9);
        const int d = 1 + static_cast<int>(rng.next_u64() % 5);
        Eigen::MatrixXd a(m, d);
        Eigen::VectorXd b(m);
        for (int i = 0; i < m; ++i) {
            a.row(i) = (5.0 * rng.gaussian_vector(d)).transpose();
            if (a.row(i).norm() <= 1e-6) a(i, 0) += 1.0;
            b(i) = rng.next_gaussian();
        }
        const HPolytope once = normalize(a, b);
        const HPolytope twice = normalize(once);
        CHECK((once.normals - twice.normals).cwiseAbs().maxCoeff() <= 1e-15);
        CHECK((once.offsets - twice.offsets).cwiseAbs().maxCoeff() <= 1e-15);
        for (int i = 0; i < m; ++i)
            CHECK(std::abs(once.normals.row(i).norm() - 1.0) <= 1e-12);
    }
}

TEST_CASE("normalize rejects near-zero rows") {
    Eigen::MatrixXd a(2, 2);
    a << 1, 0, 1e-13, 0;
    CHECK_THROWS_AS(normalize(a, Eigen::VectorXd::Ones(2)), NearZeroRow);
}

TEST_CASE("boundedness checks") {
    CHECK(is_bounded(testutil::unit_square()));

    Eigen::MatrixXd half(1, 2);
    half << 1, 0;
    CHECK_FALSE(is_bounded(normalize(half, Eigen::VectorXd::Ones(1))));

    const HPolytope simplex3 = generate({Family::RegularSimplex, 3, 0});
    CHECK(is_bounded(simplex3));
    CHECK(enumerate_vertices(simplex3).size() == 4);

    Eigen::MatrixXd a(2, 1);
    a << 1, -1;
    Eigen::VectorXd b(2);
    b << -1, 0;
    CHECK_THROWS_AS(is_bounded(normalize(a, b)), InfeasibleSystem);
}

TEST_CASE("origin interiority is a strict offset test") {
    HPolytope p = testutil::unit_square();
    CHECK(origin_interior(p));

    p.offsets(2) = 0.0;  // origin lands on a supporting hyperplane
    CHECK_FALSE(origin_interior(p));

    p.offsets(2) = -0.25;
    CHECK_FALSE(origin_interior(p));
}

TEST_CASE("interiority agrees with the inscribed-ball picture") {
    // when all offsets are positive, the ball of radius min(b)/2 fits inside
    const auto corpus = testutil::small_corpus(31, 8, 4);
    RandomStream rng(32);
    for (const auto& p : corpus) {
        REQUIRE(origin_interior(p));
        const double rho = 0.5 * p.offsets.minCoeff();
        for (int k = 0; k < 16; ++k) {
            const Eigen::VectorXd u = rho * rng.unit_sphere_sample(p.dim());
            CHECK(((p.normals * u - p.offsets).array() < 0.0).all());
        }
    }
}

TEST_CASE("lemma: interior translation gives positive offsets, boundary gives a zero") {
    const auto corpus = testutil::small_corpus(57, 10, 4);
    RandomStream rng(58);
    for (const auto& p : corpus) {
        const auto [center, r] = chebyshev(p);
        const Eigen::VectorXd interior =
            center + 0.9 * r * rng.unit_sphere_sample(p.dim());
        CHECK(origin_interior(translate(p, -interior)));

        const VertexSet vs = enumerate_vertices(p);
        const Eigen::VectorXd& boundary = vs.vertices[rng.next_u64() % vs.vertices.size()];
        const HPolytope shifted = translate(p, -boundary);
        CHECK(shifted.offsets.minCoeff() <= tol::tightness);
    }
}

TEST_CASE("vertex enumeration on canonical shapes") {
    const VertexSet sq = enumerate_vertices(testutil::unit_square());
    REQUIRE(sq.size() == 4);
    for (const auto& v : sq.vertices) {
        CHECK(std::abs(std::abs(v(0)) - 1.0) <= 1e-12);
        CHECK(std::abs(std::abs(v(1)) - 1.0) <= 1e-12);
    }
    for (const auto& act : sq.active_sets) CHECK(act.size() >= 2);

    const VertexSet cube = enumerate_vertices(testutil::unit_cube3());
    REQUIRE(cube.size() == 8);

    const VertexSet tri = enumerate_vertices(testutil::right_triangle());
    REQUIRE(tri.size() == 3);
    std::vector<Eigen::Vector2d> expected = {{0, 0}, {1, 0}, {0, 1}};
    for (const auto& e : expected) {
        const bool found = std::any_of(tri.vertices.begin(), tri.vertices.end(),
                                       [&](const Eigen::VectorXd& v) {
                                           return (v - e).norm() <= 1e-9;
                                       });
        CHECK(found);
    }
}

TEST_CASE("vertex enumeration guards its caps") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Random(kEnumerationCap + 1, 2);
    for (int i = 0; i < a.rows(); ++i)
        if (a.row(i).norm() < 1e-3) a(i, 0) += 1.0;
    CHECK_THROWS_AS(enumerate_vertices(normalize(a, Eigen::VectorXd::Ones(a.rows()))),
                    TooManyConstraints);

    // a flat segment in the plane has only two vertices
    Eigen::MatrixXd flat(4, 2);
    flat << 1, 0, -1, 0, 0, 1, 0, -1;
    Eigen::VectorXd b(4);
    b << 1, 1, 0, 0;
    CHECK_THROWS_AS(enumerate_vertices(normalize(flat, b)), DegeneratePolytope);
}

TEST_CASE("every enumerated vertex is feasible and LP optima land on vertices") {
    const auto corpus = testutil::small_corpus(71, 14, 4);
    RandomStream rng(72);
    for (const auto& p : corpus) {
        const VertexSet vs = enumerate_vertices(p);
        for (const auto& v : vs.vertices) {
            CHECK(((p.normals * v - p.offsets).array() <= tol::feasibility).all());
        }
        for (int trial = 0; trial < 4; ++trial) {
            LpProblem lp;
            lp.constraint_matrix = p.normals;
            lp.rhs = p.offsets;
            lp.objective = rng.gaussian_vector(p.dim());
            const LpSolution sol = solve_lp(lp);
            REQUIRE(sol.status == LpStatus::Optimal);
            const bool on_vertex =
                std::any_of(vs.vertices.begin(), vs.vertices.end(),
                            [&](const Eigen::VectorXd& v) {
                                return (v - sol.point).norm() <= 1e-7;
                            });
            CHECK(on_vertex);
        }
    }
}

TEST_CASE("diameter of canonical shapes") {
    CHECK(diameter(enumerate_vertices(testutil::unit_square())) ==
          Approx(2.0 * std::sqrt(2.0)).margin(1e-12));
    CHECK(diameter(enumerate_vertices(testutil::unit_cube3())) ==
          Approx(2.0 * std::sqrt(3.0)).margin(1e-12));
    for (int d = 2; d <= 5; ++d)
        CHECK(diameter(enumerate_vertices(generate({Family::Cube, d, 0}))) ==
              Approx(2.0 * std::sqrt(double(d))).margin(1e-12));
    CHECK(diameter(enumerate_vertices(testutil::right_triangle())) ==
          Approx(std::sqrt(2.0)).margin(1e-12));

    VertexSet lone;
    lone.vertices.push_back(Eigen::Vector2d(0, 0));
    CHECK_THROWS_AS(diameter(lone), NotEnoughVertices);
}

TEST_CASE("diameter dominates random feasible pairs") {
    const auto corpus = testutil::small_corpus(87, 8, 4);
    RandomStream rng(88);
    for (const auto& p : corpus) {
        const VertexSet vs = enumerate_vertices(p);
        const double diam = diameter(vs);
        for (int trial = 0; trial < 20; ++trial) {
            // random convex combinations of vertices are feasible points
            auto mix = [&] {
                Eigen::VectorXd x = Eigen::VectorXd::Zero(p.dim());
                double total = 0.0;
                for (const auto& v : vs.vertices) {
                    const double w = rng.next_unit();
                    x += w * v;
                    total += w;
                }
                return Eigen::VectorXd(x / total);
            };
            CHECK((mix() - mix()).norm() <= diam + 1e-9);
        }
    }
}

TEST_CASE("redundant rows are dropped, ties keep the lowest index") {
    HPolytope sq = testutil::unit_square();

    Eigen::MatrixXd a(5, 2);
    a.topRows(4) = sq.normals;
    a.row(4) << 1, 0;
    Eigen::VectorXd b(5);
    b << 1, 1, 1, 1, 5;
    const HPolytope trimmed = remove_redundant(normalize(a, b));
    REQUIRE(trimmed.num_constraints() == 4);
    CHECK((trimmed.normals - sq.normals).cwiseAbs().maxCoeff() == 0.0);

    const HPolytope tri = testutil::right_triangle();
    const HPolytope same = remove_redundant(tri);
    CHECK(same.num_constraints() == 3);
    CHECK((same.normals - tri.normals).cwiseAbs().maxCoeff() == 0.0);

    // duplicate of row 0 appended last: the copy at index 4 must go
    Eigen::MatrixXd dup(5, 2);
    dup.topRows(4) = sq.normals;
    dup.row(4) = sq.normals.row(0);
    Eigen::VectorXd bd(5);
    bd << 1, 1, 1, 1, 1;
    const HPolytope undup = remove_redundant(normalize(dup, bd));
    REQUIRE(undup.num_constraints() == 4);
    CHECK((undup.normals - sq.normals).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("facet geometry in the plane") {
    const HPolytope sq = testutil::unit_square();
    const VertexSet vs = enumerate_vertices(sq);
    const FacetGeometry right = facet_geometry(sq, vs, 0);
    CHECK(right.measure == Approx(2.0).margin(1e-12));
    CHECK(right.centroid(0) == Approx(1.0).margin(1e-12));
    CHECK(right.centroid(1) == Approx(0.0).margin(1e-12));

    const HPolytope tri = testutil::right_triangle();
    const FacetGeometry hyp = facet_geometry(tri, enumerate_vertices(tri), 2);
    CHECK(hyp.measure == Approx(std::sqrt(2.0)).margin(1e-12));
    CHECK(hyp.centroid(0) == Approx(0.5).margin(1e-12));
    CHECK(hyp.centroid(1) == Approx(0.5).margin(1e-12));
}

TEST_CASE("facet geometry in space") {
    const HPolytope cube = testutil::unit_cube3();
    const VertexSet vs = enumerate_vertices(cube);
    double total = 0.0;
    for (int i = 0; i < cube.num_constraints(); ++i) {
        const FacetGeometry fg = facet_geometry(cube, vs, i);
        CHECK(fg.measure == Approx(4.0).margin(1e-9));
        // centroid sits on the facet plane, one unit out along the normal
        CHECK(cube.normals.row(i).dot(fg.centroid) == Approx(1.0).margin(1e-12));
        total += fg.measure;
    }
    CHECK(total == Approx(24.0).margin(1e-9));
}

TEST_CASE("facet geometry rejects non-facets and high dimensions") {
    Eigen::MatrixXd a(5, 2);
    a << 1, 0, 0, 1, -1, 0, 0, -1, 1, 0;
    Eigen::VectorXd b(5);
    b << 1, 1, 1, 1, 5;  // last row is redundant
    const HPolytope p = normalize(a, b);
    const VertexSet vs = enumerate_vertices(p);
    CHECK_THROWS_AS(facet_geometry(p, vs, 4), NotAFacet);

    const HPolytope c4 = generate({Family::Cube, 4, 0});
    const VertexSet vs4 = enumerate_vertices(c4);
    CHECK_THROWS_AS(facet_geometry(c4, vs4, 0), UnsupportedDimension);
}

TEST_CASE("simplex vertices convert to the expected half-space form") {
    Eigen::MatrixXd vertices(3, 2);
    vertices << 0, 0, 1, 0, 0, 1;
    const HPolytope p = simplex_to_hrep(vertices);
    REQUIRE(p.num_constraints() == 3);
    // same feasible set as the canonical right triangle: all vertices tight
    for (int r = 0; r < 3; ++r) {
        const Eigen::Vector2d v = vertices.row(r).transpose();
        CHECK(((p.normals * v - p.offsets).array() <= 1e-12).all());
        int tight = 0;
        for (int i = 0; i < 3; ++i)
            if (std::abs(p.normals.row(i).dot(v) - p.offsets(i)) <= 1e-12) ++tight;
        CHECK(tight == 2);
    }
    // interior point strictly inside
    const Eigen::Vector2d inside(0.25, 0.25);
    CHECK(((p.normals * inside - p.offsets).array() < 0.0).all());

    Eigen::MatrixXd degenerate(3, 2);
    degenerate << 0, 0, 1, 0, 2, 0;
    CHECK_THROWS_AS(simplex_to_hrep(degenerate), ValidationError);
}

TEST_CASE("simplex conversion matches enumeration in three dimensions") {
    Eigen::MatrixXd vertices(4, 3);
    vertices << 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1;
    const HPolytope p = simplex_to_hrep(vertices);
    const VertexSet vs = enumerate_vertices(p);
    REQUIRE(vs.size() == 4);
    for (int r = 0; r < 4; ++r) {
        const Eigen::Vector3d v = vertices.row(r).transpose();
        const bool found = std::any_of(vs.vertices.begin(), vs.vertices.end(),
                                       [&](const Eigen::VectorXd& u) {
                                           return (u - v).norm() <= 1e-9;
                                       });
        CHECK(found);
    }
}
