#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "polyround/generators.hpp"
#include "polyround/svd.hpp"

using namespace polyround;
using Catch::Approx;

namespace {

Eigen::MatrixXd random_unit_rows(RandomStream& rng, int m, int d) {
    Eigen::MatrixXd a(m, d);
    for (int i = 0; i < m; ++i) a.row(i) = rng.unit_sphere_sample(d).transpose();
    return a;
}

void check_svd_invariants(const Eigen::MatrixXd& a) {
    const SvdResult s = svd(a);
    const int d = static_cast<int>(a.cols());

    Eigen::MatrixXd reconstructed = Eigen::MatrixXd::Zero(a.rows(), d);
    for (int j = 0; j < d; ++j)
        reconstructed +=
            s.singular_values(j) * s.left_vectors.col(j) * s.right_vectors.col(j).transpose();
    CHECK((a - reconstructed).norm() <= 1e-10 * (1.0 + a.norm()));

    CHECK((s.right_vectors.transpose() * s.right_vectors - Eigen::MatrixXd::Identity(d, d))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
    CHECK((s.left_vectors.transpose() * s.left_vectors - Eigen::MatrixXd::Identity(d, d))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);

    CHECK(s.singular_values.squaredNorm() ==
          Approx(a.squaredNorm()).epsilon(1e-10).margin(1e-12));
    for (int j = 0; j + 1 < d; ++j)
        CHECK(s.singular_values(j) >= s.singular_values(j + 1));
}

}  // namespace

TEST_CASE("axis-box normals have a flat spectrum of sqrt(2)") {
    for (int d = 2; d <= 6; ++d) {
        const HPolytope box = generate({Family::Cube, d, 0});
        // direct Gram check: A^T A = 2 I
        const Eigen::MatrixXd gram = box.normals.transpose() * box.normals;
        CHECK((gram - 2.0 * Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-14);

        const SvdResult s = svd(box.normals);
        for (int j = 0; j < d; ++j)
            CHECK(s.singular_values(j) == Approx(std::sqrt(2.0)).margin(1e-12));
    }
}

TEST_CASE("regular-simplex normals form a tight frame") {
    for (int d = 2; d <= 5; ++d) {
        const HPolytope simplex = generate({Family::RegularSimplex, d, 0});
        // pairwise dot products are exactly -1/d
        for (int i = 0; i <= d; ++i)
            for (int j = i + 1; j <= d; ++j)
                CHECK(simplex.normals.row(i).dot(simplex.normals.row(j)) ==
                      Approx(-1.0 / d).margin(1e-12));
        // hence A^T A = ((d+1)/d) I
        const Eigen::MatrixXd gram = simplex.normals.transpose() * simplex.normals;
        CHECK((gram - ((d + 1.0) / d) * Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() <=
              1e-12);

        const SvdResult s = svd(simplex.normals);
        for (int j = 0; j < d; ++j)
            CHECK(s.singular_values(j) == Approx(std::sqrt((d + 1.0) / d)).margin(1e-10));
    }
}

TEST_CASE("rank-deficient stacks expose a zero singular value") {
    Eigen::MatrixXd a(3, 2);
    a << 1, 0, 1, 0, 1, 0;
    const SvdResult s = svd(a);
    CHECK(s.singular_values(0) == Approx(std::sqrt(3.0)).margin(1e-12));
    CHECK(s.singular_values(1) == Approx(0.0).margin(1e-12));
    // the left basis is completed orthonormally even for the null direction
    CHECK((s.left_vectors.transpose() * s.left_vectors - Eigen::Matrix2d::Identity())
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
    CHECK(sigma_min(a) == Approx(0.0).margin(1e-12));
}

TEST_CASE("svd invariants hold on random matrices") {
    RandomStream rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 1 + static_cast<int>(rng.next_u64() % 6);
        const int m = d + static_cast<int>(rng.next_u64() % 8);
        check_svd_invariants(random_unit_rows(rng, m, d));
    }
}

TEST_CASE("spectrum is invariant under rotations and row permutations") {
    RandomStream rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 4);
        const int m = d + 1 + static_cast<int>(rng.next_u64() % 6);
        const Eigen::MatrixXd a = random_unit_rows(rng, m, d);
        const Eigen::VectorXd sv = svd(a).singular_values;

        const Eigen::MatrixXd q = rng.orthogonal_matrix(d);
        const Eigen::VectorXd sv_rot = svd(a * q).singular_values;
        CHECK((sv - sv_rot).cwiseAbs().maxCoeff() <= 1e-10);

        Eigen::MatrixXd perm = a;
        for (int i = 0; i < m; ++i) {
            const int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(m));
            perm.row(i).swap(perm.row(j));
        }
        const Eigen::VectorXd sv_perm = svd(perm).singular_values;
        CHECK((sv - sv_perm).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("squared singular values match the Gram eigen-spectrum") {
    RandomStream rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 4);
        const int m = d + static_cast<int>(rng.next_u64() % 7);
        const Eigen::MatrixXd a = random_unit_rows(rng, m, d);
        const SvdResult s = svd(a);

        // independent oracle: symmetric eigensolve of A^T A
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a.transpose() * a);
        REQUIRE(eig.info() == Eigen::Success);
        const Eigen::VectorXd ascending = eig.eigenvalues();
        for (int j = 0; j < d; ++j) {
            const double sigma2 = s.singular_values(j) * s.singular_values(j);
            CHECK(sigma2 == Approx(ascending(d - 1 - j)).margin(1e-9));
        }
    }
}

TEST_CASE("right vectors follow the sign convention") {
    RandomStream rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 4);
        const Eigen::MatrixXd a = random_unit_rows(rng, d + 3, d);
        const SvdResult s = svd(a);
        for (int j = 0; j < d; ++j) {
            int arg = 0;
            for (int r = 1; r < d; ++r)
                if (std::abs(s.right_vectors(r, j)) > std::abs(s.right_vectors(arg, j))) arg = r;
            CHECK(s.right_vectors(arg, j) >= 0.0);
        }
    }
}

TEST_CASE("closed-form cross-checks in the plane") {
    Eigen::MatrixXd square(4, 2);
    square << 1, 0, 0, 1, -1, 0, 0, -1;
    CHECK(sigma_min(square) == Approx(std::sqrt(2.0)).margin(1e-10));

    const HPolytope tri = generate({Family::RegularSimplex, 2, 0});
    CHECK(sigma_min(tri.normals) == Approx(std::sqrt(1.5)).margin(1e-10));
}

TEST_CASE("svd rejects malformed input") {
    Eigen::MatrixXd wide(1, 2);
    wide << 1, 0;
    CHECK_THROWS_AS(svd(wide), ValidationError);
}
