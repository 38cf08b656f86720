#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "coneproj/exact.hpp"
#include "coneproj/experiment.hpp"
#include "coneproj/verify.hpp"

using namespace coneproj;

namespace {

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
    Eigen::MatrixXd m(2, 2);
    m << a, b, c, d;
    return m;
}

Eigen::VectorXd vec(std::initializer_list<double> vals) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
    Eigen::Index i = 0;
    for (double x : vals) {
        v(i++) = x;
    }
    return v;
}

SimplicialCone orthant(int n) {
    return SimplicialCone::build(Eigen::MatrixXd::Identity(n, n));
}

SimplicialCone skew_cone() { return SimplicialCone::build(mat2(1, 1, 0, 1)); }

// Absolute-value normal entries make every pairwise inner product
// nonnegative, i.e. a subdual cone.
SimplicialCone random_subdual_cone(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    for (;;) {
        Eigen::MatrixXd e(n, n);
        for (int c = 0; c < n; ++c) {
            for (int r = 0; r < n; ++r) {
                e(r, c) = std::abs(gauss(rng));
            }
        }
        try {
            return SimplicialCone::build(e);
        } catch (const SingularGenerators&) {
        }
    }
}

Eigen::VectorXd random_point(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) {
        x(i) = gauss(rng);
    }
    return x;
}

} // namespace

TEST_CASE("orthant projection clamps at zero") {
    const Eigen::VectorXd x = vec({1, -2});
    const ExactResult r = exact_project(orthant(2), x, default_sign_tol(x));
    CHECK(r.projection.isApprox(vec({1, 0}), 1e-12));
    CHECK(r.sector == IndexSet::of(2, {1}));
    CHECK((r.projection + r.polar_projection - x).norm() <= 1e-12);
}

TEST_CASE("skew cone projects (0,1) onto the diagonal ray") {
    const Eigen::VectorXd x = vec({0, 1});
    const ExactResult r = exact_project(skew_cone(), x, default_sign_tol(x));
    CHECK(r.projection.isApprox(vec({0.5, 0.5}), 1e-12));
    CHECK(r.sector == IndexSet::of(2, {2}));
    // enumeration order {} -> {1} -> {2}: the third candidate wins
    CHECK(r.subsets_tried == 3);
    // Moreau: x - p is 0.5*u1, orthogonal to p
    CHECK(r.projection.dot(x - r.projection) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("interior points project to themselves with the full sector") {
    const SimplicialCone cone = skew_cone();
    const Eigen::VectorXd x = 2 * cone.generator(1) + 3 * cone.generator(2);
    const ExactResult r = exact_project(cone, x, default_sign_tol(x));
    CHECK(r.projection.isApprox(x, 1e-12));
    CHECK(r.sector == IndexSet::all(2));
    CHECK(r.polar_projection.norm() <= 1e-12);
}

TEST_CASE("subdual pruning restricts the candidate pool") {
    SUBCASE("orthant n=3: pool {1,3}") {
        const Eigen::VectorXd x = vec({1, -1, 2});
        const ExactResult r = exact_project_subdual(orthant(3), x, default_sign_tol(x));
        CHECK(r.projection.isApprox(vec({1, 0, 2}), 1e-12));
        // candidates {}, {1}, {3}, {1,3}; the last one wins
        CHECK(r.subsets_tried == 4);
    }
    SUBCASE("point in the polar: empty pool, only the empty set tried") {
        const Eigen::VectorXd x = vec({-1, -2});
        const ExactResult r = exact_project_subdual(orthant(2), x, default_sign_tol(x));
        CHECK(r.projection.norm() <= 1e-12);
        CHECK(r.subsets_tried == 1);
        CHECK(r.sector == IndexSet(2));
    }
    SUBCASE("pruned and full enumeration agree on a skewed subdual cone") {
        const SimplicialCone cone = SimplicialCone::build(mat2(1, 0.5, 0, 1));
        REQUIRE(cone.subdual());
        const Eigen::VectorXd x = vec({-2, -0.1});
        const double tol = default_sign_tol(x);
        const ExactResult full = exact_project(cone, x, tol);
        const ExactResult pruned = exact_project_subdual(cone, x, tol);
        CHECK((full.projection - pruned.projection).norm() <= 1e-10);
        CHECK(full.sector == pruned.sector);
    }
}

TEST_CASE("subdual routine refuses non-subdual cones") {
    const SimplicialCone cone = SimplicialCone::build(mat2(1, -1, 0, 1e-3));
    REQUIRE_FALSE(cone.subdual());
    CHECK_THROWS_AS(exact_project_subdual(cone, vec({1, 1}), 1e-10), NotSubdual);
}

TEST_CASE("dimension guard") {
    const SimplicialCone cone =
        random_cone(16, GeneratorDistribution::StandardNormal, 5);
    const Eigen::VectorXd x = Eigen::VectorXd::Ones(16);
    CHECK_THROWS_AS(exact_project(cone, x, 1e-10), DimensionGuard);   // default guard 15
    CHECK_NOTHROW(exact_project(cone, x, default_sign_tol(x), 16));   // explicit override

    const SimplicialCone big =
        random_cone(26, GeneratorDistribution::StandardNormal, 6);
    // hard cap: even a generous guard refuses
    CHECK_THROWS_AS(exact_project(big, Eigen::VectorXd::Ones(26), 1e-10, 64), DimensionGuard);
}

TEST_CASE("absurd tolerance surfaces as NoSectorFound") {
    CHECK_THROWS_AS(exact_project(orthant(2), vec({0.5, 0.5}), -1.0), NoSectorFound);
}

TEST_CASE("exact projections pass the Moreau certificate on random instances") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 9);  // 2..10
        const SimplicialCone cone =
            random_cone(n, GeneratorDistribution::StandardNormal, rng());
        const Eigen::VectorXd x = random_point(n, rng);
        const ExactResult r = exact_project(cone, x, default_sign_tol(x));
        const Certificate cert = moreau_check(cone, x, r.projection, 1e-7 * (1.0 + x.norm()));
        CHECK(cert.passed);
        CHECK((r.projection + r.polar_projection - x).norm() <= 1e-7 * (1.0 + x.norm()));
    }
}

TEST_CASE("generic points live in exactly one strict sector") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);  // 2..6
        const SimplicialCone cone =
            random_cone(n, GeneratorDistribution::StandardNormal, rng());
        const Eigen::VectorXd x = random_point(n, rng);
        CHECK(count_strict_sectors(cone, x, default_sign_tol(x)) == 1);
    }
}

TEST_CASE("pruning is sound on random subdual cones") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);  // 2..7
        const SimplicialCone cone = random_subdual_cone(n, rng);
        const Eigen::VectorXd x = random_point(n, rng);
        const double tol = default_sign_tol(x);
        const ExactResult full = exact_project(cone, x, tol);
        const ExactResult pruned = exact_project_subdual(cone, x, tol);
        CHECK((full.projection - pruned.projection).norm() <= 1e-10);
        CHECK(pruned.subsets_tried <= full.subsets_tried);
    }
}

TEST_CASE("idempotence and positive homogeneity") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const SimplicialCone cone =
            random_cone(n, GeneratorDistribution::StandardNormal, rng());
        const Eigen::VectorXd x = random_point(n, rng);
        const ExactResult r = exact_project(cone, x, default_sign_tol(x));

        const ExactResult again =
            exact_project(cone, r.projection, default_sign_tol(r.projection));
        CHECK((again.projection - r.projection).norm() <= 1e-8 * (1.0 + r.projection.norm()));

        for (double t : {0.0, 0.5, 2.0}) {
            const Eigen::VectorXd xt = t * x;
            const ExactResult rt = exact_project(cone, xt, default_sign_tol(xt));
            CHECK((rt.projection - t * r.projection).norm() <=
                  1e-8 * (1.0 + xt.norm()));
        }
    }
}
