#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "plastiflow/errors.hpp"
#include "plastiflow/sym_matrix.hpp"
#include "plastiflow/yield_surface.hpp"

using namespace plastiflow;

namespace {

SymMatrix random_sym(int n, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, scale);
    SymMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.set(i, j, normal(rng));
    return m;
}

}  // namespace

TEST_CASE("deviatoric split") {
    auto [dev_id, tr_id] = deviatoric_split(SymMatrix::identity(3));
    CHECK(tr_id == doctest::Approx(3.0));
    CHECK(dev_id.norm() == doctest::Approx(0.0));

    auto [dev2, tr2] = deviatoric_split(SymMatrix::diag({1.0, -1.0}));
    CHECK(tr2 == doctest::Approx(0.0));
    CHECK(dev2(0, 0) == doctest::Approx(1.0));
    CHECK(dev2(1, 1) == doctest::Approx(-1.0));

    auto [dev3, tr3] = deviatoric_split(SymMatrix::diag({2.0, 1.0, 0.0}));
    CHECK(tr3 == doctest::Approx(3.0));
    CHECK(dev3(0, 0) == doctest::Approx(1.0));
    CHECK(dev3(1, 1) == doctest::Approx(0.0));
    CHECK(dev3(2, 2) == doctest::Approx(-1.0));

    std::mt19937_64 rng(7);
    for (int k = 0; k < 100; ++k) {
        const SymMatrix m = random_sym(3, rng, 10.0);
        CHECK(std::abs(m.deviatoric().trace()) <= 1e-14 * (1.0 + m.norm()));
    }
}

TEST_CASE("eigen decomposition reassembles") {
    std::mt19937_64 rng(11);
    for (int n : {2, 3}) {
        for (int k = 0; k < 200; ++k) {
            const SymMatrix m = random_sym(n, rng, 2.0);
            std::array<double, 3> vals;
            std::array<std::array<double, 3>, 3> vecs;
            m.eigen(vals, vecs);
            for (int i = 0; i + 1 < n; ++i) CHECK(vals[(size_t)i] <= vals[(size_t)i + 1]);
            const SymMatrix back = SymMatrix::from_eigen(n, vals, vecs);
            CHECK((m - back).norm() <= 1e-12 * (1.0 + m.norm()));
        }
    }
}

TEST_CASE("interval projection and support") {
    const auto k = YieldSurface::interval(-1.0, 1.0);
    const auto inside = k.project(0.5);
    CHECK(inside.point == doctest::Approx(0.5));
    CHECK(inside.distance == doctest::Approx(0.0));
    CHECK(inside.inside);
    CHECK(k.distance(3.0) == doctest::Approx(2.0));
    CHECK(k.support(-3.0) == doctest::Approx(3.0));
    CHECK(k.inner_radius() == doctest::Approx(1.0));

    const auto skew = YieldSurface::interval(-0.5, 2.0);
    CHECK(skew.inner_radius() == doctest::Approx(0.5));
    CHECK(skew.outer_radius() == doctest::Approx(2.0));
    CHECK_THROWS_AS(YieldSurface::interval(0.5, 1.0), ValidationError);
}

TEST_CASE("von Mises ball projection; cylinder kills hydrostatic distance") {
    const auto k2 = YieldSurface::vonmises(2, 1.0);
    std::mt19937_64 rng(3);
    const SymMatrix dir = random_unit_deviatoric(2, 99);
    const SymMatrix x = dir * 2.0;
    const auto pr = k2.project_deviatoric(x);
    CHECK(pr.distance == doctest::Approx(1.0));
    CHECK((pr.point - dir * 1.0).norm() <= 1e-12);

    const auto k3 = YieldSurface::vonmises(3, 1.0);
    const SymMatrix hydro = 5.0 * SymMatrix::identity(3);
    CHECK(k3.distance(hydro) == doctest::Approx(0.0));

    // d(K + R Id, x) = d(K, x_D) for random x with trace.
    for (int t = 0; t < 50; ++t) {
        const SymMatrix m = random_sym(3, rng, 2.0);
        CHECK(k3.distance(m) == doctest::Approx(k3.project_deviatoric(m.deviatoric()).distance));
    }
}

TEST_CASE("Hill ellipsoid projection agrees with probes, radii from eigenvalues") {
    std::vector<double> b(25, 0.0);
    const double bvals[5] = {1.0, 2.0, 3.0, 4.0, 5.0};
    for (int i = 0; i < 5; ++i) b[(size_t)(i * 5 + i)] = bvals[i];
    const auto hill = YieldSurface::hill(3, b);
    CHECK(hill.inner_radius() == doctest::Approx(1.0 / std::sqrt(5.0)));
    CHECK(hill.outer_radius() == doctest::Approx(1.0));

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> rad(0.0, 1.0);
    for (int t = 0; t < 40; ++t) {
        const SymMatrix x = random_unit_deviatoric(3, rng()) * 3.0;
        const auto pr = hill.project_deviatoric(x);
        CHECK(std::abs((x - pr.point).norm() - pr.distance) <= 1e-12 * (1.0 + x.norm()));
        for (int q = 0; q < 64; ++q) {
            const SymMatrix dir = random_unit_deviatoric(3, rng());
            const SymMatrix probe = dir * (rad(rng) * hill.boundary_radius(dir));
            CHECK((x - probe).norm() >= pr.distance - 1e-10);
        }
    }
}

TEST_CASE("Hosford p=2 equals the Hill ellipsoid B = n I") {
    std::vector<double> b(25, 0.0);
    for (int i = 0; i < 5; ++i) b[(size_t)(i * 5 + i)] = 3.0;
    const auto hill = YieldSurface::hill(3, b);
    const auto hos = YieldSurface::hosford(3, 2.0);
    CHECK(hos.inner_radius() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
        const SymMatrix x = random_unit_deviatoric(3, rng()) * (0.2 + 0.02 * t);
        CHECK(std::abs(hill.project_deviatoric(x).distance - hos.project_deviatoric(x).distance) <=
              1e-8);
    }
}

TEST_CASE("Hosford projection against the boundary-scan oracle") {
    const auto hos = YieldSurface::hosford(3, 4.0);
    const SymMatrix x = SymMatrix::diag({1.5, 0.0, -1.5});
    const auto pr = hos.project(x);
    const auto q = oracles::hosford_project_oracle({1.5, 0.0, -1.5}, 4.0);
    const SymMatrix qm = SymMatrix::diag({q[0], q[1], q[2]});
    CHECK((pr.point - qm).norm() <= 1e-6);
    CHECK(pr.distance == doctest::Approx((x - qm).norm()).epsilon(1e-6));

    // For p = 4, n = 3 the gap sum satisfies sum |g|^4 = (sum g^2)^2 / 2 on
    // zero-sum triples, so the set is the ball of radius 4.5^(-1/4).
    const double r = std::pow(4.5, -0.25);
    CHECK(hos.inner_radius() == doctest::Approx(r).epsilon(1e-10));
    CHECK(hos.outer_radius() == doctest::Approx(r).epsilon(1e-10));
    CHECK(pr.distance == doctest::Approx(x.norm() - r).epsilon(1e-9));

    const auto hos8 = YieldSurface::hosford(3, 8.0);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> rad(0.0, 1.0);
    for (int t = 0; t < 25; ++t) {
        const SymMatrix y = random_unit_deviatoric(3, rng()) * 2.5;
        const auto pry = hos8.project_deviatoric(y);
        for (int qi = 0; qi < 64; ++qi) {
            const SymMatrix dir = random_unit_deviatoric(3, rng());
            const SymMatrix probe = dir * (rad(rng) * hos8.boundary_radius(dir));
            CHECK((y - probe).norm() >= pry.distance - 1e-10);
        }
    }
}

TEST_CASE("Hosford support against dense boundary sampling") {
    const auto hos = YieldSurface::hosford(3, 4.0);
    const double s2 = std::sqrt(2.0);
    const SymMatrix q = SymMatrix::diag({1.0 / s2, 0.0, -1.0 / s2});
    const double h = hos.support(q);
    const double href = oracles::hosford_support_oracle({1.0 / s2, 0.0, -1.0 / s2}, 4.0, 100000);
    CHECK(h == doctest::Approx(href).epsilon(1e-4));
    CHECK(h >= href - 1e-12);  // dense sampling can only undershoot

    std::mt19937_64 rng(41);
    for (int t = 0; t < 50; ++t) {
        const SymMatrix dir = random_unit_deviatoric(3, rng());
        const double hq = hos.support(dir);
        CHECK(hq >= hos.inner_radius() - 1e-9);
        CHECK(hq <= hos.outer_radius() + 1e-9);
        CHECK(hos.support(dir * 2.5) == doctest::Approx(2.5 * hq).epsilon(1e-10));
    }
}

TEST_CASE("projection differential: ball closed form and normal annihilation") {
    const auto ball = YieldSurface::vonmises(3, 1.0);
    const SymMatrix xhat = random_unit_deviatoric(3, 5);
    const SymMatrix x = xhat * 2.0;
    SymMatrix v = random_unit_deviatoric(3, 6);
    v -= dot(v, xhat) * xhat;
    v *= 1.0 / v.norm();
    // D Pi of the unit ball at |x| = 2 is (I - xhat xhat)/2 on tangents.
    CHECK(ball.projection_differential(x, v) == doctest::Approx(0.5).epsilon(1e-5));

    const auto pr = ball.project_deviatoric(x);
    SymMatrix nu = x - pr.point;
    nu *= 1.0 / nu.norm();
    CHECK(std::abs(ball.projection_differential(x, nu)) <= 1e-6);

    CHECK_THROWS_AS(ball.projection_differential(xhat * 1.0, v), DegenerateInput);
}

TEST_CASE("projection differential bounded by the curvature estimate") {
    const auto hos = YieldSurface::hosford(3, 3.0);
    const double c_k = hos.estimate_curvature(2000, 12345).value();
    CHECK(c_k > 0);
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> rad(1.3, 3.0);
    for (int t = 0; t < 30; ++t) {
        const SymMatrix x = random_unit_deviatoric(3, rng()) * rad(rng);
        if (hos.distance(x.deviatoric()) <= 1e-3) continue;
        const SymMatrix v = random_unit_deviatoric(3, rng());
        const double quad = hos.projection_differential(x, v);
        const double bound = dot(v, v) / (1.0 + c_k * hos.project_deviatoric(x).distance);
        CHECK(quad <= bound + 1e-3);
    }
}

TEST_CASE("curvature estimates: sphere, ellipsoid, Hosford family") {
    const auto ball = YieldSurface::vonmises(3, 2.0);
    CHECK(ball.estimate_curvature(500, 1).value() == doctest::Approx(0.5).epsilon(1e-4));

    std::vector<double> b(25, 0.0);
    const double bvals[5] = {2.0, 2.0, 2.0, 2.0, 8.0};
    for (int i = 0; i < 5; ++i) b[(size_t)(i * 5 + i)] = bvals[i];
    const auto hill = YieldSurface::hill(3, b);
    // Min curvature of the ellipsoid (Bx.x = 1): b_min / sqrt(b_max).
    CHECK(hill.estimate_curvature(4000, 2).value() ==
          doctest::Approx(2.0 / std::sqrt(8.0)).epsilon(1e-3));

    for (double p : {2.0, 3.0, 4.0, 8.0}) {
        const auto hos = YieldSurface::hosford(3, p);
        const double c = hos.estimate_curvature(2000, 3).value();
        CHECK(c > 0.0);
        if (p == 2.0) CHECK(c == doctest::Approx(std::sqrt(3.0)).epsilon(1e-3));
        if (p == 4.0) CHECK(c == doctest::Approx(std::pow(4.5, 0.25)).epsilon(2e-3));
    }

    CHECK(!YieldSurface::interval(-1, 1).estimate_curvature(10, 4).has_value());
}

TEST_CASE("Hosford defining function is strictly convex along random lines") {
    std::mt19937_64 rng(61);
    for (double p : {2.0, 3.0, 4.0, 8.0}) {
        const auto hos = YieldSurface::hosford(3, p);
        for (int t = 0; t < 60; ++t) {
            const SymMatrix sigma = random_unit_deviatoric(3, rng()) * (0.3 + 0.05 * t);
            const SymMatrix xi = random_unit_deviatoric(3, rng());
            const double h = 1e-3;
            const double second = (hos.defining_value(sigma + h * xi) -
                                   2.0 * hos.defining_value(sigma) +
                                   hos.defining_value(sigma - h * xi)) /
                                  (h * h);
            CHECK(second > 0.0);
        }
    }
}

TEST_CASE("geometry axioms hold for every surface kind") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> rad(0.0, 3.0);

    std::vector<double> b(25, 0.0);
    const double bvals[5] = {1.0, 1.5, 2.0, 3.0, 4.5};
    for (int i = 0; i < 5; ++i) b[(size_t)(i * 5 + i)] = bvals[i];
    const std::vector<YieldSurface> surfaces = {
        YieldSurface::vonmises(2, 1.0), YieldSurface::vonmises(3, 1.3),
        YieldSurface::hill(3, b), YieldSurface::hosford(3, 4.0), YieldSurface::hosford(3, 8.0)};

    for (const auto& surf : surfaces) {
        const int n = surf.dim();
        for (int t = 0; t < 100; ++t) {
            const SymMatrix x = random_unit_deviatoric(n, rng()) * rad(rng);
            const SymMatrix y = random_unit_deviatoric(n, rng()) * rad(rng);
            const auto px = surf.project_deviatoric(x);
            const auto py = surf.project_deviatoric(y);

            CHECK((surf.project_deviatoric(px.point).point - px.point).norm() <=
                  1e-12 * (1 + x.norm()));
            CHECK((px.point - py.point).norm() <= (x - y).norm() + 1e-12);
            if (!px.inside) {
                const double lhs = dot(x - px.point, x);
                CHECK(lhs >= px.distance * px.distance - 1e-10);
                CHECK(lhs >= surf.inner_radius() * px.distance - 1e-10);
                SymMatrix nu = x - px.point;
                nu *= 1.0 / nu.norm();
                for (double s : {0.5, 1.7, 3.0}) {
                    const auto pray = surf.project_deviatoric(px.point + s * nu);
                    CHECK((pray.point - px.point).norm() <= 1e-9);
                }
            }
            const SymMatrix v = random_unit_deviatoric(n, rng());
            const double h = 1e-5 * (1.0 + x.norm());
            const double dp = surf.project_deviatoric(x + h * v).distance;
            const double dm = surf.project_deviatoric(x - h * v).distance;
            const double fd = (dp * dp - dm * dm) / (2.0 * h);
            const double an = 2.0 * dot(x - px.point, v);
            CHECK(std::abs(fd - an) <= 1e-6 * (1.0 + std::abs(an)));
        }
    }

    const auto iv = YieldSurface::interval(-1.0, 1.0);
    std::uniform_real_distribution<double> span(-4.0, 4.0);
    for (int t = 0; t < 200; ++t) {
        const double x = span(rng), y = span(rng);
        const auto px = iv.project(x);
        CHECK(iv.project(px.point).point == doctest::Approx(px.point));
        CHECK(std::abs(px.point - iv.project(y).point) <= std::abs(x - y) + 1e-15);
        if (!px.inside) {
            CHECK((x - px.point) * x >= px.distance * px.distance - 1e-12);
            CHECK((x - px.point) * x >= iv.inner_radius() * px.distance - 1e-12);
        }
        const double h = 1e-6 * (1.0 + std::abs(x));
        const double fd = (iv.distance(x + h) * iv.distance(x + h) -
                           iv.distance(x - h) * iv.distance(x - h)) / (2.0 * h);
        CHECK(std::abs(fd - 2.0 * (x - px.point)) <= 1e-6 * (1.0 + std::abs(x)));
    }
}

TEST_CASE("Hosford p=8 radii are distinct and bracket the boundary") {
    const auto hos = YieldSurface::hosford(3, 8.0);
    CHECK(hos.inner_radius() < hos.outer_radius());
    for (int i = 0; i < 2000; ++i) {
        const auto b = oracles::hosford_boundary_point(2.0 * std::numbers::pi * i / 2000.0, 8.0);
        const double r = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
        CHECK(r >= hos.inner_radius() - 1e-9);
        CHECK(r <= hos.outer_radius() + 1e-9);
    }
}
