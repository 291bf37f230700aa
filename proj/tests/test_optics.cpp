#include <doctest.h>

#include <cmath>

#include "vcselcov/errors.hpp"
#include "vcselcov/optics.hpp"
#include "vcselcov/scene.hpp"

using namespace vcselcov;

TEST_CASE("angular_deviation: parallel, 45 degree and orthogonal geometry") {
    CHECK(angular_deviation({0, 0, -1}, {0, 0, -3}) == doctest::Approx(0.0));
    CHECK(angular_deviation({0, 0, -1}, {3, 0, -3}) == doctest::Approx(kPi / 4));
    CHECK(angular_deviation({0, 0, -1}, {1, 0, 0}) == doctest::Approx(kPi / 2));
    CHECK_THROWS_AS(angular_deviation({0, 0, -1}, {0, 0, 0}), GeometryError);
}

TEST_CASE("angular_deviation: clamped at collinearity") {
    // A vector that reconstructs cos(angle) slightly above 1 must not produce NaN.
    const Vec3 d = Vec3{0.1, 0.2, -0.9}.normalized();
    const double ang = angular_deviation(d, d * 17.0);
    CHECK(std::isfinite(ang));
    CHECK(ang == doctest::Approx(0.0));
}

TEST_CASE("irradiance: on-axis value and angular decay") {
    const double theta = deg_to_rad(10.0);
    const double on_axis = irradiance(0.01, theta, 3.0, 0.0);
    CHECK(on_axis == doctest::Approx(0.023222).epsilon(1e-4));
    // theta_diff equal to the divergence forces the e^-2 factor.
    CHECK(irradiance(0.01, theta, 3.0, theta) ==
          doctest::Approx(on_axis * std::exp(-2.0)).epsilon(1e-12));
    CHECK(irradiance(0.0, theta, 3.0, 0.1) == 0.0);
    CHECK_THROWS_AS(irradiance(0.01, theta, 0.0, 0.0), GeometryError);
    CHECK_THROWS_AS(irradiance(0.01, 0.0, 3.0, 0.0), GeometryError);
}

TEST_CASE("irradiance: on-axis value decreases in divergence and distance") {
    double prev = irradiance(0.01, deg_to_rad(2.0), 3.0, 0.0);
    for (int deg = 3; deg <= 30; ++deg) {
        const double cur = irradiance(0.01, deg_to_rad(deg), 3.0, 0.0);
        CHECK(cur < prev);
        prev = cur;
    }
    prev = irradiance(0.01, deg_to_rad(10.0), 0.5, 0.0);
    for (double d = 1.0; d <= 8.0; d += 0.5) {
        const double cur = irradiance(0.01, deg_to_rad(10.0), d, 0.0);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("concentrator_gain: Table-1 front end and limit cases") {
    const double s75 = std::sin(deg_to_rad(75.0));
    CHECK(concentrator_gain(1.5, deg_to_rad(75.0)) ==
          doctest::Approx(2.25 / (s75 * s75)).epsilon(1e-12));  // = 2.411543
    CHECK(concentrator_gain(1.0, deg_to_rad(90.0)) == doctest::Approx(1.0));
    CHECK(concentrator_gain(1.5, deg_to_rad(30.0)) == doctest::Approx(9.0));
    CHECK_THROWS_AS(concentrator_gain(1.5, 0.0), GeometryError);
}

TEST_CASE("received_power: product form and field-of-view gate") {
    const FrontEnd front{1e-4, deg_to_rad(75.0), 2.4107};
    CHECK(received_power(0.023222, front, 0.0) == doctest::Approx(5.5983e-6).epsilon(1e-4));
    CHECK(received_power(0.023222, front, deg_to_rad(80.0)) == 0.0);
    // Boundary inclusive at the field of view, strictly zero just past it.
    const double eps = 1e-9;
    CHECK(received_power(1.0, front, front.fov) > 0.0);
    CHECK(received_power(1.0, front, front.fov - eps) > 0.0);
    CHECK(received_power(1.0, front, front.fov + eps) == 0.0);
}

TEST_CASE("received_power: gate wins regardless of irradiance, scaling linear in power") {
    const FrontEnd front{1e-4, deg_to_rad(75.0), 2.4107};
    for (double irr : {1e-9, 1.0, 1e9}) {
        CHECK(received_power(irr, front, deg_to_rad(76.0)) == 0.0);
        CHECK(received_power(2.0 * irr, front, deg_to_rad(40.0)) ==
              doctest::Approx(2.0 * received_power(irr, front, deg_to_rad(40.0)))
                  .epsilon(1e-12));
    }
}

TEST_CASE("irradiance integrates back to the emitted power over a plane") {
    // Single vertical beam, 5 degree half-angle, plane 3 m below. The integral
    // of irradiance over the plane must recover p_t within 2 percent.
    const double theta = deg_to_rad(5.0);
    const double p_t = 0.01;
    const double step = 0.02;
    double integral = 0.0;
    for (double x = -2.0; x <= 2.0 + 1e-12; x += step) {
        for (double y = -2.0; y <= 2.0 + 1e-12; y += step) {
            const double d = std::sqrt(x * x + y * y + 9.0);
            const double theta_diff = std::acos(std::min(1.0, 3.0 / d));
            integral += irradiance(p_t, theta, d, theta_diff) * step * step;
        }
    }
    CHECK(integral == doctest::Approx(p_t).epsilon(0.02));
}
