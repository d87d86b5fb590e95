#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "systolica/bavard.hpp"

using namespace systolica::bavard;

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);
}  // namespace

TEST_CASE("canonical angle folding") {
    CHECK(canonical_angle(0.3) == doctest::Approx(0.3));
    CHECK(canonical_angle(2 * kPi - 0.3) == doctest::Approx(0.3));
    CHECK(canonical_angle(-0.3) == doctest::Approx(0.3));
    CHECK(canonical_angle(2 * kPi + 1.0) == doctest::Approx(1.0));
    CHECK(canonical_angle(kPi) == doctest::Approx(kPi));
}

TEST_CASE("dist_rotation: great-circle regime") {
    // On the equator the rotation acts as arc length.
    CHECK(dist_rotation(0.0, 0.3) == doctest::Approx(0.3));
    CHECK(dist_rotation(0.0, 1.0) == doctest::Approx(1.0));
    // Small alpha at moderate latitude: plain spherical law of cosines.
    double beta = 0.3, alpha = 0.4;
    double expected = std::acos(std::sin(beta) * std::sin(beta) +
                                std::cos(beta) * std::cos(beta) * std::cos(alpha));
    CHECK(dist_rotation(beta, alpha) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("dist_rotation: singular-line regime and continuity") {
    // On the singular line itself the path runs along the line.
    CHECK(dist_rotation(kPatchLatitude, 1.2) == doctest::Approx(1.2 / kSqrt2));
    // The two regimes agree at the switching latitude.
    for (double alpha : {0.8, 1.7, 2.6}) {
        double bstar = std::atan(std::cos(alpha / 2));
        double below = dist_rotation(bstar - 1e-9, alpha);
        double above = dist_rotation(bstar + 1e-9, alpha);
        CHECK(std::abs(below - above) < 1e-7);
    }
    // Frozen reference value (independent shortest-path computation).
    CHECK(dist_rotation(0.5, 2.0) == doctest::Approx(1.6615959314).epsilon(1e-9));
}

TEST_CASE("dist_rotation domain") {
    CHECK_THROWS_AS(dist_rotation(-0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(dist_rotation(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(dist_rotation(0.2, 4.0), std::domain_error);
}

TEST_CASE("dist_T closed form") {
    CHECK(dist_T(0.0) == doctest::Approx(kPi / 2));
    CHECK(dist_T(kPi) == doctest::Approx(kPi));
    // Monotone increasing in delta.
    CHECK(dist_T(1.0) < dist_T(2.0));
    CHECK_THROWS_AS(dist_T(-0.1), std::domain_error);
}

TEST_CASE("delta_from_beta branch") {
    // Grazing geodesics: delta vanishes with beta.
    CHECK(delta_from_beta(1e-4) == doctest::Approx(2 * kSqrt2 * 1e-4).epsilon(1e-4));
    // Singular denominator cot^2 = 2.
    CHECK(delta_from_beta(std::atan(1.0 / kSqrt2)) == doctest::Approx(kPi / 2));
    // Steepest crossing at the singular line.
    CHECK(delta_from_beta(kPi / 4) == doctest::Approx(std::atan(2 * kSqrt2)));
    // Rises to pi/2 at cot^2 = 2, then falls back toward arctan(2 sqrt 2).
    CHECK(delta_from_beta(0.2) < delta_from_beta(0.5));
    CHECK(delta_from_beta(0.5) < kPi / 2);
    CHECK(delta_from_beta(0.7) > delta_from_beta(kPi / 4));
}

TEST_CASE("displacements on the Klein bottle") {
    CHECK(disp_rotation(0.0) == doctest::Approx(0.0));
    CHECK(disp_rotation(0.5) == doctest::Approx(0.5 / kSqrt2));
    CHECK(disp_rotation(3.0) == doctest::Approx(kPi - 3.0));
    CHECK(disp_rotation(2 * kPi - 0.5) == doctest::Approx(0.5 / kSqrt2));
    // The two branches cross at alpha = pi (2 - sqrt 2).
    double astar = kPi * (2.0 - kSqrt2);
    CHECK(astar / kSqrt2 == doctest::Approx(kPi - astar).epsilon(1e-12));
    CHECK(disp_rotation(astar) == doctest::Approx(kPi * (kSqrt2 - 1.0)));

    CHECK(disp_T(kPi) == doctest::Approx(0.0));
    CHECK(disp_T(0.0) == doctest::Approx(kPi / 2));  // dist_T branch binds
    CHECK(disp_T(3.0) == doctest::Approx((kPi - 3.0) / kSqrt2));
}

TEST_CASE("transcendental optimum of disp_T") {
    Delta0Result r = solve_delta0();
    CHECK(r.delta0 == doctest::Approx(0.7364116008).epsilon(1e-8));
    CHECK(r.d0 > 2.640);
    CHECK(r.d0 < 2.642);
    // Both branches of disp_T agree at the crossing.
    CHECK(std::abs((kPi - r.delta0) / kSqrt2 - dist_T(r.delta0)) < 1e-9);
    CHECK(disp_T(r.delta0) == doctest::Approx(1.7007198324).epsilon(1e-8));
    // It is the maximum of disp_T.
    for (double d : {0.1, 0.5, 0.9, 1.5, 2.5})
        CHECK(disp_T(d) <= disp_T(r.delta0) + 1e-12);
}
