#pragma once

// Closed-form geometry of the singular piecewise-spherical cylinder, torus
// and Klein bottle built from spherical zones |phi| <= pi/4 glued along
// their boundary circles: point-to-image distances, isometry displacements
// and the transcendental optimum used by the type-B2 suspension.

#include <numbers>

namespace systolica::bavard {

inline constexpr double kPatchLatitude = std::numbers::pi / 4;

// Reduce an angle to [0, pi] using the alpha <-> 2 pi - alpha symmetry.
double canonical_angle(double alpha);

// Distance on the singular cylinder between a point at latitude beta
// (0 <= beta <= pi/4) and its image under the rotation by alpha
// (0 <= alpha <= pi). Two regimes: a single great-circle arc while it fits
// inside the patch, otherwise two arcs tangent to the singular line joined
// by a run along the line; the regimes meet at beta = arctan(cos(alpha/2)).
double dist_rotation(double beta, double alpha);

// Constant value of dist(p, T_delta(p)) on the singular torus, where
// T_delta is the screw motion: one-patch axial shift composed with the
// rotation by delta. 0 <= delta <= pi.
double dist_T(double delta);

// Angle delta whose invariant geodesic meets the singular lines at angle
// beta, from tan(delta) = -2 sqrt(2) cot(beta) / (cot^2(beta) - 2); the
// branch in (0, pi/2] is returned, with delta = pi/2 at the singular
// denominator cot^2(beta) = 2.
double delta_from_beta(double beta);

// Displacement of the rotation r_alpha on the singular Klein bottle:
// min(alpha / sqrt 2, pi - alpha).
double disp_rotation(double alpha);

// Displacement of T_delta on the singular Klein bottle:
// min((pi - delta) / sqrt 2, arccos((cos delta - 1) / 2)).
double disp_T(double delta);

struct Delta0Result {
    double delta0;  // root of (cos d - 1)/2 = cos((pi - d)/sqrt 2) in (0, pi)
    double d0;      // sqrt(pi^2 - disp_T(delta0)^2), about 2.641
};

// Bisection solve of the branch-crossing equation maximizing disp_T, and
// the induced minimal suspension translation length.
Delta0Result solve_delta0();

}  // namespace systolica::bavard
