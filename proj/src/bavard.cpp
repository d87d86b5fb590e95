#include "systolica/bavard.hpp"

#include <cmath>
#include <stdexcept>

namespace systolica::bavard {

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

double clamped_acos(double x) {
    return std::acos(std::max(-1.0, std::min(1.0, x)));
}
}  // namespace

double canonical_angle(double alpha) {
    alpha = std::fmod(alpha, 2.0 * kPi);
    if (alpha < 0) alpha += 2.0 * kPi;
    return alpha > kPi ? 2.0 * kPi - alpha : alpha;
}

double dist_rotation(double beta, double alpha) {
    if (!(beta >= 0.0 && beta <= kPatchLatitude + 1e-12))
        throw std::domain_error("dist_rotation: beta outside [0, pi/4]");
    if (!(alpha >= 0.0 && alpha <= kPi + 1e-12))
        throw std::domain_error("dist_rotation: alpha outside [0, pi]");
    beta = std::min(beta, kPatchLatitude);
    alpha = std::min(alpha, kPi);
    const double tb = std::tan(beta);
    if (tb >= std::cos(alpha / 2.0)) {
        // Arc tangent to the singular line, a run along the line, and the
        // mirror-image arc back down.
        const double psi = clamped_acos(tb);
        return alpha / kSqrt2 - kSqrt2 * psi +
               2.0 * clamped_acos(kSqrt2 * std::sin(beta));
    }
    const double sb = std::sin(beta), cb = std::cos(beta);
    return clamped_acos(sb * sb + cb * cb * std::cos(alpha));
}

double dist_T(double delta) {
    if (!(delta >= 0.0 && delta <= kPi + 1e-12))
        throw std::domain_error("dist_T: delta outside [0, pi]");
    return clamped_acos((std::cos(delta) - 1.0) / 2.0);
}

double delta_from_beta(double beta) {
    if (!(beta > 0.0 && beta <= kPatchLatitude + 1e-12))
        throw std::domain_error("delta_from_beta: beta outside (0, pi/4]");
    const double t = 1.0 / std::tan(beta);
    const double den = t * t - 2.0;
    if (std::abs(den) < 1e-12) return kPi / 2.0;
    return std::atan2(2.0 * kSqrt2 * t, std::abs(den));
}

double disp_rotation(double alpha) {
    alpha = canonical_angle(alpha);
    return std::min(alpha / kSqrt2, kPi - alpha);
}

double disp_T(double delta) {
    if (!(delta >= 0.0 && delta <= kPi + 1e-12))
        throw std::domain_error("disp_T: delta outside [0, pi]");
    delta = std::min(delta, kPi);
    return std::min((kPi - delta) / kSqrt2, dist_T(delta));
}

Delta0Result solve_delta0() {
    // (cos d - 1)/2 - cos((pi - d)/sqrt 2): positive near 0, negative near 2.
    auto f = [](double d) {
        return (std::cos(d) - 1.0) / 2.0 - std::cos((kPi - d) / kSqrt2);
    };
    double lo = 0.05, hi = 2.5;
    if (!(f(lo) > 0.0 && f(hi) < 0.0))
        throw std::logic_error("solve_delta0: bracket failed");
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    Delta0Result r;
    r.delta0 = 0.5 * (lo + hi);
    const double disp = (kPi - r.delta0) / kSqrt2;
    r.d0 = std::sqrt(kPi * kPi - disp * disp);
    return r;
}

}  // namespace systolica::bavard
