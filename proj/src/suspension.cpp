#include "systolica/suspension.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "systolica/bavard.hpp"

namespace systolica::suspension {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

void require_d(double d) {
    if (!(d > 0.0) || !std::isfinite(d))
        throw std::invalid_argument("SuspensionSpec: d must be positive");
}

double base_area() { return 2.0 * kPi * kSqrt2; }

}  // namespace

SuspensionSpec SuspensionSpec::rotation(double alpha, double d) {
    require_d(d);
    return {{IsoKind::Rotation, alpha}, d};
}
SuspensionSpec SuspensionSpec::screw(double delta, double d) {
    require_d(d);
    return {{IsoKind::ScrewT, delta}, d};
}
SuspensionSpec SuspensionSpec::s1(double d) {
    require_d(d);
    return {{IsoKind::S1, 0.0}, d};
}
SuspensionSpec SuspensionSpec::s2(double d) {
    require_d(d);
    return {{IsoKind::S2, 0.0}, d};
}

double suspension_volume(const SuspensionSpec& spec) {
    require_d(spec.d);
    return base_area() * spec.d;
}

SystoleBreakdown suspension_systole_detail(const SuspensionSpec& spec) {
    require_d(spec.d);
    const double d = spec.d;
    const int nmax = static_cast<int>(std::ceil(kPi / d)) + 1;

    SystoleBreakdown out;
    out.value = kPi;  // systole of the base (K, b)
    for (int n = 1; n <= nmax; ++n) {
        double term;
        switch (spec.base_iso.kind) {
            case IsoKind::Rotation:
                term = std::hypot(
                    bavard::disp_rotation(n * spec.base_iso.angle), n * d);
                break;
            case IsoKind::ScrewT:
                // Exact at n = 1; powers mix with the sigma-quotient, so
                // fall back to the lower bound n d alone.
                term = n == 1 ? std::hypot(bavard::disp_T(bavard::canonical_angle(
                                               spec.base_iso.angle)),
                                           d)
                              : n * d;
                break;
            case IsoKind::S1:
            case IsoKind::S2:
                // Fixed points on the base: displacement of every power
                // reduces to the vertical translation part.
                term = n * d;
                break;
        }
        out.power_terms.push_back(term);
        out.value = std::min(out.value, term);
    }
    if (spec.base_iso.kind == IsoKind::ScrewT && nmax >= 2)
        out.conclusive = 2.0 * d >= std::min(kPi, out.power_terms[0]) - 1e-12;
    return out;
}

double suspension_systole(const SuspensionSpec& spec) {
    return suspension_systole_detail(spec).value;
}

double singular_ratio(const SuspensionSpec& spec) {
    double s = suspension_systole(spec);
    return s * s * s / suspension_volume(spec);
}

SuspensionOptimum optimize_suspension(BType type) {
    switch (type) {
        case BType::B1: {
            // Crossing of the two displacement branches: alpha/sqrt 2 =
            // pi - alpha, then d set so the n = 1 loop has length pi.
            const double alpha = kPi * (2.0 - kSqrt2);
            const double d = kPi * std::sqrt(2.0 * kSqrt2 - 2.0);
            return {SuspensionSpec::rotation(alpha, d),
                    kPi / (4.0 * std::sqrt(kSqrt2 - 1.0))};
        }
        case BType::B2: {
            const auto r = bavard::solve_delta0();
            return {SuspensionSpec::screw(r.delta0, r.d0),
                    kPi * kPi / (2.0 * kSqrt2 * r.d0)};
        }
        case BType::B3:
            return {SuspensionSpec::s1(kPi), kPi / (2.0 * kSqrt2)};
        case BType::B4:
            return {SuspensionSpec::s2(kPi), kPi / (2.0 * kSqrt2)};
    }
    throw std::logic_error("unreachable");
}

SuspensionOptimum scan_suspension(BType type, int grid_n, int refine_rounds) {
    const bool has_angle = type == BType::B1 || type == BType::B2;
    double lo[2] = {0.05, 0.3};
    double hi[2] = {kPi - 0.05, 1.1 * kPi};
    if (!has_angle) {
        lo[0] = hi[0] = 0.0;
    }
    auto make = [&](double angle, double d) {
        switch (type) {
            case BType::B1: return SuspensionSpec::rotation(angle, d);
            case BType::B2: return SuspensionSpec::screw(angle, d);
            case BType::B3: return SuspensionSpec::s1(d);
            case BType::B4: return SuspensionSpec::s2(d);
        }
        throw std::logic_error("unreachable");
    };

    double best_ratio = -1.0, best_angle = lo[0], best_d = lo[1];
    double clo[2] = {lo[0], lo[1]}, chi[2] = {hi[0], hi[1]};
    for (int round = 0; round <= refine_rounds; ++round) {
        int na = has_angle ? grid_n : 1;
        for (int i = 0; i < na; ++i) {
            double angle = na == 1 ? 0.0
                                   : clo[0] + (chi[0] - clo[0]) * i / (na - 1);
            for (int j = 0; j < grid_n; ++j) {
                double d = clo[1] + (chi[1] - clo[1]) * j / (grid_n - 1);
                double r = singular_ratio(make(angle, d));
                if (r > best_ratio) {
                    best_ratio = r;
                    best_angle = angle;
                    best_d = d;
                }
            }
        }
        for (int k = 0; k < 2; ++k) {
            double c = k == 0 ? best_angle : best_d;
            double half = (chi[k] - clo[k]) / 8.0;
            clo[k] = std::max(lo[k], c - half);
            chi[k] = std::min(hi[k], c + half);
        }
    }
    return {make(best_angle, best_d), best_ratio};
}

std::vector<RatioReport> table_report() {
    std::vector<RatioReport> rows;
    for (BType t : {BType::B1, BType::B2, BType::B3, BType::B4}) {
        FlatOptimum flat = optimal_flat_ratio(t);
        SuspensionOptimum sing = optimize_suspension(t);
        RatioReport row{t, "", flat.ratio, "", sing.ratio, flat.argmax, sing.spec};
        switch (t) {
            case BType::B1:
                row.flat_exact = "2/sqrt(3)";
                row.singular_exact = "pi/(4*sqrt(sqrt(2)-1))";
                break;
            case BType::B2:
                row.flat_exact = "8/sqrt(39)";
                row.singular_exact = "pi^2/(2*sqrt(2)*d0)";
                break;
            case BType::B3:
            case BType::B4:
                row.flat_exact = "1";
                row.singular_exact = "pi/(2*sqrt(2))";
                break;
        }
        if (!(row.singular_value > row.flat_value))
            throw std::logic_error("table_report: singular ratio not above flat");
        rows.push_back(row);
    }
    return rows;
}

}  // namespace systolica::suspension
