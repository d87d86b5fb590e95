#pragma once

// Singular 3-manifolds built as metric suspensions of the singular Klein
// bottle: quotient of (K, b) x R by (p, t) -> (iso(p), t + d). Systoles,
// volumes, ratios, per-type optimization and the flat-vs-singular
// comparison table.

#include <string>
#include <vector>

#include "systolica/bieberbach.hpp"

namespace systolica::suspension {

enum class IsoKind { Rotation, ScrewT, S1, S2 };

struct KleinIsometry {
    IsoKind kind = IsoKind::Rotation;
    double angle = 0;  // alpha for Rotation, delta for ScrewT, unused otherwise
};

struct SuspensionSpec {
    KleinIsometry base_iso;
    double d = 1;  // translation length on the R factor, > 0

    static SuspensionSpec rotation(double alpha, double d);
    static SuspensionSpec screw(double delta, double d);
    static SuspensionSpec s1(double d);
    static SuspensionSpec s2(double d);
};

// Base area of (K, b) is 2 pi sqrt(2); the suspension metric is a product.
double suspension_volume(const SuspensionSpec& spec);

struct SystoleBreakdown {
    double value = 0;
    // False when a screw-power lower bound n*d (n >= 2) falls below the
    // reported value, so the minimum might actually be smaller.
    bool conclusive = true;
    std::vector<double> power_terms;  // term for n = 1, 2, ...
};

SystoleBreakdown suspension_systole_detail(const SuspensionSpec& spec);
double suspension_systole(const SuspensionSpec& spec);

double singular_ratio(const SuspensionSpec& spec);  // sys^3 / vol

struct SuspensionOptimum {
    SuspensionSpec spec;
    double ratio;
};

// Closed-form optimal suspension per Bieberbach type.
SuspensionOptimum optimize_suspension(BType type);

// Grid scan over the suspension parameters (sanity: never beats the
// closed-form optimum). Deterministic for any thread count.
SuspensionOptimum scan_suspension(BType type, int grid_n = 64, int refine_rounds = 3);

struct RatioReport {
    BType type;
    std::string flat_exact;      // exact expression for the flat optimum
    double flat_value;
    std::string singular_exact;  // exact expression for the suspension optimum
    double singular_value;
    BieberbachSpec flat_argmax;
    SuspensionSpec singular_argmax;
};

// All four rows of the flat-vs-singular comparison; asserts
// singular > flat for each row.
std::vector<RatioReport> table_report();

}  // namespace systolica::suspension
