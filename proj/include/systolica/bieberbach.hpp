#pragma once

// The four non-orientable Bieberbach group families of dimension 3, their
// flat volumes and systoles (closed forms and an independent displacement
// enumeration), and the optimal flat systolic ratios.

#include <cstdint>
#include <string>
#include <vector>

#include "systolica/geom.hpp"
#include "systolica/lattice.hpp"

namespace systolica {

enum class BType { B1, B2, B3, B4 };

std::string to_string(BType t);
BType btype_from_string(const std::string& s);

// Moduli of a marked flat metric, per type:
//   B1: |a1|, |a3|, lambda (shear of a2 along a1), |v|  (a2 = lambda a1 + v)
//   B2: |a1|, lambda, |v|, d (separation of the two glide planes)
//   B3: |a1|, |a2|, |a3| (orthogonal)
//   B4: |a1|, |a2|, dist(P, D)
struct BieberbachSpec {
    BType type;
    std::array<double, 4> m{};  // unused trailing entries are 0

    static BieberbachSpec b1(double a1, double a3, double lambda, double v);
    static BieberbachSpec b2(double a1, double lambda, double v, double d);
    static BieberbachSpec b3(double a1, double a2, double a3);
    static BieberbachSpec b4(double a1, double a2, double dist_pd);

    int moduli_count() const { return type == BType::B1 || type == BType::B2 ? 4 : 3; }
};

struct GroupPresentation {
    std::vector<AffineIsometry3> generators;
    Lattice3 lattice;                         // associated translation lattice
    std::vector<AffineIsometry3> point_reps;  // nontrivial point-group reps
};

GroupPresentation build_group(const BieberbachSpec& spec);

double flat_volume(const BieberbachSpec& spec);

// Per-type closed-form systole (the 2-dimensional pieces go through
// coset_shortest).
double flat_systole_closed(const BieberbachSpec& spec);

// Independent route: minimum displacement over all nontrivial group
// elements written as point-group representative times lattice
// translation, the lattice part enumerated through projected lattices.
double flat_systole_enum(const BieberbachSpec& spec);

inline double flat_ratio(const BieberbachSpec& spec) {
    double s = flat_systole_closed(spec);
    return s * s * s / flat_volume(spec);
}

struct FlatOptimum {
    double ratio;
    BieberbachSpec argmax;
};

// Closed-form optimal flat systolic ratio per type with its optimizing
// (normalized) moduli.
FlatOptimum optimal_flat_ratio(BType type);

struct ScanResult {
    BieberbachSpec best;
    double ratio;
    std::vector<std::array<double, 5>> grid_rows;  // moduli..., ratio (first round)
};

// Grid scan with local refinement over normalized moduli. Deterministic for
// any thread count.
ScanResult scan_flat(BType type, int grid_n = 64, int refine_rounds = 4,
                     bool record_grid = false);

// Seeded random spec draw for the enum-vs-closed property battery.
BieberbachSpec random_spec(BType type, std::uint64_t& state);

}  // namespace systolica
