#pragma once

// Brute-force geodesic oracle for the singular piecewise-spherical
// cylinder: a stack of spherical zones |phi| <= phi0 glued along their
// boundary circles, discretized into a grid graph with in-patch
// great-circle chord edges, shortest paths by Dijkstra.

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace systolica::mesh {

// Node-count guard tripped; surfaced with its own CLI exit code.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SurfacePoint {
    int patch = 0;     // zone index, 0-based from the bottom
    double theta = 0;  // azimuth in [0, 2 pi)
    double phi = 0;    // latitude within the zone, in [-phi0, phi0]
};

class SurfaceMesh {
  public:
    // Throws std::invalid_argument on a degenerate resolution (h >= pi/2),
    // ResourceLimitError when the grid would exceed 1e7 nodes.
    SurfaceMesh(double phi0, int patches, double h);

    double phi0() const { return phi0_; }
    int patches() const { return patches_; }
    double h() const { return h_; }
    int columns() const { return ncols_; }
    int rings() const { return nrings_; }
    int rings_per_patch() const { return m_; }
    std::size_t node_count() const { return static_cast<std::size_t>(nrings_) * ncols_; }
    double delta_theta() const { return dtheta_; }
    double delta_phi() const { return dphi_; }
    int stencil_width() const { return width_; }

    int node(int ring, int col) const { return ring * ncols_ + col; }
    // Latitude of a ring inside its own zone (boundary rings report the
    // zone above, except the very top).
    double ring_latitude(int ring) const;
    int nearest_node(const SurfacePoint& p) const;

    // Full Dijkstra tree from one node; read-only, safe to run
    // concurrently. Ties broken by node index.
    std::vector<double> distances_from(int source_node) const;
    double distance(const SurfacePoint& p, const SurfacePoint& q) const;

    // One node per line: patch, i (ring in patch), j (column), theta, phi.
    void dump(std::ostream& os) const;

  private:
    double chord_weight(int low_ring, int dj, int di) const;

    double phi0_, h_, dtheta_, dphi_;
    int patches_, m_, ncols_, nrings_, width_;

    struct Offset {
        int dj, di;
    };
    std::vector<Offset> offsets_;  // dj >= 1, gcd(dj, |di|) = 1
    // Per lower ring and offset; NaN marks out-of-patch or inadmissible.
    std::vector<double> up_weight_;
    // Same-ring steps di = 1..width; NaN marks a skipped multi-step chord.
    std::vector<double> ring_weight_;
};

struct VerifySample {
    char kind;           // 'r' = rotation, 't' = screw motion
    double beta;         // snapped source latitude
    double angle;        // snapped alpha (rotation) or delta (screw)
    double mesh_dist;
    double closed_form;
    double rel_err;      // (mesh - closed) / closed
};

struct VerifyReport {
    double h = 0;
    int samples = 0;
    double max_rel_err = 0;
    double min_margin = 0;  // min over samples of mesh - closed
    bool no_undershoot = false;
    std::vector<VerifySample> rows;
};

// Compare Dijkstra distances against the closed forms on random rotation
// and screw-motion samples; the closed forms are evaluated at the
// node-snapped parameters. Sources are grouped so a handful of Dijkstra
// trees covers all samples.
VerifyReport verify_closed_forms(double h, int samples, std::uint64_t seed = 42,
                                 int patches = 4);

}  // namespace systolica::mesh
