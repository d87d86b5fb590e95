#include "systolica/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <queue>
#include <thread>

#include "systolica/bavard.hpp"
#include "systolica/geom.hpp"
#include "systolica/rng.hpp"
#include "systolica/threads.hpp"

namespace systolica::mesh {

namespace {

constexpr double kPi = std::numbers::pi;
const double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kInf = std::numeric_limits<double>::infinity();

double clamped_acos(double x) {
    return std::acos(std::max(-1.0, std::min(1.0, x)));
}

int round_up_even(double x) {
    int n = static_cast<int>(std::lround(x));
    return n + (n & 1);
}

// Does the minor great-circle arc between latitudes phi1, phi2 (azimuth gap
// dlon) stay inside |phi| <= phi0? The extreme latitudes of the great
// circle sit where it is farthest from the equator; reject if such an
// apex lies strictly between the endpoints and outside the band.
bool arc_in_band(double phi1, double phi2, double dlon, double phi0) {
    if (dlon == 0.0) return true;  // meridian arc, endpoints bound it
    Vec3 p{std::cos(phi1), 0.0, std::sin(phi1)};
    Vec3 q{std::cos(phi2) * std::cos(dlon), std::cos(phi2) * std::sin(dlon),
           std::sin(phi2)};
    Vec3 n = cross(p, q);
    double nn = norm(n);
    if (nn < 1e-14) return true;
    n = (1.0 / nn) * n;
    Vec3 apex{-n[2] * n[0], -n[2] * n[1], 1.0 - n[2] * n[2]};
    double an = norm(apex);
    if (an < 1e-14) return true;  // arc runs along the equator
    apex = (1.0 / an) * apex;
    for (int sgn = 0; sgn < 2; ++sgn) {
        Vec3 c = sgn ? -apex : apex;
        bool between = dot(cross(p, c), n) > 1e-15 && dot(cross(c, q), n) > 1e-15;
        if (between && std::abs(std::asin(std::clamp(c[2], -1.0, 1.0))) >
                           phi0 + 1e-9)
            return false;
    }
    return true;
}

double sphere_dist(double phi1, double phi2, double dlon) {
    return clamped_acos(std::sin(phi1) * std::sin(phi2) +
                        std::cos(phi1) * std::cos(phi2) * std::cos(dlon));
}

}  // namespace

SurfaceMesh::SurfaceMesh(double phi0, int patches, double h)
    : phi0_(phi0), h_(h), patches_(patches) {
    if (!(phi0 > 0.0 && phi0 < kPi / 2.0))
        throw std::invalid_argument("SurfaceMesh: phi0 outside (0, pi/2)");
    if (patches < 3) throw std::invalid_argument("SurfaceMesh: patches < 3");
    if (!(h > 0.0) || h >= kPi / 2.0)
        throw std::invalid_argument("SurfaceMesh: resolution h outside (0, pi/2)");

    width_ = h >= 0.008 ? 3 : 5;
    m_ = std::max(4, round_up_even(2.0 * phi0 / h));
    ncols_ = std::max(4 * width_ + 2, round_up_even(2.0 * kPi / h));
    nrings_ = patches_ * m_ + 1;
    dtheta_ = 2.0 * kPi / ncols_;
    dphi_ = 2.0 * phi0_ / m_;
    if (node_count() > 10'000'000)
        throw ResourceLimitError("SurfaceMesh: node count exceeds 1e7");

    for (int dj = 1; dj <= width_; ++dj)
        for (int di = -width_; di <= width_; ++di)
            if (std::gcd(dj, std::abs(di)) == 1) offsets_.push_back({dj, di});

    up_weight_.assign(static_cast<std::size_t>(nrings_) * offsets_.size(), kNaN);
    for (int r = 0; r + 1 < nrings_; ++r) {
        int p = r / m_;
        int k = r - p * m_;
        for (std::size_t o = 0; o < offsets_.size(); ++o) {
            int dj = offsets_[o].dj, di = offsets_[o].di;
            if (k + dj > m_) continue;  // would cross a singular circle
            double phi1 = -phi0_ + k * dphi_;
            double phi2 = phi1 + dj * dphi_;
            double dlon = di * dtheta_;
            if (!arc_in_band(phi1, phi2, dlon, phi0_)) continue;
            up_weight_[r * offsets_.size() + o] = sphere_dist(phi1, phi2, dlon);
        }
    }

    ring_weight_.assign(static_cast<std::size_t>(nrings_) * width_, kNaN);
    for (int r = 0; r < nrings_; ++r) {
        double phi = ring_latitude(r);
        for (int s = 1; s <= width_; ++s) {
            double w;
            if (arc_in_band(phi, phi, s * dtheta_, phi0_))
                w = sphere_dist(phi, phi, s * dtheta_);
            else if (s == 1)
                w = std::cos(phi) * dtheta_;  // arc along the circle itself
            else
                continue;
            ring_weight_[r * width_ + (s - 1)] = w;
        }
    }
}

double SurfaceMesh::ring_latitude(int ring) const {
    int p = std::min(ring / m_, patches_ - 1);
    return -phi0_ + (ring - p * m_) * dphi_;
}

int SurfaceMesh::nearest_node(const SurfacePoint& p) const {
    int patch = std::clamp(p.patch, 0, patches_ - 1);
    int k = std::clamp(static_cast<int>(std::lround((p.phi + phi0_) / dphi_)), 0, m_);
    double th = std::fmod(p.theta, 2.0 * kPi);
    if (th < 0) th += 2.0 * kPi;
    int j = static_cast<int>(std::lround(th / dtheta_)) % ncols_;
    return node(patch * m_ + k, j);
}

std::vector<double> SurfaceMesh::distances_from(int source_node) const {
    const int n = static_cast<int>(node_count());
    std::vector<double> dist(n, kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[source_node] = 0.0;
    pq.push({0.0, source_node});
    const int noff = static_cast<int>(offsets_.size());

    auto relax = [&](double base, int ring, int col, double w) {
        if (std::isnan(w)) return;
        int idx = ring * ncols_ + col;
        double cand = base + w;
        if (cand < dist[idx]) {
            dist[idx] = cand;
            pq.push({cand, idx});
        }
    };

    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        int r = u / ncols_, j = u % ncols_;
        for (int s = 1; s <= width_; ++s) {
            double w = ring_weight_[r * width_ + (s - 1)];
            relax(d, r, (j + s) % ncols_, w);
            relax(d, r, (j - s + ncols_) % ncols_, w);
        }
        for (int o = 0; o < noff; ++o) {
            int dj = offsets_[o].dj, di = offsets_[o].di;
            if (r + dj < nrings_)
                relax(d, r + dj, ((j + di) % ncols_ + ncols_) % ncols_,
                      up_weight_[r * offsets_.size() + o]);
            if (r - dj >= 0)
                relax(d, r - dj, ((j - di) % ncols_ + ncols_) % ncols_,
                      up_weight_[(r - dj) * offsets_.size() + o]);
        }
    }
    return dist;
}

double SurfaceMesh::distance(const SurfacePoint& p, const SurfacePoint& q) const {
    auto dist = distances_from(nearest_node(p));
    double d = dist[nearest_node(q)];
    if (!std::isfinite(d)) throw std::runtime_error("SurfaceMesh: unreachable node");
    return d;
}

void SurfaceMesh::dump(std::ostream& os) const {
    for (int r = 0; r < nrings_; ++r) {
        int p = std::min(r / m_, patches_ - 1);
        int i = r - p * m_;
        double phi = ring_latitude(r);
        for (int j = 0; j < ncols_; ++j)
            os << p << ' ' << i << ' ' << j << ' ' << j * dtheta_ << ' ' << phi
               << '\n';
    }
}

VerifyReport verify_closed_forms(double h, int samples, std::uint64_t seed,
                                 int patches) {
    if (samples < 1) throw std::invalid_argument("verify_closed_forms: samples < 1");
    SurfaceMesh mesh(bavard::kPatchLatitude, patches, h);
    const int m = mesh.rings_per_patch();
    const int ncols = mesh.columns();
    const double dphi = mesh.delta_phi();
    const double dth = mesh.delta_theta();
    const int src_patch = patches / 2 >= patches - 1 ? patches - 2 : patches / 2;

    const int n_src = std::min(8, samples);
    struct Source {
        int ring;
        double beta;
        std::vector<int> alpha_cols, delta_cols;
    };
    std::vector<Source> sources(n_src);
    std::uint64_t state = seed;
    for (int s = 0; s < n_src; ++s) {
        double beta = uniform_in(state, 0.0, bavard::kPatchLatitude);
        int k = std::clamp(static_cast<int>(std::lround((beta + bavard::kPatchLatitude) / dphi)),
                           m / 2, m);
        sources[s].ring = src_patch * m + k;
        sources[s].beta = -bavard::kPatchLatitude + k * dphi;
        int count = samples / n_src + (s < samples % n_src ? 1 : 0);
        for (int t = 0; t < count; ++t) {
            double alpha = uniform_in(state, 0.05, kPi);
            sources[s].alpha_cols.push_back(
                static_cast<int>(std::lround(alpha / dth)));
            double delta = uniform_in(state, 0.05, kPi);
            sources[s].delta_cols.push_back(
                static_cast<int>(std::lround(delta / dth)));
        }
    }

    std::vector<std::vector<VerifySample>> per_source(n_src);
    const int nthreads = std::min(scan_thread_count(), n_src);
    auto worker = [&](int tid) {
        for (int s = tid; s < n_src; s += nthreads) {
            const Source& src = sources[s];
            auto dist = mesh.distances_from(mesh.node(src.ring, 0));
            for (int col : src.alpha_cols) {
                double alpha = col * dth;
                double md = dist[mesh.node(src.ring, col)];
                double cf = bavard::dist_rotation(src.beta, alpha);
                per_source[s].push_back(
                    {'r', src.beta, alpha, md, cf, (md - cf) / cf});
            }
            for (int col : src.delta_cols) {
                double delta = col * dth;
                double md = dist[mesh.node(src.ring + m, col)];
                double cf = bavard::dist_T(delta);
                per_source[s].push_back(
                    {'t', src.beta, delta, md, cf, (md - cf) / cf});
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();

    VerifyReport rep;
    rep.h = h;
    rep.min_margin = kInf;
    for (auto& rows : per_source)
        for (const auto& row : rows) {
            rep.max_rel_err = std::max(rep.max_rel_err, row.rel_err);
            rep.min_margin = std::min(rep.min_margin, row.mesh_dist - row.closed_form);
            rep.rows.push_back(row);
        }
    rep.samples = static_cast<int>(rep.rows.size());
    rep.no_undershoot = rep.min_margin >= -1e-9;
    return rep;
}

}  // namespace systolica::mesh
