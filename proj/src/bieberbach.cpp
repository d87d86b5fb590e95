#include "systolica/bieberbach.hpp"

#include "systolica/rng.hpp"
#include "systolica/threads.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace systolica {

namespace {

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::invalid_argument(std::string("modulus must be positive: ") + what);
}

Mat3 reflect_z() { return Mat3::diag({1, 1, -1}); }
Mat3 rot_pi_x() { return Mat3::diag({1, -1, -1}); }

// In-plane lattice vectors of a spec with a1 = (A, 0), a2 = lambda a1 + v.
Lattice2 in_plane_lattice(double a1, double lambda, double v) {
    return Lattice2{{Vec2{a1, 0.0}, Vec2{lambda * a1, v}}};
}

double shortest_vector(const Lattice2& lat) {
    return coset_shortest(lat, Vec2{}, Mat2::identity());
}

double coset_min(const Lattice2& lat, const Vec2& off) {
    return coset_shortest(lat, off, Mat2::identity());
}

}  // namespace

std::string to_string(BType t) {
    switch (t) {
        case BType::B1: return "B1";
        case BType::B2: return "B2";
        case BType::B3: return "B3";
        case BType::B4: return "B4";
    }
    return "?";
}

BType btype_from_string(const std::string& s) {
    if (s == "B1" || s == "b1") return BType::B1;
    if (s == "B2" || s == "b2") return BType::B2;
    if (s == "B3" || s == "b3") return BType::B3;
    if (s == "B4" || s == "b4") return BType::B4;
    throw std::invalid_argument("unknown Bieberbach type: " + s);
}

BieberbachSpec BieberbachSpec::b1(double a1, double a3, double lambda, double v) {
    require_positive(a1, "|a1|");
    require_positive(a3, "|a3|");
    require_positive(v, "|v|");
    if (!std::isfinite(lambda)) throw std::invalid_argument("lambda must be finite");
    return {BType::B1, {a1, a3, lambda, v}};
}

BieberbachSpec BieberbachSpec::b2(double a1, double lambda, double v, double d) {
    require_positive(a1, "|a1|");
    require_positive(v, "|v|");
    require_positive(d, "d");
    if (!std::isfinite(lambda)) throw std::invalid_argument("lambda must be finite");
    return {BType::B2, {a1, lambda, v, d}};
}

BieberbachSpec BieberbachSpec::b3(double a1, double a2, double a3) {
    require_positive(a1, "|a1|");
    require_positive(a2, "|a2|");
    require_positive(a3, "|a3|");
    return {BType::B3, {a1, a2, a3, 0}};
}

BieberbachSpec BieberbachSpec::b4(double a1, double a2, double dist_pd) {
    require_positive(a1, "|a1|");
    require_positive(a2, "|a2|");
    require_positive(dist_pd, "dist(P,D)");
    return {BType::B4, {a1, a2, dist_pd, 0}};
}

GroupPresentation build_group(const BieberbachSpec& spec) {
    GroupPresentation g;
    switch (spec.type) {
        case BType::B1: {
            const double a1 = spec.m[0], a3 = spec.m[1], lam = spec.m[2], v = spec.m[3];
            Vec3 va1{a1, 0, 0}, va2{lam * a1, v, 0}, va3{0, 0, a3};
            AffineIsometry3 glide(reflect_z(), 0.5 * va1);
            g.generators = {glide, AffineIsometry3(Mat3::identity(), va2),
                            AffineIsometry3(Mat3::identity(), va3)};
            g.lattice = Lattice3{{va1, va2, va3}};
            g.point_reps = {glide};
            break;
        }
        case BType::B2: {
            const double a1 = spec.m[0], lam = spec.m[1], v = spec.m[2], d = spec.m[3];
            Vec3 va1{a1, 0, 0}, va2{lam * a1, v, 0};
            Vec3 va3 = 0.5 * (va1 + va2) + Vec3{0, 0, 2 * d};
            AffineIsometry3 s1(reflect_z(), 0.5 * va1);
            AffineIsometry3 s2(reflect_z(), 0.5 * va2 + Vec3{0, 0, 2 * d});
            g.generators = {s1, s2};
            g.lattice = Lattice3{{va1, va2, va3}};
            g.point_reps = {s1};
            break;
        }
        case BType::B3: {
            const double a1 = spec.m[0], a2 = spec.m[1], a3 = spec.m[2];
            AffineIsometry3 sd(rot_pi_x(), {0.5 * a1, 0, 0});
            AffineIsometry3 sp(reflect_z(), {0, 0.5 * a2, 0});
            g.generators = {sd, sp, AffineIsometry3(Mat3::identity(), {0, 0, a3})};
            g.lattice = Lattice3{{Vec3{a1, 0, 0}, Vec3{0, a2, 0}, Vec3{0, 0, a3}}};
            g.point_reps = {sd, sp, sd.compose(sp)};
            break;
        }
        case BType::B4: {
            const double a1 = spec.m[0], a2 = spec.m[1], h = spec.m[2];
            AffineIsometry3 sd(rot_pi_x(), {0.5 * a1, 0, 2 * h});
            AffineIsometry3 sp(reflect_z(), {0, 0.5 * a2, 0});
            g.generators = {sd, sp};
            g.lattice = Lattice3{{Vec3{a1, 0, 0}, Vec3{0, a2, 0}, Vec3{0, 0, 4 * h}}};
            g.point_reps = {sd, sp, sd.compose(sp)};
            break;
        }
    }
    return g;
}

double flat_volume(const BieberbachSpec& spec) {
    const auto& m = spec.m;
    switch (spec.type) {
        case BType::B1: return 0.5 * m[0] * m[3] * m[1];  // 1/2 det(a1,a2) |a3|
        case BType::B2: return m[0] * m[2] * m[3];        // det(a1,a2) d
        case BType::B3: return m[0] * m[1] * m[2] / 4.0;
        case BType::B4: return m[0] * m[1] * m[2];        // |a1||a2| (4 h) / 4
    }
    return 0;
}

double flat_systole_closed(const BieberbachSpec& spec) {
    const auto& m = spec.m;
    switch (spec.type) {
        case BType::B1: {
            // inf{|a3|, s} with s the systole of the torus lattice (a1/2, a2).
            Lattice2 half{{Vec2{0.5 * m[0], 0.0}, Vec2{m[2] * m[0], m[3]}}};
            return std::min(m[1], shortest_vector(half));
        }
        case BType::B2: {
            const double a1 = m[0], lam = m[1], v = m[2], d = m[3];
            Lattice2 L = in_plane_lattice(a1, lam, v);
            Vec2 va1{a1, 0.0}, va2{lam * a1, v};
            Vec2 u = 0.5 * (va1 + va2);
            double t = coset_min(L, u);
            double best = coset_min(L, 0.5 * va1);
            best = std::min(best, coset_min(L, 0.5 * va2));
            best = std::min(best, 4.0 * d);
            best = std::min(best, std::sqrt(t * t + 4.0 * d * d));
            best = std::min(best, shortest_vector(L));
            return best;
        }
        case BType::B3: return std::min({0.5 * m[0], 0.5 * m[1], m[2]});
        case BType::B4: return std::min({0.5 * m[0], 0.5 * m[1], 4.0 * m[2]});
    }
    return 0;
}

double flat_systole_enum(const BieberbachSpec& spec) {
    GroupPresentation g = build_group(spec);
    double best = coset_shortest(g.lattice, Vec3{}, Mat3::identity());
    for (const auto& rep : g.point_reps) {
        Mat3 proj = fixed_projector(rep.linear);
        Lattice3 image = projected_lattice(g.lattice, rep.linear);
        Vec3 off = proj * rep.shift;
        if (image.rank() == 0) {
            best = std::min(best, norm(off));
            continue;
        }
        best = std::min(best, coset_shortest(image, off, Mat3::identity()));
    }
    return best;
}

FlatOptimum optimal_flat_ratio(BType type) {
    switch (type) {
        case BType::B1:
            return {2.0 / std::sqrt(3.0),
                    BieberbachSpec::b1(2.0, 1.0, 0.25, std::sqrt(3.0) / 2.0)};
        case BType::B2:
            return {8.0 / std::sqrt(39.0),
                    BieberbachSpec::b2(1.0, -5.0 / 8.0, std::sqrt(39.0) / 8.0, 0.125)};
        case BType::B3:
            return {1.0, BieberbachSpec::b3(2.0, 2.0, 1.0)};
        case BType::B4:
            return {1.0, BieberbachSpec::b4(2.0, 2.0, 0.25)};
    }
    throw std::logic_error("unreachable");
}

namespace {

struct ScanDomain {
    int dims;
    std::array<double, 3> lo, hi;
    BieberbachSpec (*make)(const std::array<double, 3>&);
};

ScanDomain scan_domain(BType type) {
    switch (type) {
        case BType::B1:
            // |a3| = 1; shear folded into [0, 1/2].
            return {3, {0.2, 0.0, 0.1}, {4.0, 0.5, 3.0},
                    [](const std::array<double, 3>& x) {
                        return BieberbachSpec::b1(x[0], 1.0, x[1], x[2]);
                    }};
        case BType::B2:
            // |a1| = 1; a2 -> -a2 symmetry folds lambda into [-1, 0].
            return {3, {-1.0, 0.05, 0.02}, {0.0, 1.5, 0.45},
                    [](const std::array<double, 3>& x) {
                        return BieberbachSpec::b2(1.0, x[0], x[1], x[2]);
                    }};
        case BType::B3:
            return {2, {0.2, 0.2, 0.0}, {4.0, 4.0, 0.0},
                    [](const std::array<double, 3>& x) {
                        return BieberbachSpec::b3(x[0], x[1], 1.0);
                    }};
        case BType::B4:
            return {2, {0.2, 0.2, 0.0}, {4.0, 4.0, 0.0},
                    [](const std::array<double, 3>& x) {
                        return BieberbachSpec::b4(x[0], x[1], 0.25);
                    }};
    }
    throw std::logic_error("unreachable");
}

struct Incumbent {
    double ratio = -1.0;
    std::array<double, 3> x{};

    // Deterministic: larger ratio wins, exact ties resolved toward the
    // lexicographically smallest moduli.
    void offer(double r, const std::array<double, 3>& m) {
        if (r > ratio || (r == ratio && m < x)) {
            ratio = r;
            x = m;
        }
    }
};

}  // namespace

ScanResult scan_flat(BType type, int grid_n, int refine_rounds, bool record_grid) {
    const ScanDomain dom = scan_domain(type);
    std::array<double, 3> lo = dom.lo, hi = dom.hi;
    Incumbent inc;
    ScanResult out{optimal_flat_ratio(type).argmax, -1.0, {}};

    for (int round = 0; round <= refine_rounds; ++round) {
        const int n = grid_n;
        std::array<int, 3> steps{n, n, n};
        for (int k = dom.dims; k < 3; ++k) steps[k] = 1;
        const long total = static_cast<long>(steps[0]) * steps[1] * steps[2];
        const int nthreads = std::min<long>(scan_thread_count(), steps[0]);

        std::vector<Incumbent> partial(nthreads);
        std::vector<std::array<double, 5>> rows;
        if (record_grid && round == 0) rows.resize(static_cast<size_t>(total));
        auto worker = [&](int tid) {
            for (int i0 = tid; i0 < steps[0]; i0 += nthreads) {
                std::array<double, 3> x{};
                x[0] = steps[0] == 1 ? lo[0]
                                     : lo[0] + (hi[0] - lo[0]) * i0 / (steps[0] - 1);
                for (int i1 = 0; i1 < steps[1]; ++i1) {
                    x[1] = steps[1] == 1 ? lo[1]
                                         : lo[1] + (hi[1] - lo[1]) * i1 / (steps[1] - 1);
                    for (int i2 = 0; i2 < steps[2]; ++i2) {
                        x[2] = steps[2] == 1
                                   ? lo[2]
                                   : lo[2] + (hi[2] - lo[2]) * i2 / (steps[2] - 1);
                        double r = -1.0;
                        try {
                            r = flat_ratio(dom.make(x));
                        } catch (const std::exception&) {
                            // degenerate corner of the box
                        }
                        if (r >= 0.0) partial[tid].offer(r, x);
                        if (record_grid && round == 0) {
                            size_t idx = (static_cast<size_t>(i0) * steps[1] + i1) *
                                             steps[2] + i2;
                            rows[idx] = {x[0], x[1], x[2], r, 0.0};
                        }
                    }
                }
            }
        };
        std::vector<std::thread> pool;
        for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker, t);
        worker(0);
        for (auto& th : pool) th.join();
        for (const auto& p : partial)
            if (p.ratio >= 0.0) inc.offer(p.ratio, p.x);
        if (record_grid && round == 0) out.grid_rows = std::move(rows);

        // Shrink the box 4x around the incumbent, clamped to the original.
        for (int k = 0; k < dom.dims; ++k) {
            double half = (hi[k] - lo[k]) / 8.0;
            double c = inc.x[k];
            double nlo = std::max(dom.lo[k], c - half);
            double nhi = std::min(dom.hi[k], c + half);
            lo[k] = nlo;
            hi[k] = nhi;
        }
    }
    out.best = dom.make(inc.x);
    out.ratio = inc.ratio;
    return out;
}

BieberbachSpec random_spec(BType type, std::uint64_t& state) {
    switch (type) {
        case BType::B1:
            return BieberbachSpec::b1(uniform_in(state, 0.3, 2.5),
                                      uniform_in(state, 0.3, 2.5),
                                      uniform_in(state, -1.0, 1.0),
                                      uniform_in(state, 0.3, 2.5));
        case BType::B2:
            return BieberbachSpec::b2(uniform_in(state, 0.3, 2.5),
                                      uniform_in(state, -1.0, 1.0),
                                      uniform_in(state, 0.3, 2.5),
                                      uniform_in(state, 0.05, 0.8));
        case BType::B3:
            return BieberbachSpec::b3(uniform_in(state, 0.3, 2.5),
                                      uniform_in(state, 0.3, 2.5),
                                      uniform_in(state, 0.3, 2.5));
        case BType::B4:
            return BieberbachSpec::b4(uniform_in(state, 0.3, 2.5),
                                      uniform_in(state, 0.3, 2.5),
                                      uniform_in(state, 0.075, 0.625));
    }
    throw std::logic_error("unreachable");
}

}  // namespace systolica
