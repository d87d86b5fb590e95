#include "systolica/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace systolica {

template <int N>
double gram_det(const std::vector<Vec<N>>& b) {
    const int r = static_cast<int>(b.size());
    // Gram matrix determinant, r <= 3.
    double g[3][3];
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) g[i][j] = dot(b[i], b[j]);
    if (r == 1) return g[0][0];
    if (r == 2) return g[0][0] * g[1][1] - g[0][1] * g[1][0];
    return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
           g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
           g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
}

template double gram_det<2>(const std::vector<Vec2>&);
template double gram_det<3>(const std::vector<Vec3>&);

namespace {

template <int N>
double basis_scale2(const std::vector<Vec<N>>& b) {
    double s = 0;
    for (const auto& v : b) s = std::max(s, norm2(v));
    return s;
}

template <int N>
void check_independent(const std::vector<Vec<N>>& b) {
    const double s = basis_scale2(b);
    const int r = static_cast<int>(b.size());
    if (r == 0 || s == 0.0 ||
        gram_det<N>(b) <= 1e-20 * std::pow(s, r))
        throw std::invalid_argument("degenerate lattice");
}

template <int N>
void pair_reduce(Vec<N>& target, const Vec<N>& by) {
    double m = std::round(dot(target, by) / norm2(by));
    if (m != 0.0) target -= m * by;
}

template <int N>
std::vector<double> gram_schmidt_norms(const std::vector<Vec<N>>& b) {
    std::vector<Vec<N>> gs;
    std::vector<double> out;
    for (const auto& v : b) {
        Vec<N> w = v;
        for (const auto& g : gs) w -= (dot(v, g) / norm2(g)) * g;
        gs.push_back(w);
        out.push_back(norm(w));
    }
    return out;
}

// min over integer coefficient boxes of |offset + sum c_i b_i|, with an
// optional exclusion of c = 0.
template <int N>
double enumerate_min(const std::vector<Vec<N>>& b, const Vec<N>& offset,
                     bool exclude_zero) {
    const int r = static_cast<int>(b.size());
    auto value = [&](const std::array<int, 3>& c) {
        Vec<N> v = offset;
        for (int i = 0; i < r; ++i) v += static_cast<double>(c[i]) * b[i];
        return norm(v);
    };
    // Seed bound from |c_i| <= 1.
    double upper = -1.0;
    std::array<int, 3> c{0, 0, 0};
    int lim[3] = {r > 0 ? 1 : 0, r > 1 ? 1 : 0, r > 2 ? 1 : 0};
    for (c[0] = -lim[0]; c[0] <= lim[0]; ++c[0])
        for (c[1] = -lim[1]; c[1] <= lim[1]; ++c[1])
            for (c[2] = -lim[2]; c[2] <= lim[2]; ++c[2]) {
                if (exclude_zero && c[0] == 0 && c[1] == 0 && c[2] == 0)
                    continue;
                double v = value(c);
                if (upper < 0 || v < upper) upper = v;
            }
    const auto s = gram_schmidt_norms(b);
    long long box[3] = {0, 0, 0};
    double count = 1;
    for (int i = 0; i < r; ++i) {
        box[i] = static_cast<long long>(std::ceil(upper / s[i])) + 1;
        count *= 2.0 * static_cast<double>(box[i]) + 1.0;
    }
    if (count > 5e7)
        throw std::runtime_error("coset enumeration box too large");
    double best = upper;
    for (c[0] = -box[0]; c[0] <= box[0]; ++c[0])
        for (c[1] = -box[1]; c[1] <= box[1]; ++c[1])
            for (c[2] = -box[2]; c[2] <= box[2]; ++c[2]) {
                if (exclude_zero && c[0] == 0 && c[1] == 0 && c[2] == 0)
                    continue;
                best = std::min(best, value(c));
            }
    return best;
}

}  // namespace

Lattice2 gauss_reduce(const Lattice2& lat) {
    if (lat.rank() != 2) throw std::invalid_argument("gauss_reduce: rank 2 required");
    check_independent<2>(lat.basis);
    Vec2 b1 = lat.basis[0], b2 = lat.basis[1];
    if (norm2(b1) > norm2(b2)) std::swap(b1, b2);
    for (int it = 0; it < 64; ++it) {
        pair_reduce(b2, b1);
        if (norm2(b2) < norm2(b1))
            std::swap(b1, b2);
        else
            break;
    }
    return Lattice2{{b1, b2}};
}

template <int N>
Lattice<N> reduce_basis(const Lattice<N>& lat) {
    check_independent<N>(lat.basis);
    if (lat.rank() == 1) return lat;
    if (lat.rank() == 2) {
        Lattice<N> out = lat;
        Vec<N>&b1 = out.basis[0], &b2 = out.basis[1];
        if (norm2(b1) > norm2(b2)) std::swap(b1, b2);
        for (int it = 0; it < 64; ++it) {
            pair_reduce(b2, b1);
            if (norm2(b2) < norm2(b1))
                std::swap(b1, b2);
            else
                break;
        }
        return out;
    }
    Lattice<N> out = lat;
    for (int it = 0; it < 100; ++it) {
        std::sort(out.basis.begin(), out.basis.end(),
                  [](const Vec<N>& a, const Vec<N>& b) { return norm2(a) < norm2(b); });
        bool changed = false;
        for (int i = 1; i < out.rank(); ++i)
            for (int j = 0; j < i; ++j) {
                double before = norm2(out.basis[i]);
                pair_reduce(out.basis[i], out.basis[j]);
                if (norm2(out.basis[i]) < before * (1.0 - 1e-14)) changed = true;
            }
        if (!changed) break;
    }
    return out;
}

template Lattice<2> reduce_basis<2>(const Lattice<2>&);
template Lattice<3> reduce_basis<3>(const Lattice<3>&);

template <int N>
double coset_shortest(const Lattice<N>& lat, const Vec<N>& offset,
                      const Mat<N>& projector) {
    check_independent<N>(lat.basis);
    if (max_abs_diff(projector, projector.transposed()) > 1e-9 ||
        max_abs_diff(projector * projector, projector) > 1e-9)
        throw std::invalid_argument("projector must be idempotent and symmetric");

    const double scale = std::sqrt(basis_scale2(lat.basis));
    std::vector<Vec<N>> pb;
    for (const auto& b : lat.basis) {
        Vec<N> v = projector * b;
        if (norm(v) > 1e-12 * scale) pb.push_back(v);
    }
    const bool exclude_zero = norm(offset) < 1e-12;
    const Vec<N> po = projector * offset;
    if (pb.empty()) {
        if (exclude_zero)
            throw std::runtime_error("projector annihilates the lattice");
        return norm(po);
    }
    const int r = static_cast<int>(pb.size());
    if (gram_det<N>(pb) <= 1e-14 * std::pow(basis_scale2(pb), r))
        throw std::runtime_error("projector collapses lattice to dependent directions");
    Lattice<N> red = reduce_basis(Lattice<N>{pb});
    return enumerate_min<N>(red.basis, po, exclude_zero);
}

template double coset_shortest<2>(const Lattice2&, const Vec2&, const Mat2&);
template double coset_shortest<3>(const Lattice3&, const Vec3&, const Mat3&);

namespace detail {

std::vector<std::array<long long, 3>> integer_column_span(
    std::vector<std::array<long long, 3>> cols) {
    // Column-style Hermite reduction via Euclidean column operations.
    std::vector<std::array<long long, 3>> out;
    int row = 0;
    while (row < 3 && !cols.empty()) {
        // Drop zero columns.
        cols.erase(std::remove_if(cols.begin(), cols.end(),
                                  [](const auto& c) {
                                      return c[0] == 0 && c[1] == 0 && c[2] == 0;
                                  }),
                   cols.end());
        if (cols.empty()) break;
        // Find a column with a nonzero entry in `row`; if none, move on.
        int pivot = -1;
        for (size_t j = 0; j < cols.size(); ++j)
            if (cols[j][row] != 0) {
                if (pivot < 0 || std::llabs(cols[j][row]) < std::llabs(cols[pivot][row]))
                    pivot = static_cast<int>(j);
            }
        if (pivot < 0) {
            ++row;
            continue;
        }
        // Euclid: reduce all other columns against the pivot until the row
        // has a single nonzero entry.
        bool again = true;
        while (again) {
            again = false;
            for (size_t j = 0; j < cols.size(); ++j) {
                if (static_cast<int>(j) == pivot || cols[j][row] == 0) continue;
                long long q = cols[j][row] / cols[pivot][row];
                for (int i = 0; i < 3; ++i) cols[j][i] -= q * cols[pivot][i];
                if (cols[j][row] != 0 &&
                    std::llabs(cols[j][row]) < std::llabs(cols[pivot][row])) {
                    pivot = static_cast<int>(j);
                    again = true;
                }
            }
            for (size_t j = 0; j < cols.size() && !again; ++j)
                if (static_cast<int>(j) != pivot && cols[j][row] != 0) again = true;
        }
        out.push_back(cols[pivot]);
        cols.erase(cols.begin() + pivot);
        ++row;
    }
    return out;
}

}  // namespace detail

Lattice3 projected_lattice(const Lattice3& lat, const Mat3& q) {
    check_independent<3>(lat.basis);
    if (!is_orthogonal(q))
        throw std::invalid_argument("projected_lattice: matrix not orthogonal");
    // Order of q (bounded: crystallographic point groups in dim 3).
    Mat3 p = q;
    int order = 1;
    while (max_abs_diff(p, Mat3::identity()) > 1e-9) {
        p = p * q;
        if (++order > 12)
            throw std::invalid_argument("projected_lattice: matrix order too large");
    }
    // Coordinates of sum_k q^k b_i in the lattice basis; must be integral.
    const auto& b = lat.basis;
    auto coords = [&](const Vec3& v) {
        // Solve B c = v by Cramer.
        auto det3 = [](const Vec3& x, const Vec3& y, const Vec3& z) {
            return dot(x, cross(y, z));
        };
        double d = det3(b[0], b[1], b[2]);
        Vec3 c{det3(v, b[1], b[2]) / d, det3(b[0], v, b[2]) / d,
               det3(b[0], b[1], v) / d};
        return c;
    };
    std::vector<std::array<long long, 3>> cols;
    for (int i = 0; i < 3; ++i) {
        Vec3 acc{};
        Vec3 w = b[i];
        for (int k = 0; k < order; ++k) {
            acc += w;
            w = q * w;
        }
        Vec3 c = coords(acc);
        std::array<long long, 3> ic{};
        for (int j = 0; j < 3; ++j) {
            ic[j] = static_cast<long long>(std::llround(c[j]));
            if (std::abs(c[j] - static_cast<double>(ic[j])) > 1e-6)
                throw std::runtime_error("projected_lattice: lattice not invariant");
        }
        cols.push_back(ic);
    }
    auto span = detail::integer_column_span(std::move(cols));
    Lattice3 out;
    for (const auto& col : span) {
        Vec3 v{};
        for (int j = 0; j < 3; ++j) v += static_cast<double>(col[j]) * b[j];
        out.basis.push_back(v * (1.0 / order));
    }
    return out;
}

}  // namespace systolica
