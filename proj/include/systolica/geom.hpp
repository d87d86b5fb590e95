#pragma once

// Small fixed-dimension Euclidean primitives: vectors, matrices, affine
// isometries. Dimensions 2 and 3 only.

#include <array>
#include <cmath>
#include <stdexcept>

namespace systolica {

template <int N>
struct Vec {
    std::array<double, N> c{};

    double& operator[](int i) { return c[i]; }
    double operator[](int i) const { return c[i]; }

    Vec operator+(const Vec& o) const {
        Vec r;
        for (int i = 0; i < N; ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    Vec operator-(const Vec& o) const {
        Vec r;
        for (int i = 0; i < N; ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
    Vec operator*(double s) const {
        Vec r;
        for (int i = 0; i < N; ++i) r.c[i] = c[i] * s;
        return r;
    }
    Vec operator-() const { return *this * -1.0; }
    Vec& operator+=(const Vec& o) { return *this = *this + o; }
    Vec& operator-=(const Vec& o) { return *this = *this - o; }
};

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;

template <int N>
inline Vec<N> operator*(double s, const Vec<N>& v) { return v * s; }

template <int N>
inline double dot(const Vec<N>& a, const Vec<N>& b) {
    double s = 0;
    for (int i = 0; i < N; ++i) s += a.c[i] * b.c[i];
    return s;
}

template <int N>
inline double norm2(const Vec<N>& v) { return dot(v, v); }

template <int N>
inline double norm(const Vec<N>& v) { return std::sqrt(norm2(v)); }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

template <int N>
struct Mat {
    // row-major
    std::array<std::array<double, N>, N> m{};

    static Mat identity() {
        Mat r;
        for (int i = 0; i < N; ++i) r.m[i][i] = 1.0;
        return r;
    }
    static Mat diag(const Vec<N>& d) {
        Mat r;
        for (int i = 0; i < N; ++i) r.m[i][i] = d[i];
        return r;
    }

    double& operator()(int i, int j) { return m[i][j]; }
    double operator()(int i, int j) const { return m[i][j]; }

    Vec<N> operator*(const Vec<N>& v) const {
        Vec<N> r;
        for (int i = 0; i < N; ++i) {
            double s = 0;
            for (int j = 0; j < N; ++j) s += m[i][j] * v[j];
            r[i] = s;
        }
        return r;
    }
    Mat operator*(const Mat& o) const {
        Mat r;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                double s = 0;
                for (int k = 0; k < N; ++k) s += m[i][k] * o.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }
    Mat operator+(const Mat& o) const {
        Mat r;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
        return r;
    }
    Mat operator-(const Mat& o) const {
        Mat r;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
        return r;
    }
    Mat transposed() const {
        Mat r;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) r.m[i][j] = m[j][i];
        return r;
    }
};

using Mat2 = Mat<2>;
using Mat3 = Mat<3>;

template <int N>
inline double max_abs_diff(const Mat<N>& a, const Mat<N>& b) {
    double w = 0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            w = std::max(w, std::abs(a.m[i][j] - b.m[i][j]));
    return w;
}

template <int N>
inline bool is_orthogonal(const Mat<N>& q, double tol = 1e-12) {
    return max_abs_diff(q.transposed() * q, Mat<N>::identity()) <= tol;
}

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Eigenvectors are
// the columns of `vecs`.
template <int N>
void jacobi_eigen(Mat<N> a, Mat<N>& vecs, Vec<N>& vals) {
    vecs = Mat<N>::identity();
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (int p = 0; p < N; ++p)
            for (int q = p + 1; q < N; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-30) break;
        for (int p = 0; p < N; ++p)
            for (int q = p + 1; q < N; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double cth = 1.0 / std::sqrt(t * t + 1.0);
                double sth = t * cth;
                Mat<N> rot = Mat<N>::identity();
                rot(p, p) = cth;
                rot(q, q) = cth;
                rot(p, q) = sth;
                rot(q, p) = -sth;
                a = rot.transposed() * a * rot;
                vecs = vecs * rot;
            }
    }
    for (int i = 0; i < N; ++i) vals[i] = a(i, i);
}

// Orthogonal projector onto ker(Q - I), the pointwise-fixed subspace of an
// orthogonal matrix Q.
template <int N>
Mat<N> fixed_projector(const Mat<N>& q) {
    Mat<N> d = q - Mat<N>::identity();
    Mat<N> s = d.transposed() * d;  // eigenvalues 4 sin^2(theta/2) >= 0
    Mat<N> vecs;
    Vec<N> vals;
    jacobi_eigen(s, vecs, vals);
    Mat<N> proj;
    for (int k = 0; k < N; ++k) {
        if (vals[k] > 1e-10) continue;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                proj(i, j) += vecs(i, k) * vecs(j, k);
    }
    return proj;
}

// Affine isometry x -> linear * x + shift with orthogonal linear part,
// validated at construction.
template <int N>
struct AffineIsometry {
    Mat<N> linear = Mat<N>::identity();
    Vec<N> shift{};

    AffineIsometry() = default;
    AffineIsometry(const Mat<N>& lin, const Vec<N>& sh) : linear(lin), shift(sh) {
        if (!is_orthogonal(lin))
            throw std::invalid_argument("AffineIsometry: linear part not orthogonal");
    }

    Vec<N> operator()(const Vec<N>& p) const { return linear * p + shift; }

    AffineIsometry compose(const AffineIsometry& o) const {
        // (*this) after o
        return AffineIsometry(linear * o.linear, linear * o.shift + shift);
    }
    AffineIsometry inverse() const {
        Mat<N> qt = linear.transposed();
        return AffineIsometry(qt, -(qt * shift));
    }
};

using AffineIsometry2 = AffineIsometry<2>;
using AffineIsometry3 = AffineIsometry<3>;

// d(iso) = inf_p |iso(p) - p|, the norm of the shift projected onto the
// fixed subspace of the linear part.
template <int N>
inline double displacement(const AffineIsometry<N>& iso) {
    return norm(fixed_projector(iso.linear) * iso.shift);
}

}  // namespace systolica
