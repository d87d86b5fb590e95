#pragma once

// Lattices, basis reduction and certified shortest (projected) coset
// vectors. Rank 2 and 3 only; enumeration bounds are derived from
// Gram-Schmidt norms of the reduced basis.

#include <cstdint>
#include <vector>

#include "systolica/geom.hpp"

namespace systolica {

template <int N>
struct Lattice {
    std::vector<Vec<N>> basis;

    int rank() const { return static_cast<int>(basis.size()); }
};

using Lattice2 = Lattice<2>;
using Lattice3 = Lattice<3>;

// Gram determinant of an arbitrary set of vectors.
template <int N>
double gram_det(const std::vector<Vec<N>>& b);

// Lagrange-Gauss reduction of a rank-2 basis. The result is
// Minkowski-reduced: |b1| <= |b2| <= |b2 +- b1|. Throws on a dependent
// input basis.
Lattice2 gauss_reduce(const Lattice2& lat);

// Basis reduction for rank 1..3 (greedy pairwise size reduction; exact
// Gauss reduction in rank 2). Spans the same lattice.
template <int N>
Lattice<N> reduce_basis(const Lattice<N>& lat);

// min over lattice points l of |projector * (offset + l)|.
// If offset == 0 the zero vector is excluded from the search. The
// enumeration radius is certified from an initial upper bound and the
// Gram-Schmidt norms of the reduced (projected) basis.
template <int N>
double coset_shortest(const Lattice<N>& lat, const Vec<N>& offset,
                      const Mat<N>& projector);

// Image P(L) of a lattice under the fixed-space projector of an orthogonal
// matrix q that normalizes L. Exact: P = (1/n) sum q^k over the order n of
// q, so n*P(b) has integer coordinates in the basis; an integer
// Hermite-form computation recovers a basis of the image lattice.
Lattice3 projected_lattice(const Lattice3& lat, const Mat3& q);

namespace detail {
// Basis (as coordinate columns) of the integer column span of a 3xK
// integer matrix.
std::vector<std::array<long long, 3>> integer_column_span(
    std::vector<std::array<long long, 3>> cols);
}  // namespace detail

}  // namespace systolica
