// Exhaustive enumeration of the height-0 Dieudonne lattices in the band
// p M <= A <= p^{-1} M, parametrized by pairs of Frobenius-stable residue
// subspaces plus a lifting homomorphism (duplicate-free by construction).

#pragma once

#include <vector>

#include "gl4/isocrystal.hpp"
#include "gl4/parallel.hpp"

namespace gl4 {

/// All Dieudonne lattices A with p M <= A <= p^{-1} M and height(A, M) = 0,
/// sorted by canonical key.  Serial and parallel policies return identical
/// vectors.
std::vector<PLattice> enumerate_band_dieudonne(const Isocrystal& iso,
                                               Exec exec = Exec::serial);

}  // namespace gl4
