// The rank-4 basepoint isocrystal N' with sigma-semilinear Frobenius
// F e1 = e2, F e2 = p e1, F e3 = e4, F e4 = p e3, the operators A -> A_1 and
// A -> F_bar(A), the Dieudonne-lattice predicate and height-shift isogenies.

#pragma once

#include "gl4/lattice.hpp"

namespace gl4 {

/// Shared constants for the basepoint isocrystal over a fixed ring context.
struct Isocrystal {
    RingCtxPtr ctx;
    Mat PF;       // linear part of F (row-vector convention: F(v) = sigma(v) PF)
    Mat phi_mat;  // e1 -> e2, e2 -> p e1, e3 -> e3, e4 -> e4 (height 1)
    Mat psi_mat;  // e1 -> e2, e2 -> p e1, e3 -> p e3, e4 -> p e4 (height 3)

    static Isocrystal make(const RingCtxPtr& ctx);

    PLattice standard_M() const { return PLattice::standard(ctx, 4); }
};

/// F applied to a single row vector p^scale * v; the result scale is returned.
std::pair<Mat, int> apply_F(const Isocrystal& N, const Mat& v, int scale);

/// Module generated by F-images of a lattice.
PLattice F_bar(const Isocrystal& N, const PLattice& A);

/// Exact preimage F^{-1}(A); exact because sigma is bijective here, so
/// F^{-1}(A) = sigma^{-1}(A * PF^{-1}) with PF^{-1} = p^{-1} PF.
PLattice F_inv(const Isocrystal& N, const PLattice& A);

/// A_1 = F^{-1}(p A).
PLattice F_inv_p(const Isocrystal& N, const PLattice& A);

/// Dieudonne predicate: chain p A in A_1 in A with both quotients of length
/// 2m... (length 2 over W', i.e. dim 2 over k'), cross-checked against
/// F_bar(F^{-1}(A)) = A; the two criteria must agree or we throw.
bool is_dieudonne(const Isocrystal& N, const PLattice& A);

/// Applies phi (delta > 0) or p^{-1} psi (delta < 0) |delta| times.
PLattice shift_height(const Isocrystal& N, const PLattice& A, int delta);

}  // namespace gl4
