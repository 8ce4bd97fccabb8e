// V = second exterior power of the rank-4 isocrystal, with its symplectic-
// style pairing, the slope-zero operator Phi, Hodge star operators between
// V and its dual, special endomorphisms of N x N*, the similitude action,
// and the bijection between height-0 Dieudonne lattices and very special
// lattices (forward map and effective inverse).

#pragma once

#include <utility>
#include <vector>

#include "gl4/isocrystal.hpp"

namespace gl4 {

enum class Orientation { plus, minus, unknown };

/// Self-dual lattice L in V' with the length-1 wedge condition; orientation
/// is provenance-tracked only (see make-functions), never decided intrinsically.
struct SpecialLattice {
    PLattice L;
    Orientation orient = Orientation::unknown;
};

/// Endomorphism pair (x-star : N -> N*, x : N* -> N) of a special
/// endomorphism x~ acting on N x N*; row-vector convention with explicit
/// p-power scales.
struct EndoPair {
    Mat to_dual;  // 4x4 matrix of x-star
    int e_to_dual = 0;
    Mat to_elem;  // 4x4 matrix of x
    int e_to_elem = 0;
};

/// Fixed structure of V = wedge^2 N in the basis
///   x1 = e1^e2, x2 = e3^e4, x3 = e1^e3, x4 = e2^e4, x5 = e1^e4, x6 = e2^e3,
/// with volume form omega = alpha p^r e1^e2^e3^e4 (defaults alpha = 1, r = 0).
struct ExteriorSpace {
    RingCtxPtr ctx;
    Isocrystal iso;
    RElem alpha;  // unit part of omega
    int r = 0;    // p-power part of omega

    GramForm gram_x;  // pairing [.,.] on V in the x-basis
    GramForm gram_t;  // pairing [.,.]_1 on the dual in the t-basis

    Mat phi_p;    // p * matrix of Phi compose sigma^{-1} on x; use at scale -1
    Mat phi_t_p;  // p * matrix of the dual-side Phi on t; use at scale -1

    Mat star_x;       // x -> t coordinate matrix of the Hodge star
    int star_x_e;     // its scale (-r)
    Mat star_t;       // t -> x matrix of the dual star
    int star_t_e;     // its scale (+r)

    Mat pf_dual;  // linear part of F on N*: f1 -> p f2, f2 -> f1, f3 -> p f4, f4 -> f3

    static ExteriorSpace make(const RingCtxPtr& ctx);
    static ExteriorSpace make(const RingCtxPtr& ctx, const RElem& alpha, int r);

    PLattice standard_V() const { return PLattice::standard(ctx, 6); }
};

/// Matrix of wedge^2 of a 4x4 matrix in the x-basis: row k is the wedge of
/// the two rows of G named by basis vector x_k, expressed in x-coordinates.
Mat wedge2_mat(const RingContext& R, const Mat& G);

/// Lattice spanned by pairwise wedges of a basis of A (scale doubles).
PLattice wedge2(const ExteriorSpace& V, const PLattice& A);

/// Phi on a row vector p^scale * x (coordinates in the x-basis).
std::pair<Mat, int> phi(const ExteriorSpace& V, const Mat& x, int scale);
/// Dual-side Phi on t-coordinates.
std::pair<Mat, int> phi_t(const ExteriorSpace& V, const Mat& t, int scale);
/// Module generated by Phi-images of a lattice in V'.
PLattice phi_bar(const ExteriorSpace& V, const PLattice& L);
/// Same on a special lattice; flips a known orientation tag.
SpecialLattice phi_bar(const ExteriorSpace& V, const SpecialLattice& L);

/// Pairings as scaled ring elements.
SElem pairing_x(const ExteriorSpace& V, const Mat& x, int sx, const Mat& y, int sy);
SElem pairing_t(const ExteriorSpace& V, const Mat& t, int st, const Mat& s, int ss);
/// Cross pairing {x, t} (identity Gram between the x- and t-bases).
SElem pairing_cross(const ExteriorSpace& V, const Mat& x, int sx, const Mat& t, int st);

std::pair<Mat, int> hodge_star(const ExteriorSpace& V, const Mat& x, int scale);
std::pair<Mat, int> hodge_star_dual(const ExteriorSpace& V, const Mat& t, int scale);

/// The special endomorphism pair of p^scale * x.
EndoPair special_endo(const ExteriorSpace& V, const Mat& x, int scale);

/// (h, c) action: x -> c^{-1} * x * wedge2(h).
std::pair<Mat, int> h_action(const ExteriorSpace& V, const Mat& h, const SElem& c,
                             const Mat& x, int scale);

/// Dual lattice of A under the evaluation pairing f(e_i) = delta (the lattice
/// A* = Hom(A, W') inside N*).
PLattice dual_std(const PLattice& A);

/// Self-dual under gram_x and quotient_length(L + phi_bar(L), L) = 1.
bool is_special(const ExteriorSpace& V, const PLattice& L);

/// L = (1/p) wedge2(A_1) for a height-0 Dieudonne lattice A; orientation plus.
SpecialLattice very_special_of(const ExteriorSpace& V, const PLattice& A);

/// Inverse of very_special_of: the unique height-0 Dieudonne lattice A with
/// (1/p) wedge2(A_1) = L.  Computed by a descending joint fixed-point
/// iteration on candidate pairs (A, A*) cut out by transporter conditions,
/// height-normalized, with an exhaustive sandwich fallback; the result is
/// always verified against the forward map before it is returned.
PLattice dieudonne_of(const ExteriorSpace& V, const SpecialLattice& L);

/// Decide the orientation of a special lattice: plus if the fixed-point
/// iteration certifies a Dieudonne preimage for L itself, minus if it does
/// for phi_bar(L).  Lattices with Phi^2 L = L admit both and report plus.
/// Throws inconsistency_error if neither certificate is found.
Orientation orient_of(const ExteriorSpace& V, const PLattice& L);

/// {u in R^k : u E = 0 mod p^t}, rows of the returned matrix generate.
Mat kernel_mod(const RingContext& R, const Mat& E, int t);

/// One linear condition for the transporter: rows v must satisfy
/// p^{s_v} v * p^scale T in target.
struct TransporterCondition {
    Mat T;  // dim(bound) x dim(target)
    int scale = 0;
    PLattice target;
};

/// {v in bound : every condition holds}; always full rank (contains a deep
/// p-power multiple of bound).
PLattice map_transporter(const PLattice& bound,
                         const std::vector<TransporterCondition>& conds);

/// Does the special endomorphism of p^scale * x map P x Q into P2 x Q2?
/// (P, P2 in N; Q, Q2 in N*.)
bool endo_maps(const ExteriorSpace& V, const Mat& x, int scale,
               const PLattice& P, const PLattice& Q, const PLattice& P2,
               const PLattice& Q2);

/// Lattice of all x in `bound` (in V') whose endo pair maps P x Q into
/// P2 x Q2; computed by the transporter primitive.
PLattice endo_transporter(const ExteriorSpace& V, const PLattice& bound,
                          const PLattice& P, const PLattice& Q,
                          const PLattice& P2, const PLattice& Q2);

/// Rows y1..y6 of the slope-zero basis in x-coordinates (scale 0), built from
/// u with u^2 = Delta a nonsquare unit; requires even residue degree m.
Mat y_basis(const ExteriorSpace& V);

}  // namespace gl4
