// Finite geometry attached to a vertex lattice: the reduced quadratic space
// Omega = Lambda / Lambda-dual over F_p, Lagrangian enumeration over small
// extensions, the two-ruling parametrization of the nonsplit quadric surface,
// the plus/minus flag sets, the special-lattice chain L^(r) with extraction
// of the Frobenius-fixed vertex lattice, and the superspecial test.
//
// Note on the definition of Omega: with the chain p Lambda subset
// Lambda-dual subset Lambda the quotient Lambda-dual / Lambda is zero; the
// nonzero reduction that carries the geometry is Lambda / Lambda-dual (of
// dimension equal to the type), and that is what this module implements.
//
// Sign convention: the quadric surface is realized as {xy = z^2 - D w^2};
// the two-ruling map psi lands exactly on this locus (Q(psi) expands to
// abcd - abcd = 0).  Replacing the sign of the z^2 term gives an equivalent
// form with the same isotropic count; the nonsplit type is unchanged.

#pragma once

#include "gl4/exterior.hpp"
#include "gl4/vertex_graph.hpp"

namespace gl4 {

/// The 2d-dimensional quadratic space Lambda / Lambda-dual over F_p with the
/// reduced form p[.,.] mod p.
struct OmegaSpace {
    RingCtxPtr fp;       // F_p
    VertexLattice lam;
    int d = 1;           // half-dimension; dim = 2d = type
    Mat gram;            // 2d x 2d over F_p

    /// Reduces the pairing to the quotient; asserts nondegeneracy and the
    /// nonsplit isotropic count (0 for d = 1, p^2 + 1 points for d = 2).
    static OmegaSpace make(const QSpace& Q, const VertexLattice& L);
};

/// Number of projective isotropic points of the form over F_{p^s}.
int isotropic_point_count(const OmegaSpace& O, int s);

/// All totally isotropic d-dimensional subspaces over F_{p^s}, as canonical
/// echelon matrices over GR(p, s).
std::vector<Mat> lagrangians(const OmegaSpace& O, int s);

/// Arithmetic for the standard nonsplit quadric surface xy = z^2 - D w^2
/// over F_{p^{2s}} (every type-4 reduction is isometric to a unit multiple
/// of this model; the artifact works in the model coordinates).
struct QuadricContext {
    RingCtxPtr field;  // F_{p^{2s}}
    int s = 1;
    RElem D;           // the chosen F_p nonsquare
    RElem delta;       // sqrt(D), lives in F_{p^2}

    static QuadricContext make(long p, int s);
};

/// Normalized projective coordinates (first nonzero entry 1).
std::vector<RElem> proj_normalize(const RingContext& F, std::vector<RElem> c);

/// Coordinate-wise p-power Frobenius followed by normalization.
std::vector<RElem> proj_frobenius(const RingContext& F, std::vector<RElem> c);

/// All points of P^{n-1} over the given field, canonical representatives.
std::vector<std::vector<RElem>> proj_points(const RingCtxPtr& F, int n);

/// The two-ruling parametrization
///   psi([a:b], [c:d]) = [ac : bd : (ad+bc)/2 : (ad-bc)/(2 delta)].
std::vector<RElem> psi(const QuadricContext& C, const std::vector<RElem>& ab,
                       const std::vector<RElem>& cd);

/// Value of xy - z^2 + D w^2 at a (not necessarily normalized) point.
RElem quadric_eval(const QuadricContext& C, const std::vector<RElem>& pt);

/// All F_{p^{2s}}-points of the quadric surface, canonical, sorted.
std::vector<std::vector<RElem>> quadric_points(const QuadricContext& C);

/// A point-in-plane flag on the quadric.
struct Flag {
    std::vector<RElem> point;  // normalized, on the quadric
    Mat plane;                 // 2 x 4 canonical echelon, totally on the quadric's rulings
    bool operator==(const Flag&) const = default;
};

std::string flag_key(const RingContext& F, const Flag& f);

/// The plus flags {(psi(P, Phi P), first-ruling plane of P)} and the minus
/// flags {(psi(Phi P, P), second-ruling plane of P)}, P over P^1(F_{p^{2s}});
/// each family has p^{2s} + 1 members and Frobenius maps plus into minus.
std::pair<std::vector<Flag>, std::vector<Flag>> x_lambda_points(const QuadricContext& C);

/// The x-coordinate lattice lam (x) W' spanned over the big ring by the
/// y-combinations of a coordinate lattice over Z_p.
PLattice lat_from_y(const ExteriorSpace& V, const PLattice& lam);

/// The special lattices with window lam-dual (x) W' <= L <= lam (x) W':
/// one for each totally isotropic d-plane of the reduced quotient over the
/// residue field of V.ctx, visited in a fixed scan order.  Stops once
/// `count` lattices are collected (count <= 0 collects all of them; for a
/// type-4 lattice that is 2(q + 1) planes at residue field size q).  Every
/// result is asserted special; each is tagged Orientation::unknown.
std::vector<SpecialLattice> specials_of_vertex(const ExteriorSpace& V, const QSpace& Q,
                                               const VertexLattice& lam, int count);

/// Coordinates of every Frobenius-fixed vector of L in the orthogonal basis
/// of the fixed space: the Z_p-lattice {c : c y_basis in L} over Q.ctx.
/// Exact and self-verified (computed at two depth bounds).
PLattice phi_fixed_part(const ExteriorSpace& V, const QSpace& Q, const PLattice& L);

struct ChainResult {
    int d = 1;             // 1 or 2
    PLattice top;          // L^(d), Phi-stable
    VertexLattice lambda;  // fixed part of L^(d); type 2d
};

/// The chain L^(0) = L, L^(r+1) = L^(r) + Phi(L^(r)) stabilizes after d <= 2
/// unit-length steps; the Frobenius-fixed part of the top is a vertex
/// lattice of type 2d whose dual is the fixed part of L itself.  All of
/// these facts are asserted (inconsistency_error on violation).
ChainResult chain_and_lambda(const ExteriorSpace& V, const QSpace& Q,
                             const SpecialLattice& L);

/// L = Phi(Phi(L)); cross-checked against stabilization of the chain at
/// d = 1 (the two criteria must agree).
bool is_superspecial(const ExteriorSpace& V, const SpecialLattice& L);

}  // namespace gl4
