// The 6-dimensional Q_p quadratic space of Frobenius-fixed vectors in its
// distinguished orthogonal coordinates: diagonal-form invariants (Hasse,
// determinant square class) and the vertex-lattice predicate over Z_p.

#pragma once

#include <utility>
#include <vector>

#include "gl4/lattice.hpp"

namespace gl4 {

/// A nondegenerate diagonal quadratic form over Q_p.
struct DiagForm {
    long p = 3;
    std::vector<PRat> diag;

    /// Throws domain_error if p is not an odd prime or any entry is zero.
    static DiagForm make(long p, std::vector<PRat> diag);
};

/// The normalized diagonal (D, -D, Dp, -p, 1, -D) of the fixed space in its
/// orthogonal basis (the display divides the common factor 2 out); D is the
/// chosen nonsquare unit (default_nonsquare(p) unless given).
DiagForm fixed_space_form(long p);
DiagForm fixed_space_form(long p, long D);

/// Product of Hilbert symbols (a_i, a_j)_p over i < j.
int hasse_invariant(const DiagForm& f);

/// A square class in Q_p^* / (Q_p^*)^2 for odd p: p-valuation parity and
/// whether the unit part is a nonsquare.
struct SquareClass {
    bool odd_val = false;
    bool nonsquare = false;

    bool operator==(const SquareClass&) const = default;
};

SquareClass square_class(const PRat& a, long p);
SquareClass square_class(long long a, long p);

/// Square class of the determinant (product of the diagonal).
SquareClass det_class(const DiagForm& f);

/// Canonical representative of a square class in {1, u, p, up} with u the
/// smallest positive nonsquare mod p.
long long square_class_rep(const SquareClass& c, long p);

/// The fixed space as a lattice environment over Z_p: coefficient ring with
/// m = 1 and the Gram matrix diag(2D, -2D, 2Dp, -2p, 2, -2D) of the
/// orthogonal basis (factor 2 kept; all Boolean predicates are invariant
/// under unit rescaling of the form).
struct QSpace {
    RingCtxPtr ctx;  // GR(p^N, 1) = Z/p^N
    long Delta = 2;
    GramForm gram;

    static QSpace make(long p, int N);
    static QSpace make(const RingCtxPtr& ctx, long Delta);
};

/// Dual lattice under the fixed Gram.
PLattice qs_dual(const QSpace& Q, const PLattice& L);

/// Vertex predicate p L (strictly) subset L-dual (strictly) subset L; second
/// component is quotient_length(L, L-dual) (the type) whenever the chain
/// holds, 0 otherwise.  A vertex lattice of odd type would contradict the
/// duality pairing and raises inconsistency_error.
std::pair<bool, int> is_vertex(const QSpace& Q, const PLattice& L);

/// The standard type-2 vertex lattice: the dual of the span of the
/// orthogonal basis vectors (the span itself is not a vertex lattice; its
/// dual strictly contains it).
PLattice standard_type2(const QSpace& Q);

}  // namespace gl4
