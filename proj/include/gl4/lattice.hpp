// Full-rank lattices in Q_p^n / W'_Q^n at fixed precision: canonical Howell
// representatives with a global p-power scale, sums, intersections (two
// independent algorithms, cross-checked), duals against a Gram form,
// quotient lengths, heights and membership.

#pragma once

#include <string>

#include "gl4/mat.hpp"

namespace gl4 {

/// A full-rank lattice p^scale * (row span of gens), with gens the unique
/// Howell canonical matrix whose entries carry no common p factor.
/// Equality of lattices is byte equality of (scale, gens).
class PLattice {
public:
    PLattice() = default;

    /// Canonicalizes arbitrary generators (rows; r >= n) at a given scale.
    /// Throws domain_error if the rows are not full rank at working
    /// precision, precision_error if valuations leave the policy bounds.
    static PLattice make(const RingCtxPtr& ctx, Mat gens, int scale);

    /// p^scale * standard lattice.
    static PLattice standard(const RingCtxPtr& ctx, int n, int scale = 0);

    /// From rows with p-power denominators.
    static PLattice from_scaled(const RingCtxPtr& ctx, const SMat& gens);

    const RingCtxPtr& ctx() const { return ctx_; }
    int dim() const { return n_; }
    int scale() const { return scale_; }
    const Mat& gens() const { return gens_; }

    PLattice scaled_by(int k) const;  // p^k * this

    /// Canonical serialization: scale as signed decimal, '|', then row-major
    /// decimal entries of the Howell matrix joined by ','.
    std::string key() const;

    bool operator==(const PLattice& o) const {
        return scale_ == o.scale_ && gens_ == o.gens_;
    }
    bool operator!=(const PLattice& o) const { return !(*this == o); }

private:
    RingCtxPtr ctx_;
    int n_ = 0;
    int scale_ = 0;
    Mat gens_;
};

/// Symmetric bilinear form p^scale * g with g integral.
struct GramForm {
    Mat g;
    int scale = 0;

    static GramForm identity(const RingCtxPtr& ctx, int n);
};

PLattice lat_sum(const PLattice& A, const PLattice& B);

/// Intersection; computed via dual-of-sum-of-duals and cross-checked against
/// the tracked-kernel method on every call (desk scale makes this cheap).
PLattice lat_intersect(const PLattice& A, const PLattice& B);
PLattice lat_intersect_dual_method(const PLattice& A, const PLattice& B);
PLattice lat_intersect_kernel_method(const PLattice& A, const PLattice& B);

/// {x : p^gs * x g a^t integral for all a in A}.
PLattice lat_dual(const PLattice& A, const GramForm& G);

/// Rows of A expressed in the basis of B (exact scaled coordinates).
SMat coords_in(const PLattice& A, const PLattice& B);

bool lat_contains(const PLattice& A, const PLattice& B);  // B subset of A

/// Length of A/B over the coefficient ring; throws domain_error if B is not
/// contained in A.
int quotient_length(const PLattice& A, const PLattice& B);

/// Valuation of det of the change of basis from reference to A.
int lat_height(const PLattice& A, const PLattice& reference);

/// Fast membership tests against a fixed lattice.
class MembershipTester {
public:
    explicit MembershipTester(const PLattice& A);
    /// Is p^scale * v in the lattice?
    bool contains_row(const Mat& v, int scale = 0) const;
    bool contains_srow(const SMat& v) const;

private:
    RingCtxPtr ctx_;
    SMat inv_;  // gens^{-1} with the lattice scale folded in
};

/// Vectors of lat (row form) reduced to canonical coset representatives
/// modulo sub, written in the Howell basis of lat.  Used for quotient-space
/// constructions: exposes the columns where sub has pivot valuation 1.
class QuotientBasis {
public:
    QuotientBasis(const PLattice& lat, const PLattice& sub);

    int dim() const { return static_cast<int>(free_cols_.size()); }

    /// Reduce an ambient row vector (p^scale * v must lie in lat) to
    /// residue-field coordinates along the free columns.
    std::vector<RElem> reduce(const Mat& v, int scale) const;

    /// Lift residue-field coordinates to an ambient row vector with the
    /// lattice scale returned separately: result = p^out_scale * row.
    std::pair<Mat, int> lift(const std::vector<RElem>& coords) const;

private:
    RingCtxPtr ctx_;
    PLattice lat_;
    Mat sub_in_lat_;               // Howell form of sub in lat coordinates
    std::vector<int> pivot_val_;   // per column of sub_in_lat_
    std::vector<int> free_cols_;   // columns with pivot valuation 1
    SMat lat_inv_;
};

}  // namespace gl4
